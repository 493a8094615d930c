#pragma once

#include "csdsim/domain.hpp"
#include "csdsim/predictor.hpp"
#include "csdsim/rng.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace csdsim::engine {

struct TriangularParams {
    double min = 1.0;
    double mode = 16.0;
    double max = 30.0;
};

struct BetaParams {
    double min = 0.0;
    double max = 3000.0;
    double alpha = 1.0;
    double beta = 5.0;
};

struct PertParams {
    double min = 0.0;
    double mode = 0.06;
    double max = 0.4;
};

struct UniformParams {
    double min = 0.30;
    double max = 0.98;
};

/// One task template of a scheduled project.
struct ScheduledTask {
    std::string id;
    double arrival_day = 0.0;
    std::optional<double> duration; // drawn from duration_dist when absent
    std::optional<double> award;
    std::string task_type;
    std::vector<std::string> technologies;
    std::string requirement;
    std::optional<double> similarity; // drawn from similarity_dist when absent
    std::vector<std::string> successors; // posted when this task completes
};

struct TaskSource {
    enum class Kind { Stochastic, Schedule };
    Kind kind = Kind::Stochastic;
    /// Expected stochastic task count over the horizon; per-day rate is
    /// lambda_per_horizon / horizon.
    double lambda_per_horizon = 87.0;
    std::vector<ScheduledTask> schedule;
};

struct WorkerParams {
    /// Expected arrivals over the horizon; per-day rate scales by horizon.
    double arrival_lambda_per_horizon = 800.0;
    BetaParams experience;
    PertParams reliability;
    int skills_per_worker = 3;
};

struct TaskParams {
    TriangularParams duration;
    UniformParams similarity;
    UniformParams award{150.0, 3000.0};
    int technologies_per_task = 1;
    std::vector<std::string> type_pool{"Code",        "First2Finish", "Assembly",
                                       "Bug Hunt",    "UI Prototype", "Architecture",
                                       "Test Suit"};
};

struct DecisionParams {
    double reg_event_rate = 1.0;  // registration decisions per worker-day
    double reg_threshold = 0.8;   // register when the draw exceeds this
    int open_task_cap = 5;
    int crowd_cap = 18;
    double over_cap_bernoulli_p = 0.3;
    double sub_event_rate = 0.51; // submission decisions per worker-day
    double sub_threshold = 0.051; // submit when draw * propensity falls below
    std::array<double, kBeltCount> belt_propensity{0.75, 0.55, 0.61, 0.4, 0.4};
    /// Platform-level similarity coupling: tasks in a more similar pool see a
    /// tightened submission gate (and optionally an eased registration gate),
    /// anchored at the empirical weekly mean similarity.
    double similarity_reference = 0.69;
    double similarity_submission_gain = 2.0;
    double similarity_registration_gain = 0.0;
    /// Optional task-level thinning of registrations (off by default; the
    /// per-worker gate is the authoritative mechanism).
    bool attraction_filter = false;
    double attraction_rate = 0.70;
    /// Belts allowed to register; all by default (scenario policies restrict).
    std::array<bool, kBeltCount> allowed_belts{true, true, true, true, true};
    /// On submission, rating drifts toward score * 30 by this step.
    double rating_update_step = 0.05;
    int reliability_window = 15; // registrations considered for reliability

    double effective_sub_threshold(double similarity) const;
    double effective_reg_threshold(double similarity) const;
};

struct ReviewParams {
    double pass_score = 75.0;
    bool strict = true; // pass requires score > pass_score
    bool passes(double score) const {
        return strict ? score > pass_score : score >= pass_score;
    }
};

struct RepostParams {
    int max_reposts = 3;
    double duration_increment_days = 1.0;
    double delay_days = 0.0;
};

struct SimulationConfig {
    std::uint64_t seed = 0;
    double horizon_days = 60.0;
    TaskSource task_source;
    WorkerParams workers;
    TaskParams tasks;
    DecisionParams decisions;
    ReviewParams review;
    RepostParams repost;
    predictor::PredictorConfig prediction;
    std::vector<std::string> technology_universe{"java", "python", "cpp",
                                                 "js",   "sql",    "design"};
    double snapshot_cadence_days = 1.0;

    /// Throws ConfigError listing every offending field.
    void validate() const;
};

enum class TraceEventKind {
    TaskArrived,
    WorkerArrived,
    Registered,
    Submitted,
    Reviewed,
    Completed,
    Failed,
    Starved,
    Dropped,
    PredictionUpdated,
};

const char* to_string(TraceEventKind k);

struct TraceEvent {
    double time = 0.0;
    TraceEventKind kind = TraceEventKind::TaskArrived;
    std::string task_id;   // empty when not task-bound
    std::string worker_id; // empty when not worker-bound
    std::string payload;   // semicolon-separated key=value pairs
};

using EventTrace = std::vector<TraceEvent>;

/// Aggregated counters of one replication.
struct RunStats {
    int tasks_arrived = 0;
    int workers_arrived = 0;
    int registrations = 0;
    int submissions = 0;
    int completed = 0;
    int failed = 0;
    int starved = 0;
    int dropped = 0;
    int reposts = 0;
    // Decision-rule instrumentation.
    long over_cap_attempts = 0;
    long over_cap_accepts = 0;
    long submission_decision_events = 0;
    double active_worker_days = 0.0; // worker-days with >= 1 open task
    std::array<long, kBeltCount> registrations_by_belt{};
    std::array<long, kBeltCount> submissions_by_belt{};

    int terminal_tasks() const { return completed + failed + starved + dropped; }
    /// Completed over terminal tasks; absent when nothing resolved.
    std::optional<double> success_ratio() const {
        int t = terminal_tasks();
        if (t == 0)
            return std::nullopt;
        return static_cast<double>(completed) / t;
    }
};

struct SimulationResult {
    EventTrace trace;
    std::vector<PlatformSnapshot> snapshots;
    RunStats stats;
    std::vector<Task> tasks;     // final task states, arrival order
    std::vector<Worker> workers; // final worker states, arrival order
    std::map<std::string, predictor::PredictionState> predictions;

    /// Terminal status of a task's repost lineage: true when any task in the
    /// lineage rooted at `task_id` completed.
    bool lineage_completed(const std::string& task_id) const;
};

class Simulation {
public:
    /// Validates the config, seeds the substreams and primes the calendar.
    explicit Simulation(SimulationConfig config);

    /// Processes the event calendar to the horizon. Deterministic: identical
    /// (seed, config) yields an identical trace.
    SimulationResult run();

    const SimulationConfig& config() const { return config_; }

private:
    struct Impl;
    SimulationConfig config_;
};

/// Convenience: construct and run one replication with substreams derived
/// from (config.seed, replication_index).
SimulationResult run_replication(const SimulationConfig& config,
                                 std::uint64_t replication_index);

} // namespace csdsim::engine
