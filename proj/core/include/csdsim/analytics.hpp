#pragma once

#include "csdsim/domain.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace csdsim::analytics {

/// A ratio with its raw numerator/denominator kept for exact recombination
/// across windows. A zero denominator means the ratio is absent.
struct RatioValue {
    double num = 0.0;
    double den = 0.0;
    std::optional<double> value() const {
        if (den == 0.0)
            return std::nullopt;
        return num / den;
    }
};

enum class Scope { Project, Platform };

struct MetricsReport {
    Scope scope = Scope::Project;
    std::string scope_id; // project id, or "platform"
    RatioValue submissions_ratio;
    RatioValue stability;      // mean per-worker submission ratio
    RatioValue failure_rate;   // cancelled / total tasks
    RatioValue trustability;   // accepted / submitted
    RatioValue task_density;   // weekly arrivals vs totals (see ratio_metrics)
    int n_workers = 0;
    int n_tasks = 0;
    double window_weeks = 0.0;
    std::vector<std::string> diagnostics; // absent-ratio explanations
};

/// Input slice for the ratio suite: tasks with terminal outcome flags plus the
/// worker-task records that reference them.
struct History {
    std::vector<Task> tasks;
    std::vector<WorkerTaskRecord> records;
};

/// Optional half-open day window [begin, end).
struct Window {
    std::optional<double> begin;
    std::optional<double> end;
    bool contains(double t) const {
        return (!begin || t >= *begin) && (!end || t < *end);
    }
};

/// The ratio families at project or platform scope, each evaluated
/// per its summation form. Platform scope restricts to "similar tasks":
/// tasks whose pairwise similarity to at least one other task reaches
/// `similarity_threshold` (task.similarity_factor is used when the caller has
/// no text corpus; see ratio_metrics_with_similar for an explicit set).
MetricsReport ratio_metrics(const History& history, Scope scope,
                            const Window& window = {},
                            double similarity_threshold = 0.6,
                            const std::string& project_id = "");

/// Same computation against an explicit similar-task id set (platform scope).
MetricsReport ratio_metrics_with_similar(const History& history,
                                         const std::vector<std::string>& similar_task_ids,
                                         const Window& window = {});

/// Per-worker performance aggregate (Defs 1-7).
struct WorkerPerformance {
    std::string worker_id;
    std::vector<double> response_times;
    std::optional<double> avg_response_time;
    std::vector<double> relative_velocities;
    std::optional<double> avg_relative_velocity;
    double quality = 0.0; // Q, mean score with 0 for non-submitting records
};

/// RT = WR - TR, days. Throws DataError when the registration precedes the
/// task's posting.
double response_time(const WorkerTaskRecord& record, const Task& task);

/// ART per registration order: mean of c * RT per order group. `c` rescales
/// all values uniformly; it defaults to 1.
std::map<int, double> avg_response_time(const std::vector<WorkerTaskRecord>& records,
                                        const std::vector<Task>& tasks,
                                        double c = 1.0);

/// Per-worker submission ratio: submitted records / total records. Workers
/// with zero registrations are excluded (diagnostic appended when provided).
std::optional<double> worker_submission_ratio(const std::vector<WorkerTaskRecord>& records,
                                              const std::string& worker_id);

/// ASR grouped by registration order: mean per-worker submission ratio of the
/// records in each order group.
std::map<int, double> avg_submission_ratio_by_order(const std::vector<WorkerTaskRecord>& records);

/// ASR grouped by belt, using the provided worker->belt mapping.
std::map<Belt, double> avg_submission_ratio_by_belt(const std::vector<WorkerTaskRecord>& records,
                                                    const std::map<std::string, Belt>& belts);

/// RV = (WS - WR) / (TS - TR). Absent when the record has no submission;
/// throws DomainError on a zero-duration task.
std::optional<double> relative_velocity(const WorkerTaskRecord& record, const Task& task);

/// ARV per belt: ratio of summed actual durations to summed allowed durations
/// over the group's submitted records. Groups without submissions are absent.
std::map<Belt, double> avg_relative_velocity(const std::vector<WorkerTaskRecord>& records,
                                             const std::vector<Task>& tasks,
                                             const std::map<std::string, Belt>& belts);

/// Q per worker: mean score over the worker's records, non-submitted records
/// scoring 0. AQ per belt: mean Q over the belt's workers.
struct QualityReport {
    std::map<std::string, double> q_per_worker;
    std::map<Belt, double> aq_per_belt;
};
QualityReport quality_metrics(const std::vector<WorkerTaskRecord>& records,
                              const std::map<std::string, Belt>& belts);

/// TE = max weekly registrant count / min weekly registrant count.
/// Absent (with rationale) when the minimum is zero; throws on empty input.
std::optional<double> team_elasticity(const std::vector<int>& weekly_registrants,
                                      std::string* diagnostic = nullptr);

struct MreResult {
    double signed_value = 0.0;
    double absolute_value = 0.0;
};

/// MRE = (sum(actual) - sum(predicted)) / sum(actual). Signed, with the
/// absolute value alongside. Throws DomainError when lengths differ or
/// sum(actual) is 0.
MreResult mean_relative_error(const std::vector<double>& actual,
                              const std::vector<double>& predicted);

} // namespace csdsim::analytics
