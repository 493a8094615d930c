#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace csdsim {

/// Worker rating bands, lowest to highest skill. Ordinal codes 0..4.
enum class Belt : int {
    Gray = 0,
    Green = 1,
    Blue = 2,
    Yellow = 3,
    Red = 4,
};

constexpr int kBeltCount = 5;

const char* to_string(Belt b);
std::optional<Belt> belt_from_string(const std::string& name);

/// Rating -> belt, lower-inclusive half-open intervals:
/// [0,900) Gray, [900,1200) Green, [1200,1500) Blue, [1500,2200) Yellow, [2200,inf) Red.
/// Throws DomainError on negative rating.
Belt belt_of(double rating);

enum class TaskState {
    Arrived,
    Registered,
    Submitted,
    Reviewed,
    Completed,
    Failed,
    Starved,
    Dropped,
};

const char* to_string(TaskState s);

bool is_terminal(TaskState s);

/// Lifecycle events driving the task state machine.
enum class TaskEvent {
    FirstRegistration,     // Arrived -> Registered
    DeadlineNoRegistrants, // Arrived -> Starved
    FirstSubmission,       // Registered -> Submitted
    DeadlineNoSubmissions, // Registered -> Dropped
    DeadlineReview,        // Submitted -> Reviewed
    ReviewPassed,          // Reviewed -> Completed
    ReviewFailed,          // Reviewed -> Failed
};

const char* to_string(TaskEvent e);

struct Registration {
    std::string worker_id;
    double time = 0.0;
};

struct Submission {
    std::string worker_id;
    double time = 0.0;
    double score = 0.0;
};

struct Task {
    std::string id;
    std::string project_id;
    double reg_start = 0.0;     // ESD, day offset
    double latest_start = 0.0;  // LSD
    double earliest_end = 0.0;  // EED
    double sub_deadline = 0.0;  // LED, = reg_start + duration
    double duration = 0.0;      // days
    double award = 0.0;         // USD
    std::string task_type;
    std::set<std::string> technologies;
    std::string requirement_text;
    TaskState state = TaskState::Arrived;
    double similarity_factor = 0.0; // [0,1], assigned on arrival
    std::vector<Registration> registrants; // nondecreasing in time
    std::vector<Submission> submitters;    // every submitter is a registrant
    std::optional<double> best_score;      // (0,100]
    std::optional<std::string> winner;
    std::optional<std::string> repost_of;  // lineage to the failed original
    std::vector<std::string> seq_links;    // sequential successor task ids
    std::vector<std::string> par_links;    // parallel peer task ids
    bool completed_flag = false;
    bool failed_flag = false;

    /// 1-based registration order of a worker, 0 if not registered.
    int registration_order(const std::string& worker_id) const;
    bool has_registrant(const std::string& worker_id) const;
    bool has_submitter(const std::string& worker_id) const;
};

/// Applies a lifecycle event, returning the task in its new state. Terminal
/// states set exactly one of completed_flag/failed_flag; Starved, Dropped and
/// Failed all count as failures for platform accounting. Throws StateError on
/// an illegal (state, event) pair.
Task transition(Task task, TaskEvent event);

struct Worker {
    std::string id;
    double rating = 0.0;
    Belt belt = Belt::Gray;
    double reliability = 0.0; // [0,1]
    std::set<std::string> skills;
    double last_score = 0.0;
    int wins = 0;
    std::string location;
    double membership_age = 0.0; // years
    std::vector<std::string> open_tasks; // registered, not yet resolved
    std::vector<std::string> reg_history;
    std::vector<std::string> sub_history;
    std::vector<std::string> win_history;

    bool has_skills_for(const Task& task) const;
};

struct Project {
    std::string id;
    std::vector<std::string> tasks;
    double duration = 0.0; // PD, days
    int failure_count = 0;
    std::set<std::string> assigned_workers;
};

/// One worker-task pair from a history table (Table 5-2 rows).
struct WorkerTaskRecord {
    std::string worker_id;
    std::string task_id;
    double reg_time = 0.0;            // WR
    std::optional<double> sub_time;   // WS
    int reg_order = 0;                // RO, 1-based
    std::optional<double> score;      // SO, only with sub_time
};

/// Platform-level aggregate counters at one instant.
struct PlatformSnapshot {
    double time = 0.0;
    int open_tasks = 0; // Arrived/Registered/Submitted, pre-deadline
    int available_workers = 0;
    int arrived = 0;
    int registered = 0; // tasks that attracted >= 1 registrant
    int submitted = 0;  // tasks that attracted >= 1 submission
    int completed = 0;
    int failed = 0; // review failures only
    int starved = 0;
    int dropped = 0;
    int in_review = 0;
    std::optional<double> tcr;
    std::optional<double> tfr;
    std::optional<double> tsr;
    double utilization = 0.0; // fraction of workers with >= 1 open task
};

} // namespace csdsim
