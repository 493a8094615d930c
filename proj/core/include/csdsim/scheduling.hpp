#pragma once

#include <optional>
#include <string>
#include <vector>

namespace csdsim::scheduling {

enum class Classification { Sequential, Parallel };

const char* to_string(Classification c);

struct ScheduleEntry {
    std::string task_id;
    double esd = 0.0; // earliest start date, day offset
    double lsd = 0.0; // latest start date
    double eed = 0.0; // earliest end date
    double led = 0.0; // latest end date
    double mett = 0.0; // led - esd
    Classification classification = Classification::Sequential;
    int group_id = 0; // parallel group or sequential chain
    double start_offset_hours = 0.0; // t_i in [0,24]
};

struct SchedulingConfig {
    /// Group span Max(LED) - Min(ESD); the literal reading Min(ESD) + Max(LED)
    /// is available for fidelity experiments.
    bool literal_etpt = false;
};

struct ClassifiedSchedule {
    std::vector<ScheduleEntry> entries; // sorted by esd
    /// Finish-to-start violations: pairs (predecessor, successor) where
    /// esd_pred + t_pred exceeds the successor's latest start.
    std::vector<std::pair<std::string, std::string>> fs_violations;
};

/// Classifies tasks (sorted by start internally): a task is Parallel when it
/// starts before the running latest end of the current overlap group,
/// Sequential otherwise (boundary start == end is Sequential). Maximal runs of
/// overlapping tasks form parallel groups; runs of sequential tasks form
/// chains. Throws DataError on a negative-duration entry.
ClassifiedSchedule classify(std::vector<ScheduleEntry> entries);

/// METT = LED - ESD. Throws DataError when led < esd.
double mett(const ScheduleEntry& entry);

/// Sum of METT over a sequential chain; empty chain -> 0.
double etst(const std::vector<ScheduleEntry>& chain);

/// Span of a parallel group; empty group -> 0.
double etpt(const std::vector<ScheduleEntry>& group, const SchedulingConfig& cfg = {});

/// Total project duration: sum of chain totals plus group spans.
double project_duration(const ClassifiedSchedule& schedule, const SchedulingConfig& cfg = {});

/// Weighted top-2 submitter effort: 0.8 * top1 + 0.2 * top2 (by score);
/// a single submitter contributes their effort alone. Efforts are worker-days
/// between registration and submission, ordered best score first.
std::optional<double> task_effort(const std::vector<double>& submitter_efforts_by_score);

struct NominalDurations {
    double duration_i = 0.0;   // 3.67 * effort^0.28 * sced
    double duration_ii = 0.0;  // effort^0.5
    double duration_iii = 0.0; // 3.0 * effort^0.33
};

/// Three baseline schedule models, months from worker-months of effort.
/// Throws DomainError on nonpositive effort.
NominalDurations nominal_durations(double effort_worker_months, double sced_percent = 1.0);

struct SarResult {
    double sar_i = 0.0;
    double sar_ii = 0.0;
    double sar_iii = 0.0;
    double average = 0.0;
};

/// SAR per model: nominal / actual; the mean across models alongside.
/// Throws DomainError on nonpositive actual duration.
SarResult schedule_acceleration(const NominalDurations& nominal, double actual_months);

constexpr double kWorkdaysPerMonth = 22.0;

struct EffortRecord {
    std::string project_id;
    double effort_worker_days = 0.0;
    double effort_worker_months = 0.0;
    double actual_duration_months = 0.0;
    NominalDurations durations;
    SarResult sar;
    double sced_percent = 1.0;
};

/// Full per-project record from effort in worker-days and the actual duration.
EffortRecord effort_record(const std::string& project_id, double effort_worker_days,
                           double actual_duration_months, double sced_percent = 1.0);

} // namespace csdsim::scheduling
