#include "csdsim/scheduling.hpp"

#include "csdsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace csdsim::scheduling {

const char* to_string(Classification c) {
    return c == Classification::Sequential ? "sequential" : "parallel";
}

double mett(const ScheduleEntry& entry) {
    if (entry.led < entry.esd)
        throw DataError("mett: task " + entry.task_id + " ends before it starts");
    return entry.led - entry.esd;
}

ClassifiedSchedule classify(std::vector<ScheduleEntry> entries) {
    for (auto& e : entries)
        e.mett = mett(e); // validates led >= esd
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ScheduleEntry& a, const ScheduleEntry& b) {
                         if (a.esd != b.esd)
                             return a.esd < b.esd;
                         return a.task_id < b.task_id;
                     });

    ClassifiedSchedule out;
    int group = 0;
    double group_led = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        ScheduleEntry e = entries[i];
        if (i == 0) {
            e.classification = Classification::Sequential;
            e.group_id = group;
            group_led = e.led;
        } else if (e.esd < group_led) {
            // Overlaps the running span of the current group: parallel.
            e.classification = Classification::Parallel;
            e.group_id = group;
            group_led = std::max(group_led, e.led);
        } else {
            e.classification = Classification::Sequential;
            e.group_id = ++group;
            group_led = e.led;
        }
        out.entries.push_back(std::move(e));
    }
    // A group that gained parallel members counts all members as parallel.
    for (std::size_t i = 0; i < out.entries.size(); ++i) {
        if (out.entries[i].classification == Classification::Parallel) {
            int g = out.entries[i].group_id;
            for (auto& e : out.entries)
                if (e.group_id == g)
                    e.classification = Classification::Parallel;
        }
    }
    // Finish-to-start check for consecutive sequential boundaries.
    for (std::size_t i = 1; i < out.entries.size(); ++i) {
        const auto& prev = out.entries[i - 1];
        const auto& cur = out.entries[i];
        if (cur.group_id == prev.group_id)
            continue;
        if (prev.esd + prev.start_offset_hours / 24.0 > cur.lsd)
            out.fs_violations.emplace_back(prev.task_id, cur.task_id);
    }
    return out;
}

double etst(const std::vector<ScheduleEntry>& chain) {
    double sum = 0.0;
    for (const auto& e : chain)
        sum += mett(e);
    return sum;
}

double etpt(const std::vector<ScheduleEntry>& group, const SchedulingConfig& cfg) {
    if (group.empty())
        return 0.0;
    double min_esd = group.front().esd;
    double max_led = group.front().led;
    for (const auto& e : group) {
        min_esd = std::min(min_esd, e.esd);
        max_led = std::max(max_led, e.led);
    }
    if (cfg.literal_etpt)
        return min_esd + max_led;
    return max_led - min_esd;
}

double project_duration(const ClassifiedSchedule& schedule, const SchedulingConfig& cfg) {
    if (schedule.entries.empty())
        return 0.0;
    int max_group = 0;
    for (const auto& e : schedule.entries)
        max_group = std::max(max_group, e.group_id);

    double total = 0.0;
    std::vector<ScheduleEntry> bucket;
    for (int g = 0; g <= max_group; ++g) {
        bucket.clear();
        bool parallel = false;
        for (const auto& e : schedule.entries) {
            if (e.group_id != g)
                continue;
            bucket.push_back(e);
            parallel = parallel || e.classification == Classification::Parallel;
        }
        if (bucket.empty())
            throw DomainError("project_duration: empty group id " + std::to_string(g));
        total += parallel ? etpt(bucket, cfg) : etst(bucket);
    }
    return total;
}

std::optional<double> task_effort(const std::vector<double>& efforts) {
    if (efforts.empty())
        return std::nullopt;
    if (efforts.size() == 1)
        return efforts[0];
    return 0.8 * efforts[0] + 0.2 * efforts[1];
}

NominalDurations nominal_durations(double effort_worker_months, double sced_percent) {
    if (effort_worker_months <= 0.0)
        throw DomainError("nominal_durations: effort must be > 0");
    NominalDurations d;
    d.duration_i = 3.67 * std::pow(effort_worker_months, 0.28) * sced_percent;
    d.duration_ii = std::pow(effort_worker_months, 0.5);
    d.duration_iii = 3.0 * std::pow(effort_worker_months, 0.33);
    return d;
}

SarResult schedule_acceleration(const NominalDurations& nominal, double actual_months) {
    if (actual_months <= 0.0)
        throw DomainError("schedule_acceleration: actual duration must be > 0");
    SarResult s;
    s.sar_i = nominal.duration_i / actual_months;
    s.sar_ii = nominal.duration_ii / actual_months;
    s.sar_iii = nominal.duration_iii / actual_months;
    s.average = (s.sar_i + s.sar_ii + s.sar_iii) / 3.0;
    return s;
}

EffortRecord effort_record(const std::string& project_id, double effort_worker_days,
                           double actual_duration_months, double sced_percent) {
    EffortRecord rec;
    rec.project_id = project_id;
    rec.effort_worker_days = effort_worker_days;
    rec.effort_worker_months = effort_worker_days / kWorkdaysPerMonth;
    rec.actual_duration_months = actual_duration_months;
    rec.sced_percent = sced_percent;
    rec.durations = nominal_durations(rec.effort_worker_months, sced_percent);
    rec.sar = schedule_acceleration(rec.durations, actual_duration_months);
    return rec;
}

} // namespace csdsim::scheduling
