#include "csdsim/analytics.hpp"

#include "csdsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace csdsim::analytics {

namespace {

constexpr double kQualifiedScore = 75.0; // peer-review pass threshold

std::map<std::string, const Task*> index_tasks(const std::vector<Task>& tasks) {
    std::map<std::string, const Task*> m;
    for (const auto& t : tasks)
        m[t.id] = &t;
    return m;
}

/// Week index of a day offset relative to a window origin.
int week_of(double day, double origin) {
    return static_cast<int>(std::floor((day - origin) / 7.0));
}

struct ScopeSlice {
    std::vector<const Task*> tasks;
    std::vector<const WorkerTaskRecord*> records;
    double origin = 0.0;
    double span_end = 0.0;
};

ScopeSlice slice_history(const History& history, const Window& window,
                         const std::set<std::string>& task_filter,
                         bool use_filter) {
    ScopeSlice s;
    for (const auto& t : history.tasks) {
        if (use_filter && !task_filter.count(t.id))
            continue;
        if (!window.contains(t.reg_start))
            continue;
        s.tasks.push_back(&t);
    }
    std::set<std::string> ids;
    for (const Task* t : s.tasks)
        ids.insert(t->id);
    for (const auto& r : history.records) {
        if (!ids.count(r.task_id))
            continue;
        if (!window.contains(r.reg_time))
            continue;
        s.records.push_back(&r);
    }
    if (window.begin)
        s.origin = *window.begin;
    else {
        s.origin = 0.0;
        bool first = true;
        for (const Task* t : s.tasks) {
            if (first || t->reg_start < s.origin)
                s.origin = t->reg_start;
            first = false;
        }
    }
    if (window.end)
        s.span_end = *window.end;
    else {
        s.span_end = s.origin;
        for (const Task* t : s.tasks)
            s.span_end = std::max(s.span_end, t->sub_deadline);
    }
    return s;
}

MetricsReport compute_metrics(const History& history, const ScopeSlice& s,
                              Scope scope, const std::string& scope_id,
                              int total_tasks_unwindowed) {
    MetricsReport rep;
    rep.scope = scope;
    rep.scope_id = scope_id;
    rep.n_tasks = static_cast<int>(s.tasks.size());

    double weeks = std::max(1.0, std::ceil((s.span_end - s.origin) / 7.0));
    rep.window_weeks = weeks;

    // Submissions ratio: total submissions over total registrations.
    rep.submissions_ratio.den = static_cast<double>(s.records.size());
    for (const auto* r : s.records)
        if (r->sub_time)
            rep.submissions_ratio.num += 1.0;
    if (rep.submissions_ratio.den == 0.0)
        rep.diagnostics.push_back("submissions_ratio: no registrations in scope");

    // Stability: mean per-worker submission ratio.
    std::map<std::string, std::pair<int, int>> per_worker; // subs, regs
    for (const auto* r : s.records) {
        auto& [subs, regs] = per_worker[r->worker_id];
        regs += 1;
        if (r->sub_time)
            subs += 1;
    }
    rep.n_workers = static_cast<int>(per_worker.size());
    for (const auto& [wid, counts] : per_worker)
        rep.stability.num += static_cast<double>(counts.first) / counts.second;
    rep.stability.den = static_cast<double>(per_worker.size());
    if (rep.stability.den == 0.0)
        rep.diagnostics.push_back("stability: no workers in scope");

    // Failure rate: cancelled (failed/starved/dropped) over total tasks.
    rep.failure_rate.den = static_cast<double>(s.tasks.size());
    for (const auto* t : s.tasks)
        if (t->failed_flag)
            rep.failure_rate.num += 1.0;
    if (rep.failure_rate.den == 0.0)
        rep.diagnostics.push_back("failure_rate: no tasks in scope");

    // Trustability: qualified submissions over submissions.
    for (const auto* r : s.records) {
        if (!r->sub_time)
            continue;
        rep.trustability.den += 1.0;
        if (r->score && *r->score > kQualifiedScore)
            rep.trustability.num += 1.0;
    }
    if (rep.trustability.den == 0.0)
        rep.diagnostics.push_back("trustability: no submissions in scope");

    // Task density.
    if (scope == Scope::Project) {
        // Mean weekly arrivals over total tasks of the project.
        rep.task_density.num = static_cast<double>(s.tasks.size());
        rep.task_density.den = weeks * static_cast<double>(total_tasks_unwindowed);
        if (rep.task_density.den == 0.0)
            rep.diagnostics.push_back("task_density: empty project");
    } else {
        // Weekly similar arrivals over weekly open similar tasks, summed.
        std::map<int, int> arrivals;
        std::map<int, int> open;
        for (const auto* t : s.tasks) {
            arrivals[week_of(t->reg_start, s.origin)] += 1;
            int w0 = week_of(t->reg_start, s.origin);
            int w1 = week_of(t->sub_deadline, s.origin);
            for (int w = w0; w <= w1; ++w)
                open[w] += 1;
        }
        for (const auto& [w, n] : arrivals)
            rep.task_density.num += n;
        for (const auto& [w, n] : open)
            rep.task_density.den += n;
        if (rep.task_density.den == 0.0)
            rep.diagnostics.push_back("task_density: no open similar tasks");
    }
    (void)history;
    return rep;
}

} // namespace

MetricsReport ratio_metrics(const History& history, Scope scope, const Window& window,
                            double similarity_threshold, const std::string& project_id) {
    if (scope == Scope::Project) {
        std::set<std::string> filter;
        bool use_filter = !project_id.empty();
        int total = 0;
        for (const auto& t : history.tasks) {
            if (use_filter && t.project_id != project_id)
                continue;
            if (use_filter)
                filter.insert(t.id);
            ++total;
        }
        ScopeSlice s = slice_history(history, window, filter, use_filter);
        return compute_metrics(history, s, scope,
                               project_id.empty() ? "project" : project_id, total);
    }
    // Platform scope: similar tasks are those whose similarity factor reaches
    // the threshold (engine-produced histories carry the factor directly).
    std::set<std::string> similar;
    for (const auto& t : history.tasks)
        if (t.similarity_factor >= similarity_threshold)
            similar.insert(t.id);
    ScopeSlice s = slice_history(history, window, similar, true);
    MetricsReport rep = compute_metrics(history, s, Scope::Platform, "platform",
                                        static_cast<int>(similar.size()));
    return rep;
}

MetricsReport ratio_metrics_with_similar(const History& history,
                                         const std::vector<std::string>& similar_task_ids,
                                         const Window& window) {
    std::set<std::string> similar(similar_task_ids.begin(), similar_task_ids.end());
    ScopeSlice s = slice_history(history, window, similar, true);
    return compute_metrics(history, s, Scope::Platform, "platform",
                           static_cast<int>(similar.size()));
}

double response_time(const WorkerTaskRecord& record, const Task& task) {
    if (record.reg_time < task.reg_start)
        throw DataError("response_time: worker " + record.worker_id +
                        " registered before task " + task.id + " was posted");
    return record.reg_time - task.reg_start;
}

std::map<int, double> avg_response_time(const std::vector<WorkerTaskRecord>& records,
                                        const std::vector<Task>& tasks, double c) {
    auto by_id = index_tasks(tasks);
    std::map<int, std::pair<double, int>> acc; // order -> (sum, n)
    for (const auto& r : records) {
        auto it = by_id.find(r.task_id);
        if (it == by_id.end())
            throw DataError("avg_response_time: unknown task " + r.task_id);
        double rt = response_time(r, *it->second);
        auto& [sum, n] = acc[r.reg_order];
        sum += c * rt;
        n += 1;
    }
    std::map<int, double> out;
    for (const auto& [order, sn] : acc)
        out[order] = sn.first / sn.second;
    return out;
}

std::optional<double> worker_submission_ratio(const std::vector<WorkerTaskRecord>& records,
                                              const std::string& worker_id) {
    int regs = 0, subs = 0;
    for (const auto& r : records) {
        if (r.worker_id != worker_id)
            continue;
        ++regs;
        if (r.sub_time)
            ++subs;
    }
    if (regs == 0)
        return std::nullopt;
    return static_cast<double>(subs) / regs;
}

namespace {

template <typename Key, typename KeyOf>
std::map<Key, double> asr_grouped(const std::vector<WorkerTaskRecord>& records, KeyOf key_of) {
    // group key -> worker -> (subs, regs)
    std::map<Key, std::map<std::string, std::pair<int, int>>> acc;
    for (const auto& r : records) {
        auto key = key_of(r);
        if (!key)
            continue;
        auto& [subs, regs] = acc[*key][r.worker_id];
        regs += 1;
        if (r.sub_time)
            subs += 1;
    }
    std::map<Key, double> out;
    for (const auto& [key, workers] : acc) {
        double sum = 0.0;
        for (const auto& [wid, sr] : workers)
            sum += static_cast<double>(sr.first) / sr.second;
        out[key] = sum / static_cast<double>(workers.size());
    }
    return out;
}

} // namespace

std::map<int, double> avg_submission_ratio_by_order(const std::vector<WorkerTaskRecord>& records) {
    return asr_grouped<int>(records, [](const WorkerTaskRecord& r) -> std::optional<int> {
        return r.reg_order;
    });
}

std::map<Belt, double> avg_submission_ratio_by_belt(const std::vector<WorkerTaskRecord>& records,
                                                    const std::map<std::string, Belt>& belts) {
    return asr_grouped<Belt>(records, [&](const WorkerTaskRecord& r) -> std::optional<Belt> {
        auto it = belts.find(r.worker_id);
        if (it == belts.end())
            return std::nullopt;
        return it->second;
    });
}

std::optional<double> relative_velocity(const WorkerTaskRecord& record, const Task& task) {
    if (!record.sub_time)
        return std::nullopt;
    double allowed = task.sub_deadline - task.reg_start;
    if (allowed == 0.0)
        throw DomainError("relative_velocity: task " + task.id + " has zero duration");
    return (*record.sub_time - record.reg_time) / allowed;
}

std::map<Belt, double> avg_relative_velocity(const std::vector<WorkerTaskRecord>& records,
                                             const std::vector<Task>& tasks,
                                             const std::map<std::string, Belt>& belts) {
    auto by_id = index_tasks(tasks);
    std::map<Belt, std::pair<double, double>> acc; // actual sum, allowed sum
    for (const auto& r : records) {
        if (!r.sub_time)
            continue;
        auto bit = belts.find(r.worker_id);
        if (bit == belts.end())
            continue;
        auto it = by_id.find(r.task_id);
        if (it == by_id.end())
            throw DataError("avg_relative_velocity: unknown task " + r.task_id);
        double allowed = it->second->sub_deadline - it->second->reg_start;
        if (allowed == 0.0)
            throw DomainError("avg_relative_velocity: task " + r.task_id + " has zero duration");
        auto& [actual_sum, allowed_sum] = acc[bit->second];
        actual_sum += *r.sub_time - r.reg_time;
        allowed_sum += allowed;
    }
    std::map<Belt, double> out;
    for (const auto& [belt, sums] : acc)
        out[belt] = sums.first / sums.second;
    return out;
}

QualityReport quality_metrics(const std::vector<WorkerTaskRecord>& records,
                              const std::map<std::string, Belt>& belts) {
    QualityReport rep;
    std::map<std::string, std::pair<double, int>> acc; // score sum, n
    for (const auto& r : records) {
        auto& [sum, n] = acc[r.worker_id];
        // Non-submitting registrations are granted a score of 0.
        sum += (r.sub_time && r.score) ? *r.score : 0.0;
        n += 1;
    }
    for (const auto& [wid, sn] : acc)
        rep.q_per_worker[wid] = sn.first / sn.second;
    std::map<Belt, std::pair<double, int>> belt_acc;
    for (const auto& [wid, q] : rep.q_per_worker) {
        auto it = belts.find(wid);
        if (it == belts.end())
            continue;
        auto& [sum, n] = belt_acc[it->second];
        sum += q;
        n += 1;
    }
    for (const auto& [belt, sn] : belt_acc)
        rep.aq_per_belt[belt] = sn.first / sn.second;
    return rep;
}

std::optional<double> team_elasticity(const std::vector<int>& weekly_registrants,
                                      std::string* diagnostic) {
    if (weekly_registrants.empty())
        throw DomainError("team_elasticity: empty weekly series");
    int lo = weekly_registrants[0], hi = weekly_registrants[0];
    for (int v : weekly_registrants) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo <= 0) {
        if (diagnostic)
            *diagnostic = "team_elasticity undefined: a week has zero registrants";
        return std::nullopt;
    }
    return static_cast<double>(hi) / lo;
}

MreResult mean_relative_error(const std::vector<double>& actual,
                              const std::vector<double>& predicted) {
    if (actual.size() != predicted.size())
        throw DomainError("mean_relative_error: series lengths differ");
    double sum_af = 0.0, sum_fp = 0.0;
    for (double v : actual)
        sum_af += v;
    for (double v : predicted)
        sum_fp += v;
    if (sum_af == 0.0)
        throw DomainError("mean_relative_error: actual series sums to zero");
    double mre = (sum_af - sum_fp) / sum_af;
    return {mre, std::fabs(mre)};
}

} // namespace csdsim::analytics
