#include "csdsim/engine.hpp"

#include "csdsim/errors.hpp"
#include "csdsim/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

namespace csdsim::engine {

double DecisionParams::effective_sub_threshold(double similarity) const {
    double factor = 1.0 + similarity_submission_gain * (similarity_reference - similarity);
    return sub_threshold * std::max(0.0, factor);
}

double DecisionParams::effective_reg_threshold(double similarity) const {
    double factor = 1.0 - similarity_registration_gain * (similarity - similarity_reference);
    return std::clamp(reg_threshold * std::max(0.0, factor), 0.0, 1.0);
}

void SimulationConfig::validate() const {
    std::vector<std::string> bad;
    auto check = [&](bool ok, const char* field) {
        if (!ok)
            bad.push_back(field);
    };
    check(horizon_days >= 0.0, "horizon_days");
    check(task_source.lambda_per_horizon >= 0.0, "task_source.lambda_per_horizon");
    check(workers.arrival_lambda_per_horizon >= 0.0, "workers.arrival_lambda_per_horizon");
    check(tasks.duration.min <= tasks.duration.mode && tasks.duration.mode <= tasks.duration.max &&
              tasks.duration.min > 0.0,
          "tasks.duration");
    check(tasks.similarity.min <= tasks.similarity.max && tasks.similarity.min >= 0.0 &&
              tasks.similarity.max <= 1.0,
          "tasks.similarity");
    check(tasks.award.min <= tasks.award.max && tasks.award.min >= 0.0, "tasks.award");
    check(workers.experience.min <= workers.experience.max && workers.experience.alpha > 0.0 &&
              workers.experience.beta > 0.0,
          "workers.experience");
    check(workers.reliability.min <= workers.reliability.mode &&
              workers.reliability.mode <= workers.reliability.max,
          "workers.reliability");
    check(workers.skills_per_worker >= 0, "workers.skills_per_worker");
    check(decisions.reg_event_rate >= 0.0, "decisions.reg_event_rate");
    check(decisions.sub_event_rate >= 0.0, "decisions.sub_event_rate");
    check(decisions.reg_threshold >= 0.0 && decisions.reg_threshold <= 1.0,
          "decisions.reg_threshold");
    check(decisions.sub_threshold >= 0.0 && decisions.sub_threshold <= 1.0,
          "decisions.sub_threshold");
    check(decisions.open_task_cap >= 0, "decisions.open_task_cap");
    check(decisions.crowd_cap >= 0, "decisions.crowd_cap");
    check(decisions.over_cap_bernoulli_p >= 0.0 && decisions.over_cap_bernoulli_p <= 1.0,
          "decisions.over_cap_bernoulli_p");
    check(decisions.attraction_rate >= 0.0 && decisions.attraction_rate <= 1.0,
          "decisions.attraction_rate");
    check(std::any_of(decisions.allowed_belts.begin(), decisions.allowed_belts.end(),
                      [](bool b) { return b; }),
          "decisions.allowed_belts");
    for (double y : decisions.belt_propensity)
        check(y >= 0.0 && y <= 1.0, "decisions.belt_propensity");
    check(review.pass_score >= 0.0 && review.pass_score <= 100.0, "review.pass_score");
    check(repost.max_reposts >= 0, "repost.max_reposts");
    check(repost.delay_days >= 0.0, "repost.delay_days");
    check(snapshot_cadence_days > 0.0, "snapshot_cadence_days");
    check(workers.skills_per_worker <= static_cast<int>(technology_universe.size()),
          "workers.skills_per_worker exceeds technology_universe");
    for (const auto& t : task_source.schedule) {
        if (t.duration && *t.duration <= 0.0)
            bad.push_back("task_source.schedule[" + t.id + "].duration");
        if (t.similarity && (*t.similarity < 0.0 || *t.similarity > 1.0))
            bad.push_back("task_source.schedule[" + t.id + "].similarity");
    }
    if (!bad.empty()) {
        std::string msg = "invalid simulation config, offending fields:";
        for (const auto& f : bad)
            msg += " " + f;
        throw ConfigError(msg);
    }
}

const char* to_string(TraceEventKind k) {
    switch (k) {
    case TraceEventKind::TaskArrived: return "task_arrived";
    case TraceEventKind::WorkerArrived: return "worker_arrived";
    case TraceEventKind::Registered: return "registered";
    case TraceEventKind::Submitted: return "submitted";
    case TraceEventKind::Reviewed: return "reviewed";
    case TraceEventKind::Completed: return "completed";
    case TraceEventKind::Failed: return "failed";
    case TraceEventKind::Starved: return "starved";
    case TraceEventKind::Dropped: return "dropped";
    case TraceEventKind::PredictionUpdated: return "prediction_updated";
    }
    return "?";
}

bool SimulationResult::lineage_completed(const std::string& task_id) const {
    std::unordered_map<std::string, const Task*> by_id;
    for (const auto& t : tasks)
        by_id[t.id] = &t;
    auto root_of = [&](const std::string& id) {
        std::string cur = id;
        for (;;) {
            auto it = by_id.find(cur);
            if (it == by_id.end() || !it->second->repost_of)
                return cur;
            cur = *it->second->repost_of;
        }
    };
    std::string root = root_of(task_id);
    for (const auto& t : tasks)
        if (t.completed_flag && root_of(t.id) == root)
            return true;
    return false;
}

namespace {

// Calendar event kinds in tie-break priority order at equal timestamps:
// reviews resolve first so successors post promptly, then arrivals, then
// registrations, then submissions, snapshots last.
enum class Ev : int {
    Review = 0,
    TaskArrival = 1,
    WorkerArrival = 2,
    RegDecision = 3,
    SubDecision = 4,
    Snapshot = 5,
};

struct SchedEvent {
    double time = 0.0;
    Ev kind = Ev::Snapshot;
    long entity = 0; // task/worker ordinal, template or pending index
    long aux = 0;    // arrival source tag or submission-clock epoch
    std::uint64_t seq = 0;

    bool operator>(const SchedEvent& o) const {
        if (time != o.time)
            return time > o.time;
        if (kind != o.kind)
            return static_cast<int>(kind) > static_cast<int>(o.kind);
        if (entity != o.entity)
            return entity > o.entity;
        return seq > o.seq;
    }
};

constexpr long kStochastic = -1;
constexpr long kFromTemplate = 0;
constexpr long kFromRepost = 1;

struct TaskRt {
    Task task;
    long ordinal = 0;
    double arrival = 0.0;
    double deadline = 0.0;
    int repost_count = 0;
    bool attracted = true;
    predictor::PredictionState pred;
};

struct WorkerRt {
    Worker w;
    long ordinal = 0;
    long sub_epoch = 0;
    bool sub_active = false;
    double active_since = 0.0;
};

struct PendingRepost {
    ScheduledTask tmpl;
    int repost_count = 0;
    std::string repost_of;
    double similarity = 0.0;
};

} // namespace

struct Simulation::Impl {
    const SimulationConfig& cfg;
    RngStreams rng;
    std::priority_queue<SchedEvent, std::vector<SchedEvent>, std::greater<>> calendar;
    std::uint64_t seq = 0;

    std::vector<TaskRt> tasks;
    std::vector<WorkerRt> workers;
    std::vector<PendingRepost> pending;
    std::map<std::string, long> task_index;
    std::set<std::string> posted_templates;

    EventTrace trace;
    std::vector<PlatformSnapshot> snapshots;
    RunStats stats;

    // Platform-level cumulative counters (Eqs 6.1, 6.2, 6.4 inputs).
    int registered_tasks = 0;
    int submitted_tasks = 0;

    Impl(const SimulationConfig& c, RngStreams streams) : cfg(c), rng(std::move(streams)) {}

    void push(double time, Ev kind, long entity, long aux = 0) {
        calendar.push({time, kind, entity, aux, seq++});
    }

    void emit(double time, TraceEventKind kind, const std::string& task_id,
              const std::string& worker_id, std::string payload) {
        trace.push_back({time, kind, task_id, worker_id, std::move(payload)});
    }

    double task_rate() const {
        return cfg.horizon_days > 0.0 ? cfg.task_source.lambda_per_horizon / cfg.horizon_days
                                      : 0.0;
    }

    double worker_rate() const {
        return cfg.horizon_days > 0.0
                   ? cfg.workers.arrival_lambda_per_horizon / cfg.horizon_days
                   : 0.0;
    }

    void prime() {
        if (cfg.horizon_days <= 0.0)
            return;
        if (cfg.task_source.kind == TaskSource::Kind::Stochastic) {
            if (task_rate() > 0.0)
                push(rng.task_arrivals.exponential(task_rate()), Ev::TaskArrival, kStochastic);
        } else {
            // Successor templates wait for their predecessor's completion.
            std::set<std::string> successors;
            for (const auto& t : cfg.task_source.schedule)
                for (const auto& s : t.successors)
                    successors.insert(s);
            for (std::size_t i = 0; i < cfg.task_source.schedule.size(); ++i) {
                if (successors.count(cfg.task_source.schedule[i].id))
                    continue;
                push(cfg.task_source.schedule[i].arrival_day, Ev::TaskArrival,
                     static_cast<long>(i), kFromTemplate);
            }
        }
        if (worker_rate() > 0.0)
            push(rng.worker_arrivals.exponential(worker_rate()), Ev::WorkerArrival, kStochastic);
        for (double t = cfg.snapshot_cadence_days; t <= cfg.horizon_days + 1e-9;
             t += cfg.snapshot_cadence_days)
            push(t, Ev::Snapshot, 0);
    }

    TaskRt& create_task(Task task, double now, int repost_count) {
        long ord = static_cast<long>(tasks.size());
        TaskRt rt;
        rt.ordinal = ord;
        rt.arrival = now;
        rt.deadline = now + task.duration;
        rt.repost_count = repost_count;
        task.reg_start = now;
        task.latest_start = now;
        task.earliest_end = rt.deadline;
        task.sub_deadline = rt.deadline;
        rt.task = std::move(task);
        rt.pred = predictor::make_state(rt.task.id, cfg.prediction);
        if (cfg.decisions.attraction_filter)
            rt.attracted = rng.decisions.bernoulli(cfg.decisions.attraction_rate);
        tasks.push_back(std::move(rt));
        task_index[tasks.back().task.id] = ord;
        stats.tasks_arrived += 1;
        TaskRt& ref = tasks.back();
        emit(now, TraceEventKind::TaskArrived, ref.task.id, "",
             "duration=" + format_number(ref.task.duration) +
                 ";award=" + format_number(ref.task.award) +
                 ";similarity=" + format_number(ref.task.similarity_factor) +
                 (ref.task.repost_of ? ";repost_of=" + *ref.task.repost_of : ""));
        push(rt.deadline, Ev::Review, ord);
        return ref;
    }

    void on_task_arrival(const SchedEvent& ev, double now) {
        if (ev.entity == kStochastic) {
            Task t;
            t.id = "T" + std::to_string(tasks.size() + 1);
            t.duration = rng.durations.triangular(cfg.tasks.duration.min, cfg.tasks.duration.mode,
                                                  cfg.tasks.duration.max);
            t.award = rng.task_arrivals.uniform(cfg.tasks.award.min, cfg.tasks.award.max);
            if (!cfg.tasks.type_pool.empty())
                t.task_type = cfg.tasks.type_pool[static_cast<std::size_t>(
                    rng.task_arrivals.below(cfg.tasks.type_pool.size()))];
            t.technologies = sample_technologies(cfg.tasks.technologies_per_task,
                                                 rng.task_arrivals);
            t.similarity_factor =
                rng.similarity.uniform(cfg.tasks.similarity.min, cfg.tasks.similarity.max);
            create_task(std::move(t), now, 0);
            if (task_rate() > 0.0)
                push(now + rng.task_arrivals.exponential(task_rate()), Ev::TaskArrival,
                     kStochastic);
            return;
        }
        if (ev.aux == kFromTemplate) {
            const ScheduledTask& tmpl =
                cfg.task_source.schedule[static_cast<std::size_t>(ev.entity)];
            if (posted_templates.count(tmpl.id))
                return;
            posted_templates.insert(tmpl.id);
            create_task(task_from_template(tmpl), now, 0);
            return;
        }
        // Repost of a failed task.
        const PendingRepost& pr = pending[static_cast<std::size_t>(ev.entity)];
        Task t = task_from_template(pr.tmpl);
        t.repost_of = pr.repost_of;
        t.similarity_factor = pr.similarity;
        create_task(std::move(t), now, pr.repost_count);
    }

    Task task_from_template(const ScheduledTask& tmpl) {
        if (tmpl.duration && *tmpl.duration <= 0.0)
            throw ConfigError("scheduled task " + tmpl.id + " has nonpositive duration");
        Task t;
        t.id = tmpl.id;
        t.duration = tmpl.duration ? *tmpl.duration
                                   : rng.durations.triangular(cfg.tasks.duration.min,
                                                              cfg.tasks.duration.mode,
                                                              cfg.tasks.duration.max);
        t.award = tmpl.award ? *tmpl.award : 0.0;
        t.task_type = tmpl.task_type;
        t.technologies.insert(tmpl.technologies.begin(), tmpl.technologies.end());
        t.requirement_text = tmpl.requirement;
        t.similarity_factor = tmpl.similarity
                                  ? *tmpl.similarity
                                  : rng.similarity.uniform(cfg.tasks.similarity.min,
                                                           cfg.tasks.similarity.max);
        t.seq_links = tmpl.successors;
        return t;
    }

    std::set<std::string> sample_technologies(int count, RandomStream& stream) {
        std::set<std::string> out;
        const auto& uni = cfg.technology_universe;
        if (uni.empty() || count <= 0)
            return out;
        count = std::min<int>(count, static_cast<int>(uni.size()));
        while (static_cast<int>(out.size()) < count)
            out.insert(uni[static_cast<std::size_t>(stream.below(uni.size()))]);
        return out;
    }

    void on_worker_arrival(double now) {
        long ord = static_cast<long>(workers.size());
        WorkerRt wr;
        wr.ordinal = ord;
        wr.w.id = "W" + std::to_string(ord + 1);
        wr.w.rating = rng.experience.beta_scaled(cfg.workers.experience.min,
                                                 cfg.workers.experience.max,
                                                 cfg.workers.experience.alpha,
                                                 cfg.workers.experience.beta);
        wr.w.belt = belt_of(wr.w.rating);
        wr.w.reliability = rng.reliability.pert(cfg.workers.reliability.min,
                                                cfg.workers.reliability.mode,
                                                cfg.workers.reliability.max);
        wr.w.skills = sample_technologies(cfg.workers.skills_per_worker, rng.experience);
        workers.push_back(std::move(wr));
        stats.workers_arrived += 1;
        WorkerRt& ref = workers.back();
        emit(now, TraceEventKind::WorkerArrived, "", ref.w.id,
             "rating=" + format_number(ref.w.rating) + ";belt=" + to_string(ref.w.belt) +
                 ";reliability=" + format_number(ref.w.reliability));
        if (cfg.decisions.reg_event_rate > 0.0)
            push(now + rng.decisions.exponential(cfg.decisions.reg_event_rate), Ev::RegDecision,
                 ord);
        if (worker_rate() > 0.0)
            push(now + rng.worker_arrivals.exponential(worker_rate()), Ev::WorkerArrival,
                 kStochastic);
    }

    bool registering_open(const TaskRt& tr, double now) const {
        return !is_terminal(tr.task.state) && now < tr.deadline;
    }

    void worker_open_changed(WorkerRt& wr, double now) {
        bool has_open = !wr.w.open_tasks.empty();
        if (has_open && !wr.sub_active) {
            wr.sub_active = true;
            wr.active_since = now;
            wr.sub_epoch += 1;
            if (cfg.decisions.sub_event_rate > 0.0)
                push(now + rng.decisions.exponential(cfg.decisions.sub_event_rate),
                     Ev::SubDecision, wr.ordinal, wr.sub_epoch);
        } else if (!has_open && wr.sub_active) {
            wr.sub_active = false;
            stats.active_worker_days += now - wr.active_since;
            wr.sub_epoch += 1;
        }
    }

    void advance_prediction(TaskRt& tr, const predictor::PredictionEvent& ev, double now) {
        tr.pred = predictor::advance(std::move(tr.pred), ev, cfg.prediction);
        emit(now, TraceEventKind::PredictionUpdated, tr.task.id, "",
             std::string("phase=") + predictor::to_string(tr.pred.phase) +
                 ";value=" + format_number(tr.pred.current()));
    }

    void register_worker(WorkerRt& wr, TaskRt& tr, double now) {
        if (tr.task.state == TaskState::Arrived) {
            tr.task = transition(std::move(tr.task), TaskEvent::FirstRegistration);
            registered_tasks += 1;
        }
        tr.task.registrants.push_back({wr.w.id, now});
        wr.w.open_tasks.push_back(tr.task.id);
        wr.w.reg_history.push_back(tr.task.id);
        stats.registrations += 1;
        stats.registrations_by_belt[static_cast<std::size_t>(wr.w.belt)] += 1;
        emit(now, TraceEventKind::Registered, tr.task.id, wr.w.id,
             "order=" + std::to_string(tr.task.registrants.size()));
        advance_prediction(tr, predictor::RegistrationObserved{now, wr.w.reliability, {}}, now);
        worker_open_changed(wr, now);
    }

    void on_reg_decision(long worker_ord, double now) {
        WorkerRt& wr = workers[static_cast<std::size_t>(worker_ord)];
        const DecisionParams& d = cfg.decisions;
        if (wr.w.rating > 0.0 && d.allowed_belts[static_cast<std::size_t>(wr.w.belt)]) {
            for (auto& tr : tasks) {
                if (static_cast<int>(wr.w.open_tasks.size()) >= d.open_task_cap)
                    break;
                if (!registering_open(tr, now))
                    continue;
                if (cfg.decisions.attraction_filter && !tr.attracted)
                    continue;
                if (tr.task.has_registrant(wr.w.id))
                    continue;
                if (!wr.w.has_skills_for(tr.task))
                    continue;
                double u = rng.decisions.uniform();
                if (u <= d.effective_reg_threshold(tr.task.similarity_factor))
                    continue;
                if (static_cast<int>(tr.task.registrants.size()) < d.crowd_cap) {
                    register_worker(wr, tr, now);
                } else {
                    stats.over_cap_attempts += 1;
                    if (rng.decisions.bernoulli(d.over_cap_bernoulli_p)) {
                        stats.over_cap_accepts += 1;
                        register_worker(wr, tr, now);
                    }
                }
            }
        }
        if (cfg.decisions.reg_event_rate > 0.0)
            push(now + rng.decisions.exponential(cfg.decisions.reg_event_rate), Ev::RegDecision,
                 worker_ord);
    }

    void update_reliability(WorkerRt& wr) {
        const int window = cfg.decisions.reliability_window;
        int n = static_cast<int>(wr.w.reg_history.size());
        int take = std::min(window, n);
        if (take == 0)
            return;
        std::set<std::string> submitted(wr.w.sub_history.begin(), wr.w.sub_history.end());
        int hits = 0;
        for (int i = n - take; i < n; ++i)
            if (submitted.count(wr.w.reg_history[static_cast<std::size_t>(i)]))
                ++hits;
        wr.w.reliability = static_cast<double>(hits) / take;
    }

    void submit(WorkerRt& wr, TaskRt& tr, double now) {
        double score = 100.0 * rng.scores.uniform();
        if (tr.task.state == TaskState::Registered) {
            tr.task = transition(std::move(tr.task), TaskEvent::FirstSubmission);
            submitted_tasks += 1;
        }
        tr.task.submitters.push_back({wr.w.id, now, score});
        if (!tr.task.best_score || score > *tr.task.best_score) {
            tr.task.best_score = score;
            tr.task.winner = wr.w.id; // provisional until peer review
        }
        stats.submissions += 1;
        stats.submissions_by_belt[static_cast<std::size_t>(wr.w.belt)] += 1;
        wr.w.sub_history.push_back(tr.task.id);
        wr.w.last_score = score;
        update_reliability(wr);
        double target = std::clamp(score * 30.0, 0.0, cfg.workers.experience.max);
        wr.w.rating += cfg.decisions.rating_update_step * (target - wr.w.rating);
        wr.w.belt = belt_of(wr.w.rating);
        std::erase(wr.w.open_tasks, tr.task.id);
        emit(now, TraceEventKind::Submitted, tr.task.id, wr.w.id,
             "score=" + format_number(score) + ";best=" + format_number(*tr.task.best_score));
        advance_prediction(tr, predictor::SubmissionObserved{now}, now);
        worker_open_changed(wr, now);
    }

    void on_sub_decision(long worker_ord, long epoch, double now) {
        WorkerRt& wr = workers[static_cast<std::size_t>(worker_ord)];
        if (epoch != wr.sub_epoch || !wr.sub_active)
            return; // stale clock
        stats.submission_decision_events += 1;
        const DecisionParams& d = cfg.decisions;
        double y = d.belt_propensity[static_cast<std::size_t>(wr.w.belt)];
        std::vector<std::string> open = wr.w.open_tasks;
        for (const auto& task_id : open) {
            auto it = task_index.find(task_id);
            if (it == task_index.end())
                continue;
            TaskRt& tr = tasks[static_cast<std::size_t>(it->second)];
            if (is_terminal(tr.task.state) || now >= tr.deadline)
                continue; // past-deadline submissions are ignored
            double x = rng.decisions.uniform();
            if (x * y < d.effective_sub_threshold(tr.task.similarity_factor))
                submit(wr, tr, now);
        }
        if (wr.sub_active && cfg.decisions.sub_event_rate > 0.0)
            push(now + rng.decisions.exponential(cfg.decisions.sub_event_rate), Ev::SubDecision,
                 worker_ord, wr.sub_epoch);
    }

    void schedule_successors(const TaskRt& tr, double now) {
        if (cfg.task_source.kind != TaskSource::Kind::Schedule)
            return;
        for (const auto& succ_id : tr.task.seq_links) {
            for (std::size_t i = 0; i < cfg.task_source.schedule.size(); ++i) {
                const auto& tmpl = cfg.task_source.schedule[i];
                if (tmpl.id != succ_id || posted_templates.count(tmpl.id))
                    continue;
                push(std::max(now, tmpl.arrival_day), Ev::TaskArrival, static_cast<long>(i),
                     kFromTemplate);
            }
        }
    }

    void repost(TaskRt& tr, double now) {
        if (tr.repost_count >= cfg.repost.max_reposts)
            return;
        PendingRepost pr;
        pr.tmpl.id = tr.task.id + "." + std::to_string(tr.repost_count + 1);
        pr.tmpl.duration = tr.task.duration + cfg.repost.duration_increment_days;
        pr.tmpl.award = tr.task.award;
        pr.tmpl.task_type = tr.task.task_type;
        pr.tmpl.technologies.assign(tr.task.technologies.begin(), tr.task.technologies.end());
        pr.tmpl.requirement = tr.task.requirement_text;
        pr.tmpl.successors = tr.task.seq_links;
        pr.repost_count = tr.repost_count + 1;
        pr.repost_of = tr.task.id;
        pr.similarity = rng.similarity.uniform(cfg.tasks.similarity.min, cfg.tasks.similarity.max);
        pr.tmpl.similarity = pr.similarity;
        pending.push_back(std::move(pr));
        stats.reposts += 1;
        push(now + cfg.repost.delay_days, Ev::TaskArrival,
             static_cast<long>(pending.size() - 1), kFromRepost);
    }

    void release_registrants(TaskRt& tr, double now) {
        for (const auto& reg : tr.task.registrants) {
            auto wit = std::find_if(workers.begin(), workers.end(), [&](const WorkerRt& w) {
                return w.w.id == reg.worker_id;
            });
            if (wit == workers.end())
                continue;
            std::erase(wit->w.open_tasks, tr.task.id);
            worker_open_changed(*wit, now);
        }
    }

    void on_review(long task_ord, double now) {
        TaskRt& tr = tasks[static_cast<std::size_t>(task_ord)];
        if (is_terminal(tr.task.state))
            throw StateError("review on already-terminal task " + tr.task.id);
        if (tr.task.registrants.empty()) {
            tr.task = transition(std::move(tr.task), TaskEvent::DeadlineNoRegistrants);
            stats.starved += 1;
            emit(now, TraceEventKind::Starved, tr.task.id, "", "");
            repost(tr, now);
            return;
        }
        if (tr.task.submitters.empty()) {
            tr.task = transition(std::move(tr.task), TaskEvent::DeadlineNoSubmissions);
            stats.dropped += 1;
            emit(now, TraceEventKind::Dropped, tr.task.id, "",
                 "registrants=" + std::to_string(tr.task.registrants.size()));
            release_registrants(tr, now);
            repost(tr, now);
            return;
        }
        tr.task = transition(std::move(tr.task), TaskEvent::DeadlineReview);
        emit(now, TraceEventKind::Reviewed, tr.task.id, "",
             "submissions=" + std::to_string(tr.task.submitters.size()) +
                 ";best=" + format_number(*tr.task.best_score));
        if (cfg.review.passes(*tr.task.best_score)) {
            tr.task = transition(std::move(tr.task), TaskEvent::ReviewPassed);
            stats.completed += 1;
            advance_prediction(tr, predictor::CompletionObserved{now}, now);
            auto wit = std::find_if(workers.begin(), workers.end(), [&](const WorkerRt& w) {
                return w.w.id == *tr.task.winner;
            });
            if (wit != workers.end()) {
                wit->w.wins += 1;
                wit->w.win_history.push_back(tr.task.id);
            }
            emit(now, TraceEventKind::Completed, tr.task.id, *tr.task.winner,
                 "score=" + format_number(*tr.task.best_score));
            release_registrants(tr, now);
            schedule_successors(tr, now);
        } else {
            tr.task = transition(std::move(tr.task), TaskEvent::ReviewFailed);
            stats.failed += 1;
            emit(now, TraceEventKind::Failed, tr.task.id, "",
                 "best=" + format_number(*tr.task.best_score));
            release_registrants(tr, now);
            repost(tr, now);
        }
    }

    void take_snapshot(double now) {
        PlatformSnapshot s;
        s.time = now;
        s.arrived = stats.tasks_arrived;
        s.completed = stats.completed;
        s.failed = stats.failed;
        s.starved = stats.starved;
        s.dropped = stats.dropped;
        s.registered = registered_tasks;
        s.submitted = submitted_tasks;
        s.available_workers = stats.workers_arrived;
        for (const auto& tr : tasks)
            if (!is_terminal(tr.task.state))
                s.open_tasks += 1;
        int busy = 0;
        for (const auto& wr : workers)
            if (!wr.w.open_tasks.empty())
                ++busy;
        s.utilization = workers.empty() ? 0.0 : static_cast<double>(busy) / workers.size();
        if (registered_tasks > 0) {
            s.tcr = predictor::task_completion_ratio(stats.completed, registered_tasks);
            s.tfr = predictor::task_failure_ratio(stats.completed, registered_tasks);
            s.tsr = predictor::task_submission_ratio(submitted_tasks, registered_tasks);
        }
        snapshots.push_back(s);
    }

    SimulationResult finish(double horizon) {
        for (auto& wr : workers) {
            if (wr.sub_active) {
                stats.active_worker_days += horizon - wr.active_since;
                wr.sub_active = false;
            }
        }
        SimulationResult res;
        res.trace = std::move(trace);
        res.snapshots = std::move(snapshots);
        res.stats = stats;
        res.tasks.reserve(tasks.size());
        for (auto& tr : tasks) {
            res.predictions.emplace(tr.task.id, std::move(tr.pred));
            res.tasks.push_back(std::move(tr.task));
        }
        res.workers.reserve(workers.size());
        for (auto& wr : workers)
            res.workers.push_back(std::move(wr.w));
        return res;
    }

    SimulationResult run() {
        prime();
        double horizon = cfg.horizon_days;
        while (!calendar.empty()) {
            SchedEvent ev = calendar.top();
            if (ev.time > horizon + 1e-9)
                break;
            calendar.pop();
            switch (ev.kind) {
            case Ev::Review: on_review(ev.entity, ev.time); break;
            case Ev::TaskArrival: on_task_arrival(ev, ev.time); break;
            case Ev::WorkerArrival: on_worker_arrival(ev.time); break;
            case Ev::RegDecision: on_reg_decision(ev.entity, ev.time); break;
            case Ev::SubDecision: on_sub_decision(ev.entity, ev.aux, ev.time); break;
            case Ev::Snapshot: take_snapshot(ev.time); break;
            }
        }
        return finish(horizon);
    }
};

Simulation::Simulation(SimulationConfig config) : config_(std::move(config)) {
    config_.validate();
}

SimulationResult Simulation::run() {
    Impl impl(config_, RngStreams::from_seed(config_.seed));
    return impl.run();
}

SimulationResult run_replication(const SimulationConfig& config, std::uint64_t replication_index) {
    config.validate();
    Impl_run_replication:;
    Simulation::Impl impl(config, RngStreams::for_replication(config.seed, replication_index));
    return impl.run();
}

} // namespace csdsim::engine
