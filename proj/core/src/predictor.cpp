#include "csdsim/predictor.hpp"

#include "csdsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace csdsim::predictor {

double task_completion_ratio(int completed, int registered) {
    if (registered <= 0)
        throw DomainError("task_completion_ratio: registered must be > 0");
    if (completed > registered)
        throw DomainError("task_completion_ratio: completed exceeds registered");
    return static_cast<double>(completed) / registered;
}

double task_failure_ratio(int completed, int registered) {
    return 1.0 - task_completion_ratio(completed, registered);
}

double fpr(const std::vector<std::pair<double, double>>& registrants, double empty_prior) {
    if (registrants.empty())
        return empty_prior;
    double sum_re = 0.0;
    double sum_rep = 0.0;
    for (const auto& [re, p] : registrants) {
        sum_re += re;
        sum_rep += re * p;
    }
    // Boundary sums fall into the lower-divisor branch.
    double divisor;
    if (sum_re > 2.0)
        divisor = 3.0;
    else if (sum_re > 1.0)
        divisor = 2.0;
    else
        divisor = 1.0;
    return std::clamp(sum_rep / divisor, 0.0, 1.0);
}

double task_submission_ratio(int submitted, int registered) {
    if (registered <= 0)
        throw DomainError("task_submission_ratio: registered must be > 0");
    return static_cast<double>(submitted) / registered;
}

double fps(double tsr, double scale) {
    return std::clamp(0.0473 * (tsr * scale) + 0.014, 0.0, 1.0);
}

double predict_submissions(double parallel_tasks, double registrants, double award_usd,
                           double duration_days, const RegressionModel& model) {
    double v = model.intercept + model.coef_parallel * parallel_tasks +
               model.coef_registrants * registrants +
               model.coef_award * (award_usd / model.award_unit) +
               model.coef_duration * (duration_days / model.duration_unit);
    return std::max(0.0, v);
}

const char* to_string(Phase p) {
    return p == Phase::Registration ? "registration" : "submission";
}

PredictionState make_state(const std::string& task_id, const PredictorConfig& cfg) {
    PredictionState s;
    s.task_id = task_id;
    s.fpr_value = cfg.empty_fpr_prior;
    return s;
}

namespace {

void record(PredictionState& s, double time) {
    s.history.push_back({time, s.phase, s.current()});
}

} // namespace

PredictionState advance(PredictionState state, const PredictionEvent& event,
                        const PredictorConfig& cfg) {
    if (const auto* reg = std::get_if<RegistrationObserved>(&event)) {
        state.registrations += 1;
        state.registered_reliabilities.push_back(reg->reliability);
        double p = reg->p_no_sub ? *reg->p_no_sub : cfg.p_no_sub(reg->reliability);
        state.no_sub_probabilities.push_back(p);
        std::vector<std::pair<double, double>> pairs;
        pairs.reserve(state.registered_reliabilities.size());
        for (std::size_t i = 0; i < state.registered_reliabilities.size(); ++i)
            pairs.emplace_back(state.registered_reliabilities[i], state.no_sub_probabilities[i]);
        state.fpr_value = fpr(pairs, cfg.empty_fpr_prior);
        if (state.phase == Phase::Submission) {
            // Late registration still refreshes the submission-phase ratio.
            state.tsr = task_submission_ratio(state.submissions, state.registrations);
            state.fps_value = fps(state.tsr, cfg.fps_scale);
        }
        record(state, reg->time);
        return state;
    }
    if (const auto* sub = std::get_if<SubmissionObserved>(&event)) {
        if (state.registrations == 0)
            throw StateError("prediction state " + state.task_id +
                             ": submission observed with zero registrants");
        state.submissions += 1;
        state.phase = Phase::Submission;
        state.tsr = task_submission_ratio(state.submissions, state.registrations);
        state.fps_value = fps(state.tsr, cfg.fps_scale);
        record(state, sub->time);
        return state;
    }
    const auto& comp = std::get<CompletionObserved>(event);
    state.completions += 1;
    record(state, comp.time);
    return state;
}

} // namespace csdsim::predictor
