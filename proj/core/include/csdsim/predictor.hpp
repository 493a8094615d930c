#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace csdsim::predictor {

/// How P_j (probability of no qualified submission by registrant j) is
/// derived. Default approximates it by the reliability complement.
struct PNoSubStrategy {
    enum class Kind { ReliabilityComplement, Constant };
    Kind kind = Kind::ReliabilityComplement;
    double constant = 0.5; // used when kind == Constant

    double operator()(double reliability) const {
        return kind == Kind::Constant ? constant : 1.0 - reliability;
    }
};

struct PredictorConfig {
    double fps_scale = 1.0;     // TSR multiplier inside the submission-phase model
    double empty_fpr_prior = 1.0; // zero registrants means certain starvation
    PNoSubStrategy p_no_sub;
};

/// Completion ratio: completed / registered. Throws on registered == 0.
double task_completion_ratio(int completed, int registered);

/// Failure ratio: 1 - TCR.
double task_failure_ratio(int completed, int registered);

/// Registration-phase failure prediction. Piecewise divisor on the summed
/// reliabilities: <=1 -> 1, (1,2] -> 2, >2 -> 3, applied to sum(Re_j * P_j);
/// clamped to [0,1]. Empty registrant list yields the configured prior.
double fpr(const std::vector<std::pair<double, double>>& registrants,
           double empty_prior = 1.0);

/// Submission ratio: submitted / registered. Throws on registered == 0.
double task_submission_ratio(int submitted, int registered);

/// Submission-phase failure prediction: 0.0473 * (tsr * scale) + 0.014,
/// clamped to [0,1]. scale = 1 is the literal model; scale = 100 reads the
/// ratio as a percentage.
double fps(double tsr, double scale = 1.0);

/// Submission-count regression (defaults are the fitted values). Award and
/// duration carry explicit unit scales; the default reads award in hundreds
/// of dollars and duration in days.
struct RegressionModel {
    double intercept = 2.768;
    double coef_parallel = 1.000;
    double coef_registrants = -0.001;
    double coef_award = 0.151;
    double coef_duration = 0.294;
    double award_unit = 100.0;  // USD per model unit
    double duration_unit = 1.0; // days per model unit
};

/// Expected submissions, floored at 0.
double predict_submissions(double parallel_tasks, double registrants, double award_usd,
                           double duration_days, const RegressionModel& model = {});

enum class Phase { Registration, Submission };

const char* to_string(Phase p);

struct PredictionPoint {
    double time = 0.0;
    Phase phase = Phase::Registration;
    double value = 0.0;
};

/// Online per-task prediction state. The phase switches from Registration to
/// Submission exactly once, at the first submission.
struct PredictionState {
    std::string task_id;
    Phase phase = Phase::Registration;
    std::vector<double> registered_reliabilities;
    std::vector<double> no_sub_probabilities;
    int registrations = 0; // R
    int submissions = 0;   // S
    int completions = 0;   // C
    double tsr = 0.0;
    double fpr_value = 1.0;
    double fps_value = 0.0;
    std::vector<PredictionPoint> history;

    /// Current prediction: fpr in the registration phase, fps afterwards.
    double current() const {
        return phase == Phase::Registration ? fpr_value : fps_value;
    }
};

struct RegistrationObserved {
    double time = 0.0;
    double reliability = 0.0;
    std::optional<double> p_no_sub; // overrides the configured strategy
};

struct SubmissionObserved {
    double time = 0.0;
};

struct CompletionObserved {
    double time = 0.0;
};

using PredictionEvent =
    std::variant<RegistrationObserved, SubmissionObserved, CompletionObserved>;

PredictionState make_state(const std::string& task_id, const PredictorConfig& cfg = {});

/// Applies one observed event. Registrations update fpr; the first submission
/// switches the phase; submissions update tsr and fps. Every update appends a
/// history point. Throws StateError on a submission with zero registrants.
PredictionState advance(PredictionState state, const PredictionEvent& event,
                        const PredictorConfig& cfg = {});

} // namespace csdsim::predictor
