#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omdco/domain.hpp"
#include "omdco/oracle.hpp"
#include "omdco/rewards.hpp"

// Experiment runner: wires an adversary schedule, a composite learner, and
// the brute-force oracle into seeded trials; aggregates regret metrics into
// per-horizon quantile summaries and CSV files.
//
// Each trial owns two independent streams derived from the master seed: one
// for the learner's randomness and one for the adversary's coefficient
// draws. Trials are embarrassingly parallel; run_experiment has an OpenMP
// path over trials and the serial loop kept as its reference, both writing
// into per-trial slots so the aggregation (a single-threaded reduction in
// trial order) is identical.

namespace omdco {

struct AlphaMode {
    enum class Kind { Fixed, FromProfile } kind = Kind::Fixed;
    double value = 1.0;
};

struct AdversaryConfig {
    AdversarySchedule::Mode mode = AdversarySchedule::Mode::Redraw;
    int max_switches = 0;      // LimitedSwitch only
    bool auto_switches = false;  // lambda = ceil(T^(1/6)) per horizon
};

struct ExperimentConfig {
    int n = 5;
    int H = 3;
    ConvexDomain domain = ConvexDomain::box(Vec{-1, -1, -1, -1, -1}, Vec{4, 4, 4, 4, 4});
    std::string algorithm = "matroid";  // "single" | "matroid"
    std::string preset = "thm2b";       // thm1a|thm1b|thm1c|thm2a|thm2b
    double mu = 2.0;                    // required by thm1c / thm2b
    std::string gamma_rule = "preset";  // "preset" | "limited_switch"
    RewardFamily family = RewardFamily::Quadratic;
    CoefficientBounds bounds;
    AdversaryConfig adversary;
    AlphaMode alpha;
    OracleOptions oracle;
    std::vector<std::int64_t> horizons = {500, 2000, 8000};
    int trials = 50;
    std::uint64_t seed = 1;
    bool emit_traces = false;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

struct RegretTrace {
    std::vector<double> algorithm_reward;  // f_t(S_t, x_t), the played point
    std::vector<double> oracle_value;      // f_t(S*_t, x*_t)
    VariationStats stats;                  // of the oracle trajectory
    double alpha = 1.0;                    // factor used for this trial

    std::vector<double> cumulative_regret(double alpha_value) const;
};

// alpha * sum(oracle) - sum(algorithm) over the whole trace.
double compute_regret(const RegretTrace& trace, double alpha);

struct PlayedRound {
    ElementSet discrete;
    Vec x;
};

// Hook for adversaries that react to the learner: given the 1-based round
// and every decision played before it, produce that round's reward
// function. Functions returned must respect the config's coefficient
// bounds (the harness keeps using the schedule-level reward bound). The
// shipped schedules are oblivious and leave this unset.
using AdaptiveAdversary = std::function<std::shared_ptr<const RewardFunction>(
    std::int64_t t, const std::vector<PlayedRound>& history)>;

RegretTrace run_trial(const ExperimentConfig& config, std::int64_t horizon, int trial_index,
                      const AdaptiveAdversary& adaptive = nullptr);

struct Summary {
    struct Row {
        std::int64_t horizon = 0;
        std::string metric;
        double mean = 0.0, q10 = 0.0, q50 = 0.0, q90 = 0.0;
    };
    std::vector<Row> rows;
};

Summary run_experiment(const ExperimentConfig& config, Exec exec = Exec::Parallel);

// Per-trial metric values grouped per horizon, exposed for the acceptance
// checks that need medians of individual metrics.
std::vector<double> trial_metric(const ExperimentConfig& config, std::int64_t horizon,
                                 const std::string& metric, Exec exec = Exec::Parallel);

// Quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);

// Summary CSV: header "T,metric,mean,q10,q50,q90", 12 significant digits,
// LF line endings. parse_summary_csv inverts emit_summary_csv.
void emit_summary_csv(const Summary& summary, const std::string& path);
Summary parse_summary_csv(const std::string& path);
void emit_trace_csv(const RegretTrace& trace, const std::string& path);

// Names of the per-trial metrics, in emission order.
const std::vector<std::string>& metric_names();

// Effective switch budget for a horizon under the config's adversary.
int effective_switches(const ExperimentConfig& config, std::int64_t horizon);

// Exp3.S exploration rate for a horizon under the config's gamma rule.
std::optional<double> gamma_override(const ExperimentConfig& config, std::int64_t horizon);

// Profile of the induced set functions S -> f_t(S, x*_t) across a horizon:
// worst-case ratio/curvature and the implied approximation factor.
struct OracleProfile {
    double kappa = 1.0;
    double curvature = 0.0;
    double alpha = 1.0;
};
OracleProfile oracle_profile(const ExperimentConfig& config, std::int64_t horizon, int trial_index = 0);

}  // namespace omdco
