#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "omdco/domain.hpp"
#include "omdco/rng.hpp"
#include "omdco/vec.hpp"

// Online concave maximization with bandit (zeroth-order) feedback.
//
// The learner keeps a center z inside the shrunk set (1-xi)*X, probes at
// x = z + delta*u (and x~ = z - delta*u with two-point feedback) for a
// uniformly random unit direction u, forms a gradient estimate
//   g = (d/delta) * h(x) * u                       single-point
//   g = (d/(2*delta)) * (h(x) - h(x~)) * u         two-point
// and ascends: z <- proj_{(1-xi)X}(z + eta_t * g). With xi = delta/r both
// probe points are guaranteed to stay in X.

namespace omdco {

enum class FeedbackMode { SinglePoint, TwoPoint };

struct Probe {
    Vec x;      // point to play
    Vec x_alt;  // second evaluation point; meaningful only with two-point feedback
    UnitVector u;
};

// Step-size presets. Prop2a is single-point only; Prop2b/Prop2c are
// two-point. delta_override lets a composite learner substitute its own
// perturbation radius while keeping the preset's learning-rate rule.
struct OcoPreset {
    enum class Kind { Prop2a, Prop2b, Prop2c } kind = Kind::Prop2b;
    double mu = 0.0;  // strong-concavity modulus, required by Prop2c
    std::optional<double> delta_override;

    static OcoPreset prop2a() { return {Kind::Prop2a, 0.0, std::nullopt}; }
    static OcoPreset prop2b() { return {Kind::Prop2b, 0.0, std::nullopt}; }
    static OcoPreset prop2c(double mu) { return {Kind::Prop2c, mu, std::nullopt}; }
    OcoPreset with_delta(double delta) const {
        OcoPreset p = *this;
        p.delta_override = delta;
        return p;
    }
};

class OcoLearner {
public:
    OcoLearner(const ConvexDomain& domain, FeedbackMode mode, const OcoPreset& preset,
               std::int64_t horizon, const std::optional<Vec>& z_init = std::nullopt);

    FeedbackMode mode() const { return mode_; }
    double delta() const { return delta_; }
    double shrink() const { return shrink_; }
    double learning_rate(std::int64_t t) const;
    const Vec& center() const { return z_; }
    std::int64_t round() const { return round_; }
    bool probe_pending() const { return pending_.has_value(); }

    // Samples a direction, caches the probe, and checks feasibility of both
    // probe points (tolerance 1e-9). Throws on double-propose.
    Probe propose(Rng& rng);

    // Applies the gradient step for the pending probe. value_at_alt must be
    // present exactly when the mode is TwoPoint.
    void update(double value_at_x, std::optional<double> value_at_alt);

private:
    const ConvexDomain* domain_;
    FeedbackMode mode_;
    double delta_ = 0.0;
    double shrink_ = 0.0;
    double constant_rate_ = 0.0;  // used unless inverse_mu_ > 0
    double inverse_mu_ = 0.0;     // eta_t = 1/(t*mu) when > 0
    Vec z_;
    std::int64_t round_ = 1;
    std::optional<Probe> pending_;
};

// Monte-Carlo mean of the two-point sphere-smoothing estimator at z; test
// support for its unbiasedness as a smoothed-gradient estimate.
Vec gradient_estimator_mean(const std::function<double(const Vec&)>& h, const Vec& z,
                            double delta, int d, int num_samples, Rng& rng);

}  // namespace omdco
