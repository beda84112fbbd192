#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "omdco/rng.hpp"

// Exp3.S-style adversarial bandit with gated, range-shifted reward feedback.
//
//   p_j   = (1-gamma) * w_j / sum(w) + gamma/n
//   rhat  = observed ? (value - a) / (p_drawn * (b - a)) : 0   (drawn arm only)
//   w_j  <- w_j * exp(gamma * rhat_j / n) + (e / (n*T)) * sum(w)
//
// The Bernoulli gate that decides whether a round's reward is revealed lives
// with the caller; this learner receives the realized (value, observed) pair
// together with the reward range [a, b] for that feed. draw() and feed()
// must strictly alternate.

namespace omdco {

struct BanditFeedback {
    double value = 0.0;   // revealed scalar; ignored when !observed
    bool observed = true; // whether the gated reveal fired this round
    double a = 0.0;       // reward range lower bound
    double b = 1.0;       // reward range upper bound
};

class Exp3S {
public:
    Exp3S(int n, double gamma, std::int64_t horizon);

    // Diagnostic factory: start from prescribed positive weights instead of
    // the all-ones initialization.
    static Exp3S from_weights(std::vector<double> weights, double gamma, std::int64_t horizon);

    int num_arms() const { return n_; }
    double gamma() const { return gamma_; }

    // Samples an arm from the current probabilities (cumulative-sum
    // inversion on a single uniform variate) and caches (arm, p_arm) for the
    // matching feed. Throws if a feed is already pending.
    int draw(Rng& rng);

    void feed(const BanditFeedback& fb);

    std::vector<double> probabilities() const;
    const std::vector<double>& weights() const { return weights_; }
    bool feed_pending() const { return pending_.has_value(); }
    std::int64_t round() const { return round_; }

private:
    int n_;
    double gamma_;
    std::int64_t horizon_;
    std::vector<double> weights_;
    std::int64_t round_ = 1;

    struct PendingDraw {
        int arm;
        double prob;
    };
    std::optional<PendingDraw> pending_;
};

}  // namespace omdco
