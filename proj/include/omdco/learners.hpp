#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "omdco/domain.hpp"
#include "omdco/exp3s.hpp"
#include "omdco/oco.hpp"
#include "omdco/rng.hpp"

// Composite learners coupling an adversarial-bandit subroutine for the
// discrete choice with the zeroth-order concave learner for the continuous
// point.
//
//   SingleLearner  : one element from [n] per round, one Exp3S instance.
//   MatroidLearner : a subset of size <= H per round, built from H
//                    independent Exp3S copies each owning one slate slot.
//
// decide() and feedback() strictly alternate. All per-round randomness is
// drawn from the caller's RNG handle in a fixed order (documented at each
// decide()), so traces are reproducible under a fixed seed.

namespace omdco {

using ElementSet = std::vector<int>;  // sorted, unique, 0-based

struct Decision {
    ElementSet discrete;
    Vec x;
    std::optional<Vec> x_alt;  // present with two-point feedback
};

// Parameter schedules for the single-element learner.
struct SinglePreset {
    enum class Kind { Thm1a, Thm1b, Thm1c } kind = Kind::Thm1b;
    double mu = 0.0;  // required by Thm1c

    static SinglePreset thm1a() { return {Kind::Thm1a, 0.0}; }
    static SinglePreset thm1b() { return {Kind::Thm1b, 0.0}; }
    static SinglePreset thm1c(double mu) { return {Kind::Thm1c, mu}; }
};

class SingleLearner {
public:
    SingleLearner(int n, const ConvexDomain& domain, const SinglePreset& preset, std::int64_t horizon);

    double gamma() const { return bandit_.gamma(); }
    FeedbackMode mode() const { return oco_.mode(); }
    const OcoLearner& continuous() const { return oco_; }
    const Exp3S& bandit() const { return bandit_; }
    std::int64_t round() const { return round_; }

    // Draw order: bandit arm, then sphere direction.
    Decision decide(Rng& rng);

    // f values must lie in [0, reward_bound]; f_at_alt present iff two-point.
    void feedback(double f_at_x, std::optional<double> f_at_alt, double reward_bound);

private:
    Exp3S bandit_;
    OcoLearner oco_;
    std::int64_t round_ = 1;
    std::optional<int> pending_arm_;
};

// Parameter schedules for the uniform-matroid learner. gamma/rho overrides
// support experiment variants that keep a preset's step sizes but tune the
// exploration rates.
struct MatroidPreset {
    enum class Kind { Thm2a, Thm2b } kind = Kind::Thm2a;
    double mu = 0.0;  // required by Thm2b
    std::optional<double> gamma_override;
    std::optional<double> rho_override;

    static MatroidPreset thm2a() { return {Kind::Thm2a, 0.0, std::nullopt, std::nullopt}; }
    static MatroidPreset thm2b(double mu) { return {Kind::Thm2b, mu, std::nullopt, std::nullopt}; }
    MatroidPreset with_gamma(double gamma) const {
        MatroidPreset p = *this;
        p.gamma_override = gamma;
        return p;
    }
    MatroidPreset with_rho(double rho) const {
        MatroidPreset p = *this;
        p.rho_override = rho;
        return p;
    }
};

class MatroidLearner {
public:
    // Draws the initial slate (one arm per copy) from rng.
    MatroidLearner(int n, int cardinality_cap, const ConvexDomain& domain, const MatroidPreset& preset,
                   std::int64_t horizon, Rng& rng);

    double gamma() const { return gamma_; }
    double rho_tilde() const { return rho_tilde_; }
    int cardinality_cap() const { return cap_; }
    const std::vector<int>& slate() const { return slate_; }
    const OcoLearner& continuous() const { return oco_; }
    const Exp3S& copy(int slot) const { return copies_[static_cast<std::size_t>(slot)]; }
    std::int64_t round() const { return round_; }

    // Probability that any one copy's reveal gate fires in a round.
    double effective_observe_rate() const;

    // Draw order: explore gate, slot index, explored element, then sphere
    // direction.
    Decision decide(Rng& rng);

    // Feeds every copy its gated reward over the centered range
    // [-reward_bound, reward_bound], applies the two-point continuous
    // update, and redraws the slate for the next round.
    void feedback(double f_at_x, double f_at_alt, double reward_bound, Rng& rng);

    // Exposed for tests: the gate variables of the pending round.
    struct PendingRound {
        bool explore;       // realized Bernoulli(rho_tilde)
        int slot;           // 0-based slot index l_t - 1
        int element;        // explored element i_t
        ElementSet played;  // the set handed out by decide()
    };
    const std::optional<PendingRound>& pending() const { return pending_; }

private:
    int n_;
    int cap_;
    double gamma_ = 0.0;
    double rho_tilde_ = 0.0;
    std::vector<Exp3S> copies_;
    std::vector<int> slate_;
    OcoLearner oco_;
    std::int64_t round_ = 1;
    std::optional<PendingRound> pending_;
};

}  // namespace omdco
