#include "omdco/learners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace omdco {
namespace {

double clamp_unit(double v) { return std::min(1.0, v); }

ElementSet as_sorted_set(std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return elems;
}

void check_reward_range(double value, double bound, const char* who) {
    if (!(value >= -1e-9 && value <= bound + 1e-9))
        throw std::invalid_argument(std::string(who) + ": reward outside [0, C]");
}

OcoPreset single_oco_preset(const SinglePreset& preset, const ConvexDomain& domain, double T) {
    switch (preset.kind) {
        case SinglePreset::Kind::Thm1a:
            return OcoPreset::prop2a();
        case SinglePreset::Kind::Thm1b:
            return OcoPreset::prop2b();
        case SinglePreset::Kind::Thm1c:
            // Keeps eta_t = 1/(t*mu) but widens the perturbation radius to
            // r/T^{1/4} as the composite schedule prescribes.
            return OcoPreset::prop2c(preset.mu).with_delta(domain.inner_radius() / std::pow(T, 0.25));
    }
    throw std::invalid_argument("SingleLearner: invalid preset");
}

double single_gamma(const SinglePreset& preset, int n, double T) {
    switch (preset.kind) {
        case SinglePreset::Kind::Thm1a:
            return clamp_unit(std::sqrt(n / std::pow(T, 0.25)));
        case SinglePreset::Kind::Thm1b:
            return clamp_unit(std::sqrt(n / std::sqrt(T)));
        case SinglePreset::Kind::Thm1c:
            return clamp_unit(std::sqrt(n / T));
    }
    throw std::invalid_argument("SingleLearner: invalid preset");
}

FeedbackMode single_mode(const SinglePreset& preset) {
    return preset.kind == SinglePreset::Kind::Thm1a ? FeedbackMode::SinglePoint : FeedbackMode::TwoPoint;
}

}  // namespace

SingleLearner::SingleLearner(int n, const ConvexDomain& domain, const SinglePreset& preset,
                             std::int64_t horizon)
    : bandit_(n, single_gamma(preset, n, static_cast<double>(horizon)), horizon),
      oco_(domain, single_mode(preset), single_oco_preset(preset, domain, static_cast<double>(horizon)),
           horizon) {
    if (horizon < 2) throw std::invalid_argument("SingleLearner: horizon must be >= 2");
}

Decision SingleLearner::decide(Rng& rng) {
    if (pending_arm_) throw std::logic_error("SingleLearner::decide: feedback for previous round pending");
    int arm = bandit_.draw(rng);
    Probe probe = oco_.propose(rng);
    pending_arm_ = arm;
    Decision dec;
    dec.discrete = {arm};
    dec.x = std::move(probe.x);
    if (oco_.mode() == FeedbackMode::TwoPoint) dec.x_alt = std::move(probe.x_alt);
    return dec;
}

void SingleLearner::feedback(double f_at_x, std::optional<double> f_at_alt, double reward_bound) {
    if (!pending_arm_) throw std::logic_error("SingleLearner::feedback: no decision pending");
    check_reward_range(f_at_x, reward_bound, "SingleLearner::feedback");
    if (f_at_alt) check_reward_range(*f_at_alt, reward_bound, "SingleLearner::feedback");
    bandit_.feed(BanditFeedback{f_at_x, true, 0.0, reward_bound});
    oco_.update(f_at_x, f_at_alt);
    ++round_;
    pending_arm_.reset();
}

namespace {

OcoPreset matroid_oco_preset(const MatroidPreset& preset, const ConvexDomain& domain, double T) {
    switch (preset.kind) {
        case MatroidPreset::Kind::Thm2a:
            return OcoPreset::prop2b();
        case MatroidPreset::Kind::Thm2b:
            return OcoPreset::prop2c(preset.mu)
                .with_delta(domain.inner_radius() * std::log(T) / T);
    }
    throw std::invalid_argument("MatroidLearner: invalid preset");
}

double matroid_gamma(const MatroidPreset& preset, int n, double T) {
    if (preset.gamma_override) {
        if (!(*preset.gamma_override > 0.0 && *preset.gamma_override <= 1.0))
            throw std::invalid_argument("MatroidLearner: gamma override must be in (0,1]");
        return *preset.gamma_override;
    }
    switch (preset.kind) {
        case MatroidPreset::Kind::Thm2a:
            return clamp_unit(n / std::pow(T, 1.0 / 6.0));
        case MatroidPreset::Kind::Thm2b:
            return clamp_unit(n / std::cbrt(T));
    }
    throw std::invalid_argument("MatroidLearner: invalid preset");
}

double matroid_rho(const MatroidPreset& preset, int cap, double T) {
    if (preset.rho_override) {
        if (!(*preset.rho_override > 0.0 && *preset.rho_override <= 1.0))
            throw std::invalid_argument("MatroidLearner: rho override must be in (0,1]");
        return *preset.rho_override;
    }
    switch (preset.kind) {
        case MatroidPreset::Kind::Thm2a:
            return clamp_unit(std::sqrt(cap / std::cbrt(T)));
        case MatroidPreset::Kind::Thm2b:
            return clamp_unit(std::sqrt(static_cast<double>(cap)) / std::cbrt(T));
    }
    throw std::invalid_argument("MatroidLearner: invalid preset");
}

}  // namespace

MatroidLearner::MatroidLearner(int n, int cardinality_cap, const ConvexDomain& domain,
                               const MatroidPreset& preset, std::int64_t horizon, Rng& rng)
    : n_(n),
      cap_(cardinality_cap),
      gamma_(matroid_gamma(preset, n, static_cast<double>(horizon))),
      rho_tilde_(matroid_rho(preset, cardinality_cap, static_cast<double>(horizon))),
      oco_(domain, FeedbackMode::TwoPoint,
           matroid_oco_preset(preset, domain, static_cast<double>(horizon)), horizon) {
    if (cardinality_cap < 2)
        throw std::invalid_argument("MatroidLearner: cardinality cap must be >= 2 (use SingleLearner)");
    if (horizon < 2) throw std::invalid_argument("MatroidLearner: horizon must be >= 2");
    copies_.reserve(static_cast<std::size_t>(cap_));
    slate_.reserve(static_cast<std::size_t>(cap_));
    for (int l = 0; l < cap_; ++l) {
        copies_.emplace_back(n_, gamma_, horizon);
        slate_.push_back(copies_.back().draw(rng));
    }
}

double MatroidLearner::effective_observe_rate() const {
    return rho_tilde_ / (static_cast<double>(cap_) * static_cast<double>(n_));
}

Decision MatroidLearner::decide(Rng& rng) {
    if (pending_) throw std::logic_error("MatroidLearner::decide: feedback for previous round pending");
    bool explore = rng.bernoulli(rho_tilde_);
    int slot = rng.uniform_int(cap_);
    int element = rng.uniform_int(n_);
    Probe probe = oco_.propose(rng);

    std::vector<int> raw;
    if (explore) {
        raw.assign(slate_.begin(), slate_.begin() + slot);
        raw.push_back(element);
    } else {
        raw = slate_;
    }
    ElementSet played = as_sorted_set(std::move(raw));

    pending_ = PendingRound{explore, slot, element, played};
    Decision dec;
    dec.discrete = std::move(played);
    dec.x = std::move(probe.x);
    dec.x_alt = std::move(probe.x_alt);
    return dec;
}

void MatroidLearner::feedback(double f_at_x, double f_at_alt, double reward_bound, Rng& rng) {
    if (!pending_) throw std::logic_error("MatroidLearner::feedback: no decision pending");
    check_reward_range(f_at_x, reward_bound, "MatroidLearner::feedback");
    check_reward_range(f_at_alt, reward_bound, "MatroidLearner::feedback");
    // Marginal-gain surrogates fed to the copies live in the centered range
    // [-C, C]; the revealed value itself is in [0, C].
    for (int l = 0; l < cap_; ++l) {
        bool observed = pending_->explore && pending_->slot == l && pending_->element == slate_[l];
        copies_[static_cast<std::size_t>(l)].feed(
            BanditFeedback{f_at_x, observed, -reward_bound, reward_bound});
    }
    oco_.update(f_at_x, f_at_alt);
    for (int l = 0; l < cap_; ++l) slate_[static_cast<std::size_t>(l)] = copies_[static_cast<std::size_t>(l)].draw(rng);
    ++round_;
    pending_.reset();
}

}  // namespace omdco
