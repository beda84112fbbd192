#include "omdco/oco.hpp"

#include <cmath>
#include <stdexcept>

namespace omdco {

OcoLearner::OcoLearner(const ConvexDomain& domain, FeedbackMode mode, const OcoPreset& preset,
                       std::int64_t horizon, const std::optional<Vec>& z_init)
    : domain_(&domain), mode_(mode) {
    if (horizon < 2) throw std::invalid_argument("OcoLearner: horizon must be >= 2");
    double T = static_cast<double>(horizon);
    double r = domain.inner_radius();
    switch (preset.kind) {
        case OcoPreset::Kind::Prop2a:
            if (mode != FeedbackMode::SinglePoint)
                throw std::invalid_argument("OcoLearner: Prop2a preset requires single-point feedback");
            delta_ = r / std::pow(T, 0.25);
            constant_rate_ = 1.0 / std::pow(T, 0.75);
            break;
        case OcoPreset::Kind::Prop2b:
            if (mode != FeedbackMode::TwoPoint)
                throw std::invalid_argument("OcoLearner: Prop2b preset requires two-point feedback");
            delta_ = r / std::sqrt(T);
            constant_rate_ = 1.0 / std::sqrt(T);
            break;
        case OcoPreset::Kind::Prop2c:
            if (mode != FeedbackMode::TwoPoint)
                throw std::invalid_argument("OcoLearner: Prop2c preset requires two-point feedback");
            if (!(preset.mu > 0.0))
                throw std::invalid_argument("OcoLearner: Prop2c preset requires mu > 0");
            delta_ = r / T;
            inverse_mu_ = preset.mu;
            break;
    }
    if (preset.delta_override) delta_ = *preset.delta_override;
    if (!(delta_ > 0.0)) throw std::invalid_argument("OcoLearner: delta must be positive");
    shrink_ = delta_ / r;
    if (!(shrink_ < 1.0)) throw std::invalid_argument("OcoLearner: delta/r must be < 1");

    if (z_init) {
        z_ = domain.project(shrink_, *z_init);
    } else {
        z_.assign(static_cast<std::size_t>(domain.dim()), 0.0);
    }
}

double OcoLearner::learning_rate(std::int64_t t) const {
    if (inverse_mu_ > 0.0) return 1.0 / (static_cast<double>(t) * inverse_mu_);
    return constant_rate_;
}

Probe OcoLearner::propose(Rng& rng) {
    if (pending_) throw std::logic_error("OcoLearner::propose: update for previous probe is still pending");
    UnitVector u = sample_unit_sphere(domain_->dim(), rng);
    Probe probe;
    probe.x = add_scaled(z_, delta_, u.components);
    probe.x_alt = add_scaled(z_, -delta_, u.components);
    probe.u = std::move(u);
    if (!domain_->contains(probe.x, 1e-9) || !domain_->contains(probe.x_alt, 1e-9))
        throw std::logic_error("OcoLearner::propose: probe point escaped the domain");
    pending_ = probe;
    return probe;
}

void OcoLearner::update(double value_at_x, std::optional<double> value_at_alt) {
    if (!pending_) throw std::logic_error("OcoLearner::update: no probe pending");
    if (!std::isfinite(value_at_x)) throw std::invalid_argument("OcoLearner::update: non-finite value");
    double d = static_cast<double>(domain_->dim());
    double scale = 0.0;
    if (mode_ == FeedbackMode::SinglePoint) {
        if (value_at_alt) throw std::invalid_argument("OcoLearner::update: unexpected alt value in single-point mode");
        scale = d / delta_ * value_at_x;
    } else {
        if (!value_at_alt) throw std::invalid_argument("OcoLearner::update: missing alt value in two-point mode");
        if (!std::isfinite(*value_at_alt)) throw std::invalid_argument("OcoLearner::update: non-finite value");
        scale = d / (2.0 * delta_) * (value_at_x - *value_at_alt);
    }
    Vec step = add_scaled(z_, learning_rate(round_) * scale, pending_->u.components);
    z_ = domain_->project(shrink_, step);
    ++round_;
    pending_.reset();
}

Vec gradient_estimator_mean(const std::function<double(const Vec&)>& h, const Vec& z,
                            double delta, int d, int num_samples, Rng& rng) {
    Vec mean(static_cast<std::size_t>(d), 0.0);
    for (int k = 0; k < num_samples; ++k) {
        UnitVector u = sample_unit_sphere(d, rng);
        double diff = h(add_scaled(z, delta, u.components)) - h(add_scaled(z, -delta, u.components));
        double scale = d / (2.0 * delta) * diff;
        for (int i = 0; i < d; ++i) mean[i] += scale * u.components[i];
    }
    for (int i = 0; i < d; ++i) mean[i] /= static_cast<double>(num_samples);
    return mean;
}

}  // namespace omdco
