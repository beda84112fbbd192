#include "omdco/exp3s.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace omdco {

Exp3S::Exp3S(int n, double gamma, std::int64_t horizon)
    : n_(n), gamma_(gamma), horizon_(horizon), weights_(static_cast<std::size_t>(n > 0 ? n : 0), 1.0) {
    if (n < 1) throw std::invalid_argument("Exp3S: n must be >= 1");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("Exp3S: gamma must be in (0,1]");
    if (horizon < 1) throw std::invalid_argument("Exp3S: horizon must be >= 1");
}

Exp3S Exp3S::from_weights(std::vector<double> weights, double gamma, std::int64_t horizon) {
    Exp3S b(static_cast<int>(weights.size()), gamma, horizon);
    for (double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("Exp3S::from_weights: weights must be positive");
    b.weights_ = std::move(weights);
    return b;
}

std::vector<double> Exp3S::probabilities() const {
    double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    std::vector<double> p(weights_.size());
    for (std::size_t j = 0; j < weights_.size(); ++j)
        p[j] = (1.0 - gamma_) * weights_[j] / total + gamma_ / n_;
    return p;
}

int Exp3S::draw(Rng& rng) {
    if (pending_) throw std::logic_error("Exp3S::draw: feed for previous draw is still pending");
    std::vector<double> p = probabilities();
    double u = rng.uniform();
    double cum = 0.0;
    int arm = n_ - 1;
    for (int j = 0; j < n_; ++j) {
        cum += p[j];
        if (u < cum) {
            arm = j;
            break;
        }
    }
    pending_ = PendingDraw{arm, p[arm]};
    return arm;
}

void Exp3S::feed(const BanditFeedback& fb) {
    if (!pending_) throw std::logic_error("Exp3S::feed: no draw pending");
    if (!(fb.b > fb.a)) throw std::invalid_argument("Exp3S::feed: requires a < b");
    double rhat = 0.0;
    if (fb.observed) {
        if (fb.value < fb.a || fb.value > fb.b)
            throw std::invalid_argument("Exp3S::feed: observed value outside [a,b]");
        rhat = (fb.value - fb.a) / (pending_->prob * (fb.b - fb.a));
    }
    double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    double mix = std::numbers::e / (static_cast<double>(n_) * static_cast<double>(horizon_)) * total;
    for (int j = 0; j < n_; ++j) {
        double boost = (j == pending_->arm) ? std::exp(gamma_ * rhat / n_) : 1.0;
        weights_[j] = weights_[j] * boost + mix;
    }
    // The probability sequence is scale-covariant, so renormalizing guards
    // against overflow without changing behaviour.
    double updated = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (updated > 1e100) {
        for (double& w : weights_) w /= updated;
    }
    ++round_;
    pending_.reset();
}

}  // namespace omdco
