#include "omdco/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace omdco {
namespace {

void require_box(const ConvexDomain& domain, const char* family) {
    if (domain.kind() != ConvexDomain::Kind::Box)
        throw std::invalid_argument(std::string(family) + ": requires a box domain");
}

// Sum of the H largest entries.
double top_sum(Vec values, int H) {
    std::sort(values.begin(), values.end(), std::greater<double>());
    double s = 0.0;
    for (int i = 0; i < H && i < static_cast<int>(values.size()); ++i) s += values[i];
    return s;
}

double top_norm(Vec values, int H) {
    for (double& v : values) v *= v;
    return std::sqrt(top_sum(std::move(values), H));
}

}  // namespace

double RewardFunction::coord_argmax(int, double, double) const {
    throw std::logic_error("RewardFunction: no closed-form argmax for this family");
}

RewardConstants RewardFunction::constants(const ConvexDomain&, int) const {
    throw std::logic_error(
        "RewardFunction: no closed-form constants for this family; estimate them with the oracle grid");
}

// ---- SeparableQuadratic ----------------------------------------------------

SeparableQuadratic::SeparableQuadratic(Vec a, Vec b, Vec c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (a_.empty() || a_.size() != b_.size() || a_.size() != c_.size())
        throw std::invalid_argument("SeparableQuadratic: coefficient lengths must match");
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (!(a_[i] > 0.0)) throw std::invalid_argument("SeparableQuadratic: a_i must be positive");
        if (c_[i] < 0.0) throw std::invalid_argument("SeparableQuadratic: c_i must be nonnegative");
    }
}

SeparableQuadratic::SeparableQuadratic(Vec a, Vec b, Vec c, const ConvexDomain& domain)
    : SeparableQuadratic(std::move(a), std::move(b), std::move(c)) {
    require_box(domain, "SeparableQuadratic");
    if (static_cast<int>(a_.size()) != domain.dim())
        throw std::invalid_argument("SeparableQuadratic: dimension mismatch with domain");
    for (std::size_t i = 0; i < a_.size(); ++i) {
        // Monotonicity in S needs per-element values nonnegative on X; the
        // concave parabola attains its minimum at an interval endpoint.
        double at_lo = coord_objective(static_cast<int>(i), domain.lo()[i]);
        double at_hi = coord_objective(static_cast<int>(i), domain.hi()[i]);
        if (std::min(at_lo, at_hi) < 0.0)
            throw std::invalid_argument("SeparableQuadratic: element value negative on the domain");
    }
}

double SeparableQuadratic::value(const ElementSet& S, const Vec& x) const {
    double s = 0.0;
    for (int i : S) s += coord_objective(i, x[static_cast<std::size_t>(i)]);
    return s;
}

double SeparableQuadratic::coord_objective(int i, double xi) const {
    return -a_[static_cast<std::size_t>(i)] * xi * xi + b_[static_cast<std::size_t>(i)] * xi +
           c_[static_cast<std::size_t>(i)];
}

double SeparableQuadratic::coord_argmax(int i, double lo, double hi) const {
    return std::clamp(b_[static_cast<std::size_t>(i)] / (2.0 * a_[static_cast<std::size_t>(i)]), lo, hi);
}

Vec SeparableQuadratic::gradient(const ElementSet& S, const Vec& x) const {
    Vec g(x.size(), 0.0);
    for (int i : S) g[static_cast<std::size_t>(i)] = coord_gradient(i, x[static_cast<std::size_t>(i)]);
    return g;
}

double SeparableQuadratic::coord_gradient(int i, double xi) const {
    return -2.0 * a_[static_cast<std::size_t>(i)] * xi + b_[static_cast<std::size_t>(i)];
}

RewardConstants SeparableQuadratic::constants(const ConvexDomain& domain, int H) const {
    RewardConstants k;
    Vec peaks(a_.size()), slopes(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) {
        double xstar = coord_argmax(static_cast<int>(i), domain.lo()[i], domain.hi()[i]);
        peaks[i] = coord_objective(static_cast<int>(i), xstar);
        slopes[i] = std::max(std::abs(coord_gradient(static_cast<int>(i), domain.lo()[i])),
                             std::abs(coord_gradient(static_cast<int>(i), domain.hi()[i])));
    }
    k.C = top_sum(std::move(peaks), H);
    k.G = top_norm(std::move(slopes), H);
    k.mu = 2.0 * *std::min_element(a_.begin(), a_.end());
    return k;
}

double SeparableQuadratic::smoothness() const { return 2.0 * *std::max_element(a_.begin(), a_.end()); }

// ---- ModularLinear ----------------------------------------------------------

ModularLinear::ModularLinear(Vec weights, Vec offsets) : w_(std::move(weights)), o_(std::move(offsets)) {
    if (w_.empty() || w_.size() != o_.size())
        throw std::invalid_argument("ModularLinear: weight/offset lengths must match");
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (w_[i] < 0.0) throw std::invalid_argument("ModularLinear: weights must be nonnegative");
        if (o_[i] < 0.0) throw std::invalid_argument("ModularLinear: offsets must be nonnegative");
    }
}

ModularLinear::ModularLinear(Vec weights, Vec offsets, const ConvexDomain& domain)
    : ModularLinear(std::move(weights), std::move(offsets)) {
    require_box(domain, "ModularLinear");
    if (static_cast<int>(w_.size()) != domain.dim())
        throw std::invalid_argument("ModularLinear: dimension mismatch with domain");
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (w_[i] * domain.lo()[i] + o_[i] < 0.0)
            throw std::invalid_argument("ModularLinear: element value negative on the domain");
    }
}

double ModularLinear::value(const ElementSet& S, const Vec& x) const {
    double s = 0.0;
    for (int i : S) s += coord_objective(i, x[static_cast<std::size_t>(i)]);
    return s;
}

double ModularLinear::coord_objective(int i, double xi) const {
    return w_[static_cast<std::size_t>(i)] * xi + o_[static_cast<std::size_t>(i)];
}

double ModularLinear::coord_argmax(int, double, double hi) const { return hi; }

Vec ModularLinear::gradient(const ElementSet& S, const Vec& x) const {
    Vec g(x.size(), 0.0);
    for (int i : S) g[static_cast<std::size_t>(i)] = w_[static_cast<std::size_t>(i)];
    return g;
}

double ModularLinear::coord_gradient(int i, double) const { return w_[static_cast<std::size_t>(i)]; }

RewardConstants ModularLinear::constants(const ConvexDomain& domain, int H) const {
    RewardConstants k;
    Vec peaks(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) peaks[i] = w_[i] * domain.hi()[i] + o_[i];
    k.C = top_sum(std::move(peaks), H);
    k.G = top_norm(w_, H);
    k.mu = 0.0;
    return k;
}

// ---- FacilityLocation --------------------------------------------------------

FacilityLocation::FacilityLocation(std::vector<std::vector<ClippedQuadratic>> pair_components,
                                   const ConvexDomain& domain)
    : n_(static_cast<int>(pair_components.size())), h_(std::move(pair_components)) {
    require_box(domain, "FacilityLocation");
    if (n_ == 0 || n_ != domain.dim())
        throw std::invalid_argument("FacilityLocation: needs an n x n component table matching the domain");
    for (const auto& row : h_) {
        if (static_cast<int>(row.size()) != n_)
            throw std::invalid_argument("FacilityLocation: component table must be square");
    }
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            const ClippedQuadratic& q = h_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!(q.a > 0.0)) throw std::invalid_argument("FacilityLocation: curvature must be positive");
            double lo = domain.lo()[static_cast<std::size_t>(j)];
            double hi = domain.hi()[static_cast<std::size_t>(j)];
            // The clip must stay inactive on X so each piece is concave there.
            if (-q.a * lo * lo + q.b * lo + q.c < 0.0 || -q.a * hi * hi + q.b * hi + q.c < 0.0)
                throw std::invalid_argument("FacilityLocation: component negative on the domain");
        }
    }
}

double FacilityLocation::value(const ElementSet& S, const Vec& x) const {
    double s = 0.0;
    for (int j : S) s += coord_objective(j, x[static_cast<std::size_t>(j)]);
    return s;
}

double FacilityLocation::coord_objective(int j, double xj) const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += h_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(xj);
    return s;
}

Vec FacilityLocation::gradient(const ElementSet& S, const Vec& x) const {
    Vec g(x.size(), 0.0);
    for (int j : S) g[static_cast<std::size_t>(j)] = coord_gradient(j, x[static_cast<std::size_t>(j)]);
    return g;
}

double FacilityLocation::coord_gradient(int j, double xj) const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += h_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].slope(xj);
    return s;
}

RewardConstants FacilityLocation::constants(const ConvexDomain& domain, int H) const {
    RewardConstants k;
    Vec peaks(static_cast<std::size_t>(n_)), slopes(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
        double a_sum = 0.0, b_sum = 0.0, c_sum = 0.0;
        for (int i = 0; i < n_; ++i) {
            const ClippedQuadratic& q = h_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            a_sum += q.a;
            b_sum += q.b;
            c_sum += q.c;
        }
        double lo = domain.lo()[static_cast<std::size_t>(j)];
        double hi = domain.hi()[static_cast<std::size_t>(j)];
        double vertex = std::clamp(b_sum / (2.0 * a_sum), lo, hi);
        peaks[static_cast<std::size_t>(j)] = -a_sum * vertex * vertex + b_sum * vertex + c_sum;
        slopes[static_cast<std::size_t>(j)] =
            std::max(std::abs(-2.0 * a_sum * lo + b_sum), std::abs(-2.0 * a_sum * hi + b_sum));
    }
    double mu = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_; ++j) {
        double a_sum = 0.0;
        for (int i = 0; i < n_; ++i) a_sum += h_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].a;
        mu = std::min(mu, 2.0 * a_sum);
    }
    k.C = top_sum(std::move(peaks), H);
    k.G = top_norm(std::move(slopes), H);
    k.mu = mu;
    return k;
}

double FacilityLocation::smoothness() const {
    double sigma = 0.0;
    for (int j = 0; j < n_; ++j) {
        double a_sum = 0.0;
        for (int i = 0; i < n_; ++i) a_sum += h_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].a;
        sigma = std::max(sigma, 2.0 * a_sum);
    }
    return sigma;
}

// ---- CompositeMonotone ---------------------------------------------------------

namespace {

// Inner sum of a CompositeMonotone exposed as its own separable family; the
// projected-ascent oracle climbs this instead of the composed function.
class InnerSumFamily : public RewardFunction {
public:
    explicit InnerSumFamily(std::vector<ClippedQuadratic> inner) : inner_(std::move(inner)) {}
    int ground_size() const override { return static_cast<int>(inner_.size()); }
    double value(const ElementSet& S, const Vec& x) const override {
        double s = 0.0;
        for (int i : S) s += inner_[static_cast<std::size_t>(i)].eval(x[static_cast<std::size_t>(i)]);
        return s;
    }
    double coord_objective(int i, double xi) const override {
        return inner_[static_cast<std::size_t>(i)].eval(xi);
    }
    Vec gradient(const ElementSet& S, const Vec& x) const override {
        Vec g(x.size(), 0.0);
        for (int i : S)
            g[static_cast<std::size_t>(i)] = inner_[static_cast<std::size_t>(i)].slope(x[static_cast<std::size_t>(i)]);
        return g;
    }
    double coord_gradient(int i, double xi) const override {
        return inner_[static_cast<std::size_t>(i)].slope(xi);
    }
    double smoothness() const override {
        double s = 0.0;
        for (const auto& q : inner_) s = std::max(s, 2.0 * q.a);
        return s;
    }

private:
    std::vector<ClippedQuadratic> inner_;
};

}  // namespace

CompositeMonotone::CompositeMonotone(Outer outer, std::vector<ClippedQuadratic> inner,
                                     const ConvexDomain& domain)
    : outer_(outer), inner_(std::move(inner)) {
    require_box(domain, "CompositeMonotone");
    if (inner_.empty() || static_cast<int>(inner_.size()) != domain.dim())
        throw std::invalid_argument("CompositeMonotone: inner components must match the domain dimension");
    for (std::size_t i = 0; i < inner_.size(); ++i) {
        const ClippedQuadratic& q = inner_[i];
        if (!(q.a > 0.0)) throw std::invalid_argument("CompositeMonotone: curvature must be positive");
        double lo = domain.lo()[i];
        double hi = domain.hi()[i];
        if (-q.a * lo * lo + q.b * lo + q.c < 0.0 || -q.a * hi * hi + q.b * hi + q.c < 0.0)
            throw std::invalid_argument("CompositeMonotone: inner component negative on the domain");
    }
    surrogate_ = std::make_shared<InnerSumFamily>(inner_);
}

double CompositeMonotone::inner_sum(const ElementSet& S, const Vec& x) const {
    double s = 0.0;
    for (int i : S) s += inner_[static_cast<std::size_t>(i)].eval(x[static_cast<std::size_t>(i)]);
    return s;
}

double CompositeMonotone::value(const ElementSet& S, const Vec& x) const {
    double s = inner_sum(S, x);
    return outer_ == Outer::Identity ? s : std::sqrt(s);
}

double CompositeMonotone::coord_objective(int i, double xi) const {
    return inner_[static_cast<std::size_t>(i)].eval(xi);
}

Vec CompositeMonotone::gradient(const ElementSet& S, const Vec& x) const {
    if (outer_ != Outer::Identity)
        throw std::logic_error("CompositeMonotone: gradient of the sqrt composition is not exposed; "
                               "ascend the surrogate instead");
    return surrogate_->gradient(S, x);
}

double CompositeMonotone::coord_gradient(int i, double xi) const {
    if (outer_ != Outer::Identity)
        throw std::logic_error("CompositeMonotone: coordinate gradient unavailable for sqrt outer");
    return inner_[static_cast<std::size_t>(i)].slope(xi);
}

const RewardFunction& CompositeMonotone::ascent_surrogate() const { return *surrogate_; }

RewardConstants CompositeMonotone::constants(const ConvexDomain& domain, int H) const {
    if (outer_ != Outer::Identity)
        throw std::logic_error(
            "CompositeMonotone: no closed-form constants for sqrt outer (unbounded slope near zero); "
            "estimate them with the oracle grid");
    RewardConstants k;
    Vec peaks(inner_.size()), slopes(inner_.size());
    for (std::size_t i = 0; i < inner_.size(); ++i) {
        double lo = domain.lo()[i];
        double hi = domain.hi()[i];
        double vertex = std::clamp(inner_[i].b / (2.0 * inner_[i].a), lo, hi);
        peaks[i] = inner_[i].eval(vertex);
        slopes[i] = std::max(std::abs(inner_[i].slope(lo)), std::abs(inner_[i].slope(hi)));
    }
    k.C = top_sum(std::move(peaks), H);
    k.G = top_norm(std::move(slopes), H);
    double a_min = std::numeric_limits<double>::infinity();
    for (const auto& q : inner_) a_min = std::min(a_min, q.a);
    k.mu = 2.0 * a_min;
    return k;
}

double CompositeMonotone::smoothness() const { return surrogate_->smoothness(); }

// ---- eval -----------------------------------------------------------------------

double eval(const RewardFunction& f, const ConvexDomain& domain, const ElementSet& S, const Vec& x,
            double tol) {
    int n = f.ground_size();
    int prev = -1;
    for (int i : S) {
        if (i < 0 || i >= n) throw std::invalid_argument("eval: element outside the ground set");
        if (i <= prev) throw std::invalid_argument("eval: element set must be sorted and unique");
        prev = i;
    }
    if (!domain.contains(x, tol)) throw std::invalid_argument("eval: point outside the domain");
    return f.value(S, x);
}

// ---- AdversarySchedule --------------------------------------------------------------

AdversarySchedule::AdversarySchedule(RewardFamily family, const CoefficientBounds& bounds,
                                     const ConvexDomain& domain, Mode mode, int max_switches,
                                     std::int64_t horizon, std::uint64_t seed)
    : family_(family),
      bounds_(bounds),
      domain_(&domain),
      mode_(mode),
      max_switches_(max_switches),
      horizon_(horizon),
      seed_(seed) {
    if (horizon_ < 1) throw std::invalid_argument("AdversarySchedule: horizon must be >= 1");
    if (mode_ == Mode::LimitedSwitch) {
        if (max_switches_ < 0) throw std::invalid_argument("AdversarySchedule: switch count must be >= 0");
        std::int64_t segments = static_cast<std::int64_t>(max_switches_) + 1;
        segment_length_ = (horizon_ + segments - 1) / segments;  // ceil(T / (lambda+1))
    }
    if (family_ == RewardFamily::Quadratic) {
        // The quadratic sampler is the only one whose coefficient box can
        // produce non-monotone instances; check its worst corner up front.
        // The other samplers pad offsets to be nonnegative by construction.
        for (int i = 0; i < domain.dim(); ++i) {
            for (double x : {domain.lo()[static_cast<std::size_t>(i)], domain.hi()[static_cast<std::size_t>(i)]}) {
                double worst = -bounds_.a_hi * x * x + std::min(bounds_.b_lo * x, bounds_.b_hi * x) +
                               bounds_.c_fixed;
                if (worst < 0.0)
                    throw std::invalid_argument(
                        "AdversarySchedule: quadratic coefficient range admits non-monotone instances");
            }
        }
    }
}

std::int64_t AdversarySchedule::segment_of(std::int64_t t) const {
    if (t < 1 || t > horizon_) throw std::invalid_argument("AdversarySchedule: round out of range");
    if (mode_ == Mode::Redraw) return t;
    return (t - 1) / segment_length_;
}

std::shared_ptr<const RewardFunction> AdversarySchedule::function_at(std::int64_t t) const {
    std::uint64_t key = static_cast<std::uint64_t>(segment_of(t));
    if (cached_ && cached_key_ == key) return cached_;
    cached_ = draw(key);
    cached_key_ = key;
    return cached_;
}

std::shared_ptr<const RewardFunction> AdversarySchedule::draw(std::uint64_t key) const {
    Rng rng(derive_seed(seed_, {key}));
    int n = domain_->dim();
    switch (family_) {
        case RewardFamily::Quadratic: {
            Vec a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n)), c(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                a[static_cast<std::size_t>(i)] = rng.uniform(bounds_.a_lo, bounds_.a_hi);
                b[static_cast<std::size_t>(i)] = rng.uniform(bounds_.b_lo, bounds_.b_hi);
                c[static_cast<std::size_t>(i)] = bounds_.c_fixed;
            }
            return std::make_shared<SeparableQuadratic>(std::move(a), std::move(b), std::move(c), *domain_);
        }
        case RewardFamily::Modular: {
            Vec w(static_cast<std::size_t>(n)), o(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                double wi = rng.uniform(bounds_.w_lo, bounds_.w_hi);
                w[static_cast<std::size_t>(i)] = wi;
                o[static_cast<std::size_t>(i)] = wi * std::max(0.0, -domain_->lo()[static_cast<std::size_t>(i)]) +
                                                 rng.uniform(bounds_.offset_slack_lo, bounds_.offset_slack_hi);
            }
            return std::make_shared<ModularLinear>(std::move(w), std::move(o), *domain_);
        }
        case RewardFamily::Facility: {
            std::vector<std::vector<ClippedQuadratic>> h(static_cast<std::size_t>(n),
                                                         std::vector<ClippedQuadratic>(static_cast<std::size_t>(n)));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    ClippedQuadratic q;
                    q.a = rng.uniform(bounds_.a_lo, bounds_.a_hi);
                    q.b = rng.uniform(bounds_.b_lo, bounds_.b_hi);
                    double lo = domain_->lo()[static_cast<std::size_t>(j)];
                    double hi = domain_->hi()[static_cast<std::size_t>(j)];
                    double needed = std::max({q.a * lo * lo - q.b * lo, q.a * hi * hi - q.b * hi, 0.0});
                    q.c = needed + rng.uniform(bounds_.offset_slack_lo, bounds_.offset_slack_hi);
                    h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = q;
                }
            }
            return std::make_shared<FacilityLocation>(std::move(h), *domain_);
        }
        case RewardFamily::Composite: {
            std::vector<ClippedQuadratic> inner(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                ClippedQuadratic q;
                q.a = rng.uniform(bounds_.a_lo, bounds_.a_hi);
                q.b = rng.uniform(bounds_.b_lo, bounds_.b_hi);
                double lo = domain_->lo()[static_cast<std::size_t>(i)];
                double hi = domain_->hi()[static_cast<std::size_t>(i)];
                double needed = std::max({q.a * lo * lo - q.b * lo, q.a * hi * hi - q.b * hi, 0.0});
                q.c = needed + rng.uniform(bounds_.offset_slack_lo, bounds_.offset_slack_hi);
                inner[static_cast<std::size_t>(i)] = q;
            }
            return std::make_shared<CompositeMonotone>(
                bounds_.sqrt_outer ? CompositeMonotone::Outer::Sqrt : CompositeMonotone::Outer::Identity,
                std::move(inner), *domain_);
        }
    }
    throw std::invalid_argument("AdversarySchedule: unknown family");
}

double AdversarySchedule::reward_bound(int H) const {
    int n = domain_->dim();
    auto worst_quadratic_peak = [&](double a_lo, double b_hi, double c_hi) {
        // Value at the vertex dominates the max over any interval.
        return b_hi * b_hi / (4.0 * a_lo) + c_hi;
    };
    switch (family_) {
        case RewardFamily::Quadratic:
            return H * worst_quadratic_peak(bounds_.a_lo, std::max(std::abs(bounds_.b_lo), std::abs(bounds_.b_hi)),
                                            bounds_.c_fixed);
        case RewardFamily::Modular: {
            Vec peaks(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                double lo = domain_->lo()[static_cast<std::size_t>(i)];
                double hi = domain_->hi()[static_cast<std::size_t>(i)];
                peaks[static_cast<std::size_t>(i)] =
                    bounds_.w_hi * hi + bounds_.w_hi * std::max(0.0, -lo) + bounds_.offset_slack_hi;
            }
            return top_sum(std::move(peaks), H);
        }
        case RewardFamily::Facility:
        case RewardFamily::Composite: {
            double b_abs = std::max(std::abs(bounds_.b_lo), std::abs(bounds_.b_hi));
            double c_hi = 0.0;
            for (int j = 0; j < n; ++j) {
                double lo = domain_->lo()[static_cast<std::size_t>(j)];
                double hi = domain_->hi()[static_cast<std::size_t>(j)];
                double needed = std::max({bounds_.a_hi * lo * lo + b_abs * std::abs(lo),
                                          bounds_.a_hi * hi * hi + b_abs * hi, 0.0});
                c_hi = std::max(c_hi, needed + bounds_.offset_slack_hi);
            }
            double per_piece = worst_quadratic_peak(bounds_.a_lo, b_abs, c_hi);
            double inner_cap = family_ == RewardFamily::Facility ? static_cast<double>(H) * n * per_piece
                                                                 : static_cast<double>(H) * per_piece;
            return (family_ == RewardFamily::Composite && bounds_.sqrt_outer) ? std::sqrt(inner_cap)
                                                                              : inner_cap;
        }
    }
    throw std::invalid_argument("AdversarySchedule: unknown family");
}

double AdversarySchedule::strong_concavity() const {
    switch (family_) {
        case RewardFamily::Quadratic:
            return 2.0 * bounds_.a_lo;
        case RewardFamily::Composite:
            return bounds_.sqrt_outer ? 0.0 : 2.0 * bounds_.a_lo;
        case RewardFamily::Facility:
            return 2.0 * bounds_.a_lo;  // every column sums n curvatures >= a_lo
        case RewardFamily::Modular:
            return 0.0;
    }
    return 0.0;
}

// ---- section 6 instance ----------------------------------------------------------------

Section6Instance section6_instance(int n, int H, Rng& rng) {
    if (n < 1 || H < 1 || H > n) throw std::invalid_argument("section6_instance: need 1 <= H <= n");
    Vec lo(static_cast<std::size_t>(n), -1.0), hi(static_cast<std::size_t>(n), 4.0);
    ConvexDomain domain = ConvexDomain::box(std::move(lo), std::move(hi));
    Vec a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n)), c(static_cast<std::size_t>(n), 70.0);
    for (int i = 0; i < n; ++i) {
        a[static_cast<std::size_t>(i)] = rng.uniform(1.0, 4.0);
        b[static_cast<std::size_t>(i)] = rng.uniform(1.0, 4.0);
    }
    auto reward = std::make_shared<SeparableQuadratic>(std::move(a), std::move(b), std::move(c), domain);
    return Section6Instance{std::move(reward), std::move(domain)};
}

}  // namespace omdco
