#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "omdco/domain.hpp"
#include "omdco/learners.hpp"
#include "omdco/rng.hpp"
#include "omdco/vec.hpp"

// Reward families f(S, x) = value of choosing element set S and point x.
// Every shipped family is normalized (f(empty, .) = 0), monotone
// nondecreasing in S over its domain (verified at construction via interval
// endpoints), and concave in x. Families are immutable and shareable.

namespace omdco {

struct RewardConstants {
    double C = 0.0;   // max of f over |S| = H, x in X
    double G = 0.0;   // Lipschitz constant of x -> f(S,x) for full-cardinality S
    double mu = 0.0;  // strong-concavity modulus; 0 when none
};

class RewardFunction {
public:
    virtual ~RewardFunction() = default;

    virtual int ground_size() const = 0;

    // S must be sorted, unique, within [0, ground_size).
    virtual double value(const ElementSet& S, const Vec& x) const = 0;

    // All shipped families decompose over coordinates: the continuous
    // argmax is found by maximizing coord_objective per coordinate
    // (monotone outer transforms factored out).
    virtual bool coordinate_separable() const { return true; }
    virtual double coord_objective(int i, double xi) const = 0;

    virtual bool has_closed_form_argmax() const { return false; }
    virtual double coord_argmax(int i, double lo, double hi) const;

    // Gradient of x -> value(S, x); zero outside S. Used by the projected
    // gradient ascent oracle via ascent_surrogate().
    virtual Vec gradient(const ElementSet& S, const Vec& x) const = 0;

    // Whether (grad f)_i of the full-support function depends only on x_i.
    virtual bool has_coordinate_gradient() const { return true; }
    virtual double coord_gradient(int i, double xi) const = 0;

    // Function to ascend when searching the continuous argmax; composite
    // families strip their monotone outer transform.
    virtual const RewardFunction& ascent_surrogate() const { return *this; }

    virtual RewardConstants constants(const ConvexDomain& domain, int H) const;

    // Smoothness bound sigma (0 = unknown or linear), step source for PGA.
    virtual double smoothness() const { return 0.0; }
};

// f(S,x) = sum_{i in S} (-a_i x_i^2 + b_i x_i + c_i), a_i > 0, c_i >= 0.
//
// The domain-taking constructors additionally verify monotonicity in S
// (per-element values nonnegative on the domain, checked at the interval
// endpoints) and reject violating instances; the plain constructors skip
// that check for oracle-side use on unconstrained instances.
class SeparableQuadratic : public RewardFunction {
public:
    SeparableQuadratic(Vec a, Vec b, Vec c);
    SeparableQuadratic(Vec a, Vec b, Vec c, const ConvexDomain& domain);

    int ground_size() const override { return static_cast<int>(a_.size()); }
    double value(const ElementSet& S, const Vec& x) const override;
    double coord_objective(int i, double xi) const override;
    bool has_closed_form_argmax() const override { return true; }
    double coord_argmax(int i, double lo, double hi) const override;
    Vec gradient(const ElementSet& S, const Vec& x) const override;
    double coord_gradient(int i, double xi) const override;
    RewardConstants constants(const ConvexDomain& domain, int H) const override;
    double smoothness() const override;

    const Vec& a() const { return a_; }
    const Vec& b() const { return b_; }
    const Vec& c() const { return c_; }

private:
    Vec a_, b_, c_;
};

// f(S,x) = sum_{i in S} (w_i x_i + o_i), w_i >= 0, o_i >= 0. The offsets
// make per-element values nonnegative on domains whose lower bounds are
// negative, preserving monotonicity and normalization.
class ModularLinear : public RewardFunction {
public:
    ModularLinear(Vec weights, Vec offsets);
    ModularLinear(Vec weights, Vec offsets, const ConvexDomain& domain);

    int ground_size() const override { return static_cast<int>(w_.size()); }
    double value(const ElementSet& S, const Vec& x) const override;
    double coord_objective(int i, double xi) const override;
    bool has_closed_form_argmax() const override { return true; }
    double coord_argmax(int i, double lo, double hi) const override;
    Vec gradient(const ElementSet& S, const Vec& x) const override;
    double coord_gradient(int i, double xi) const override;
    RewardConstants constants(const ConvexDomain& domain, int H) const override;

    const Vec& weights() const { return w_; }
    const Vec& offsets() const { return o_; }

private:
    Vec w_, o_;
};

// Concave quadratic clipped below at zero; coefficients are validated so the
// clip is inactive on the domain, keeping the piece concave there.
struct ClippedQuadratic {
    double a = 1.0;  // curvature, > 0
    double b = 0.0;
    double c = 0.0;
    double eval(double x) const {
        double v = -a * x * x + b * x + c;
        return v > 0.0 ? v : 0.0;
    }
    double slope(double x) const { return -2.0 * a * x + b; }
    double vertex_value() const { return b * b / (4.0 * a) + c; }
};

// f(S,x) = sum_{i in [n]} sum_{j in S} h_{ij}(x_j) with nonnegative concave
// per-pair components.
class FacilityLocation : public RewardFunction {
public:
    FacilityLocation(std::vector<std::vector<ClippedQuadratic>> pair_components, const ConvexDomain& domain);

    int ground_size() const override { return n_; }
    double value(const ElementSet& S, const Vec& x) const override;
    double coord_objective(int j, double xj) const override;
    Vec gradient(const ElementSet& S, const Vec& x) const override;
    double coord_gradient(int j, double xj) const override;
    RewardConstants constants(const ConvexDomain& domain, int H) const override;
    double smoothness() const override;

private:
    int n_ = 0;
    std::vector<std::vector<ClippedQuadratic>> h_;  // h_[i][j]
};

// f(S,x) = outer(sum_{i in S} inner_i(x_i)) with outer monotone
// nondecreasing concave (identity or sqrt) and nonnegative concave inners.
class CompositeMonotone : public RewardFunction {
public:
    enum class Outer { Identity, Sqrt };

    CompositeMonotone(Outer outer, std::vector<ClippedQuadratic> inner, const ConvexDomain& domain);

    int ground_size() const override { return static_cast<int>(inner_.size()); }
    double value(const ElementSet& S, const Vec& x) const override;
    double coord_objective(int i, double xi) const override;
    Vec gradient(const ElementSet& S, const Vec& x) const override;
    bool has_coordinate_gradient() const override { return outer_ == Outer::Identity; }
    double coord_gradient(int i, double xi) const override;
    const RewardFunction& ascent_surrogate() const override;
    RewardConstants constants(const ConvexDomain& domain, int H) const override;
    double smoothness() const override;

    Outer outer() const { return outer_; }

private:
    double inner_sum(const ElementSet& S, const Vec& x) const;

    Outer outer_;
    std::vector<ClippedQuadratic> inner_;
    std::shared_ptr<const RewardFunction> surrogate_;  // inner sum as its own family
};

// Validating evaluator: rejects malformed subsets and points outside X.
double eval(const RewardFunction& f, const ConvexDomain& domain, const ElementSet& S, const Vec& x,
            double tol = 1e-9);

enum class RewardFamily { Quadratic, Modular, Facility, Composite };

// Coefficient ranges for the adversary's per-segment draws.
struct CoefficientBounds {
    double a_lo = 1.0, a_hi = 4.0;  // quadratic curvature range
    double b_lo = 1.0, b_hi = 4.0;  // quadratic slope range
    double c_fixed = 70.0;          // quadratic constant term
    double w_lo = 0.5, w_hi = 2.0;  // modular weight range
    double offset_slack_lo = 0.1, offset_slack_hi = 1.0;
    bool sqrt_outer = false;  // composite outer transform
};

// Draws the reward function for each round. In Redraw mode every round gets
// a fresh draw keyed by (seed, t); in LimitedSwitch mode rounds share draws
// within segments of length ceil(T/(lambda+1)), so the function switches at
// most lambda times. Pure: same (seed, t) always yields the same function.
// The last draw is memoized, so one instance belongs to one thread; use one
// schedule per trial.
class AdversarySchedule {
public:
    enum class Mode { Redraw, LimitedSwitch };

    AdversarySchedule(RewardFamily family, const CoefficientBounds& bounds, const ConvexDomain& domain,
                      Mode mode, int max_switches, std::int64_t horizon, std::uint64_t seed);

    std::shared_ptr<const RewardFunction> function_at(std::int64_t t) const;
    std::int64_t segment_of(std::int64_t t) const;

    Mode mode() const { return mode_; }
    std::int64_t horizon() const { return horizon_; }

    // Horizon-wide bounds valid for every drawable instance.
    double reward_bound(int H) const;
    double strong_concavity() const;

private:
    std::shared_ptr<const RewardFunction> draw(std::uint64_t key) const;

    RewardFamily family_;
    CoefficientBounds bounds_;
    const ConvexDomain* domain_;
    Mode mode_;
    int max_switches_ = 0;
    std::int64_t horizon_ = 0;
    std::int64_t segment_length_ = 0;
    std::uint64_t seed_ = 0;

    mutable std::uint64_t cached_key_ = ~0ULL;
    mutable std::shared_ptr<const RewardFunction> cached_;
};

// The experimental family: separable quadratic with a_i, b_i ~ U[1,4],
// c_i = 70, over the box [-1,4]^n.
struct Section6Instance {
    std::shared_ptr<const SeparableQuadratic> reward;
    ConvexDomain domain;
};
Section6Instance section6_instance(int n, int H, Rng& rng);

}  // namespace omdco
