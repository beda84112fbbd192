#pragma once

#include <vector>

#include "omdco/rng.hpp"
#include "omdco/vec.hpp"

// Continuous action sets: axis-aligned boxes and origin-centered Euclidean
// balls. Both admit exact closed-form Euclidean projection. The set must
// contain the origin strictly in its interior so that the shrunk set
// (1-xi)*X is a subset of X and center +/- delta*u perturbations stay
// feasible when xi = delta/r.
//
// r is the inner radius (largest ball around the origin inside the set) and
// D the outer radius (smallest ball around the origin containing it); both
// are computed from the geometry, never user-supplied.

namespace omdco {

class ConvexDomain {
public:
    enum class Kind { Box, EuclideanBall };

    static ConvexDomain box(Vec lo, Vec hi);
    static ConvexDomain ball(double radius, int dim);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double inner_radius() const { return inner_radius_; }
    double outer_radius() const { return outer_radius_; }
    const Vec& lo() const { return lo_; }
    const Vec& hi() const { return hi_; }
    double radius() const { return radius_; }

    // Euclidean projection onto (1-shrink)*X. shrink must be in [0,1).
    Vec project(double shrink, const Vec& point) const;

    bool contains(const Vec& point, double tol) const;

private:
    ConvexDomain() = default;

    Kind kind_ = Kind::Box;
    int dim_ = 0;
    double inner_radius_ = 0.0;
    double outer_radius_ = 0.0;
    Vec lo_, hi_;        // Box
    double radius_ = 0.0;  // EuclideanBall
};

struct UnitVector {
    Vec components;
};

// Uniform direction on the unit sphere via normalized Gaussians.
UnitVector sample_unit_sphere(int d, Rng& rng);

}  // namespace omdco
