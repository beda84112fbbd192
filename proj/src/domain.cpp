#include "omdco/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace omdco {

ConvexDomain ConvexDomain::box(Vec lo, Vec hi) {
    if (lo.empty() || lo.size() != hi.size())
        throw std::invalid_argument("box: lo/hi must be non-empty and of equal length");
    ConvexDomain d;
    d.kind_ = Kind::Box;
    d.dim_ = static_cast<int>(lo.size());
    double r = std::numeric_limits<double>::infinity();
    double outer_sq = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < 0.0 && 0.0 < hi[i]))
            throw std::invalid_argument("box: every interval must contain 0 in its interior");
        r = std::min(r, std::min(-lo[i], hi[i]));
        double reach = std::max(-lo[i], hi[i]);
        outer_sq += reach * reach;
    }
    d.inner_radius_ = r;
    d.outer_radius_ = std::sqrt(outer_sq);
    d.lo_ = std::move(lo);
    d.hi_ = std::move(hi);
    return d;
}

ConvexDomain ConvexDomain::ball(double radius, int dim) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
    if (dim < 1) throw std::invalid_argument("ball: dim must be >= 1");
    ConvexDomain d;
    d.kind_ = Kind::EuclideanBall;
    d.dim_ = dim;
    d.inner_radius_ = radius;
    d.outer_radius_ = radius;
    d.radius_ = radius;
    return d;
}

Vec ConvexDomain::project(double shrink, const Vec& point) const {
    if (!(shrink >= 0.0 && shrink < 1.0))
        throw std::invalid_argument("project: shrink must be in [0,1)");
    if (static_cast<int>(point.size()) != dim_)
        throw std::invalid_argument("project: point dimension mismatch");
    double s = 1.0 - shrink;
    Vec out(point.size());
    if (kind_ == Kind::Box) {
        for (std::size_t i = 0; i < point.size(); ++i)
            out[i] = std::clamp(point[i], s * lo_[i], s * hi_[i]);
    } else {
        double bound = s * radius_;
        double n = norm(point);
        if (n <= bound) return point;
        for (std::size_t i = 0; i < point.size(); ++i) out[i] = point[i] * (bound / n);
    }
    return out;
}

bool ConvexDomain::contains(const Vec& point, double tol) const {
    if (static_cast<int>(point.size()) != dim_)
        throw std::invalid_argument("contains: point dimension mismatch");
    if (kind_ == Kind::Box) {
        for (std::size_t i = 0; i < point.size(); ++i)
            if (point[i] < lo_[i] - tol || point[i] > hi_[i] + tol) return false;
        return true;
    }
    return norm(point) <= radius_ + tol;
}

UnitVector sample_unit_sphere(int d, Rng& rng) {
    if (d < 1) throw std::invalid_argument("sample_unit_sphere: d must be >= 1");
    Vec v(d);
    double n = 0.0;
    do {
        for (int i = 0; i < d; ++i) v[i] = rng.gaussian();
        n = norm(v);
    } while (n < 1e-12);
    for (int i = 0; i < d; ++i) v[i] /= n;
    return UnitVector{std::move(v)};
}

}  // namespace omdco
