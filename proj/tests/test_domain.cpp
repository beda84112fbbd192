#include <doctest.h>

#include <cmath>

#include "omdco/domain.hpp"

using namespace omdco;

namespace {

// Independent projection oracle: coarse-to-fine grid search minimizing the
// distance to the target over the (shrunk) feasible set.
Vec grid_project_box(const ConvexDomain& box, double shrink, const Vec& p, double resolution) {
    Vec best(p.size(), 0.0);
    double best_d = 1e300;
    int d = box.dim();
    std::vector<int> steps(d);
    for (int i = 0; i < d; ++i) {
        double span = (1.0 - shrink) * (box.hi()[i] - box.lo()[i]);
        steps[i] = std::max(1, static_cast<int>(std::ceil(span / resolution)));
    }
    std::vector<int> idx(d, 0);
    Vec q(p.size());
    while (true) {
        for (int i = 0; i < d; ++i) {
            double lo = (1.0 - shrink) * box.lo()[i];
            double hi = (1.0 - shrink) * box.hi()[i];
            q[i] = lo + (hi - lo) * idx[i] / steps[i];
        }
        double dist = distance(p, q);
        if (dist < best_d) {
            best_d = dist;
            best = q;
        }
        int i = 0;
        while (i < d && ++idx[i] > steps[i]) {
            idx[i] = 0;
            ++i;
        }
        if (i == d) break;
    }
    return best;
}

}  // namespace

TEST_CASE("box construction computes radii from the geometry") {
    ConvexDomain box = ConvexDomain::box({-1.0, -1.0}, {4.0, 4.0});
    CHECK(box.inner_radius() == doctest::Approx(1.0));
    CHECK(box.outer_radius() == doctest::Approx(std::sqrt(32.0)));
    CHECK(box.inner_radius() <= box.outer_radius());

    ConvexDomain ball = ConvexDomain::ball(2.5, 3);
    CHECK(ball.inner_radius() == 2.5);
    CHECK(ball.outer_radius() == 2.5);

    CHECK_THROWS(ConvexDomain::box({0.0}, {1.0}));   // origin on the boundary
    CHECK_THROWS(ConvexDomain::box({-1.0}, {-0.5}));
    CHECK_THROWS(ConvexDomain::ball(0.0, 2));
}

TEST_CASE("projection fixed points and clamping") {
    ConvexDomain box = ConvexDomain::box({-1.0, -1.0}, {4.0, 4.0});
    CHECK(box.project(0.0, {0.5, 2.0}) == Vec{0.5, 2.0});

    Vec clamped = box.project(0.0, {-3.0, 10.0});
    CHECK(clamped == Vec{-1.0, 4.0});
    Vec oracle = grid_project_box(box, 0.0, {-3.0, 10.0}, 1e-3);
    CHECK(distance(clamped, oracle) < 5e-3);

    ConvexDomain ball = ConvexDomain::ball(2.0, 2);
    Vec radial = ball.project(0.5, {3.0, 4.0});
    CHECK(radial[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(radial[1] == doctest::Approx(0.8).epsilon(1e-12));

    CHECK_THROWS(box.project(0.0, {1.0}));  // dimension mismatch
    CHECK_THROWS(box.project(1.0, {1.0, 1.0}));
}

TEST_CASE("projection matches the grid oracle on random points") {
    ConvexDomain box = ConvexDomain::box({-1.0, -2.0}, {4.0, 1.5});
    Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        double shrink = rng.uniform(0.0, 0.8);
        Vec p = {rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0)};
        Vec q = box.project(shrink, p);
        Vec oracle = grid_project_box(box, shrink, p, 1e-3);
        CHECK(distance(p, q) <= distance(p, oracle) + 1e-9);
        CHECK(distance(q, oracle) < 5e-3);
    }
}

TEST_CASE("containment boundaries") {
    ConvexDomain box = ConvexDomain::box({-1.0}, {4.0});
    CHECK(box.contains({4.0}, 0.0));
    CHECK_FALSE(box.contains({4.001}, 1e-6));
    ConvexDomain ball = ConvexDomain::ball(1.0, 2);
    CHECK(ball.contains({0.6, 0.8}, 0.0));
}

TEST_CASE("projection idempotence and nonexpansiveness") {
    ConvexDomain box = ConvexDomain::box({-1.0, -1.0, -1.0}, {4.0, 2.0, 3.0});
    ConvexDomain ball = ConvexDomain::ball(1.5, 3);
    Rng rng(42);
    for (int k = 0; k < 10000; ++k) {
        Vec p1 = {rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
        Vec p2 = {rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
        double shrink = rng.uniform(0.0, 0.9);

        Vec q1 = box.project(shrink, p1);
        CHECK(distance(box.project(shrink, q1), q1) == 0.0);  // exact for boxes
        CHECK(distance(box.project(shrink, p1), box.project(shrink, p2)) <= distance(p1, p2) + 1e-12);
        CHECK(box.contains(box.project(shrink, p1), 1e-9));

        Vec b1 = ball.project(shrink, p1);
        CHECK(distance(ball.project(shrink, b1), b1) <= 1e-12);
        CHECK(distance(ball.project(shrink, p1), ball.project(shrink, p2)) <= distance(p1, p2) + 1e-12);
        CHECK(ball.contains(b1, 1e-9));
    }
}

TEST_CASE("shrink safety: center plus perturbation stays inside") {
    ConvexDomain box = ConvexDomain::box({-1.0, -1.0, -1.0, -1.0}, {4.0, 4.0, 4.0, 4.0});
    Rng rng(7);
    double delta = 0.35;
    double shrink = delta / box.inner_radius();
    for (int k = 0; k < 10000; ++k) {
        Vec raw = {rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0),
                   rng.uniform(-6.0, 6.0)};
        Vec z = box.project(shrink, raw);
        UnitVector u = sample_unit_sphere(4, rng);
        CHECK(box.contains(add_scaled(z, delta, u.components), 1e-9));
        CHECK(box.contains(add_scaled(z, -delta, u.components), 1e-9));
    }
}

TEST_CASE("sphere sampling") {
    Rng rng(3);
    SUBCASE("d = 1 gives signs") {
        for (int k = 0; k < 100; ++k) {
            UnitVector u = sample_unit_sphere(1, rng);
            CHECK(std::abs(std::abs(u.components[0]) - 1.0) <= 1e-12);
        }
    }
    SUBCASE("unit norm in d = 3") {
        for (int k = 0; k < 1000; ++k) {
            UnitVector u = sample_unit_sphere(3, rng);
            CHECK(std::abs(norm(u.components) - 1.0) <= 1e-12);
        }
    }
    SUBCASE("empirical mean vanishes in d = 2") {
        double mx = 0.0, my = 0.0;
        const int N = 100000;
        for (int k = 0; k < N; ++k) {
            UnitVector u = sample_unit_sphere(2, rng);
            mx += u.components[0];
            my += u.components[1];
        }
        CHECK(std::abs(mx / N) < 0.02);
        CHECK(std::abs(my / N) < 0.02);
    }
    CHECK_THROWS(sample_unit_sphere(0, rng));
}
