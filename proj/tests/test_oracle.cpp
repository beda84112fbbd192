#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "omdco/oracle.hpp"

using namespace omdco;

namespace {

// Random weighted coverage instance: element i covers a random subset of a
// small universe; g(S) = total weight covered. Monotone submodular with
// g(empty) = 0; integer weights keep the table arithmetic exact.
SetFunction random_coverage(int n, Rng& rng, int universe = 12) {
    std::vector<std::uint32_t> covers(n);
    std::vector<double> weight(universe);
    for (int i = 0; i < n; ++i) {
        std::uint32_t m = 0;
        for (int u = 0; u < universe; ++u)
            if (rng.uniform() < 0.4) m |= 1u << u;
        covers[i] = m;
    }
    for (int u = 0; u < universe; ++u) weight[u] = static_cast<double>(1 + rng.uniform_int(9));
    return [covers, weight, universe](const ElementSet& S) {
        std::uint32_t covered = 0;
        for (int i : S) covered |= covers[i];
        double total = 0.0;
        for (int u = 0; u < universe; ++u)
            if (covered & (1u << u)) total += weight[u];
        return total;
    };
}

SetFunction modular_from(std::vector<double> v) {
    return [v = std::move(v)](const ElementSet& S) {
        double s = 0.0;
        for (int i : S) s += v[i];
        return s;
    };
}

}  // namespace

TEST_CASE("round optimum on hand-checked instances") {
    SUBCASE("per-element vertex values select the best singleton") {
        ConvexDomain box = ConvexDomain::box(Vec(3, -1.0), Vec(3, 4.0));
        SeparableQuadratic f({1.0, 1.0, 1.0}, {2.0, 4.0, 2.0}, {0.0, 0.0, 0.0});
        OracleOptions opts;
        RoundOptimum opt = round_optimum(f, 1, box, opts);
        CHECK(opt.S_star == ElementSet{1});
        CHECK(opt.x_star[1] == doctest::Approx(2.0));
        CHECK(opt.value == doctest::Approx(4.0));

        OracleOptions grid;
        grid.method = OracleOptions::Method::Grid;
        RoundOptimum opt_grid = round_optimum(f, 1, box, grid);
        CHECK(opt_grid.S_star == opt.S_star);
        CHECK(std::abs(opt_grid.value - opt.value) < 1e-2);
    }

    SUBCASE("monotone families saturate the cardinality cap") {
        Rng rng(5);
        Section6Instance inst = section6_instance(4, 4, rng);
        OracleOptions opts;
        RoundOptimum opt = round_optimum(*inst.reward, 4, inst.domain, opts);
        CHECK(opt.S_star == ElementSet{0, 1, 2, 3});
    }

    SUBCASE("linear rewards maximize at the upper corner") {
        ConvexDomain box = ConvexDomain::box({-0.25, -0.25}, {1.0, 1.0});
        ModularLinear f({3.0, 1.0}, {1.0, 1.0}, box);
        OracleOptions opts;
        RoundOptimum opt = round_optimum(f, 1, box, opts);
        CHECK(opt.S_star == ElementSet{0});
        CHECK(opt.x_star[0] == doctest::Approx(1.0));
        CHECK(opt.value == doctest::Approx(4.0));
    }

    SUBCASE("value ties break toward the lexicographically smallest set") {
        ConvexDomain box = ConvexDomain::box(Vec(3, -1.0), Vec(3, 1.0));
        // Zero weights and equal offsets: every singleton ties at value 1.
        ModularLinear f({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
        OracleOptions opts;
        RoundOptimum opt = round_optimum(f, 1, box, opts);
        CHECK(opt.S_star == ElementSet{0});
        // With H = 2 the two-element sets tie at 2; {0,1} is smallest.
        RoundOptimum opt2 = round_optimum(f, 2, box, opts);
        CHECK(opt2.S_star == ElementSet{0, 1});
    }

    SUBCASE("caps and errors") {
        ConvexDomain box = ConvexDomain::box(Vec(2, -1.0), Vec(2, 1.0));
        SeparableQuadratic f({1.0, 1.0}, {0.0, 0.0}, {2.0, 2.0});
        OracleOptions opts;
        CHECK_THROWS(round_optimum(f, 0, box, opts));
    }
}

TEST_CASE("closed form agrees with grid search on random instances") {
    Rng rng(7);
    OracleOptions cf;
    OracleOptions grid;
    grid.method = OracleOptions::Method::Grid;
    for (int k = 0; k < 10; ++k) {
        Section6Instance inst = section6_instance(5, 3, rng);
        RoundOptimum a = round_optimum(*inst.reward, 3, inst.domain, cf);
        RoundOptimum b = round_optimum(*inst.reward, 3, inst.domain, grid);
        CHECK(a.S_star == b.S_star);
        CHECK(std::abs(a.value - b.value) < 1e-2);
    }
}

TEST_CASE("projected gradient ascent matches the closed form") {
    Rng rng(9);
    OracleOptions cf;
    OracleOptions pga;
    pga.method = OracleOptions::Method::ProjGradAscent;
    for (int k = 0; k < 10; ++k) {
        Section6Instance inst = section6_instance(5, 3, rng);
        RoundOptimum a = round_optimum(*inst.reward, 3, inst.domain, cf);
        RoundOptimum b = round_optimum(*inst.reward, 3, inst.domain, pga);
        CHECK(a.S_star == b.S_star);
        CHECK(std::abs(a.value - b.value) < 1e-6);
    }
}

TEST_CASE("submodularity ratio") {
    SUBCASE("modular functions have ratio exactly one") {
        CHECK(submodularity_ratio(modular_from({1, 2, 3, 4, 5, 6}), 6) == 1.0);
        CHECK(submodularity_ratio(modular_from({1, 2, 3, 4, 5, 6}), 6, Exec::Serial) == 1.0);
    }
    SUBCASE("fully complementary pair has ratio zero") {
        SetFunction g = [](const ElementSet& S) { return S.size() == 2 ? 1.0 : 0.0; };
        CHECK(submodularity_ratio(g, 2) == 0.0);
    }
    SUBCASE("coverage instances are submodular") {
        Rng rng(11);
        for (int k = 0; k < 20; ++k) {
            SetFunction g = random_coverage(6, rng);
            CHECK(submodularity_ratio(g, 6) == 1.0);
        }
    }
    SUBCASE("non-monotone input names a violating pair") {
        SetFunction g = [](const ElementSet& S) { return S.size() == 1 ? 1.0 : 0.0; };
        CHECK_THROWS_WITH_AS(submodularity_ratio(g, 2), doctest::Contains("not monotone"),
                             std::invalid_argument);
    }
}

TEST_CASE("curvature") {
    SUBCASE("modular functions have curvature exactly zero") {
        CHECK(curvature(modular_from({2, 1, 4}), 3) == 0.0);
    }
    SUBCASE("coverage saturation yields curvature one") {
        SetFunction g = [](const ElementSet& S) { return std::min<double>(S.size(), 1.0); };
        CHECK(curvature(g, 3) == 1.0);
    }
    SUBCASE("experimental family restricted to the optimum is modular") {
        Rng rng(13);
        Section6Instance inst = section6_instance(5, 3, rng);
        OracleOptions opts;
        RoundOptimum opt = round_optimum(*inst.reward, 3, inst.domain, opts);
        SetFunction induced = [&](const ElementSet& S) { return inst.reward->value(S, opt.x_star); };
        CHECK(std::abs(submodularity_ratio(induced, 5) - 1.0) <= 1e-9);
        CHECK(curvature(induced, 5) <= 1e-9);
    }
}

TEST_CASE("returned values re-satisfy the definitions exhaustively") {
    Rng rng(17);
    for (int k = 0; k < 10; ++k) {
        SetFunction g = random_coverage(7, rng);
        std::vector<double> table = tabulate_set_function(g, 7);
        double kappa = submodularity_ratio_table(table, 7);
        double c = curvature_table(table, 7);
        CHECK(satisfies_ratio_definition(table, 7, kappa, 1e-9));
        CHECK(satisfies_curvature_definition(table, 7, c, 1e-9));
        // Serial and parallel kernels agree exactly.
        CHECK(kappa == submodularity_ratio_table(table, 7, Exec::Serial));
        CHECK(c == curvature_table(table, 7, Exec::Serial));
    }
}

TEST_CASE("definition scans stay at brute-force scale") {
    SetFunction g = [](const ElementSet& S) { return static_cast<double>(S.size()); };
    CHECK_THROWS(submodularity_ratio(g, 13));
    CHECK_THROWS(curvature(g, 13));
    Rng rng(3);
    CHECK_THROWS(greedy_bound_check(g, 13, 2, {0.0, 0.0}, rng));
}

TEST_CASE("alpha factor") {
    CHECK(alpha_factor(1.0, 0.0) == 1.0);
    CHECK(alpha_factor(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(alpha_factor(0.0, 0.7) == 0.0);
    CHECK(std::abs(alpha_factor(0.42, 1e-13) - 0.42) <= 1e-9);
}

TEST_CASE("strong-concavity ratio lower bound") {
    CHECK(prop3_kappa_lower(2.0, 2.0) == 1.0);
    CHECK(prop3_kappa_lower(1.0, 4.0) == doctest::Approx(0.25));
    CHECK(prop3_kappa_lower(2.0, 8.0) == doctest::Approx(0.25));
    CHECK_THROWS(prop3_kappa_lower(3.0, 2.0));
    CHECK_THROWS(prop3_kappa_lower(0.0, 2.0));
}

TEST_CASE("gradient-ratio lower bound") {
    SUBCASE("linear rewards give one") {
        ConvexDomain box = ConvexDomain::box({-0.5, -0.5}, {1.0, 1.0});
        ModularLinear f({2.0, 3.0}, {1.0, 2.0}, box);
        CHECK(prop4_kappa_lower(f, box, 1e-3) == 1.0);
    }
    SUBCASE("gradient range [1,4] gives one quarter") {
        ConvexDomain box = ConvexDomain::box({-0.5}, {1.0});
        SeparableQuadratic f({1.0}, {3.0}, {5.0});
        // slope -2x + 3 in [1, 4] over [-0.5, 1]
        CHECK(prop4_kappa_lower(f, box, 1e-3) == doctest::Approx(0.25).epsilon(1e-3));
    }
    SUBCASE("vanishing gradient gives zero") {
        ConvexDomain box = ConvexDomain::box({-1.0}, {1.0});
        SeparableQuadratic f({1.0}, {0.0}, {2.0});
        CHECK(prop4_kappa_lower(f, box, 1e-3) == 0.0);
    }
    SUBCASE("lower bounds never exceed the exhaustive ratio") {
        Rng rng(19);
        for (int k = 0; k < 5; ++k) {
            Section6Instance inst = section6_instance(5, 3, rng);
            OracleOptions opts;
            RoundOptimum opt = round_optimum(*inst.reward, 3, inst.domain, opts);
            SetFunction induced = [&](const ElementSet& S) { return inst.reward->value(S, opt.x_star); };
            double exhaustive = submodularity_ratio(induced, 5);
            const Vec& a = inst.reward->a();
            double mu = 2.0 * *std::min_element(a.begin(), a.end());
            double sigma = 2.0 * *std::max_element(a.begin(), a.end());
            CHECK(prop3_kappa_lower(mu, sigma) <= exhaustive + 1e-12);
            CHECK(prop4_kappa_lower(*inst.reward, inst.domain, 1e-2) <= exhaustive + 1e-12);
        }
    }
}

TEST_CASE("tolerance-relaxed greedy satisfies the approximation bound") {
    Rng rng(23);
    SUBCASE("exact greedy on modular functions is optimal") {
        SetFunction g = modular_from({5, 4, 3, 2, 1});
        CHECK(greedy_bound_check(g, 5, 3, {0.0, 0.0, 0.0}, rng));
        // alpha = 1 for modular g, so the bound is equality-tight.
        CHECK(submodularity_ratio(g, 5) == 1.0);
        CHECK(curvature(g, 5) == 0.0);
    }
    SUBCASE("random coverage with random tolerances") {
        for (int k = 0; k < 30; ++k) {
            SetFunction g = random_coverage(8, rng);
            double scale = 0.1 * g({0, 1, 2, 3, 4, 5, 6, 7});
            std::vector<double> taus = {rng.uniform(0.0, scale), rng.uniform(0.0, scale),
                                        rng.uniform(0.0, scale)};
            CHECK(greedy_bound_check(g, 8, 3, taus, rng));
        }
    }
    SUBCASE("square-root of a modular function") {
        for (int k = 0; k < 20; ++k) {
            Vec v(6);
            for (double& vi : v) vi = rng.uniform(0.5, 3.0);
            SetFunction g = [&v](const ElementSet& S) {
                double s = 0.0;
                for (int i : S) s += v[i];
                return std::sqrt(s);
            };
            CHECK(greedy_bound_check(g, 6, 3, {0.0, 0.0, 0.0}, rng));
        }
    }
}

TEST_CASE("variation statistics") {
    SUBCASE("constant trajectories") {
        std::vector<ElementSet> sets(5, ElementSet{1, 2});
        std::vector<Vec> points(5, Vec{0.5, 0.5});
        VariationStats stats = variation_stats(sets, points);
        CHECK(stats.v_discrete == 1);
        CHECK(stats.v_set == 1);
        CHECK(stats.v_path == 0.0);
    }
    SUBCASE("switch counting") {
        std::vector<ElementSet> sets = {{1}, {2}, {1}};
        std::vector<Vec> points(3, Vec{0.0});
        CHECK(variation_stats(sets, points).v_discrete == 3);
    }
    SUBCASE("path length") {
        std::vector<ElementSet> sets = {{0}, {0}};
        std::vector<Vec> points = {{0.0, 0.0}, {3.0, 4.0}};
        CHECK(variation_stats(sets, points).v_path == doctest::Approx(5.0));
    }
    SUBCASE("length mismatch") {
        std::vector<ElementSet> sets = {{0}};
        std::vector<Vec> points = {{0.0}, {1.0}};
        CHECK_THROWS(variation_stats(sets, points));
    }
}
