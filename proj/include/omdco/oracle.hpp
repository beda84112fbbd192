#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "omdco/domain.hpp"
#include "omdco/learners.hpp"
#include "omdco/rewards.hpp"
#include "omdco/rng.hpp"

// Brute-force ground truth: per-round optima, submodularity ratio and
// curvature of set functions, approximation factors, and variation
// statistics of clairvoyant trajectories.
//
// The exhaustive definition scans are data-parallel over subset pairs; each
// has an OpenMP kernel and the serial loop kept as its reference. Both paths
// reduce with min/max only, so results are identical bit for bit.

namespace omdco {

enum class Exec { Serial, Parallel };

struct RoundOptimum {
    ElementSet S_star;
    Vec x_star;
    double value = 0.0;
};

struct OracleOptions {
    enum class Method { ClosedForm, Grid, ProjGradAscent } method = Method::ClosedForm;
    double grid_resolution = 1e-3;
    int pga_iterations = 500;
    double pga_tol = 1e-8;
};

// Exhaustive maximization of f over |S| <= H (all subsets, n <= 20) with the
// continuous inner maximization per the chosen method. Value ties between
// subsets break toward the lexicographically smallest set.
RoundOptimum round_optimum(const RewardFunction& f, int H, const ConvexDomain& domain,
                           const OracleOptions& opts);

using SetFunction = std::function<double(const ElementSet&)>;

// Values of g on all 2^n subsets, indexed by bitmask.
std::vector<double> tabulate_set_function(const SetFunction& g, int n);

// Throws (naming a violating pair) unless the table is monotone
// nondecreasing with g(empty) = 0.
void check_monotone_normalized(const std::vector<double>& table, int n);

// Largest kappa with sum_{w in Omega\S} (g(S+w)-g(S)) >= kappa*(g(S+Omega)-g(S))
// over all subset pairs; pairs with nonpositive gain impose no constraint.
double submodularity_ratio(const SetFunction& g, int n, Exec exec = Exec::Parallel);
double submodularity_ratio_table(const std::vector<double>& table, int n, Exec exec = Exec::Parallel);

// Smallest c with g(Omega+w)-g(Omega) >= (1-c)*(g(S+w)-g(S)) over all nested
// pairs S subset Omega and w outside Omega.
double curvature(const SetFunction& g, int n, Exec exec = Exec::Parallel);
double curvature_table(const std::vector<double>& table, int n, Exec exec = Exec::Parallel);

// Post-hoc re-verification of the definition inequalities at a given value.
bool satisfies_ratio_definition(const std::vector<double>& table, int n, double kappa, double slack);
bool satisfies_curvature_definition(const std::vector<double>& table, int n, double c, double slack);

// (1/c) * (1 - exp(-c*kappa)), continuously extended to kappa at c = 0.
double alpha_factor(double kappa, double c);

// mu/sigma lower bound on the ratio for mu-strongly-concave, sigma-smooth
// objectives; requires 0 < mu <= sigma.
double prop3_kappa_lower(double mu, double sigma);

// min over coordinates of (min |grad_i| / max |grad_i|) over a grid on a box
// domain; coordinates whose gradient vanishes identically impose no
// constraint.
double prop4_kappa_lower(const RewardFunction& f, const ConvexDomain& domain, double resolution);

// Runs the tolerance-relaxed greedy (adversarially picking the worst element
// whose value is within tol_steps[l] of the best at step l), then checks
//   g(greedy) >= alpha(kappa, c) * g(S*) - sum(tol_steps)
// with 1e-9 slack.
bool greedy_bound_check(const SetFunction& g, int n, int H, const std::vector<double>& tol_steps, Rng& rng);

struct VariationStats {
    std::int64_t v_discrete = 1;  // 1 + switch count, single-element reading
    std::int64_t v_set = 1;       // 1 + switch count, set reading
    double v_path = 0.0;          // Euclidean path length of the continuous trajectory
};

VariationStats variation_stats(const std::vector<ElementSet>& discrete, const std::vector<Vec>& continuous);

}  // namespace omdco
