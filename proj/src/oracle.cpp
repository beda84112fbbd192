#include "omdco/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace omdco {
namespace {

constexpr double kGainTol = 1e-12;

ElementSet mask_to_set(std::uint32_t mask) {
    ElementSet s;
    for (int i = 0; mask; ++i, mask >>= 1)
        if (mask & 1u) s.push_back(i);
    return s;
}

std::string set_to_string(std::uint32_t mask) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; mask; ++i, mask >>= 1) {
        if (mask & 1u) {
            if (!first) out += ",";
            out += std::to_string(i);
            first = false;
        }
    }
    return out + "}";
}

Vec assemble_support_point(const ElementSet& S, const Vec& coord_argmax, int d) {
    Vec x(static_cast<std::size_t>(d), 0.0);
    for (int i : S) x[static_cast<std::size_t>(i)] = coord_argmax[static_cast<std::size_t>(i)];
    return x;
}

Vec pga_argmax(const RewardFunction& f, const ElementSet& S, const ConvexDomain& domain,
               const OracleOptions& opts) {
    const RewardFunction& surrogate = f.ascent_surrogate();
    double sigma = surrogate.smoothness();
    Vec z(static_cast<std::size_t>(domain.dim()), 0.0);
    for (int k = 1; k <= opts.pga_iterations; ++k) {
        Vec g = surrogate.gradient(S, z);
        double step = sigma > 0.0 ? 1.0 / sigma : domain.inner_radius() / std::sqrt(static_cast<double>(k));
        Vec next = domain.project(0.0, add_scaled(z, step, g));
        double moved = distance(next, z);
        z = std::move(next);
        if (moved < opts.pga_tol) break;
    }
    return z;
}

// Joint grid search; only feasible for small dimension and coarse
// resolutions, kept as the fallback for non-separable custom families.
Vec dense_grid_argmax(const RewardFunction& f, const ElementSet& S, const ConvexDomain& domain,
                      double resolution) {
    int d = domain.dim();
    std::vector<int> steps(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        double span = domain.hi()[static_cast<std::size_t>(i)] - domain.lo()[static_cast<std::size_t>(i)];
        steps[static_cast<std::size_t>(i)] = std::max(1, static_cast<int>(std::ceil(span / resolution)));
    }
    Vec x(static_cast<std::size_t>(d), 0.0), best_x(static_cast<std::size_t>(d), 0.0);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        for (int i = 0; i < d; ++i) {
            double lo = domain.lo()[static_cast<std::size_t>(i)];
            double hi = domain.hi()[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(i)] =
                lo + (hi - lo) * idx[static_cast<std::size_t>(i)] / steps[static_cast<std::size_t>(i)];
        }
        double v = f.value(S, x);
        if (v > best) {
            best = v;
            best_x = x;
        }
        int i = 0;
        while (i < d && ++idx[static_cast<std::size_t>(i)] > steps[static_cast<std::size_t>(i)]) {
            idx[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == d) break;
    }
    return best_x;
}

bool lex_less(const ElementSet& a, const ElementSet& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

RoundOptimum round_optimum(const RewardFunction& f, int H, const ConvexDomain& domain,
                           const OracleOptions& opts) {
    int n = f.ground_size();
    if (n > 20) throw std::invalid_argument("round_optimum: exhaustive enumeration capped at n <= 20");
    if (H < 1) throw std::invalid_argument("round_optimum: H must be >= 1");
    if (n != domain.dim()) throw std::invalid_argument("round_optimum: domain dimension mismatch");
    bool separable = f.coordinate_separable() && domain.kind() == ConvexDomain::Kind::Box;

    // Per-coordinate maximizer of the (outer-stripped) objective; valid for
    // every subset at once when the family decomposes over coordinates.
    Vec coord_max;
    if (separable) {
        coord_max.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double lo = domain.lo()[static_cast<std::size_t>(i)];
            double hi = domain.hi()[static_cast<std::size_t>(i)];
            switch (opts.method) {
                case OracleOptions::Method::ClosedForm:
                    if (!f.has_closed_form_argmax())
                        throw std::invalid_argument("round_optimum: family has no closed-form argmax");
                    coord_max[static_cast<std::size_t>(i)] = f.coord_argmax(i, lo, hi);
                    break;
                case OracleOptions::Method::Grid: {
                    int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) / opts.grid_resolution)));
                    double best_v = -std::numeric_limits<double>::infinity();
                    double best_x = lo;
                    for (int k = 0; k <= steps; ++k) {
                        double x = lo + (hi - lo) * k / steps;
                        double v = f.coord_objective(i, x);
                        if (v > best_v) {
                            best_v = v;
                            best_x = x;
                        }
                    }
                    coord_max[static_cast<std::size_t>(i)] = best_x;
                    break;
                }
                case OracleOptions::Method::ProjGradAscent:
                    break;  // handled per subset below
            }
        }
    } else if (opts.method == OracleOptions::Method::Grid && domain.dim() > 4) {
        throw std::invalid_argument("round_optimum: joint grid search capped at d <= 4");
    }

    RoundOptimum best;
    best.value = -std::numeric_limits<double>::infinity();
    std::uint32_t full = static_cast<std::uint32_t>(1u << n);
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        if (std::popcount(mask) > H) continue;
        ElementSet S = mask_to_set(mask);
        Vec x;
        if (opts.method == OracleOptions::Method::ProjGradAscent) {
            x = pga_argmax(f, S, domain, opts);
        } else if (separable) {
            x = assemble_support_point(S, coord_max, n);
        } else {
            x = dense_grid_argmax(f, S, domain, opts.grid_resolution);
        }
        double v = f.value(S, x);
        if (v > best.value || (v == best.value && lex_less(S, best.S_star))) {
            best.value = v;
            best.S_star = std::move(S);
            best.x_star = std::move(x);
        }
    }
    return best;
}

std::vector<double> tabulate_set_function(const SetFunction& g, int n) {
    if (n < 1 || n > 20) throw std::invalid_argument("tabulate_set_function: need 1 <= n <= 20");
    std::vector<double> table(static_cast<std::size_t>(1u << n));
    for (std::uint32_t mask = 0; mask < table.size(); ++mask)
        table[mask] = g(mask_to_set(mask));
    return table;
}

void check_monotone_normalized(const std::vector<double>& table, int n) {
    if (std::abs(table[0]) > kGainTol)
        throw std::invalid_argument("set function: g(empty) must be 0, got " + std::to_string(table[0]));
    std::uint32_t full = static_cast<std::uint32_t>(1u << n);
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        for (int i = 0; i < n; ++i) {
            std::uint32_t bit = 1u << i;
            if (mask & bit) continue;
            if (table[mask | bit] < table[mask] - kGainTol)
                throw std::invalid_argument("set function: not monotone, g(" + set_to_string(mask | bit) +
                                            ") < g(" + set_to_string(mask) + ")");
        }
    }
}

namespace {

void check_scan_size(const std::vector<double>& table, int n, const char* who) {
    if (n < 1 || n > 12)
        throw std::invalid_argument(std::string(who) + ": exhaustive definition scans capped at n <= 12");
    if (table.size() != (1u << n))
        throw std::invalid_argument(std::string(who) + ": table size does not match n");
}

}  // namespace

double submodularity_ratio_table(const std::vector<double>& table, int n, Exec exec) {
    check_scan_size(table, n, "submodularity_ratio");
    check_monotone_normalized(table, n);
    std::int64_t full = static_cast<std::int64_t>(1u << n);
    double kappa = 1.0;

    auto scan_base = [&table, full, n](std::int64_t S) {
        double local = 1.0;
        std::uint32_t s = static_cast<std::uint32_t>(S);
        for (std::uint32_t omega = 0; omega < static_cast<std::uint32_t>(full); ++omega) {
            double denom = table[s | omega] - table[s];
            if (denom <= kGainTol) continue;
            double num = 0.0;
            std::uint32_t extra = omega & ~s;
            while (extra) {
                std::uint32_t bit = extra & (~extra + 1u);
                num += table[s | bit] - table[s];
                extra ^= bit;
            }
            double ratio = num / denom;
            if (ratio < local) local = ratio;
        }
        return local;
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 64) reduction(min : kappa)
        for (std::int64_t S = 0; S < full; ++S) {
            double local = scan_base(S);
            if (local < kappa) kappa = local;
        }
    } else {
        for (std::int64_t S = 0; S < full; ++S) kappa = std::min(kappa, scan_base(S));
    }
    return std::clamp(kappa, 0.0, 1.0);
}

double submodularity_ratio(const SetFunction& g, int n, Exec exec) {
    return submodularity_ratio_table(tabulate_set_function(g, n), n, exec);
}

double curvature_table(const std::vector<double>& table, int n, Exec exec) {
    check_scan_size(table, n, "curvature");
    check_monotone_normalized(table, n);
    std::int64_t full = static_cast<std::int64_t>(1u << n);
    double c = 0.0;

    auto scan_base = [&table, n](std::int64_t Omega) {
        double local = 0.0;
        std::uint32_t omega_mask = static_cast<std::uint32_t>(Omega);
        for (int w = 0; w < n; ++w) {
            std::uint32_t bit = 1u << w;
            if (omega_mask & bit) continue;
            double top = table[omega_mask | bit] - table[omega_mask];
            // Walk all submasks S of Omega, including the empty set.
            std::uint32_t S = omega_mask;
            while (true) {
                double denom = table[S | bit] - table[S];
                if (denom > kGainTol) local = std::max(local, 1.0 - top / denom);
                if (S == 0) break;
                S = (S - 1) & omega_mask;
            }
        }
        return local;
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 64) reduction(max : c)
        for (std::int64_t Omega = 0; Omega < full; ++Omega) {
            double local = scan_base(Omega);
            if (local > c) c = local;
        }
    } else {
        for (std::int64_t Omega = 0; Omega < full; ++Omega) c = std::max(c, scan_base(Omega));
    }
    return std::clamp(c, 0.0, 1.0);
}

double curvature(const SetFunction& g, int n, Exec exec) {
    return curvature_table(tabulate_set_function(g, n), n, exec);
}

bool satisfies_ratio_definition(const std::vector<double>& table, int n, double kappa, double slack) {
    std::uint32_t full = static_cast<std::uint32_t>(1u << n);
    for (std::uint32_t S = 0; S < full; ++S) {
        for (std::uint32_t omega = 0; omega < full; ++omega) {
            double num = 0.0;
            std::uint32_t extra = omega & ~S;
            while (extra) {
                std::uint32_t bit = extra & (~extra + 1u);
                num += table[S | bit] - table[S];
                extra ^= bit;
            }
            if (num + slack < kappa * (table[S | omega] - table[S])) return false;
        }
    }
    return true;
}

bool satisfies_curvature_definition(const std::vector<double>& table, int n, double c, double slack) {
    std::uint32_t full = static_cast<std::uint32_t>(1u << n);
    for (std::uint32_t Omega = 0; Omega < full; ++Omega) {
        for (int w = 0; w < n; ++w) {
            std::uint32_t bit = 1u << w;
            if (Omega & bit) continue;
            double top = table[Omega | bit] - table[Omega];
            std::uint32_t S = Omega;
            while (true) {
                double denom = table[S | bit] - table[S];
                if (top + slack < (1.0 - c) * denom) return false;
                if (S == 0) break;
                S = (S - 1) & Omega;
            }
        }
    }
    return true;
}

double alpha_factor(double kappa, double c) {
    if (c <= 1e-12) return kappa;
    return (1.0 - std::exp(-c * kappa)) / c;
}

double prop3_kappa_lower(double mu, double sigma) {
    if (!(mu > 0.0)) throw std::invalid_argument("prop3_kappa_lower: mu must be positive");
    if (mu > sigma) throw std::invalid_argument("prop3_kappa_lower: requires mu <= sigma");
    return mu / sigma;
}

double prop4_kappa_lower(const RewardFunction& f, const ConvexDomain& domain, double resolution) {
    if (domain.kind() != ConvexDomain::Kind::Box)
        throw std::invalid_argument("prop4_kappa_lower: requires a box domain");
    if (!f.has_coordinate_gradient())
        throw std::invalid_argument("prop4_kappa_lower: family lacks a coordinate-wise gradient");
    int d = domain.dim();
    double kappa = 1.0;
    for (int i = 0; i < d; ++i) {
        double lo = domain.lo()[static_cast<std::size_t>(i)];
        double hi = domain.hi()[static_cast<std::size_t>(i)];
        int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) / resolution)));
        double gmin = std::numeric_limits<double>::infinity();
        double gmax = 0.0;
        double prev = 0.0;
        for (int k = 0; k <= steps; ++k) {
            double x = lo + (hi - lo) * k / steps;
            double grad = f.coord_gradient(i, x);
            double mag = std::abs(grad);
            gmin = std::min(gmin, mag);
            gmax = std::max(gmax, mag);
            // A sign change between grid nodes means the magnitude passes
            // through zero between them.
            if (k > 0 && ((prev < 0.0 && grad > 0.0) || (prev > 0.0 && grad < 0.0))) gmin = 0.0;
            prev = grad;
        }
        if (gmax <= 1e-12) continue;  // degenerate coordinate, no constraint
        kappa = std::min(kappa, gmin / gmax);
    }
    return kappa;
}

bool greedy_bound_check(const SetFunction& g, int n, int H, const std::vector<double>& tol_steps, Rng& rng) {
    if (n > 12) throw std::invalid_argument("greedy_bound_check: capped at n <= 12");
    if (static_cast<int>(tol_steps.size()) != H)
        throw std::invalid_argument("greedy_bound_check: need one tolerance per greedy step");
    std::vector<double> table = tabulate_set_function(g, n);
    check_monotone_normalized(table, n);

    std::uint32_t chosen = 0;
    double tol_total = 0.0;
    for (int l = 0; l < H; ++l) {
        double best = -std::numeric_limits<double>::infinity();
        for (int s = 0; s < n; ++s) best = std::max(best, table[chosen | (1u << s)]);
        // Adversarial pick: the worst element still within tolerance of the
        // best; exact ties resolved by a seeded draw.
        double worst = std::numeric_limits<double>::infinity();
        std::vector<int> worst_ties;
        for (int s = 0; s < n; ++s) {
            double v = table[chosen | (1u << s)];
            if (v < best - tol_steps[static_cast<std::size_t>(l)]) continue;
            if (v < worst) {
                worst = v;
                worst_ties.assign(1, s);
            } else if (v == worst) {
                worst_ties.push_back(s);
            }
        }
        int pick = worst_ties[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(worst_ties.size())))];
        chosen |= 1u << pick;
        tol_total += tol_steps[static_cast<std::size_t>(l)];
    }

    double kappa = submodularity_ratio_table(table, n, Exec::Serial);
    double curve = curvature_table(table, n, Exec::Serial);
    double star = 0.0;
    std::uint32_t full = static_cast<std::uint32_t>(1u << n);
    for (std::uint32_t mask = 0; mask < full; ++mask)
        if (std::popcount(mask) <= H) star = std::max(star, table[mask]);
    return table[chosen] >= alpha_factor(kappa, curve) * star - tol_total - 1e-9;
}

VariationStats variation_stats(const std::vector<ElementSet>& discrete, const std::vector<Vec>& continuous) {
    if (discrete.empty() || discrete.size() != continuous.size())
        throw std::invalid_argument("variation_stats: trajectories must be non-empty and of equal length");
    VariationStats stats;
    for (std::size_t t = 0; t + 1 < discrete.size(); ++t) {
        if (discrete[t] != discrete[t + 1]) {
            ++stats.v_discrete;
            ++stats.v_set;
        }
        stats.v_path += distance(continuous[t], continuous[t + 1]);
    }
    return stats;
}

}  // namespace omdco
