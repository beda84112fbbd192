// Benchmark comparing the serial reference kernels against their OpenMP
// counterparts: the exhaustive definition scans and the trial loop of the
// experiment runner. Also asserts that both paths produce identical results.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "omdco/harness.hpp"
#include "omdco/oracle.hpp"

using namespace omdco;

namespace {

double seconds(const std::function<void()>& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_definition_scans(int n) {
    Rng rng(55);
    std::vector<std::uint32_t> covers(n);
    std::vector<double> weight(16);
    for (int i = 0; i < n; ++i) {
        std::uint32_t m = 0;
        for (int u = 0; u < 16; ++u)
            if (rng.uniform() < 0.4) m |= 1u << u;
        covers[i] = m;
    }
    for (int u = 0; u < 16; ++u) weight[u] = rng.uniform(0.5, 2.0);
    SetFunction g = [&](const ElementSet& S) {
        std::uint32_t covered = 0;
        for (int i : S) covered |= covers[i];
        double total = 0.0;
        for (int u = 0; u < 16; ++u)
            if (covered & (1u << u)) total += weight[u];
        return total;
    };
    std::vector<double> table = tabulate_set_function(g, n);

    // Warm caches and the OpenMP pool before timing.
    (void)submodularity_ratio_table(table, n, Exec::Serial);
    (void)submodularity_ratio_table(table, n, Exec::Parallel);
    (void)curvature_table(table, n, Exec::Parallel);

    double kappa_serial = 0.0, kappa_parallel = 0.0;
    double curve_serial = 0.0, curve_parallel = 0.0;
    double ts_kappa = seconds([&] { kappa_serial = submodularity_ratio_table(table, n, Exec::Serial); });
    double tp_kappa = seconds([&] { kappa_parallel = submodularity_ratio_table(table, n, Exec::Parallel); });
    double ts_curve = seconds([&] { curve_serial = curvature_table(table, n, Exec::Serial); });
    double tp_curve = seconds([&] { curve_parallel = curvature_table(table, n, Exec::Parallel); });

    std::printf("submodularity ratio  n=%d   serial %.3fs   openmp %.3fs   speedup %.2fx   %s\n", n,
                ts_kappa, tp_kappa, ts_kappa / tp_kappa,
                kappa_serial == kappa_parallel ? "identical" : "MISMATCH");
    std::printf("curvature            n=%d   serial %.3fs   openmp %.3fs   speedup %.2fx   %s\n", n,
                ts_curve, tp_curve, ts_curve / tp_curve,
                curve_serial == curve_parallel ? "identical" : "MISMATCH");
}

void bench_experiment() {
    ExperimentConfig cfg;
    cfg.n = 5;
    cfg.H = 3;
    cfg.domain = ConvexDomain::box(Vec(5, -1.0), Vec(5, 4.0));
    cfg.algorithm = "matroid";
    cfg.preset = "thm2b";
    cfg.mu = 2.0;
    cfg.horizons = {2000};
    cfg.trials = 24;
    cfg.seed = 9;

    Summary serial, parallel;
    double ts = seconds([&] { serial = run_experiment(cfg, Exec::Serial); });
    double tp = seconds([&] { parallel = run_experiment(cfg, Exec::Parallel); });
    bool same = serial.rows.size() == parallel.rows.size();
    for (std::size_t i = 0; same && i < serial.rows.size(); ++i)
        same = serial.rows[i].mean == parallel.rows[i].mean && serial.rows[i].q50 == parallel.rows[i].q50;
    std::printf("experiment trials    24x2000 serial %.3fs   openmp %.3fs   speedup %.2fx   %s\n", ts, tp,
                ts / tp, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("openmp not enabled; both paths run serially\n");
#endif
    bench_definition_scans(11);
    bench_definition_scans(12);
    bench_experiment();
    return 0;
}
