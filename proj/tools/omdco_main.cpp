// Command-line front end: seeded regret experiments to CSV, oracle profiles
// of configured reward schedules, and a quick invariant self-test.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "omdco/harness.hpp"
#include "omdco/learners.hpp"
#include "omdco/oracle.hpp"

namespace {

using namespace omdco;

int cmd_run(const std::string& config_path, const std::string& out_dir, bool serial) {
    ExperimentConfig cfg = load_config(config_path);
    std::filesystem::create_directories(out_dir);
    Exec exec = serial ? Exec::Serial : Exec::Parallel;
    Summary summary = run_experiment(cfg, exec);
    std::string summary_path = out_dir + "/summary.csv";
    emit_summary_csv(summary, summary_path);
    std::cout << "wrote " << summary_path << "\n";
    if (cfg.emit_traces) {
        for (std::int64_t T : cfg.horizons) {
            RegretTrace trace = run_trial(cfg, T, 0);
            std::string trace_path = out_dir + "/trace_T" + std::to_string(T) + "_trial0.csv";
            emit_trace_csv(trace, trace_path);
            std::cout << "wrote " << trace_path << "\n";
        }
    }
    return 0;
}

int cmd_oracle_profile(const std::string& config_path) {
    ExperimentConfig cfg = load_config(config_path);
    std::int64_t T = cfg.horizons.empty() ? 1 : cfg.horizons.back();
    OracleProfile profile = oracle_profile(cfg, T);
    std::printf("kappa = %.12g\n", profile.kappa);
    std::printf("curvature = %.12g\n", profile.curvature);
    std::printf("alpha = %.12g\n", profile.alpha);
    return 0;
}

bool report(const char* name, bool ok) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
    return ok;
}

int cmd_selftest() {
    bool all = true;
    Rng rng(20240901);

    {
        ConvexDomain box = ConvexDomain::box({-1.0, -2.0}, {4.0, 3.0});
        bool ok = true;
        for (int k = 0; k < 10000 && ok; ++k) {
            Vec p = {rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)};
            Vec q = box.project(0.25, p);
            ok = box.contains(q, 1e-9) && distance(box.project(0.25, q), q) == 0.0;
        }
        all &= report("domain projection idempotent and feasible", ok);
    }
    {
        Exp3S bandit(10, 0.1, 10000);
        bool ok = true;
        for (int k = 0; k < 10000; ++k) {
            bandit.draw(rng);
            bandit.feed(BanditFeedback{rng.uniform(), true, 0.0, 1.0});
        }
        double sum = 0.0;
        for (double p : bandit.probabilities()) {
            sum += p;
            ok = ok && p >= 0.1 / 10 - 1e-15;
        }
        ok = ok && std::abs(sum - 1.0) <= 1e-12;
        for (double w : bandit.weights()) ok = ok && std::isfinite(w) && w > 0.0;
        all &= report("exp3s probability floor and weight positivity", ok);
    }
    {
        ConvexDomain box = ConvexDomain::box({-1.0, -1.0, -1.0}, {4.0, 4.0, 4.0});
        OcoLearner oco(box, FeedbackMode::TwoPoint, OcoPreset::prop2b(), 10000);
        bool ok = true;
        for (int k = 0; k < 10000 && ok; ++k) {
            Probe probe = oco.propose(rng);
            ok = box.contains(probe.x, 1e-9) && box.contains(probe.x_alt, 1e-9);
            oco.update(rng.uniform(), rng.uniform());
        }
        all &= report("oco probes stay feasible", ok);
    }
    {
        ConvexDomain box = ConvexDomain::box({-1.0, -1.0, -1.0, -1.0, -1.0}, {4.0, 4.0, 4.0, 4.0, 4.0});
        Rng lrng(7);
        MatroidLearner learner(5, 3, box, MatroidPreset::thm2a(), 10000, lrng);
        bool ok = true;
        for (int k = 0; k < 10000 && ok; ++k) {
            Decision dec = learner.decide(lrng);
            ok = static_cast<int>(dec.discrete.size()) <= 3;
            learner.feedback(0.5, 0.5, 1.0, lrng);
        }
        all &= report("matroid slate cardinality respected", ok);
    }
    {
        SetFunction modular = [](const ElementSet& S) {
            double v = 0.0;
            for (int i : S) v += static_cast<double>(i + 1);
            return v;
        };
        bool ok = submodularity_ratio(modular, 6) == 1.0 && curvature(modular, 6) == 0.0 &&
                  std::abs(alpha_factor(1.0, 1e-13) - 1.0) <= 1e-9;
        all &= report("definition oracles on a modular function", ok);
    }
    {
        ExperimentConfig cfg;
        cfg.horizons = {64};
        cfg.trials = 4;
        cfg.seed = 99;
        Summary a = run_experiment(cfg, Exec::Serial);
        Summary b = run_experiment(cfg, Exec::Parallel);
        bool ok = a.rows.size() == b.rows.size();
        for (std::size_t i = 0; ok && i < a.rows.size(); ++i)
            ok = a.rows[i].mean == b.rows[i].mean && a.rows[i].q50 == b.rows[i].q50;
        all &= report("serial and parallel experiment paths agree", ok);
    }

    std::printf("%s\n", all ? "selftest: all checks passed" : "selftest: FAILURES");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online mixed discrete/continuous optimization simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    bool serial = false;

    CLI::App* run = app.add_subcommand("run", "run the configured experiment and write CSV summaries");
    run->add_option("--config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--serial", serial, "force the serial trial loop");

    CLI::App* profile = app.add_subcommand("oracle-profile", "print kappa, curvature, alpha for the config");
    profile->add_option("--config", config_path, "experiment config (JSON)")->required();

    app.add_subcommand("selftest", "run the invariant self-checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, serial);
        if (profile->parsed()) return cmd_oracle_profile(config_path);
        return cmd_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
