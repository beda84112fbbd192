#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "omdco/harness.hpp"

using namespace omdco;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.n = 5;
    cfg.H = 3;
    cfg.domain = ConvexDomain::box(Vec(5, -1.0), Vec(5, 4.0));
    cfg.algorithm = "matroid";
    cfg.preset = "thm2b";
    cfg.mu = 2.0;
    cfg.horizons = {128};
    cfg.trials = 6;
    cfg.seed = 41;
    return cfg;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
    std::string text = R"({
        "n": 5, "H": 3,
        "domain": {"kind": "box", "lo": [-1,-1,-1,-1,-1], "hi": [4,4,4,4,4]},
        "algorithm": "matroid", "preset": "thm2b", "mu": 2.0,
        "reward": "quadratic",
        "coefficients": {"a": [1,4], "b": [1,4], "c": 70},
        "adversary": {"mode": "limited", "lambda": "auto"},
        "alpha": {"mode": "fixed", "value": 1.0},
        "oracle": "closed_form",
        "T": [500, 2000], "trials": 8, "seed": 7
    })";
    ExperimentConfig cfg = parse_config(text);
    CHECK(cfg.n == 5);
    CHECK(cfg.H == 3);
    CHECK(cfg.adversary.auto_switches);
    CHECK(cfg.bounds.c_fixed == 70.0);
    CHECK(cfg.horizons == std::vector<std::int64_t>{500, 2000});
    CHECK(effective_switches(cfg, 500) == 3);    // ceil(500^(1/6)) = 3
    CHECK(effective_switches(cfg, 8000) == 5);   // ceil(8000^(1/6)) = 5

    CHECK_THROWS(parse_config(R"({"n":2,"H":1,"preset":"thm2a","algorithm":"matroid",
        "domain":{"kind":"box","lo":[-1,-1],"hi":[1,1]}})"));
    CHECK_THROWS(parse_config(R"({"n":2,"H":2,"preset":"thm1a","algorithm":"single",
        "domain":{"kind":"box","lo":[-1,-1],"hi":[1,1]}})"));
}

TEST_CASE("gamma rule for the limited-switching experiment") {
    ExperimentConfig cfg = small_config();
    CHECK_FALSE(gamma_override(cfg, 2000).has_value());
    cfg.gamma_rule = "limited_switch";
    double expect = std::min(1.0, 5.0 * std::pow(2000.0, 1.0 / 12.0) / std::cbrt(2000.0));
    CHECK(*gamma_override(cfg, 2000) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(*gamma_override(cfg, 500) == 1.0);  // clamped
}

TEST_CASE("regret arithmetic") {
    RegretTrace trace;
    trace.oracle_value.assign(10, 2.0);
    trace.algorithm_reward.assign(10, 1.0);
    CHECK(compute_regret(trace, 1.0) == doctest::Approx(10.0));
    CHECK(compute_regret(trace, 0.5) == doctest::Approx(0.0));

    RegretTrace zero;
    zero.oracle_value.assign(5, 0.0);
    zero.algorithm_reward.assign(5, 0.0);
    CHECK(compute_regret(zero, 1.0) == 0.0);
}

TEST_CASE("quantiles") {
    CHECK(quantile({3.0}, 0.1) == 3.0);
    CHECK(quantile({3.0}, 0.9) == 3.0);
    CHECK(quantile({1.0, 2.0, 3.0, 4.0, 5.0}, 0.5) == doctest::Approx(3.0));
    CHECK(quantile({1.0, 2.0}, 0.5) == doctest::Approx(1.5));
    CHECK(quantile({1.0, 2.0, 3.0}, 0.9) == doctest::Approx(2.8));
    CHECK_THROWS(quantile({}, 0.5));
}

TEST_CASE("trial determinism and oracle dominance") {
    ExperimentConfig cfg = small_config();
    RegretTrace a = run_trial(cfg, 128, 2);
    RegretTrace b = run_trial(cfg, 128, 2);
    CHECK(a.algorithm_reward == b.algorithm_reward);
    CHECK(a.oracle_value == b.oracle_value);
    CHECK(a.stats.v_path == b.stats.v_path);

    // With alpha = 1, per-round oracle value dominates the played reward.
    for (std::size_t t = 0; t < a.algorithm_reward.size(); ++t)
        CHECK(a.oracle_value[t] >= a.algorithm_reward[t] - 1e-9);
    std::vector<double> cum = a.cumulative_regret(1.0);
    for (std::size_t t = 1; t < cum.size(); ++t) CHECK(cum[t] >= cum[t - 1] - 1e-9);

    RegretTrace c = run_trial(cfg, 128, 3);
    CHECK(a.algorithm_reward != c.algorithm_reward);  // independent trial streams
}

TEST_CASE("summary aggregation") {
    ExperimentConfig cfg = small_config();
    SUBCASE("single trial collapses the quantiles") {
        cfg.trials = 1;
        Summary s = run_experiment(cfg, Exec::Serial);
        REQUIRE(s.rows.size() == metric_names().size());
        for (const Summary::Row& row : s.rows) {
            CHECK(row.q10 == row.q50);
            CHECK(row.q50 == row.q90);
            CHECK(row.mean == row.q50);
        }
    }
    SUBCASE("quantiles are ordered") {
        Summary s = run_experiment(cfg, Exec::Serial);
        for (const Summary::Row& row : s.rows) {
            CHECK(row.q10 <= row.q50);
            CHECK(row.q50 <= row.q90);
        }
    }
    SUBCASE("serial and parallel paths agree exactly") {
        Summary serial = run_experiment(cfg, Exec::Serial);
        Summary parallel = run_experiment(cfg, Exec::Parallel);
        REQUIRE(serial.rows.size() == parallel.rows.size());
        for (std::size_t i = 0; i < serial.rows.size(); ++i) {
            CHECK(serial.rows[i].metric == parallel.rows[i].metric);
            CHECK(serial.rows[i].mean == parallel.rows[i].mean);
            CHECK(serial.rows[i].q10 == parallel.rows[i].q10);
            CHECK(serial.rows[i].q50 == parallel.rows[i].q50);
            CHECK(serial.rows[i].q90 == parallel.rows[i].q90);
        }
    }
}

TEST_CASE("csv emission") {
    SUBCASE("empty summary is header-only") {
        Summary empty;
        emit_summary_csv(empty, "test_empty.csv");
        CHECK(read_file("test_empty.csv") == "T,metric,mean,q10,q50,q90\n");
        std::remove("test_empty.csv");
    }
    SUBCASE("one horizon and five metrics give six lines") {
        ExperimentConfig cfg = small_config();
        cfg.trials = 2;
        Summary s = run_experiment(cfg, Exec::Serial);
        emit_summary_csv(s, "test_six.csv");
        std::string text = read_file("test_six.csv");
        CHECK(std::count(text.begin(), text.end(), '\n') == 6);
        CHECK(text.find("\r") == std::string::npos);  // LF endings only
        std::remove("test_six.csv");
    }
    SUBCASE("emit/parse round trip") {
        Rng rng(71);
        Summary s;
        for (int k = 0; k < 10; ++k) {
            Summary::Row row;
            row.horizon = 100 + k;
            row.metric = metric_names()[k % metric_names().size()];
            // Pre-round through the 12-digit formatter so equality is exact.
            auto fmt = [](double v) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.12g", v);
                return std::stod(buf);
            };
            row.mean = fmt(rng.uniform(-10.0, 1000.0));
            row.q10 = fmt(rng.uniform(-10.0, 1000.0));
            row.q50 = fmt(rng.uniform(-10.0, 1000.0));
            row.q90 = fmt(rng.uniform(-10.0, 1000.0));
            s.rows.push_back(row);
        }
        emit_summary_csv(s, "test_roundtrip.csv");
        Summary parsed = parse_summary_csv("test_roundtrip.csv");
        REQUIRE(parsed.rows.size() == s.rows.size());
        for (std::size_t i = 0; i < s.rows.size(); ++i) {
            CHECK(parsed.rows[i].horizon == s.rows[i].horizon);
            CHECK(parsed.rows[i].metric == s.rows[i].metric);
            CHECK(parsed.rows[i].mean == s.rows[i].mean);
            CHECK(parsed.rows[i].q10 == s.rows[i].q10);
            CHECK(parsed.rows[i].q50 == s.rows[i].q50);
            CHECK(parsed.rows[i].q90 == s.rows[i].q90);
        }
        std::remove("test_roundtrip.csv");
    }
    SUBCASE("trace emission") {
        ExperimentConfig cfg = small_config();
        RegretTrace trace = run_trial(cfg, 128, 0);
        emit_trace_csv(trace, "test_trace.csv");
        std::string text = read_file("test_trace.csv");
        CHECK(std::count(text.begin(), text.end(), '\n') == 129);  // header + one row per round
        std::remove("test_trace.csv");
    }
}

TEST_CASE("byte-identical reruns") {
    ExperimentConfig cfg = small_config();
    Summary s1 = run_experiment(cfg, Exec::Parallel);
    Summary s2 = run_experiment(cfg, Exec::Parallel);
    emit_summary_csv(s1, "test_det_a.csv");
    emit_summary_csv(s2, "test_det_b.csv");
    CHECK(read_file("test_det_a.csv") == read_file("test_det_b.csv"));
    std::remove("test_det_a.csv");
    std::remove("test_det_b.csv");
}

TEST_CASE("oracle profile of a modular schedule gives alpha one") {
    ExperimentConfig cfg = small_config();
    cfg.family = RewardFamily::Modular;
    cfg.preset = "thm2a";
    OracleProfile profile = oracle_profile(cfg, 64);
    CHECK(profile.kappa == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(profile.curvature <= 1e-9);
    CHECK(profile.alpha == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("profile-derived alpha flows into the trace") {
    ExperimentConfig cfg = small_config();
    cfg.family = RewardFamily::Modular;
    cfg.preset = "thm2a";
    cfg.alpha.kind = AlphaMode::Kind::FromProfile;
    RegretTrace trace = run_trial(cfg, 64, 0);
    CHECK(trace.alpha == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("adaptive adversary hook sees the decision history") {
    ExperimentConfig cfg = small_config();
    std::int64_t calls = 0;
    bool lengths_ok = true;
    AdaptiveAdversary adversary = [&](std::int64_t t, const std::vector<PlayedRound>& history)
        -> std::shared_ptr<const RewardFunction> {
        ++calls;
        lengths_ok = lengths_ok && static_cast<std::int64_t>(history.size()) == t - 1;
        // Penalize the coordinates the learner just played, within the
        // schedule's coefficient bounds.
        Vec a(5, 1.0), b(5, 4.0), c(5, 70.0);
        if (!history.empty())
            for (int i : history.back().discrete) b[i] = 1.0;
        return std::make_shared<SeparableQuadratic>(a, b, c, cfg.domain);
    };
    RegretTrace trace = run_trial(cfg, 64, 0, adversary);
    CHECK(calls == 64);
    CHECK(lengths_ok);
    // Oracle dominance still holds round by round.
    for (std::size_t t = 0; t < trace.algorithm_reward.size(); ++t)
        CHECK(trace.oracle_value[t] >= trace.algorithm_reward[t] - 1e-9);
    // The same seed with the same hook reproduces the trace.
    RegretTrace again = run_trial(cfg, 64, 0, adversary);
    CHECK(trace.algorithm_reward == again.algorithm_reward);
}

TEST_CASE("average per-round regret shrinks with the horizon") {
    ExperimentConfig cfg = small_config();
    cfg.horizons = {500, 2000, 8000};
    cfg.trials = 15;
    std::vector<double> per_round;
    for (std::int64_t T : cfg.horizons) {
        double median_regret = quantile(trial_metric(cfg, T, "regret", Exec::Parallel), 0.5);
        per_round.push_back(median_regret / static_cast<double>(T));
    }
    CHECK(per_round[0] > per_round[1]);
    CHECK(per_round[1] > per_round[2]);
}

TEST_CASE("single-algorithm trials run end to end") {
    ExperimentConfig cfg;
    cfg.n = 3;
    cfg.H = 1;
    cfg.domain = ConvexDomain::box(Vec(3, -1.0), Vec(3, 4.0));
    cfg.algorithm = "single";
    cfg.preset = "thm1a";
    cfg.horizons = {64};
    cfg.trials = 3;
    cfg.seed = 5;
    Summary s = run_experiment(cfg, Exec::Serial);
    CHECK(s.rows.size() == metric_names().size());
    for (const Summary::Row& row : s.rows) CHECK(std::isfinite(row.mean));
}
