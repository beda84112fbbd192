#include "omdco/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <json.hpp>

#include "omdco/learners.hpp"

namespace omdco {
namespace {

using nlohmann::json;

ConvexDomain parse_domain(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "box") {
        return ConvexDomain::box(j.at("lo").get<Vec>(), j.at("hi").get<Vec>());
    }
    if (kind == "ball") {
        return ConvexDomain::ball(j.at("radius").get<double>(), j.at("dim").get<int>());
    }
    throw std::invalid_argument("config: domain.kind must be \"box\" or \"ball\"");
}

RewardFamily parse_family(const std::string& name) {
    if (name == "quadratic") return RewardFamily::Quadratic;
    if (name == "modular") return RewardFamily::Modular;
    if (name == "facility") return RewardFamily::Facility;
    if (name == "composite") return RewardFamily::Composite;
    throw std::invalid_argument("config: unknown reward family \"" + name + "\"");
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j = json::parse(json_text);
    ExperimentConfig cfg;
    cfg.n = j.at("n").get<int>();
    cfg.H = j.at("H").get<int>();
    if (j.contains("domain")) cfg.domain = parse_domain(j.at("domain"));
    cfg.algorithm = j.value("algorithm", std::string(cfg.H == 1 ? "single" : "matroid"));
    cfg.preset = j.at("preset").get<std::string>();
    cfg.mu = j.value("mu", 0.0);
    cfg.gamma_rule = j.value("gamma_rule", std::string("preset"));
    cfg.family = parse_family(j.value("reward", std::string("quadratic")));

    if (j.contains("coefficients")) {
        const json& c = j.at("coefficients");
        if (c.contains("a")) {
            cfg.bounds.a_lo = c.at("a").at(0).get<double>();
            cfg.bounds.a_hi = c.at("a").at(1).get<double>();
        }
        if (c.contains("b")) {
            cfg.bounds.b_lo = c.at("b").at(0).get<double>();
            cfg.bounds.b_hi = c.at("b").at(1).get<double>();
        }
        if (c.contains("c")) cfg.bounds.c_fixed = c.at("c").get<double>();
        if (c.contains("w")) {
            cfg.bounds.w_lo = c.at("w").at(0).get<double>();
            cfg.bounds.w_hi = c.at("w").at(1).get<double>();
        }
        if (c.contains("offset_slack")) {
            cfg.bounds.offset_slack_lo = c.at("offset_slack").at(0).get<double>();
            cfg.bounds.offset_slack_hi = c.at("offset_slack").at(1).get<double>();
        }
        if (c.contains("sqrt_outer")) cfg.bounds.sqrt_outer = c.at("sqrt_outer").get<bool>();
    }

    if (j.contains("adversary")) {
        const json& a = j.at("adversary");
        std::string mode = a.value("mode", std::string("redraw"));
        if (mode == "redraw") {
            cfg.adversary.mode = AdversarySchedule::Mode::Redraw;
        } else if (mode == "limited") {
            cfg.adversary.mode = AdversarySchedule::Mode::LimitedSwitch;
            if (a.contains("lambda")) {
                if (a.at("lambda").is_string()) {
                    if (a.at("lambda").get<std::string>() != "auto")
                        throw std::invalid_argument("config: adversary.lambda must be a count or \"auto\"");
                    cfg.adversary.auto_switches = true;
                } else {
                    cfg.adversary.max_switches = a.at("lambda").get<int>();
                }
            }
        } else {
            throw std::invalid_argument("config: adversary.mode must be \"redraw\" or \"limited\"");
        }
    }

    if (j.contains("alpha")) {
        const json& a = j.at("alpha");
        std::string mode = a.value("mode", std::string("fixed"));
        if (mode == "fixed") {
            cfg.alpha.kind = AlphaMode::Kind::Fixed;
            cfg.alpha.value = a.value("value", 1.0);
        } else if (mode == "profile") {
            cfg.alpha.kind = AlphaMode::Kind::FromProfile;
        } else {
            throw std::invalid_argument("config: alpha.mode must be \"fixed\" or \"profile\"");
        }
    }

    std::string oracle = j.value("oracle", std::string("closed_form"));
    if (oracle == "closed_form") {
        cfg.oracle.method = OracleOptions::Method::ClosedForm;
    } else if (oracle == "grid") {
        cfg.oracle.method = OracleOptions::Method::Grid;
    } else if (oracle == "pga") {
        cfg.oracle.method = OracleOptions::Method::ProjGradAscent;
    } else {
        throw std::invalid_argument("config: oracle must be closed_form, grid, or pga");
    }
    if (j.contains("grid_resolution")) cfg.oracle.grid_resolution = j.at("grid_resolution").get<double>();

    if (j.contains("T")) cfg.horizons = j.at("T").get<std::vector<std::int64_t>>();
    cfg.trials = j.value("trials", 50);
    cfg.seed = j.value("seed", static_cast<std::uint64_t>(1));
    cfg.emit_traces = j.value("emit_traces", false);

    if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    for (std::int64_t T : cfg.horizons)
        if (T < 2) throw std::invalid_argument("config: every horizon must be >= 2");
    if (cfg.H == 1 && cfg.algorithm != "single")
        throw std::invalid_argument("config: H = 1 requires algorithm \"single\"");
    if (cfg.H >= 2 && cfg.algorithm != "matroid")
        throw std::invalid_argument("config: H >= 2 requires algorithm \"matroid\"");
    if (cfg.domain.dim() != cfg.n)
        throw std::invalid_argument("config: domain dimension must equal n for subset-selection rewards");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

int effective_switches(const ExperimentConfig& config, std::int64_t horizon) {
    if (config.adversary.mode != AdversarySchedule::Mode::LimitedSwitch) return 0;
    if (!config.adversary.auto_switches) return config.adversary.max_switches;
    return static_cast<int>(std::ceil(std::pow(static_cast<double>(horizon), 1.0 / 6.0)));
}

std::optional<double> gamma_override(const ExperimentConfig& config, std::int64_t horizon) {
    if (config.gamma_rule == "preset") return std::nullopt;
    if (config.gamma_rule == "limited_switch") {
        double T = static_cast<double>(horizon);
        return std::min(1.0, config.n * std::pow(T, 1.0 / 12.0) / std::cbrt(T));
    }
    throw std::invalid_argument("config: gamma_rule must be \"preset\" or \"limited_switch\"");
}

std::vector<double> RegretTrace::cumulative_regret(double alpha_value) const {
    std::vector<double> cum(algorithm_reward.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < algorithm_reward.size(); ++t) {
        acc += alpha_value * oracle_value[t] - algorithm_reward[t];
        cum[t] = acc;
    }
    return cum;
}

double compute_regret(const RegretTrace& trace, double alpha) {
    double oracle = 0.0, algorithm = 0.0;
    for (double v : trace.oracle_value) oracle += v;
    for (double v : trace.algorithm_reward) algorithm += v;
    return alpha * oracle - algorithm;
}

namespace {

SinglePreset make_single_preset(const ExperimentConfig& cfg) {
    if (cfg.preset == "thm1a") return SinglePreset::thm1a();
    if (cfg.preset == "thm1b") return SinglePreset::thm1b();
    if (cfg.preset == "thm1c") {
        if (!(cfg.mu > 0.0)) throw std::invalid_argument("config: preset thm1c requires mu > 0");
        return SinglePreset::thm1c(cfg.mu);
    }
    throw std::invalid_argument("config: single algorithm expects preset thm1a/thm1b/thm1c");
}

MatroidPreset make_matroid_preset(const ExperimentConfig& cfg, std::int64_t horizon) {
    MatroidPreset p;
    if (cfg.preset == "thm2a") {
        p = MatroidPreset::thm2a();
    } else if (cfg.preset == "thm2b") {
        if (!(cfg.mu > 0.0)) throw std::invalid_argument("config: preset thm2b requires mu > 0");
        p = MatroidPreset::thm2b(cfg.mu);
    } else {
        throw std::invalid_argument("config: matroid algorithm expects preset thm2a/thm2b");
    }
    if (auto g = gamma_override(cfg, horizon)) p = p.with_gamma(*g);
    return p;
}

struct ProfileAccumulator {
    double kappa = 1.0;
    double curve = 0.0;

    void absorb(const RewardFunction& f, const RoundOptimum& opt, int n) {
        std::vector<double> table(static_cast<std::size_t>(1u << n));
        Vec x = opt.x_star;
        for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
            ElementSet S;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) S.push_back(i);
            table[mask] = f.value(S, x);
        }
        kappa = std::min(kappa, submodularity_ratio_table(table, n, Exec::Serial));
        curve = std::max(curve, curvature_table(table, n, Exec::Serial));
    }
};

}  // namespace

RegretTrace run_trial(const ExperimentConfig& config, std::int64_t horizon, int trial_index,
                      const AdaptiveAdversary& adaptive) {
    Rng alg_rng(derive_seed(config.seed, {kAlgorithmStreamTag, static_cast<std::uint64_t>(trial_index)}));
    std::uint64_t adversary_seed =
        derive_seed(config.seed, {kAdversaryStreamTag, static_cast<std::uint64_t>(trial_index)});
    AdversarySchedule schedule(config.family, config.bounds, config.domain, config.adversary.mode,
                               effective_switches(config, horizon), horizon, adversary_seed);
    double reward_bound = schedule.reward_bound(config.H);

    std::variant<std::monostate, SingleLearner, MatroidLearner> learner;
    if (config.algorithm == "single") {
        learner.emplace<SingleLearner>(config.n, config.domain, make_single_preset(config), horizon);
    } else {
        learner.emplace<MatroidLearner>(config.n, config.H, config.domain,
                                        make_matroid_preset(config, horizon), horizon, alg_rng);
    }

    RegretTrace trace;
    trace.algorithm_reward.reserve(static_cast<std::size_t>(horizon));
    trace.oracle_value.reserve(static_cast<std::size_t>(horizon));

    ProfileAccumulator profile;
    bool want_profile = config.alpha.kind == AlphaMode::Kind::FromProfile;

    std::int64_t cached_segment = -1;
    RoundOptimum opt;
    ElementSet prev_set;
    Vec prev_x;
    std::vector<PlayedRound> history;
    if (adaptive) history.reserve(static_cast<std::size_t>(horizon));

    for (std::int64_t t = 1; t <= horizon; ++t) {
        std::shared_ptr<const RewardFunction> f =
            adaptive ? adaptive(t, history) : schedule.function_at(t);
        bool fresh = adaptive || schedule.segment_of(t) != cached_segment;
        if (fresh) {
            cached_segment = adaptive ? -1 : schedule.segment_of(t);
            opt = round_optimum(*f, config.H, config.domain, config.oracle);
            if (want_profile) profile.absorb(*f, opt, config.n);
        }

        double fx = 0.0;
        if (auto* single = std::get_if<SingleLearner>(&learner)) {
            Decision dec = single->decide(alg_rng);
            fx = f->value(dec.discrete, dec.x);
            std::optional<double> fxa;
            if (dec.x_alt) fxa = f->value(dec.discrete, *dec.x_alt);
            single->feedback(fx, fxa, reward_bound);
            if (adaptive) history.push_back(PlayedRound{dec.discrete, dec.x});
        } else {
            auto& matroid = std::get<MatroidLearner>(learner);
            Decision dec = matroid.decide(alg_rng);
            fx = f->value(dec.discrete, dec.x);
            double fxa = f->value(dec.discrete, *dec.x_alt);
            matroid.feedback(fx, fxa, reward_bound, alg_rng);
            if (adaptive) history.push_back(PlayedRound{dec.discrete, dec.x});
        }

        trace.algorithm_reward.push_back(fx);
        trace.oracle_value.push_back(opt.value);
        if (t > 1) {
            if (opt.S_star != prev_set) {
                ++trace.stats.v_discrete;
                ++trace.stats.v_set;
            }
            trace.stats.v_path += distance(prev_x, opt.x_star);
        }
        prev_set = opt.S_star;
        prev_x = opt.x_star;
    }

    trace.alpha = config.alpha.kind == AlphaMode::Kind::Fixed ? config.alpha.value
                                                              : alpha_factor(profile.kappa, profile.curve);
    return trace;
}

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {
        "regret", "regret_per_T_variation", "regret_per_T23_variation", "regret_per_TlnT",
        "regret_per_T34lnT"};
    return names;
}

namespace {

std::vector<double> trace_metrics(const RegretTrace& trace, std::int64_t horizon) {
    double T = static_cast<double>(horizon);
    double R = compute_regret(trace, trace.alpha);
    double variation = static_cast<double>(trace.stats.v_set) + trace.stats.v_path;
    double lnT = std::log(T);
    return {R, R / (T * variation), R / (std::pow(T, 2.0 / 3.0) * variation), R / (T * lnT),
            R / (std::pow(T, 0.75) * lnT)};
}

std::vector<RegretTrace> run_trials(const ExperimentConfig& config, std::int64_t horizon, Exec exec) {
    std::vector<RegretTrace> traces(static_cast<std::size_t>(config.trials));
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < config.trials; ++k) traces[static_cast<std::size_t>(k)] = run_trial(config, horizon, k);
    } else {
        for (int k = 0; k < config.trials; ++k) traces[static_cast<std::size_t>(k)] = run_trial(config, horizon, k);
    }
    return traces;
}

}  // namespace

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile: empty sample");
    std::sort(values.begin(), values.end());
    double pos = q * static_cast<double>(values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    double frac = pos - static_cast<double>(lo);
    return values[lo] + (values[lo + 1] - values[lo]) * frac;
}

Summary run_experiment(const ExperimentConfig& config, Exec exec) {
    Summary summary;
    for (std::int64_t T : config.horizons) {
        std::vector<RegretTrace> traces = run_trials(config, T, exec);
        std::size_t num_metrics = metric_names().size();
        std::vector<std::vector<double>> samples(num_metrics);
        for (const RegretTrace& trace : traces) {
            std::vector<double> m = trace_metrics(trace, T);
            for (std::size_t i = 0; i < num_metrics; ++i) samples[i].push_back(m[i]);
        }
        for (std::size_t i = 0; i < num_metrics; ++i) {
            Summary::Row row;
            row.horizon = T;
            row.metric = metric_names()[i];
            double sum = 0.0;
            for (double v : samples[i]) sum += v;
            row.mean = sum / static_cast<double>(samples[i].size());
            row.q10 = quantile(samples[i], 0.10);
            row.q50 = quantile(samples[i], 0.50);
            row.q90 = quantile(samples[i], 0.90);
            summary.rows.push_back(std::move(row));
        }
    }
    return summary;
}

std::vector<double> trial_metric(const ExperimentConfig& config, std::int64_t horizon,
                                 const std::string& metric, Exec exec) {
    std::size_t index = 0;
    while (index < metric_names().size() && metric_names()[index] != metric) ++index;
    if (index == metric_names().size()) throw std::invalid_argument("trial_metric: unknown metric " + metric);
    std::vector<RegretTrace> traces = run_trials(config, horizon, exec);
    std::vector<double> out;
    out.reserve(traces.size());
    for (const RegretTrace& trace : traces) out.push_back(trace_metrics(trace, horizon)[index]);
    return out;
}

namespace {

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void emit_summary_csv(const Summary& summary, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_summary_csv: cannot write " + path);
    out << "T,metric,mean,q10,q50,q90\n";
    for (const Summary::Row& row : summary.rows) {
        out << row.horizon << ',' << row.metric << ',' << format_value(row.mean) << ','
            << format_value(row.q10) << ',' << format_value(row.q50) << ',' << format_value(row.q90)
            << '\n';
    }
    if (!out) throw std::runtime_error("emit_summary_csv: write failed for " + path);
}

Summary parse_summary_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("parse_summary_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "T,metric,mean,q10,q50,q90")
        throw std::runtime_error("parse_summary_csv: bad header in " + path);
    Summary summary;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        Summary::Row row;
        std::string field;
        std::getline(ss, field, ',');
        row.horizon = std::stoll(field);
        std::getline(ss, row.metric, ',');
        std::getline(ss, field, ',');
        row.mean = std::stod(field);
        std::getline(ss, field, ',');
        row.q10 = std::stod(field);
        std::getline(ss, field, ',');
        row.q50 = std::stod(field);
        std::getline(ss, field, ',');
        row.q90 = std::stod(field);
        summary.rows.push_back(std::move(row));
    }
    return summary;
}

void emit_trace_csv(const RegretTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_trace_csv: cannot write " + path);
    out << "t,algorithm_reward,oracle_value,cumulative_regret\n";
    std::vector<double> cum = trace.cumulative_regret(trace.alpha);
    for (std::size_t t = 0; t < trace.algorithm_reward.size(); ++t) {
        out << (t + 1) << ',' << format_value(trace.algorithm_reward[t]) << ','
            << format_value(trace.oracle_value[t]) << ',' << format_value(cum[t]) << '\n';
    }
    if (!out) throw std::runtime_error("emit_trace_csv: write failed for " + path);
}

OracleProfile oracle_profile(const ExperimentConfig& config, std::int64_t horizon, int trial_index) {
    std::uint64_t adversary_seed =
        derive_seed(config.seed, {kAdversaryStreamTag, static_cast<std::uint64_t>(trial_index)});
    AdversarySchedule schedule(config.family, config.bounds, config.domain, config.adversary.mode,
                               effective_switches(config, horizon), horizon, adversary_seed);
    ProfileAccumulator acc;
    std::int64_t cached_segment = -1;
    for (std::int64_t t = 1; t <= horizon; ++t) {
        if (schedule.segment_of(t) == cached_segment) continue;
        cached_segment = schedule.segment_of(t);
        std::shared_ptr<const RewardFunction> f = schedule.function_at(t);
        RoundOptimum opt = round_optimum(*f, config.H, config.domain, config.oracle);
        acc.absorb(*f, opt, config.n);
    }
    OracleProfile profile;
    profile.kappa = acc.kappa;
    profile.curvature = acc.curve;
    profile.alpha = alpha_factor(acc.kappa, acc.curve);
    return profile;
}

}  // namespace omdco
