#include "scrip/experiments.hpp"

#include "scrip/best_reply_mdp.hpp"
#include "scrip/json_io.hpp"
#include "scrip/rng.hpp"
#include "scrip/wealth_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>

namespace scrip {

namespace fs = std::filesystem;
using nlohmann::json;

Mode mode_from_string(const std::string& s) {
    if (s == "simulate") return Mode::simulate;
    if (s == "distribution") return Mode::distribution;
    if (s == "best-reply") return Mode::best_reply;
    if (s == "equilibrium") return Mode::equilibrium;
    if (s == "stationary") return Mode::stationary;
    if (s == "fig2") return Mode::fig2;
    if (s == "fig3") return Mode::fig3;
    if (s == "fig4") return Mode::fig4;
    throw SpecError("unknown mode: " + s);
}

std::string mode_to_string(Mode mode) {
    switch (mode) {
        case Mode::simulate: return "simulate";
        case Mode::distribution: return "distribution";
        case Mode::best_reply: return "best-reply";
        case Mode::equilibrium: return "equilibrium";
        case Mode::stationary: return "stationary";
        case Mode::fig2: return "fig2";
        case Mode::fig3: return "fig3";
        case Mode::fig4: return "fig4";
    }
    return "?";
}

std::int64_t fig2_cadence() { return 1; }
std::int64_t fig3_cadence(std::int64_t agents) { return std::max<std::int64_t>(1, agents / 10); }
std::int64_t fig4_cadence() { return 1; }

json ExperimentConfig::resolved() const {
    json j{{"mode", mode_to_string(mode)},
           {"spec", game_spec_to_json(spec)},
           {"thresholds", thresholds.k},
           {"rounds", rounds},
           {"replicas", replicas},
           {"seed", seed},
           {"cadence", cadence},
           {"epsilon_sq", epsilon_sq},
           {"threshold_cap", threshold_cap},
           {"state_cap", state_cap},
           {"rng", std::string(CounterRng::name())}};
    if (!n_values.empty()) j["n_values"] = n_values;
    return j;
}

std::uint64_t config_hash(const json& resolved) {
    // FNV-1a over the canonical dump (nlohmann objects serialize key-sorted).
    const std::string dump = resolved.dump();
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

ExperimentConfig experiment_config_from_json(const json& j, const std::string& base_dir) {
    if (!j.is_object()) throw SpecError("config must be a JSON object");
    ExperimentConfig cfg;
    if (!j.contains("mode") || !j["mode"].is_string())
        throw SpecError("config missing string field 'mode'");
    cfg.mode = mode_from_string(j["mode"].get<std::string>());

    if (j.contains("spec")) {
        cfg.spec = game_spec_from_json(j["spec"]);
    } else if (j.contains("spec_path")) {
        fs::path p = j["spec_path"].get<std::string>();
        if (p.is_relative()) p = fs::path(base_dir) / p;
        cfg.spec = load_game_spec(p.string());
    } else {
        throw SpecError("config needs 'spec' (inline) or 'spec_path'");
    }

    if (j.contains("thresholds")) {
        cfg.thresholds.k = j["thresholds"].get<std::vector<int>>();
    } else if (cfg.mode == Mode::fig2 || cfg.mode == Mode::fig3 || cfg.mode == Mode::fig4) {
        cfg.thresholds.k.assign(static_cast<std::size_t>(cfg.spec.num_types()), 5);
    } else if (cfg.mode != Mode::equilibrium && cfg.mode != Mode::best_reply) {
        throw SpecError("config missing 'thresholds'");
    }
    if (cfg.thresholds.k.empty() && (cfg.mode == Mode::best_reply))
        throw SpecError("config missing 'thresholds'");
    if (!cfg.thresholds.k.empty()) require_valid_thresholds(cfg.spec, cfg.thresholds);

    if (!j.contains("seed")) throw SpecError("config missing mandatory 'seed'");
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
        throw SpecError("'seed' must be an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();

    if (j.contains("rounds"))
        cfg.rounds = j["rounds"].get<std::int64_t>();
    else if (cfg.mode == Mode::fig3)
        cfg.rounds = 5 * cfg.spec.total_agents();
    if (j.contains("replicas")) cfg.replicas = j["replicas"].get<int>();
    if (j.contains("cadence")) cfg.cadence = j["cadence"].get<std::int64_t>();
    if (j.contains("n_values")) cfg.n_values = j["n_values"].get<std::vector<std::int64_t>>();
    if (j.contains("epsilon_sq")) cfg.epsilon_sq = j["epsilon_sq"].get<double>();
    if (j.contains("threshold_cap")) cfg.threshold_cap = j["threshold_cap"].get<int>();
    if (j.contains("state_cap")) cfg.state_cap = j["state_cap"].get<std::size_t>();

    if (cfg.rounds < 0) throw SpecError("'rounds' must be nonnegative");
    if (cfg.replicas < 1) throw SpecError("'replicas' must be >= 1");
    if (cfg.cadence < 1) throw SpecError("'cadence' must be >= 1");
    if (cfg.mode == Mode::fig2 && cfg.n_values.empty()) cfg.n_values = {1000, 5000, 25000};
    if (cfg.mode == Mode::fig4 && cfg.n_values.empty())
        cfg.n_values = {1000, 2000, 3000, 4000, 5000};
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path,
                                        std::optional<std::uint64_t> seed_override,
                                        std::optional<std::string> out_override) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SpecError("malformed JSON in " + path + ": " + e.what());
    }
    if (seed_override) j["seed"] = *seed_override;
    ExperimentConfig cfg =
        experiment_config_from_json(j, fs::path(path).parent_path().string());
    if (out_override) cfg.out_dir = *out_override;
    return cfg;
}

WealthState state_from_distribution(const GameSpec& spec, const MoneyDistribution& d) {
    const std::int64_t agents = spec.total_agents();
    WealthState state;
    state.dollars.assign(static_cast<std::size_t>(agents), 0);
    for (int t = 0; t < spec.num_types(); ++t) {
        std::int64_t u = 0;
        for (int i = 0; i <= d.top_level(t); ++i) {
            const double exact = d.at(t, i) * static_cast<double>(agents);
            const double rounded = std::nearbyint(exact);
            if (std::abs(exact - rounded) > 1e-6)
                throw SpecError("distribution entry is not a multiple of 1/(h n)");
            for (std::int64_t c = 0; c < static_cast<std::int64_t>(rounded); ++c, ++u)
                state.dollars[static_cast<std::size_t>(spec.agent_of_type(t, u))] =
                    static_cast<std::int32_t>(i);
        }
        if (u != spec.agent_count(t))
            throw SpecError("distribution marginal does not cover type " + std::to_string(t));
    }
    return state;
}

WealthState extreme_state(const GameSpec& spec, int top) {
    if (top < 1) throw SpecError("extreme level must be >= 1");
    if (spec.total_money() % top != 0)
        throw SpecError("money supply is not divisible by the extreme level");
    const std::int64_t rich = spec.total_money() / top;
    if (rich > spec.total_agents())
        throw SpecError("not enough agents to hold the money at the extreme level");
    WealthState state;
    state.dollars.assign(static_cast<std::size_t>(spec.total_agents()), 0);
    for (std::int64_t i = 0; i < rich; ++i)
        state.dollars[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(top);
    return state;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw SpecError("need >= 2 points to fit");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) throw SpecError("degenerate fit");
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

class OutputSet {
public:
    explicit OutputSet(const ExperimentConfig& cfg) : cfg_(cfg), resolved_(cfg.resolved()) {
        fs::create_directories(cfg.out_dir);
        hash_ = config_hash(resolved_);
    }

    std::ofstream csv(const std::string& name, const std::string& columns) {
        const std::string path = (fs::path(cfg_.out_dir) / name).string();
        std::ofstream out(path, std::ios::binary);  // '\n' endings everywhere
        if (!out) throw SpecError("cannot write " + path);
        out << "# scripsim mode=" << mode_to_string(cfg_.mode) << " seed=" << cfg_.seed
            << " rng=" << CounterRng::name() << " config_fnv1a=" << hash_hex(hash_) << "\n";
        out << columns << "\n";
        paths_.push_back(path);
        return out;
    }

    void write_json(const std::string& name, json payload) {
        payload["config"] = resolved_;
        payload["config_fnv1a"] = hash_hex(hash_);
        const std::string path = (fs::path(cfg_.out_dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw SpecError("cannot write " + path);
        out << payload.dump(2) << "\n";
        paths_.push_back(path);
    }

    void write_config() { write_json("config.json", json::object()); }

    std::vector<std::string> paths() const { return paths_; }

private:
    const ExperimentConfig& cfg_;
    json resolved_;
    std::uint64_t hash_ = 0;
    std::vector<std::string> paths_;
};

void write_distribution_csv(std::ofstream& out, const MoneyDistribution& d) {
    for (int t = 0; t < d.num_types(); ++t)
        for (int i = 0; i <= d.top_level(t); ++i)
            out << t << "," << i << "," << fmt(d.at(t, i)) << "\n";
}

json report_to_json(const BestReplyReport& r) {
    return json{{"type", r.type},
                {"kappa", r.kappa},
                {"lhs_alpha", r.lhs_alpha},
                {"rhs_at_kappa", r.rhs_at_kappa},
                {"rhs_at_kappa_plus_1", r.rhs_at_kappa_plus_1},
                {"z", r.z},
                {"p_u", r.p_u},
                {"p_d", r.p_d},
                {"lambda", r.lambda},
                {"capped", r.capped}};
}

}  // namespace

std::vector<std::string> run_simulate(const ExperimentConfig& cfg) {
    OutputSet out(cfg);
    out.write_config();
    const MoneyDistribution target = min_relent_distribution(cfg.spec, cfg.thresholds);
    ScripChain chain(cfg.spec, cfg.thresholds, CounterRng(cfg.seed));

    auto trace = out.csv("trace.csv", "round,distance_L2,distance_L2_squared,volunteers,frozen_flag");
    const TraceSummary summary = run_trace(
        chain, cfg.rounds, cfg.cadence, target, cfg.epsilon_sq,
        [&](std::int64_t round, double dist_sq, std::int64_t volunteers, bool frozen) {
            trace << round << "," << fmt(std::sqrt(dist_sq)) << "," << fmt(dist_sq) << ","
                  << volunteers << "," << (frozen ? 1 : 0) << "\n";
        });
    trace.close();

    out.write_json("summary.json",
                   json{{"rounds", summary.rounds},
                        {"observations", summary.observations},
                        {"max_distance_L2", std::sqrt(summary.max_distance_sq)},
                        {"max_distance_L2_squared", summary.max_distance_sq},
                        {"mean_distance_L2_squared", summary.mean_distance_sq},
                        {"final_distance_L2_squared", summary.final_distance_sq},
                        {"epsilon_sq", summary.epsilon_sq},
                        {"reached_epsilon", summary.reached_epsilon},
                        {"first_round_within_epsilon", summary.first_round_within_epsilon},
                        {"frozen_seen", summary.frozen_seen},
                        {"excess_fraction_final", chain.excess_fraction()},
                        {"distance_metric",
                         "distance_L2_squared is the concentration metric; distance_L2 is its "
                         "square root"}});
    return out.paths();
}

std::vector<std::string> run_distribution(const ExperimentConfig& cfg) {
    OutputSet out(cfg);
    out.write_config();
    const LambdaSolution sol = solve_lambda(cfg.spec, cfg.thresholds);
    const MoneyDistribution dstar = min_relent_distribution(cfg.spec, cfg.thresholds, sol.lambda);
    const MoneyDistribution q = base_distribution(cfg.spec, cfg.thresholds);

    auto dcsv = out.csv("dstar.csv", "type_index,dollars,fraction");
    write_distribution_csv(dcsv, dstar);
    dcsv.close();
    auto qcsv = out.csv("q.csv", "type_index,dollars,fraction");
    write_distribution_csv(qcsv, q);
    qcsv.close();

    const MoneyDistribution realizable = nearest_realizable(dstar, cfg.spec);
    auto rcsv = out.csv("dstar_realizable.csv", "type_index,dollars,fraction");
    write_distribution_csv(rcsv, realizable);
    rcsv.close();

    out.write_json("lambda.json", json{{"lambda", sol.lambda},
                                       {"achieved_mean", sol.achieved_mean},
                                       {"iterations", sol.iterations},
                                       {"bracket_low", sol.bracket_low},
                                       {"bracket_high", sol.bracket_high},
                                       {"relative_entropy_dstar_q", relative_entropy(dstar, q)}});
    return out.paths();
}

std::vector<std::string> run_best_reply(const ExperimentConfig& cfg) {
    OutputSet out(cfg);
    out.write_config();
    const int cap = cfg.threshold_cap > 0 ? cfg.threshold_cap : default_threshold_cap(cfg.spec);
    json reports = json::array();
    for (int t = 0; t < cfg.spec.num_types(); ++t)
        reports.push_back(report_to_json(best_reply_threshold(cfg.spec, cfg.thresholds, t, cap)));
    out.write_json("best_reply.json", json{{"reports", std::move(reports)}, {"cap", cap}});
    return out.paths();
}

std::vector<std::string> run_equilibrium(const ExperimentConfig& cfg) {
    OutputSet out(cfg);
    out.write_config();
    int cap = cfg.threshold_cap > 0 ? cfg.threshold_cap : default_threshold_cap(cfg.spec);
    EquilibriumResult result = greatest_equilibrium(cfg.spec, cap);
    while (result.kind == EquilibriumKind::capped) {
        cap *= 2;
        result = greatest_equilibrium(cfg.spec, cap);
    }

    auto trace = out.csv("equilibrium_trace.csv", "step,thresholds...");
    for (std::size_t s = 0; s < result.trace.size(); ++s) {
        trace << s;
        for (int t = 0; t < result.trace[s].size(); ++t) trace << "," << result.trace[s][t];
        trace << "\n";
    }
    trace.close();

    json reports = json::array();
    for (const auto& r : result.reports) reports.push_back(report_to_json(r));
    const char* kind = result.kind == EquilibriumKind::nontrivial ? "nontrivial" : "trivial";
    out.write_json("equilibrium.json", json{{"thresholds", result.thresholds.k},
                                            {"kind", kind},
                                            {"cap", cap},
                                            {"steps", result.trace.size()},
                                            {"reports", std::move(reports)}});
    return out.paths();
}

std::vector<std::string> run_stationary(const ExperimentConfig& cfg) {
    OutputSet out(cfg);
    out.write_config();
    const StationaryReport report = exact_stationary(cfg.spec, cfg.thresholds, cfg.state_cap);

    auto csv = out.csv("stationary.csv", "state_id,holdings,pi_closed_form,pi_solved");
    for (std::size_t s = 0; s < report.states.size(); ++s) {
        csv << s << ",";
        for (std::size_t i = 0; i < report.states[s].size(); ++i) {
            if (i) csv << " ";
            csv << report.states[s][i];
        }
        csv << "," << fmt(report.pi_closed_form[s]) << "," << fmt(report.pi_solved[s]) << "\n";
    }
    csv.close();

    out.write_json("stationary.json",
                   json{{"states", report.states.size()},
                        {"transitions", report.transitions},
                        {"linf_diff", report.linf_diff},
                        {"mismatch", report.mismatch},
                        {"max_detailed_balance_gap", report.max_detailed_balance_gap},
                        {"irreducible", report.irreducible},
                        {"aperiodic", report.aperiodic}});
    return out.paths();
}

Fig2Point fig2_measure(const GameSpec& base, const ThresholdVector& k, std::int64_t n,
                       std::int64_t rounds, std::uint64_t seed) {
    const GameSpec spec = base.with_replicas(n);
    const MoneyDistribution target = min_relent_distribution(spec, k);
    ScripChain chain(spec, k, CounterRng(seed));
    chain.init_from(state_from_distribution(spec, nearest_realizable(target, spec)));
    const TraceSummary summary = run_trace(chain, rounds, fig2_cadence(), target, 0.0);
    return Fig2Point{n, summary.max_distance_sq};
}

std::vector<std::string> run_fig2(const ExperimentConfig& cfg) {
    OutputSet out(cfg);
    out.write_config();
    auto csv = out.csv("fig2.csv", "n,max_distance_L2,max_distance_L2_squared");
    for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
        const Fig2Point point = fig2_measure(cfg.spec, cfg.thresholds, cfg.n_values[i],
                                             cfg.rounds, CounterRng(cfg.seed).fork(i).seed());
        csv << point.n << "," << fmt(std::sqrt(point.max_distance_sq)) << ","
            << fmt(point.max_distance_sq) << "\n";
    }
    csv.close();
    return out.paths();
}

Fig3Curve fig3_measure(const GameSpec& spec, const ThresholdVector& k, std::int64_t rounds,
                       int replicas, std::uint64_t seed) {
    const MoneyDistribution target = min_relent_distribution(spec, k);
    const std::int64_t cadence = fig3_cadence(spec.total_agents());
    const WealthState start = extreme_state(spec, *std::max_element(k.k.begin(), k.k.end()));
    const CounterRng root(seed);

    // Each replica records its level occupancy at every observation; the
    // curve is the distance of the replica-averaged profile from the target.
    struct Observation {
        std::int64_t round;
        std::vector<double> profile;
    };
    const auto replica_profiles = [&](int r) {
        std::vector<Observation> profiles;
        ScripChain chain(spec, k, root.fork(static_cast<std::uint64_t>(r)));
        chain.init_from(start);
        run_trace(chain, rounds, cadence, target, 0.0,
                  [&](std::int64_t round, double, std::int64_t, bool) {
                      std::vector<double> flat;
                      const MoneyDistribution d = chain.occupancy();
                      for (int t = 0; t < d.num_types(); ++t)
                          for (int i = 0; i <= d.top_level(t); ++i) flat.push_back(d.at(t, i));
                      profiles.push_back({round, std::move(flat)});
                  });
        return profiles;
    };

    std::vector<std::future<std::vector<Observation>>> jobs;
    for (int r = 0; r < replicas; ++r)
        jobs.push_back(std::async(std::launch::async, replica_profiles, r));
    std::vector<std::vector<Observation>> all;
    for (auto& job : jobs) all.push_back(job.get());

    std::vector<double> flat_target;
    for (int t = 0; t < target.num_types(); ++t)
        for (int i = 0; i <= target.top_level(t); ++i) flat_target.push_back(target.at(t, i));

    Fig3Curve curve;
    const std::size_t observations = all.front().size();
    for (std::size_t o = 0; o < observations; ++o) {
        std::vector<double> mean(flat_target.size(), 0.0);
        for (const auto& profiles : all)
            for (std::size_t j = 0; j < mean.size(); ++j)
                mean[j] += profiles[o].profile[j] / static_cast<double>(replicas);
        double dist_sq = 0;
        for (std::size_t j = 0; j < mean.size(); ++j) {
            const double diff = mean[j] - flat_target[j];
            dist_sq += diff * diff;
        }
        curve.rounds_per_agent.push_back(static_cast<double>(all.front()[o].round) /
                                         static_cast<double>(spec.total_agents()));
        curve.avg_distance_sq.push_back(dist_sq);
    }
    return curve;
}

std::vector<std::string> run_fig3(const ExperimentConfig& cfg) {
    OutputSet out(cfg);
    out.write_config();
    const Fig3Curve curve =
        fig3_measure(cfg.spec, cfg.thresholds, cfg.rounds, cfg.replicas, cfg.seed);
    auto csv = out.csv("fig3.csv", "rounds_per_agent,avg_distance_L2,avg_distance_L2_squared");
    for (std::size_t i = 0; i < curve.rounds_per_agent.size(); ++i)
        csv << fmt(curve.rounds_per_agent[i]) << "," << fmt(std::sqrt(curve.avg_distance_sq[i]))
            << "," << fmt(curve.avg_distance_sq[i]) << "\n";
    csv.close();
    return out.paths();
}

Fig4Point fig4_measure(const GameSpec& base, const ThresholdVector& k, std::int64_t n,
                       int replicas, std::uint64_t seed, double epsilon_sq,
                       std::int64_t max_rounds_per_agent) {
    const GameSpec spec = base.with_replicas(n);
    const MoneyDistribution target = min_relent_distribution(spec, k);
    const WealthState start = extreme_state(spec, *std::max_element(k.k.begin(), k.k.end()));
    const std::int64_t max_rounds = max_rounds_per_agent * spec.total_agents();
    const CounterRng root(seed);

    const auto first_passage = [&](int r) {
        ScripChain chain(spec, k, root.fork(static_cast<std::uint64_t>(r)));
        chain.init_from(start);
        const TraceSummary summary =
            run_trace(chain, max_rounds, fig4_cadence(), target, epsilon_sq, nullptr, true);
        if (!summary.reached_epsilon)
            throw NumericError("n = " + std::to_string(n) +
                               ": trajectory never reached the distance target");
        return summary.first_round_within_epsilon;
    };

    std::vector<std::future<std::int64_t>> jobs;
    for (int r = 0; r < replicas; ++r)
        jobs.push_back(std::async(std::launch::async, first_passage, r));
    Fig4Point point;
    point.n = n;
    for (auto& job : jobs) point.per_replica.push_back(job.get());
    for (std::int64_t rounds : point.per_replica)
        point.mean_rounds += static_cast<double>(rounds) / static_cast<double>(replicas);
    return point;
}

std::vector<std::string> run_fig4(const ExperimentConfig& cfg) {
    OutputSet out(cfg);
    out.write_config();
    auto csv = out.csv("fig4.csv", "n,rounds_to_within_0.001");
    std::vector<double> xs, ys;
    json detail = json::array();
    for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
        const Fig4Point point =
            fig4_measure(cfg.spec, cfg.thresholds, cfg.n_values[i], cfg.replicas,
                         CounterRng(cfg.seed).fork(1000 + i).seed(), cfg.epsilon_sq);
        csv << point.n << "," << fmt(point.mean_rounds) << "\n";
        xs.push_back(static_cast<double>(point.n));
        ys.push_back(point.mean_rounds);
        detail.push_back(json{{"n", point.n},
                              {"mean_rounds", point.mean_rounds},
                              {"per_replica", point.per_replica}});
    }
    csv.close();
    const LinearFit fit = least_squares(xs, ys);
    out.write_json("fig4_fit.json", json{{"slope", fit.slope},
                                         {"intercept", fit.intercept},
                                         {"epsilon_sq", cfg.epsilon_sq},
                                         {"points", std::move(detail)}});
    return out.paths();
}

std::vector<std::string> run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.mode) {
        case Mode::simulate: return run_simulate(cfg);
        case Mode::distribution: return run_distribution(cfg);
        case Mode::best_reply: return run_best_reply(cfg);
        case Mode::equilibrium: return run_equilibrium(cfg);
        case Mode::stationary: return run_stationary(cfg);
        case Mode::fig2: return run_fig2(cfg);
        case Mode::fig3: return run_fig3(cfg);
        case Mode::fig4: return run_fig4(cfg);
    }
    throw SpecError("unhandled mode");
}

}  // namespace scrip
