#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scrip/experiments.hpp"
#include "scrip/json_io.hpp"
#include "test_support.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace scrip;
using namespace scrip::testing;
namespace fs = std::filesystem;

namespace {

nlohmann::json base_config_json() {
    return nlohmann::json{
        {"mode", "simulate"},
        {"spec", game_spec_to_json(single_type_spec(1.0, 2, 1, 100))},
        {"thresholds", {5}},
        {"rounds", 500},
        {"cadence", 50},
        {"seed", 7}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "scripsim_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("figure runners use pinned observation cadences") {
    CHECK(fig2_cadence() == 1);
    CHECK(fig4_cadence() == 1);
    CHECK(fig3_cadence(1000) == 100);
    CHECK(fig3_cadence(5000) == 500);
    CHECK(fig3_cadence(5) == 1);
}

TEST_CASE("config parsing: happy path and defaults") {
    const ExperimentConfig cfg = experiment_config_from_json(base_config_json(), ".");
    CHECK(cfg.mode == Mode::simulate);
    CHECK(cfg.seed == 7);
    CHECK(cfg.rounds == 500);
    CHECK(cfg.cadence == 50);
    CHECK(cfg.thresholds.k == std::vector<int>{5});

    nlohmann::json fig = base_config_json();
    fig["mode"] = "fig2";
    fig.erase("thresholds");
    const ExperimentConfig fig_cfg = experiment_config_from_json(fig, ".");
    CHECK(fig_cfg.thresholds.k == std::vector<int>{5});  // figure default
    CHECK(fig_cfg.n_values == std::vector<std::int64_t>{1000, 5000, 25000});

    nlohmann::json fig3 = base_config_json();
    fig3["mode"] = "fig3";
    fig3.erase("rounds");
    // Default horizon: five rounds per agent.
    CHECK(experiment_config_from_json(fig3, ".").rounds == 500);
}

TEST_CASE("config parsing: seed is mandatory, mode must be known") {
    nlohmann::json j = base_config_json();
    j.erase("seed");
    CHECK_THROWS_AS(experiment_config_from_json(j, "."), SpecError);
    j = base_config_json();
    j["mode"] = "fig9";
    CHECK_THROWS_AS(experiment_config_from_json(j, "."), SpecError);
    j = base_config_json();
    j.erase("spec");
    CHECK_THROWS_AS(experiment_config_from_json(j, "."), SpecError);
    j = base_config_json();
    j["thresholds"] = {5, 5};  // wrong arity for a single-type spec
    CHECK_THROWS_AS(experiment_config_from_json(j, "."), SpecError);
}

TEST_CASE("config hash: stable for identical configs, sensitive to changes") {
    const ExperimentConfig a = experiment_config_from_json(base_config_json(), ".");
    const ExperimentConfig b = experiment_config_from_json(base_config_json(), ".");
    CHECK(config_hash(a.resolved()) == config_hash(b.resolved()));
    nlohmann::json j = base_config_json();
    j["seed"] = 8;
    const ExperimentConfig c = experiment_config_from_json(j, ".");
    CHECK(config_hash(a.resolved()) != config_hash(c.resolved()));
}

TEST_CASE("extreme state: exact division and failure modes") {
    const GameSpec spec = single_type_spec(1.0, 2, 1, 1000);
    const WealthState state = extreme_state(spec, 5);
    CHECK(state.total() == 2000);
    std::int64_t rich = 0, poor = 0;
    for (auto d : state.dollars) {
        if (d == 5)
            ++rich;
        else if (d == 0)
            ++poor;
    }
    CHECK(rich == 400);
    CHECK(poor == 600);
    CHECK_THROWS_AS(extreme_state(spec, 3), SpecError);  // 2000 % 3 != 0
    const GameSpec tiny = single_type_spec(1.0, 4, 1, 2);  // 8 dollars, 2 agents
    CHECK_THROWS_AS(extreme_state(tiny, 2), SpecError);    // needs 4 rich agents
}

TEST_CASE("state_from_distribution realizes exact level counts") {
    const GameSpec spec = single_type_spec(1.0, 2, 1, 10);
    MoneyDistribution d{{{0.2, 0.3, 0.1, 0.2, 0.1, 0.1}}};
    const WealthState state = state_from_distribution(spec, d);
    CHECK(state.total() == 20);
    std::vector<int> counts(6, 0);
    for (auto v : state.dollars) ++counts[static_cast<std::size_t>(v)];
    CHECK(counts == std::vector<int>{2, 3, 1, 2, 1, 1});
    MoneyDistribution bad{{{0.25, 0.25, 0.5}}};  // 2.5 agents at level 0
    CHECK_THROWS_AS(state_from_distribution(spec, bad), SpecError);
}

TEST_CASE("least squares recovers an exact line") {
    const LinearFit fit = least_squares({1, 2, 3, 4}, {3.5, 5.0, 6.5, 8.0});
    CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(least_squares({1}, {2}), SpecError);
}

TEST_CASE("fig3 curve starts at the exact extreme distance and decays") {
    const GameSpec spec = single_type_spec(1.0, 2, 1, 100);
    const ThresholdVector k{{5}};
    const MoneyDistribution target = min_relent_distribution(spec, k);
    ScripChain probe(spec, k, CounterRng(1));
    probe.init_from(extreme_state(spec, 5));
    const double d0 = probe.distance_l2sq_to(target);

    const Fig3Curve curve = fig3_measure(spec, k, 500, 4, 11);
    REQUIRE(curve.rounds_per_agent.size() >= 2);
    CHECK(curve.rounds_per_agent.front() == 0.0);
    CHECK(curve.avg_distance_sq.front() == doctest::Approx(d0).epsilon(1e-12));
    CHECK(curve.avg_distance_sq.back() < d0 / 4.0);
}

TEST_CASE("simulate runner writes config-stamped outputs, byte-identical on rerun") {
    const fs::path dir1 = fresh_dir("sim1");
    const fs::path dir2 = fresh_dir("sim2");
    ExperimentConfig cfg = experiment_config_from_json(base_config_json(), ".");
    cfg.out_dir = dir1.string();
    const auto paths1 = run_simulate(cfg);
    cfg.out_dir = dir2.string();
    const auto paths2 = run_simulate(cfg);
    REQUIRE(paths1.size() == paths2.size());
    REQUIRE(fs::exists(dir1 / "trace.csv"));
    REQUIRE(fs::exists(dir1 / "summary.json"));
    REQUIRE(fs::exists(dir1 / "config.json"));
    for (std::size_t i = 0; i < paths1.size(); ++i)
        CHECK(read_file(paths1[i]) == read_file(paths2[i]));

    const std::string trace = read_file((dir1 / "trace.csv").string());
    CHECK(trace.rfind("# scripsim mode=simulate seed=7 rng=splitmix64 config_fnv1a=", 0) == 0);
    CHECK(trace.find("round,distance_L2,distance_L2_squared,volunteers,frozen_flag") !=
          std::string::npos);
}

TEST_CASE("distribution runner emits d*, q, and the realizable rounding") {
    const fs::path dir = fresh_dir("dist");
    nlohmann::json j = base_config_json();
    j["mode"] = "distribution";
    ExperimentConfig cfg = experiment_config_from_json(j, ".");
    cfg.out_dir = dir.string();
    run_distribution(cfg);
    for (const char* name : {"dstar.csv", "q.csv", "dstar_realizable.csv", "lambda.json"})
        CHECK(fs::exists(dir / name));
    const std::string dstar = read_file((dir / "dstar.csv").string());
    CHECK(dstar.find("type_index,dollars,fraction") != std::string::npos);
    // 6 levels -> 6 data rows after the two header lines.
    CHECK(std::count(dstar.begin(), dstar.end(), '\n') == 8);
}

TEST_CASE("fig2 measurement on a small population stays near the steady state") {
    const GameSpec base = single_type_spec(1.0, 2, 1, 1);
    const Fig2Point point = fig2_measure(base, ThresholdVector{{5}}, 200, 20000, 3);
    CHECK(point.n == 200);
    CHECK(point.max_distance_sq > 0);
    CHECK(point.max_distance_sq < 0.05);  // loose: small n fluctuates more
}

TEST_CASE("fig4 measurement: first-passage rounds scale with population") {
    const GameSpec base = single_type_spec(1.0, 2, 1, 1);
    const Fig4Point small = fig4_measure(base, ThresholdVector{{5}}, 100, 3, 17, 5e-3);
    const Fig4Point large = fig4_measure(base, ThresholdVector{{5}}, 400, 3, 17, 5e-3);
    CHECK(small.per_replica.size() == 3);
    CHECK(small.mean_rounds > 0);
    CHECK(large.mean_rounds > small.mean_rounds);
}

TEST_CASE("load_experiment_config resolves spec_path relative to the config") {
    const fs::path dir = fresh_dir("cfgload");
    {
        std::ofstream spec(dir / "spec.json");
        spec << game_spec_to_json(single_type_spec(1.0, 2, 1, 50)).dump();
    }
    {
        std::ofstream cfg(dir / "cfg.json");
        cfg << nlohmann::json{{"mode", "distribution"},
                              {"spec_path", "spec.json"},
                              {"thresholds", {5}},
                              {"seed", 3}}
                   .dump();
    }
    const ExperimentConfig cfg =
        load_experiment_config((dir / "cfg.json").string(), std::nullopt, std::nullopt);
    CHECK(cfg.spec.total_agents() == 50);
    const ExperimentConfig with_seed =
        load_experiment_config((dir / "cfg.json").string(), 99, std::nullopt);
    CHECK(with_seed.seed == 99);
}
