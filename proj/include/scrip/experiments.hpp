#pragma once

#include "scrip/equilibrium.hpp"
#include "scrip/model.hpp"
#include "scrip/scrip_chain.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace scrip {

enum class Mode { simulate, distribution, best_reply, equilibrium, stationary, fig2, fig3, fig4 };

Mode mode_from_string(const std::string& s);
std::string mode_to_string(Mode mode);

// A fully resolved experiment: every run records this, and identical configs
// reproduce outputs byte for byte.
struct ExperimentConfig {
    Mode mode = Mode::simulate;
    GameSpec spec;
    ThresholdVector thresholds;
    std::int64_t rounds = 1000000;
    int replicas = 10;
    std::uint64_t seed = 0;  // mandatory
    std::int64_t cadence = 1;
    std::vector<std::int64_t> n_values;  // fig2 / fig4 population sweeps
    double epsilon_sq = 1e-3;            // fig4 arrival target (squared metric)
    int threshold_cap = 0;               // equilibrium mode; 0 = automatic
    std::size_t state_cap = 200000;      // stationary mode
    std::string out_dir = ".";

    nlohmann::json resolved() const;  // canonical form, excludes out_dir
};

// Parses a config JSON; "spec" may be inline or named by "spec_path" relative
// to the config file. Overrides replace the seed / output directory.
ExperimentConfig load_experiment_config(const std::string& path,
                                        std::optional<std::uint64_t> seed_override,
                                        std::optional<std::string> out_override);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j,
                                             const std::string& base_dir);

std::uint64_t config_hash(const nlohmann::json& resolved);

// Observation cadences used by the figure runners (pinned by unit tests).
std::int64_t fig2_cadence();
std::int64_t fig3_cadence(std::int64_t agents);
std::int64_t fig4_cadence();

// Deterministic wealth state realizing a distribution whose entries are
// multiples of 1/(h n): agents of each type take levels in id order.
WealthState state_from_distribution(const GameSpec& spec, const MoneyDistribution& d);

// Polarized start: total_money/top agents hold `top` dollars, everyone else
// holds zero.
WealthState extreme_state(const GameSpec& spec, int top);

struct LinearFit {
    double slope = 0;
    double intercept = 0;
};
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

// Runners. Each writes CSV/JSON files under out_dir and returns the paths it
// wrote. Every file embeds the config hash and seed.
std::vector<std::string> run_experiment(const ExperimentConfig& config);

std::vector<std::string> run_simulate(const ExperimentConfig& config);
std::vector<std::string> run_distribution(const ExperimentConfig& config);
std::vector<std::string> run_best_reply(const ExperimentConfig& config);
std::vector<std::string> run_equilibrium(const ExperimentConfig& config);
std::vector<std::string> run_stationary(const ExperimentConfig& config);
std::vector<std::string> run_fig2(const ExperimentConfig& config);
std::vector<std::string> run_fig3(const ExperimentConfig& config);
std::vector<std::string> run_fig4(const ExperimentConfig& config);

// Measurement cores used by both the runners and the acceptance tests.
struct Fig2Point {
    std::int64_t n = 0;
    double max_distance_sq = 0;
};
Fig2Point fig2_measure(const GameSpec& base, const ThresholdVector& k, std::int64_t n,
                       std::int64_t rounds, std::uint64_t seed);

struct Fig3Curve {
    std::vector<double> rounds_per_agent;
    std::vector<double> avg_distance_sq;  // distance of the replica-averaged profile
};
Fig3Curve fig3_measure(const GameSpec& spec, const ThresholdVector& k, std::int64_t rounds,
                       int replicas, std::uint64_t seed);

struct Fig4Point {
    std::int64_t n = 0;
    double mean_rounds = 0;
    std::vector<std::int64_t> per_replica;
};
Fig4Point fig4_measure(const GameSpec& base, const ThresholdVector& k, std::int64_t n,
                       int replicas, std::uint64_t seed, double epsilon_sq,
                       std::int64_t max_rounds_per_agent = 50);

}  // namespace scrip
