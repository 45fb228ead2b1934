#include "scrip/experiments.hpp"
#include "scrip/model.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"scripsim: scrip-economy simulation, steady-state wealth analysis, "
                 "optimal-threshold best replies, and equilibrium search"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;

    const auto add_mode = [&](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "experiment config JSON")->required();
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--out", out_dir, "output directory (default: config's or '.')");
        return sub;
    };

    add_mode("simulate", "run one trajectory and trace its distance to the steady state");
    add_mode("distribution", "solve the steady-state wealth distribution");
    add_mode("best-reply", "per-type optimal thresholds against a fixed profile");
    add_mode("equilibrium", "greatest pure threshold equilibrium via downward best replies");
    add_mode("stationary", "exact stationary analysis for small populations");
    add_mode("fig2", "max steady-state distance over long runs, across population sizes");
    add_mode("fig3", "averaged convergence curve from a polarized start");
    add_mode("fig4", "rounds to reach the steady state, fitted against population size");

    CLI11_PARSE(app, argc, argv);
    const std::string mode = app.get_subcommands().front()->get_name();

    try {
        scrip::ExperimentConfig cfg = scrip::load_experiment_config(config_path, seed, out_dir);
        const scrip::Mode requested = scrip::mode_from_string(mode);
        if (cfg.mode != requested)
            throw scrip::SpecError("config mode '" + scrip::mode_to_string(cfg.mode) +
                                   "' does not match subcommand '" + mode + "'");
        for (const std::string& path : scrip::run_experiment(cfg))
            std::printf("wrote %s\n", path.c_str());
        return 0;
    } catch (const scrip::SpecError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const scrip::NumericError& e) {
        std::fprintf(stderr, "numeric check failed: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
