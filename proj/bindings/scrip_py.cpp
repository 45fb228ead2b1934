#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scrip/best_reply_mdp.hpp"
#include "scrip/equilibrium.hpp"
#include "scrip/experiments.hpp"
#include "scrip/json_io.hpp"
#include "scrip/model.hpp"
#include "scrip/rng.hpp"
#include "scrip/scrip_chain.hpp"
#include "scrip/wealth_entropy.hpp"

#include <json.hpp>

namespace py = pybind11;
using namespace scrip;

namespace {

GameSpec spec_from_json_str(const std::string& text) {
    return game_spec_from_json(nlohmann::json::parse(text));
}

std::string spec_to_json_str(const GameSpec& spec) { return game_spec_to_json(spec).dump(); }

ThresholdVector thresholds_from(const std::vector<int>& k) { return ThresholdVector{k}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "scrip economy simulator: steady-state wealth analysis, threshold best "
              "replies and equilibria";

    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

    py::class_<AgentType>(m, "AgentType")
        .def(py::init([](double alpha, double beta, double gamma, double delta, double rho,
                         double chi) {
                 return AgentType{alpha, beta, gamma, delta, rho, chi};
             }),
             py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("delta"),
             py::arg("rho"), py::arg("chi"))
        .def_readonly("alpha", &AgentType::alpha)
        .def_readonly("beta", &AgentType::beta)
        .def_readonly("gamma", &AgentType::gamma)
        .def_readonly("delta", &AgentType::delta)
        .def_readonly("rho", &AgentType::rho)
        .def_readonly("chi", &AgentType::chi)
        .def_property_readonly("omega", &AgentType::omega);

    py::class_<GameSpec>(m, "GameSpec")
        .def_property_readonly("num_types", &GameSpec::num_types)
        .def_property_readonly("h", &GameSpec::h)
        .def_property_readonly("n", &GameSpec::n)
        .def_property_readonly("m", &GameSpec::m_value)
        .def_property_readonly("total_agents", &GameSpec::total_agents)
        .def_property_readonly("total_money", &GameSpec::total_money)
        .def_property_readonly("fractions", &GameSpec::fractions)
        .def_property_readonly("rho_scale", &GameSpec::rho_scale)
        .def("type", &GameSpec::type, py::return_value_policy::copy)
        .def("type_of_agent", &GameSpec::type_of_agent)
        .def("with_replicas", &GameSpec::with_replicas)
        .def("to_json", &spec_to_json_str);

    m.def(
        "build_game_spec",
        [](std::vector<AgentType> types, std::vector<double> fractions, std::int64_t h,
           std::int64_t m_num, std::int64_t m_den, std::int64_t n) {
            return build_game_spec(std::move(types), fractions, h, Rational(m_num, m_den), n);
        },
        py::arg("types"), py::arg("fractions"), py::arg("h"), py::arg("m_num"),
        py::arg("m_den") = 1, py::arg("n") = 1);
    m.def("game_spec_from_json", &spec_from_json_str);
    m.def("per_round_discount", &per_round_discount);
    m.def("money_below_capacity",
          [](const GameSpec& spec, const std::vector<int>& k) {
              return money_below_capacity(spec, thresholds_from(k));
          });

    py::class_<MoneyDistribution>(m, "MoneyDistribution")
        .def_readonly("levels", &MoneyDistribution::levels)
        .def("at", py::overload_cast<int, int>(&MoneyDistribution::at, py::const_))
        .def("marginal", &MoneyDistribution::marginal)
        .def("mean", &MoneyDistribution::mean);

    py::class_<LambdaSolution>(m, "LambdaSolution")
        .def_readonly("lambda_", &LambdaSolution::lambda)
        .def_readonly("achieved_mean", &LambdaSolution::achieved_mean)
        .def_readonly("iterations", &LambdaSolution::iterations);

    m.def("base_distribution", [](const GameSpec& s, const std::vector<int>& k) {
        return base_distribution(s, thresholds_from(k));
    });
    m.def("mean_money", [](const GameSpec& s, const std::vector<int>& k, double lambda) {
        return mean_money(s, thresholds_from(k), lambda);
    });
    m.def("solve_lambda", [](const GameSpec& s, const std::vector<int>& k) {
        return solve_lambda(s, thresholds_from(k));
    });
    m.def("min_relent_distribution", [](const GameSpec& s, const std::vector<int>& k) {
        return min_relent_distribution(s, thresholds_from(k));
    });
    m.def("relative_entropy", &relative_entropy);
    m.def("nearest_realizable", &nearest_realizable);
    m.def("potential_value", [](const MoneyDistribution& d, const GameSpec& s,
                                const std::vector<int>& k) {
        return potential_value(d, s, thresholds_from(k));
    });
    m.def("distance_l2sq",
          [](const MoneyDistribution& a, const MoneyDistribution& b, const std::vector<int>& k) {
              return distance_l2sq(a, b, thresholds_from(k));
          });

    py::class_<TraceSummary>(m, "TraceSummary")
        .def_readonly("rounds", &TraceSummary::rounds)
        .def_readonly("observations", &TraceSummary::observations)
        .def_readonly("max_distance_sq", &TraceSummary::max_distance_sq)
        .def_readonly("mean_distance_sq", &TraceSummary::mean_distance_sq)
        .def_readonly("final_distance_sq", &TraceSummary::final_distance_sq)
        .def_readonly("reached_epsilon", &TraceSummary::reached_epsilon)
        .def_readonly("first_round_within_epsilon", &TraceSummary::first_round_within_epsilon)
        .def_readonly("frozen_seen", &TraceSummary::frozen_seen);

    m.def(
        "simulate",
        [](const GameSpec& spec, const std::vector<int>& k, std::int64_t rounds,
           std::uint64_t seed, std::int64_t cadence, double epsilon_sq) {
            return simulate(spec, thresholds_from(k), rounds, CounterRng(seed), cadence,
                            epsilon_sq);
        },
        py::arg("spec"), py::arg("thresholds"), py::arg("rounds"), py::arg("seed"),
        py::arg("cadence") = 1, py::arg("epsilon_sq") = 1e-3);

    py::class_<StationaryReport>(m, "StationaryReport")
        .def_readonly("states", &StationaryReport::states)
        .def_readonly("pi_closed_form", &StationaryReport::pi_closed_form)
        .def_readonly("pi_solved", &StationaryReport::pi_solved)
        .def_readonly("linf_diff", &StationaryReport::linf_diff)
        .def_readonly("mismatch", &StationaryReport::mismatch)
        .def_readonly("max_detailed_balance_gap", &StationaryReport::max_detailed_balance_gap)
        .def_readonly("irreducible", &StationaryReport::irreducible)
        .def_readonly("aperiodic", &StationaryReport::aperiodic);

    m.def(
        "exact_stationary",
        [](const GameSpec& spec, const std::vector<int>& k, std::size_t cap) {
            return exact_stationary(spec, thresholds_from(k), cap);
        },
        py::arg("spec"), py::arg("thresholds"), py::arg("state_cap") = 200000);

    py::class_<ChoiceProbabilities>(m, "ChoiceProbabilities")
        .def_readonly("p_u", &ChoiceProbabilities::p_u)
        .def_readonly("p_d", &ChoiceProbabilities::p_d)
        .def_readonly("lambda_", &ChoiceProbabilities::lambda)
        .def_readonly("volunteer_mass", &ChoiceProbabilities::volunteer_mass);

    py::class_<BestReplyReport>(m, "BestReplyReport")
        .def_readonly("type", &BestReplyReport::type)
        .def_readonly("kappa", &BestReplyReport::kappa)
        .def_readonly("lhs_alpha", &BestReplyReport::lhs_alpha)
        .def_readonly("rhs_at_kappa", &BestReplyReport::rhs_at_kappa)
        .def_readonly("rhs_at_kappa_plus_1", &BestReplyReport::rhs_at_kappa_plus_1)
        .def_readonly("z", &BestReplyReport::z)
        .def_readonly("p_u", &BestReplyReport::p_u)
        .def_readonly("p_d", &BestReplyReport::p_d)
        .def_readonly("lambda_", &BestReplyReport::lambda)
        .def_readonly("capped", &BestReplyReport::capped);

    m.def("choice_probabilities", [](const GameSpec& s, const std::vector<int>& k, int t) {
        return choice_probabilities(s, thresholds_from(k), t);
    });
    m.def("discounted_ruin_factor", &discounted_ruin_factor, py::arg("kappa"), py::arg("p_u"),
          py::arg("p_d"), py::arg("z"));
    m.def(
        "best_reply_threshold",
        [](const GameSpec& s, const std::vector<int>& k, int t, int cap) {
            return best_reply_threshold(s, thresholds_from(k), t, cap);
        },
        py::arg("spec"), py::arg("thresholds"), py::arg("type"), py::arg("cap"));

    py::class_<PolicyResult>(m, "PolicyResult")
        .def_readonly("action", &PolicyResult::action)
        .def_readonly("value", &PolicyResult::value)
        .def_readonly("threshold", &PolicyResult::threshold)
        .def_readonly("iterations", &PolicyResult::iterations);

    m.def(
        "value_iteration_policy",
        [](const GameSpec& s, const std::vector<int>& k, int t, int cap) {
            return value_iteration_policy(s, thresholds_from(k), t, cap);
        },
        py::arg("spec"), py::arg("thresholds"), py::arg("type"), py::arg("state_cap"));

    py::enum_<EquilibriumKind>(m, "EquilibriumKind")
        .value("trivial", EquilibriumKind::trivial)
        .value("nontrivial", EquilibriumKind::nontrivial)
        .value("capped", EquilibriumKind::capped);

    py::class_<EquilibriumResult>(m, "EquilibriumResult")
        .def_property_readonly("thresholds",
                               [](const EquilibriumResult& r) { return r.thresholds.k; })
        .def_property_readonly("trace",
                               [](const EquilibriumResult& r) {
                                   std::vector<std::vector<int>> steps;
                                   for (const auto& s : r.trace) steps.push_back(s.k);
                                   return steps;
                               })
        .def_readonly("kind", &EquilibriumResult::kind)
        .def_readonly("reports", &EquilibriumResult::reports);

    m.def("default_threshold_cap", &default_threshold_cap);
    m.def(
        "best_reply_vector",
        [](const GameSpec& s, const std::vector<int>& k, int cap) {
            return best_reply_vector(s, thresholds_from(k), cap).k;
        },
        py::arg("spec"), py::arg("thresholds"), py::arg("cap"));
    m.def("greatest_equilibrium", &greatest_equilibrium, py::arg("spec"), py::arg("cap") = 0);

    m.def(
        "run_experiment",
        [](const std::string& config_path, std::optional<std::uint64_t> seed,
           std::optional<std::string> out_dir) {
            return run_experiment(load_experiment_config(config_path, seed, out_dir));
        },
        py::arg("config_path"), py::arg("seed") = std::nullopt,
        py::arg("out_dir") = std::nullopt);

    m.attr("rng_name") = std::string(CounterRng::name());
}
