#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scrip/experiments.hpp"
#include "scrip/scrip_chain.hpp"
#include "test_support.hpp"

#include <cmath>
#include <map>

using namespace scrip;
using namespace scrip::testing;

TEST_CASE("initial_state conserves money and is uniform per dollar") {
    const GameSpec spec = single_type_spec(1.0, 2, 1, 1000);
    CounterRng rng(11);
    const WealthState state = initial_state(spec, rng);
    CHECK(state.total() == 2000);

    // Holdings follow Binomial(2000, 1/1000); chi-square over pooled bins.
    std::map<int, int> counts;
    for (auto d : state.dollars) ++counts[d];
    const double p = 1.0 / 1000.0;
    const int trials = 2000;
    std::vector<double> expected;
    std::vector<double> observed;
    double exp_tail = 1000.0, obs_tail = 1000.0;
    double log_pmf = trials * std::log1p(-p);  // pmf(0)
    double pmf = std::exp(log_pmf);
    for (int v = 0; v <= 5; ++v) {
        expected.push_back(1000.0 * pmf);
        observed.push_back(static_cast<double>(counts.count(v) ? counts[v] : 0));
        exp_tail -= expected.back();
        obs_tail -= observed.back();
        pmf *= static_cast<double>(trials - v) / static_cast<double>(v + 1) * p / (1.0 - p);
    }
    expected.push_back(std::max(exp_tail, 1e-9));
    observed.push_back(obs_tail);
    double chi2 = 0;
    for (std::size_t i = 0; i < expected.size(); ++i)
        chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    CHECK(chi2 < 30.0);  // 6 dof; generous to keep the frozen seed stable
}

TEST_CASE("degenerate single agent holds everything") {
    const GameSpec spec = single_type_spec(1.0, 2, 1, 1);
    CounterRng rng(3);
    const WealthState state = initial_state(spec, rng);
    REQUIRE(state.dollars.size() == 1);
    CHECK(state.dollars[0] == 2);
}

TEST_CASE("a broke requester never pays and money is conserved") {
    const GameSpec spec = single_type_spec(1.0, 1, 1, 6);  // 6 agents, 6 dollars
    ScripChain chain(spec, ThresholdVector{{3}}, CounterRng(17));
    WealthState start;
    start.dollars = {6, 0, 0, 0, 0, 0};
    chain.init_from(start);
    int broke_requests = 0;
    for (int i = 0; i < 20000; ++i) {
        const auto before = chain.state().dollars;
        const RoundOutcome out = chain.step();
        if (before[static_cast<std::size_t>(out.requester)] == 0) {
            ++broke_requests;
            CHECK_FALSE(out.paid);
            CHECK(out.volunteers == 0);
            CHECK(chain.state().dollars == before);
        }
        if (out.paid) CHECK(before[static_cast<std::size_t>(out.requester)] >= 1);
        CHECK(chain.state().total() == 6);
    }
    CHECK(broke_requests > 0);
}

TEST_CASE("everyone at threshold freezes the economy") {
    const GameSpec spec = single_type_spec(1.0, 2, 1, 3);
    ScripChain chain(spec, ThresholdVector{{2}}, CounterRng(23));
    WealthState start;
    start.dollars = {2, 2, 2};
    chain.init_from(start);
    CHECK(chain.frozen());
    for (int i = 0; i < 1000; ++i) {
        const RoundOutcome out = chain.step();
        CHECK_FALSE(out.paid);
        CHECK(out.volunteers == 0);
    }
    CHECK(chain.state().dollars == start.dollars);
}

TEST_CASE("money conservation over a million random steps") {
    const GameSpec spec = single_type_spec(1.0, 2, 1, 100);
    ScripChain chain(spec, ThresholdVector{{5}}, CounterRng(29));
    for (int i = 0; i < 1000000; ++i) {
        chain.step();
        if (i % 4096 == 0) CHECK(chain.state().total() == 200);
    }
    CHECK(chain.state().total() == 200);
}

TEST_CASE("ceiling absorption: once at or below the threshold, never above") {
    const GameSpec spec = single_type_spec(1.0, 2, 1, 5);  // 5 agents, 10 dollars
    const int k = 2;
    ScripChain chain(spec, ThresholdVector{{k}}, CounterRng(31));
    WealthState start;
    start.dollars = {8, 2, 0, 0, 0};  // agent 0 far above threshold
    chain.init_from(start);
    CHECK(chain.excess_fraction() == doctest::Approx(0.2));
    std::vector<bool> absorbed(5, false);
    for (int i = 0; i < 50000; ++i) {
        chain.step();
        for (std::size_t a = 0; a < 5; ++a) {
            if (chain.state().dollars[a] <= k) absorbed[a] = true;
            if (absorbed[a]) CHECK(chain.state().dollars[a] <= k);
        }
    }
    CHECK(chain.excess_fraction() == doctest::Approx(0.0));
}

TEST_CASE("identical seeds give identical trajectories") {
    const GameSpec spec = single_type_spec(1.0, 2, 1, 50);
    const ThresholdVector k{{5}};
    const TraceSummary a = simulate(spec, k, 5000, CounterRng(123), 10);
    const TraceSummary b = simulate(spec, k, 5000, CounterRng(123), 10);
    CHECK(a.max_distance_sq == b.max_distance_sq);
    CHECK(a.final_distance_sq == b.final_distance_sq);
    CHECK(a.first_round_within_epsilon == b.first_round_within_epsilon);
    const TraceSummary c = simulate(spec, k, 5000, CounterRng(124), 10);
    CHECK(a.final_distance_sq != c.final_distance_sq);
}

TEST_CASE("zero rounds summarizes the initial state only") {
    const GameSpec spec = single_type_spec(1.0, 2, 1, 50);
    const ThresholdVector k{{5}};
    const MoneyDistribution target = min_relent_distribution(spec, k);
    ScripChain chain(spec, k, CounterRng(9));
    const double d0 = chain.distance_l2sq_to(target);
    const TraceSummary summary = run_trace(chain, 0, 1, target, 1e-3);
    CHECK(summary.observations == 1);
    CHECK(summary.max_distance_sq == d0);
    CHECK(summary.final_distance_sq == d0);
}

TEST_CASE("empirical distribution: point mass, marginals, and state round trip") {
    const GameSpec spec = build_game_spec(
        {make_type(0.1, 0.9, 1.0, 0.9, 1.0, 1.0), make_type(0.1, 0.5, 1.0, 0.9, 1.0, 1.0)},
        {0.25, 0.75}, 4, Rational(2), 5);  // 20 agents
    const ThresholdVector k{{4, 3}};
    ScripChain chain(spec, k, CounterRng(37));

    WealthState all_at_two;
    all_at_two.dollars.assign(20, 2);
    chain.init_from(all_at_two);
    const MoneyDistribution point = chain.empirical();
    CHECK(point.at(0, 2) == doctest::Approx(0.25));
    CHECK(point.at(1, 2) == doctest::Approx(0.75));
    CHECK(point.marginal(0) == doctest::Approx(spec.fraction(0)));
    CHECK(point.marginal(1) == doctest::Approx(spec.fraction(1)));

    // Realizable distribution -> state -> empirical is the identity.
    const MoneyDistribution dstar = min_relent_distribution(spec, k);
    const MoneyDistribution realizable = nearest_realizable(dstar, spec);
    chain.init_from(state_from_distribution(spec, realizable));
    const MoneyDistribution back = chain.empirical();
    for (int t = 0; t < 2; ++t)
        for (int i = 0; i <= k[t]; ++i)
            CHECK(back.at(t, i) == doctest::Approx(realizable.at(t, i)).epsilon(1e-12));
    CHECK(chain.distance_l2sq_to(realizable) == doctest::Approx(0.0));
}

TEST_CASE("exact stationary: three symmetric agents, one dollar -> uniform") {
    const GameSpec spec = single_type_spec(1.0, 1, 3, 1);  // h=3, m=1/3
    const StationaryReport report = exact_stationary(spec, ThresholdVector{{1}});
    REQUIRE(report.states.size() == 3);
    for (double p : report.pi_closed_form) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(report.linf_diff <= 1e-12);
    CHECK_FALSE(report.mismatch);
    CHECK(report.irreducible);
    CHECK(report.aperiodic);
    CHECK(report.max_detailed_balance_gap <= 1e-14);
}

TEST_CASE("exact stationary: symmetric parameters give a symmetric matrix") {
    // All types identical in beta/chi/rho: transition probabilities must be
    // symmetric pairwise, checked on the exact matrix via detailed balance of
    // the uniform candidate.
    const GameSpec spec = single_type_spec(1.0, 1, 1, 4);  // 4 agents, 4 dollars
    const StationaryReport report = exact_stationary(spec, ThresholdVector{{3}});
    for (double p : report.pi_closed_form)
        CHECK(p == doctest::Approx(1.0 / static_cast<double>(report.states.size())).epsilon(1e-12));
    // pi uniform + detailed balance <=> T_xy = T_yx.
    CHECK(report.max_detailed_balance_gap <= 1e-14);
    CHECK_FALSE(report.mismatch);
}

TEST_CASE("exact stationary: beta/rho asymmetry matches the closed form exactly") {
    const GameSpec spec = build_game_spec(
        {make_type(0.1, 0.5, 1.0, 0.9, 2.0, 1.0), make_type(0.1, 0.9, 1.0, 0.9, 0.5, 1.0)},
        {1.0 / 3.0, 2.0 / 3.0}, 3, Rational(1), 2);  // 6 agents
    const StationaryReport report = exact_stationary(spec, ThresholdVector{{2, 2}});
    CHECK(report.linf_diff <= 1e-10);
    CHECK_FALSE(report.mismatch);
    CHECK(report.max_detailed_balance_gap <= 1e-10);
    CHECK(report.irreducible);
    CHECK(report.aperiodic);
}

TEST_CASE("exact stationary: unequal fractions with beta/rho asymmetry still match") {
    // One base agent of type 0, three of type 1 (f = 1/4, 3/4), five agents
    // short of symmetric in every rate.
    const GameSpec spec = build_game_spec(
        {make_type(0.1, 0.4, 1.0, 0.9, 1.8, 1.0), make_type(0.1, 0.85, 1.0, 0.9, 1.0, 1.0)},
        {0.25, 0.75}, 4, Rational(1, 2), 1);  // 4 agents, 2 dollars
    const StationaryReport report = exact_stationary(spec, ThresholdVector{{2, 1}});
    CHECK(report.linf_diff <= 1e-12);
    CHECK(report.max_detailed_balance_gap <= 1e-12);
    CHECK(report.irreducible);
    CHECK(report.aperiodic);
}

TEST_CASE("exact stationary: chi heterogeneity is flagged at small n") {
    // With per-type competition weights the product form is only a large-n
    // limit; the report must flag the disagreement rather than hide it.
    const GameSpec spec = build_game_spec(
        {make_type(0.1, 1.0, 1.0, 0.9, 1.0, 2.0), make_type(0.1, 1.0, 1.0, 0.9, 1.0, 1.0)},
        {1.0 / 3.0, 2.0 / 3.0}, 3, Rational(1, 3), 1);
    const StationaryReport report = exact_stationary(spec, ThresholdVector{{1, 1}});
    CHECK(report.mismatch);
    CHECK(report.linf_diff > 1e-3);
}

TEST_CASE("exact stationary: random chi-uniform instances match and are ergodic") {
    CounterRng rng(71);
    int done = 0;
    while (done < 10) {
        const GameSpec spec =
            random_spec(rng, {.vary_chi = false, .base_per_type = 2, .max_money_per_base = 1});
        if (spec.total_agents() < 3 || spec.total_agents() > 6) continue;
        const ThresholdVector k = random_thresholds(rng, spec, 3);
        const StationaryReport report = exact_stationary(spec, k);
        CHECK(report.linf_diff <= 1e-8);
        CHECK(report.max_detailed_balance_gap <= 1e-10);
        CHECK(report.irreducible);
        CHECK(report.aperiodic);
        ++done;
    }
}

TEST_CASE("exact stationary preconditions and caps") {
    const GameSpec two_agents = single_type_spec(1.0, 1, 1, 2);
    CHECK_THROWS_AS(exact_stationary(two_agents, ThresholdVector{{2}}), SpecError);

    const GameSpec frozen = single_type_spec(1.0, 2, 1, 3);
    CHECK_THROWS_AS(exact_stationary(frozen, ThresholdVector{{2}}), SpecError);

    const GameSpec big = single_type_spec(1.0, 2, 1, 12);
    CHECK_THROWS_AS(exact_stationary(big, ThresholdVector{{5}}, 50), SpecError);
}

TEST_CASE("simulator and exact matrix agree on transition law and occupancy") {
    // The step sampler (alias table, per-type binomials, bucket draws) and the
    // exact matrix builder (subset enumeration) are independent code paths.
    const GameSpec spec = build_game_spec(
        {make_type(0.1, 0.6, 1.0, 0.9, 1.5, 1.0), make_type(0.1, 0.9, 1.0, 0.9, 0.5, 1.0)},
        {0.5, 0.5}, 2, Rational(1), 2);  // 4 agents, 4 dollars
    const ThresholdVector k{{2, 3}};
    const StationaryReport exact = exact_stationary(spec, k);
    REQUIRE_FALSE(exact.mismatch);

    // Map a wealth vector to its index in the report.
    const auto find_state = [&](const std::vector<std::int32_t>& x) {
        for (std::size_t s = 0; s < exact.states.size(); ++s)
            if (exact.states[s] == x) return static_cast<std::int64_t>(s);
        return std::int64_t{-1};
    };

    ScripChain chain(spec, k, CounterRng(61));
    WealthState start;
    start.dollars = exact.states.front();
    chain.init_from(start);

    const std::int64_t rounds = 3000000;
    std::vector<double> occupancy(exact.states.size(), 0.0);
    // Conditional next-state frequencies out of the most likely state.
    std::size_t anchor = 0;
    for (std::size_t s = 0; s < exact.states.size(); ++s)
        if (exact.pi_closed_form[s] > exact.pi_closed_form[anchor]) anchor = s;
    std::map<std::int64_t, double> anchor_next;
    std::int64_t anchor_visits = 0;

    std::int64_t current = find_state(chain.state().dollars);
    REQUIRE(current >= 0);
    for (std::int64_t r = 0; r < rounds; ++r) {
        const bool from_anchor = current == static_cast<std::int64_t>(anchor);
        chain.step();
        const std::int64_t next = find_state(chain.state().dollars);
        REQUIRE(next >= 0);
        occupancy[static_cast<std::size_t>(next)] += 1.0;
        if (from_anchor) {
            ++anchor_visits;
            anchor_next[next] += 1.0;
        }
        current = next;
    }

    // Long-run occupancy matches pi (closed form == solved here).
    for (std::size_t s = 0; s < exact.states.size(); ++s) {
        const double freq = occupancy[s] / static_cast<double>(rounds);
        CHECK(std::abs(freq - exact.pi_closed_form[s]) < 0.004);
    }

    // One-step law out of the anchor state matches the exact matrix row
    // within 4 sigma, self-loop mass included.
    REQUIRE(anchor_visits > 100000);
    const auto empirical_to = [&](std::size_t s) {
        const auto it = anchor_next.find(static_cast<std::int64_t>(s));
        return (it == anchor_next.end() ? 0.0 : it->second) /
               static_cast<double>(anchor_visits);
    };
    const auto sigma = [&](double p) {
        return std::sqrt(p * (1.0 - p) / static_cast<double>(anchor_visits));
    };
    for (const auto& [target, p] : exact.transition_rows[anchor])
        CHECK(std::abs(empirical_to(static_cast<std::size_t>(target)) - p) <=
              4.0 * sigma(p) + 1e-9);
    const double self_p = exact.self_loops[anchor];
    CHECK(std::abs(empirical_to(anchor) - self_p) <= 4.0 * sigma(self_p) + 1e-9);
}

TEST_CASE("simulate from an extreme start approaches the steady state") {
    const GameSpec spec = single_type_spec(1.0, 2, 1, 200);
    const ThresholdVector k{{5}};
    const MoneyDistribution target = min_relent_distribution(spec, k);
    ScripChain chain(spec, k, CounterRng(55));
    chain.init_from(extreme_state(spec, 5));
    const double d0 = chain.distance_l2sq_to(target);
    const TraceSummary summary = run_trace(chain, 10 * 200, 1, target, 5e-3);
    CHECK(summary.final_distance_sq < d0 / 10.0);
    CHECK(summary.reached_epsilon);
    CHECK(summary.first_round_within_epsilon > 0);
}
