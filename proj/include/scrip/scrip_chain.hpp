#pragma once

#include "scrip/model.hpp"
#include "scrip/rng.hpp"
#include "scrip/wealth_entropy.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace scrip {

// Per-agent integer dollar holdings. Agent i's type is that of base agent
// i mod h. Total money is conserved by every transition.
struct WealthState {
    std::vector<std::int32_t> dollars;

    std::int64_t total() const;
};

// Every dollar assigned to an agent drawn uniformly at random.
WealthState initial_state(const GameSpec& spec, CounterRng& rng);

struct RoundOutcome {
    std::int64_t requester = -1;
    std::int64_t capable = 0;     // drawn able to serve among the willing
    std::int64_t volunteers = 0;  // zero whenever the requester cannot pay
    std::optional<std::int64_t> winner;
    bool paid = false;
};

// One economy trajectory under fixed per-type thresholds. A step runs the
// four round phases: requester draw (rate-weighted), capability draws,
// volunteering, and the weighted winner draw with the one-dollar payment.
// Steps cost O(types + 1) expected regardless of population size: requester
// sampling uses a precomputed alias table over types and capability uses one
// binomial draw per type.
class ScripChain {
public:
    ScripChain(const GameSpec& spec, ThresholdVector thresholds, CounterRng rng);

    void init_random();
    void init_from(const WealthState& state);

    RoundOutcome step();

    const GameSpec& spec() const { return spec_; }
    const ThresholdVector& thresholds() const { return thresholds_; }
    const WealthState& state() const { return state_; }
    std::int64_t round() const { return round_; }

    // Snapshot over all observed levels, including any above-threshold levels
    // still draining during burn-in.
    MoneyDistribution empirical() const;

    // Level occupancy restricted to 0..k_t, straight from the maintained
    // counts. O(sum_t k_t), no pass over agents.
    MoneyDistribution occupancy() const;

    // Squared Euclidean distance between the current level occupancy and a
    // target, over levels 0..k_t only. O(sum_t k_t).
    double distance_l2sq_to(const MoneyDistribution& target) const;

    std::int64_t agents_below_threshold() const;
    // Mass (fraction of agents) still above their threshold.
    double excess_fraction() const;
    // No agent below threshold: no volunteer will ever appear again.
    bool frozen() const { return agents_below_threshold() == 0; }

private:
    void rebuild_indexes();
    void apply_transfer(std::int64_t payer, std::int64_t earner);

    const GameSpec& spec_;
    ThresholdVector thresholds_;
    CounterRng rng_;
    WealthState state_;
    std::int64_t round_ = 0;

    // Agents currently below their type threshold, bucketed by type.
    std::vector<std::vector<std::int64_t>> open_agents_;
    std::vector<std::int64_t> bucket_pos_;  // index into its bucket, -1 if absent
    // Occupancy counts per (type, level <= k_t) plus above-threshold counts.
    std::vector<std::vector<std::int64_t>> level_counts_;
    std::vector<std::int64_t> excess_counts_;

    // Alias table over types with weights rho_t f_t.
    std::vector<double> alias_prob_;
    std::vector<int> alias_other_;
    int sample_requester_type();
};

using TraceObserver =
    std::function<void(std::int64_t round, double dist_sq, std::int64_t volunteers, bool frozen)>;

struct TraceSummary {
    std::int64_t rounds = 0;
    std::int64_t observations = 0;
    double max_distance_sq = 0;
    double mean_distance_sq = 0;
    double final_distance_sq = 0;
    double epsilon_sq = 0;
    bool reached_epsilon = false;
    std::int64_t first_round_within_epsilon = -1;
    bool frozen_seen = false;
};

// Advances the chain `rounds` steps, measuring the squared distance to
// `reference` every round (max and first-passage statistics are exact) and
// invoking the observer every `cadence` rounds. With stop_at_epsilon the run
// ends at the first round within epsilon_sq.
TraceSummary run_trace(ScripChain& chain, std::int64_t rounds, std::int64_t cadence,
                       const MoneyDistribution& reference, double epsilon_sq,
                       const TraceObserver& observer = nullptr, bool stop_at_epsilon = false);

// Fresh randomly-initialized chain measured against the minimum
// relative-entropy distribution for (spec, k).
TraceSummary simulate(const GameSpec& spec, const ThresholdVector& k, std::int64_t rounds,
                      CounterRng rng, std::int64_t cadence, double epsilon_sq = 1e-3,
                      const TraceObserver& observer = nullptr);

// Exhaustive stationary analysis for small populations: enumerates every
// reachable wealth vector, builds the exact one-round transition matrix, and
// compares its stationary vector against the product-form candidate
// pi(x) proportional to prod_i omega_{type(i)}^{x_i}.
struct StationaryReport {
    std::vector<std::vector<std::int32_t>> states;
    std::vector<double> pi_closed_form;
    std::vector<double> pi_solved;
    double linf_diff = 0;
    bool mismatch = false;  // linf_diff > 1e-8
    double max_detailed_balance_gap = 0;
    bool irreducible = false;
    bool aperiodic = false;
    std::size_t transitions = 0;
    // Sparse off-diagonal rows of the one-round matrix plus self-loop mass.
    std::vector<std::vector<std::pair<std::int32_t, double>>> transition_rows;
    std::vector<double> self_loops;
};

StationaryReport exact_stationary(const GameSpec& spec, const ThresholdVector& k,
                                  std::size_t state_cap = 200000);

}  // namespace scrip
