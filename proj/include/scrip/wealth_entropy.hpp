#pragma once

#include "scrip/model.hpp"

#include <cstdint>
#include <vector>

namespace scrip {

// Fraction of all agents at each (type, dollar level) pair. For analytic
// distributions level t runs 0..k_t; empirical snapshots may carry extra
// levels while agents above their threshold are still spending down.
struct MoneyDistribution {
    std::vector<std::vector<double>> levels;  // levels[t][i]

    int num_types() const { return static_cast<int>(levels.size()); }
    int top_level(int t) const { return static_cast<int>(levels[static_cast<std::size_t>(t)].size()) - 1; }

    double at(int t, int i) const {
        const auto& row = levels[static_cast<std::size_t>(t)];
        return i < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(i)] : 0.0;
    }
    double& at(int t, int i) { return levels[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)]; }

    double marginal(int t) const;  // sum over levels of type t
    double mean() const;           // sum_t sum_i i * d(t, i)
    double total() const;          // sum of all entries

    // Throws NumericError if entries are negative or marginals differ from
    // the spec fractions by more than 1e-12.
    void require_member_of_simplex(const GameSpec& spec) const;
};

// Distance between distributions restricted to levels 0..k_t; mass above the
// thresholds is excluded (tracked separately by the chain during burn-in).
double distance_l2sq(const MoneyDistribution& a, const MoneyDistribution& b,
                     const ThresholdVector& k);

// Diagnostics of the tilt-parameter root-find.
struct LambdaSolution {
    double lambda = 0;
    double achieved_mean = 0;
    int iterations = 0;
    double bracket_low = 0;
    double bracket_high = 0;
};

// Reference distribution q(t,i) = omega_t^i / sum_{t',j<=k_t'} omega_t'^j.
// A proper distribution over all (t, i) pairs; in general it does not have
// the per-type marginals f_t.
MoneyDistribution base_distribution(const GameSpec& spec, const ThresholdVector& k);

// g(lambda): mean dollars per agent under the lambda-tilted spread. Strictly
// increasing, with range (0, sum_t f_t k_t). Per-type terms are evaluated in
// log space so large thresholds cannot overflow.
double mean_money(const GameSpec& spec, const ThresholdVector& k, double lambda);

// Bisection (with geometric bracket expansion from lambda = 1) for the unique
// lambda with g(lambda) = m, to |g - m| <= 1e-10. Requires m < sum f_t k_t.
LambdaSolution solve_lambda(const GameSpec& spec, const ThresholdVector& k);

// The distribution minimizing relative entropy to q over the simplex with
// per-type marginals f_t and mean m: d*(t,i) proportional to f_t (lambda w_t)^i.
MoneyDistribution min_relent_distribution(const GameSpec& spec, const ThresholdVector& k);
MoneyDistribution min_relent_distribution(const GameSpec& spec, const ThresholdVector& k,
                                          double lambda);

// H(d||q) with the 0 log 0 = 0 convention; +infinity when d puts mass where
// q has none. Throws on mismatched index sets.
double relative_entropy(const MoneyDistribution& d, const MoneyDistribution& q);

// log of the total stationary weight Z = sum over realizable states x of
// prod_i omega_{type(i)}^{x_i}, by dynamic programming in log space. Cost
// grows with total_agents * total_money; guarded by work_cap.
double log_total_state_weight(const GameSpec& spec, const ThresholdVector& k,
                              std::int64_t work_cap = 200000000);

// Concentration potential V(d) = H(d) - H(f) - log Z + sum_{t,i} i d(t,i) log omega_t,
// where H is Shannon entropy. Up to the d-independent constants this is
// -H(d||q); exposed for diagnostics of the concentration argument.
double potential_value(const MoneyDistribution& d, const GameSpec& spec,
                       const ThresholdVector& k);

// Nearest distribution realizable by h*n agents: every entry a multiple of
// 1/(h*n), per-type marginals exactly f_t, mean exactly m. Deterministic
// tie-breaking: rounding ties go down, marginal repair adjusts the
// largest-residual entries first, mean repair moves mass between the lowest
// and highest adjustable levels.
MoneyDistribution nearest_realizable(const MoneyDistribution& d, const GameSpec& spec);

}  // namespace scrip
