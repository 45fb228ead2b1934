#pragma once

#include "scrip/model.hpp"

#include <cstdint>
#include <vector>

namespace scrip {

// Per-round event probabilities faced by a single agent of one type when the
// rest of the population plays the thresholds k and holds the steady-state
// wealth profile.
struct ChoiceProbabilities {
    double p_u = 0;       // earns a dollar this round, given willingness
    double p_d = 0;       // makes a paid request this round: rho_t / n
    double lambda = 0;    // tilt parameter of the steady-state profile
    std::vector<double> volunteer_mass;  // per type: beta_t (f_t - d*(t, k_t)) n
};

// p_u is computed from the volunteer masses and cross-checked against the
// algebraic identity p_u = p_d * lambda * omega_t; disagreement beyond 1e-9
// raises NumericError.
ChoiceProbabilities choice_probabilities(const GameSpec& spec, const ThresholdVector& k, int t);

// E[z^J] where J is the first round at which an agent starting with kappa
// dollars and playing threshold kappa runs out of money, given per-round
// earn/spend probabilities p_u and p_d. Solved directly from the tridiagonal
// first-passage system (O(kappa)).
double discounted_ruin_factor(int kappa, double p_u, double p_d, double z);

struct BestReplyReport {
    int type = 0;
    int kappa = 0;                  // optimal threshold (0 = never volunteer)
    double lhs_alpha = 0;           // cost of serving
    double rhs_at_kappa = 0;        // gamma_t E[z^J(kappa)], 0 when kappa = 0
    double rhs_at_kappa_plus_1 = 0; // gamma_t E[z^J(kappa+1)]
    double z = 0;                   // per-round discount used
    double p_u = 0;
    double p_d = 0;
    double lambda = 0;
    bool capped = false;  // inequality still held at the cap; raise it
};

// Largest kappa <= cap with alpha_t <= gamma_t E[z^J(kappa)]. The scan is
// linear from kappa = 1 and asserts E[z^J] strictly decreases along the way.
BestReplyReport best_reply_threshold(const GameSpec& spec, const ThresholdVector& k, int t,
                                     int cap);

// Single-agent decision process over wealth levels 0..cap: action 1 means
// volunteering this round. Exposed so tests can check rewards and transitions
// directly.
struct RuinMdp {
    int cap = 0;
    double p_u = 0, p_d = 0, z = 0;
    double gamma = 0, alpha = 0;

    double reward(int s, int a) const {
        double r = s > 0 ? gamma * p_d : 0.0;
        if (a == 1) r -= alpha * p_u;
        return r;
    }
};

RuinMdp build_ruin_mdp(const GameSpec& spec, const ThresholdVector& k, int t, int state_cap);

struct PolicyResult {
    std::vector<std::uint8_t> action;  // optimal action per wealth level
    std::vector<double> value;
    int threshold = 0;  // lowest level at which the agent stops volunteering
    int iterations = 0;
};

// Value iteration to sup-norm sweep change 1e-12. Asserts the optimal policy
// has threshold form and the value function is concave; either failing raises
// NumericError.
PolicyResult value_iteration_policy(const GameSpec& spec, const ThresholdVector& k, int t,
                                    int state_cap);
PolicyResult value_iteration_policy(const RuinMdp& mdp);

}  // namespace scrip
