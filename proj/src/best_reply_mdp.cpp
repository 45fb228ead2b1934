#include "scrip/best_reply_mdp.hpp"

#include "scrip/wealth_entropy.hpp"

#include <algorithm>
#include <cmath>

namespace scrip {

ChoiceProbabilities choice_probabilities(const GameSpec& spec, const ThresholdVector& k, int t) {
    if (t < 0 || t >= spec.num_types()) throw SpecError("type index out of range");
    const LambdaSolution sol = solve_lambda(spec, k);
    const MoneyDistribution d = min_relent_distribution(spec, k, sol.lambda);
    const double n = static_cast<double>(spec.n());

    ChoiceProbabilities probs;
    probs.lambda = sol.lambda;
    probs.volunteer_mass.resize(static_cast<std::size_t>(spec.num_types()));
    double weighted_volunteers = 0;  // sum chi_t' v_t'
    double paying_requesters = 0;    // sum rho_t' (f_t' - d(t', 0))
    for (int u = 0; u < spec.num_types(); ++u) {
        const AgentType& type = spec.type(u);
        const double mass = type.beta * (spec.fraction(u) - d.at(u, k[u])) * n;
        probs.volunteer_mass[static_cast<std::size_t>(u)] = mass;
        weighted_volunteers += type.chi * mass;
        paying_requesters += type.rho * (spec.fraction(u) - d.at(u, 0));
    }
    if (!(weighted_volunteers > 0))
        throw SpecError("no volunteers: every type is saturated at its threshold");

    const AgentType& own = spec.type(t);
    probs.p_u = paying_requesters * own.chi * own.beta / weighted_volunteers;
    probs.p_d = own.rho / n;

    const double via_identity = probs.p_d * sol.lambda * own.omega();
    if (std::abs(probs.p_u - via_identity) > 1e-9)
        throw NumericError("earn-probability routes disagree: " + std::to_string(probs.p_u) +
                           " vs " + std::to_string(via_identity));
    if (probs.p_u + probs.p_d > 1.0)
        throw NumericError("p_u + p_d exceeds 1; population too small for the abstraction");
    return probs;
}

double discounted_ruin_factor(int kappa, double p_u, double p_d, double z) {
    if (kappa < 1) throw SpecError("kappa must be >= 1");
    if (!(z > 0 && z < 1)) throw SpecError("z must be in (0, 1)");
    if (!(p_d > 0) || p_u < 0 || p_u + p_d > 1.0)
        throw SpecError("need p_d > 0, p_u >= 0, p_u + p_d <= 1");

    // First-passage system phi_i = E[z^rounds to ruin | wealth i], phi_0 = 1.
    // Interior rows: (1 - z(1-p_u-p_d)) phi_i = z p_u phi_{i+1} + z p_d phi_{i-1}.
    // Top row (no volunteering at the threshold):
    //   (1 - z(1-p_d)) phi_kappa = z p_d phi_{kappa-1}.
    // Thomas elimination; the diagonal strictly dominates since z < 1.
    const double interior = 1.0 - z * (1.0 - p_u - p_d);
    const double up = z * p_u;
    const double down = z * p_d;

    std::vector<double> diag(static_cast<std::size_t>(kappa));
    std::vector<double> rhs(static_cast<std::size_t>(kappa));
    for (int i = 0; i < kappa - 1; ++i) {
        diag[static_cast<std::size_t>(i)] = interior;
        rhs[static_cast<std::size_t>(i)] = 0;
    }
    diag[static_cast<std::size_t>(kappa - 1)] = 1.0 - z * (1.0 - p_d);
    rhs[0] = down;  // phi_0 = 1 folded into the first row
    for (int i = 1; i < kappa; ++i) {
        const double factor = down / diag[static_cast<std::size_t>(i - 1)];
        diag[static_cast<std::size_t>(i)] -= factor * up;
        rhs[static_cast<std::size_t>(i)] += factor * rhs[static_cast<std::size_t>(i - 1)];
    }
    const double phi = rhs[static_cast<std::size_t>(kappa - 1)] / diag[static_cast<std::size_t>(kappa - 1)];
    if (!(phi > 0 && phi < 1)) throw NumericError("ruin factor left (0, 1)");
    return phi;
}

BestReplyReport best_reply_threshold(const GameSpec& spec, const ThresholdVector& k, int t,
                                     int cap) {
    if (cap < 1) throw SpecError("threshold cap must be >= 1");
    const ChoiceProbabilities probs = choice_probabilities(spec, k, t);
    const AgentType& type = spec.type(t);
    const double z = per_round_discount(type.delta, spec.n());

    BestReplyReport report;
    report.type = t;
    report.lhs_alpha = type.alpha;
    report.z = z;
    report.p_u = probs.p_u;
    report.p_d = probs.p_d;
    report.lambda = probs.lambda;

    double prev = 2.0;  // above any attainable E[z^J]
    for (int kappa = 1; kappa <= cap; ++kappa) {
        const double phi = discounted_ruin_factor(kappa, probs.p_u, probs.p_d, z);
        if (phi >= prev)
            throw NumericError("E[z^J] failed to decrease at kappa = " + std::to_string(kappa));
        prev = phi;
        if (type.alpha > type.gamma * phi) {
            report.kappa = kappa - 1;
            report.rhs_at_kappa_plus_1 = type.gamma * phi;
            return report;
        }
        report.rhs_at_kappa = type.gamma * phi;
    }
    report.kappa = cap;
    report.capped = true;
    report.rhs_at_kappa_plus_1 =
        type.gamma * discounted_ruin_factor(cap + 1, probs.p_u, probs.p_d, z);
    return report;
}

RuinMdp build_ruin_mdp(const GameSpec& spec, const ThresholdVector& k, int t, int state_cap) {
    if (state_cap < 1) throw SpecError("state cap must be >= 1");
    const ChoiceProbabilities probs = choice_probabilities(spec, k, t);
    RuinMdp mdp;
    mdp.cap = static_cast<int>(std::min<std::int64_t>(state_cap, spec.total_money()));
    mdp.p_u = probs.p_u;
    mdp.p_d = probs.p_d;
    mdp.z = per_round_discount(spec.type(t).delta, spec.n());
    mdp.gamma = spec.type(t).gamma;
    mdp.alpha = spec.type(t).alpha;
    return mdp;
}

PolicyResult value_iteration_policy(const RuinMdp& mdp) {
    const int cap = mdp.cap;
    const double z = mdp.z;
    std::vector<double> u(static_cast<std::size_t>(cap) + 1, 0.0);
    std::vector<double> next(u.size(), 0.0);

    const auto action_value = [&](int s, int a, const std::vector<double>& v) {
        const double down = s > 0 ? mdp.p_d : 0.0;
        const double up = (a == 1 && s < cap) ? mdp.p_u : 0.0;
        double q = mdp.reward(s, a);
        q += z * (up * v[static_cast<std::size_t>(s + (s < cap ? 1 : 0))] +
                  down * v[static_cast<std::size_t>(s > 0 ? s - 1 : 0)] +
                  (1.0 - up - down) * v[static_cast<std::size_t>(s)]);
        return q;
    };

    int iterations = 0;
    double change = 1.0;
    // Sup-norm contraction at rate z: bound the sweep count from the discount.
    const int max_iterations =
        static_cast<int>(std::min(2e8, 80.0 / (1.0 - z))) + 1000;
    while (change > 1e-12) {
        for (int s = 0; s <= cap; ++s)
            next[static_cast<std::size_t>(s)] =
                std::max(action_value(s, 0, u), action_value(s, 1, u));
        change = 0;
        for (std::size_t i = 0; i < u.size(); ++i)
            change = std::max(change, std::abs(next[i] - u[i]));
        u.swap(next);
        if (++iterations > max_iterations)
            throw NumericError("value iteration did not converge in " +
                               std::to_string(iterations) + " sweeps");
    }

    PolicyResult result;
    result.value = u;
    result.iterations = iterations;
    result.action.resize(u.size());
    for (int s = 0; s <= cap; ++s)
        result.action[static_cast<std::size_t>(s)] =
            action_value(s, 1, u) > action_value(s, 0, u) ? 1 : 0;

    // The optimal policy must be volunteer-below-some-level.
    int threshold = cap + 1;
    for (int s = 0; s <= cap; ++s)
        if (result.action[static_cast<std::size_t>(s)] == 0) {
            threshold = s;
            break;
        }
    for (int s = threshold; s <= cap; ++s)
        if (result.action[static_cast<std::size_t>(s)] != 0)
            throw NumericError("optimal policy is not of threshold form at level " +
                               std::to_string(s));
    result.threshold = std::min(threshold, cap + 1);

    for (int s = 0; s + 2 <= cap; ++s)
        if (u[static_cast<std::size_t>(s + 2)] + u[static_cast<std::size_t>(s)] >
            2.0 * u[static_cast<std::size_t>(s + 1)] + 1e-8)
            throw NumericError("value function is not concave at level " + std::to_string(s));

    return result;
}

PolicyResult value_iteration_policy(const GameSpec& spec, const ThresholdVector& k, int t,
                                    int state_cap) {
    return value_iteration_policy(build_ruin_mdp(spec, k, t, state_cap));
}

}  // namespace scrip
