#include "scrip/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace scrip {

int default_threshold_cap(const GameSpec& spec) {
    const double m = spec.m_value();
    const std::int64_t by_money = spec.total_money();
    const std::int64_t by_mean = 10 * static_cast<std::int64_t>(std::ceil(m));
    return static_cast<int>(std::max(by_money, by_mean));
}

ThresholdVector best_reply_vector(const GameSpec& spec, const ThresholdVector& k, int cap) {
    require_valid_thresholds(spec, k);
    ThresholdVector reply;
    reply.k.assign(static_cast<std::size_t>(spec.num_types()), 0);
    if (!money_below_capacity(spec, k)) return reply;  // frozen regime

    std::vector<std::future<BestReplyReport>> jobs;
    jobs.reserve(static_cast<std::size_t>(spec.num_types()));
    for (int t = 0; t < spec.num_types(); ++t)
        jobs.push_back(std::async(std::launch::async,
                                  [&, t] { return best_reply_threshold(spec, k, t, cap); }));
    for (int t = 0; t < spec.num_types(); ++t)
        reply.k[static_cast<std::size_t>(t)] = jobs[static_cast<std::size_t>(t)].get().kappa;
    return reply;
}

namespace {

bool componentwise_leq(const ThresholdVector& a, const ThresholdVector& b) {
    for (int t = 0; t < a.size(); ++t)
        if (a[t] > b[t]) return false;
    return true;
}

}  // namespace

EquilibriumResult greatest_equilibrium(const GameSpec& spec, int cap) {
    if (cap <= 0) cap = default_threshold_cap(spec);

    EquilibriumResult result;
    ThresholdVector current;
    current.k.assign(static_cast<std::size_t>(spec.num_types()), cap);
    result.trace.push_back(current);

    while (true) {
        if (!money_below_capacity(spec, current)) {
            // The iterate fell below the money line: trade freezes, which is
            // behaviorally the all-zero profile.
            result.thresholds.k.assign(static_cast<std::size_t>(spec.num_types()), 0);
            result.trace.push_back(result.thresholds);
            result.kind = EquilibriumKind::trivial;
            return result;
        }
        ThresholdVector reply = best_reply_vector(spec, current, cap);
        if (!componentwise_leq(reply, current))
            throw NumericError("best reply increased along the downward iteration");
        if (result.trace.size() == 1 &&
            *std::max_element(reply.k.begin(), reply.k.end()) == cap) {
            result.thresholds = reply;
            result.trace.push_back(reply);
            result.kind = EquilibriumKind::capped;
            return result;
        }
        const bool fixed = reply == current;
        result.trace.push_back(reply);
        current = std::move(reply);
        if (fixed) break;
    }

    result.thresholds = current;
    const bool nontrivial =
        *std::max_element(current.k.begin(), current.k.end()) > 0 &&
        money_below_capacity(spec, current);
    result.kind = nontrivial ? EquilibriumKind::nontrivial : EquilibriumKind::trivial;
    if (nontrivial)
        for (int t = 0; t < spec.num_types(); ++t)
            result.reports.push_back(best_reply_threshold(spec, current, t, cap));
    return result;
}

}  // namespace scrip
