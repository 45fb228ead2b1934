#pragma once

#include "scrip/best_reply_mdp.hpp"
#include "scrip/model.hpp"

#include <vector>

namespace scrip {

// Default search ceiling for thresholds: an agent can never hold more than
// the whole money supply, so anything above it is behaviorally identical.
int default_threshold_cap(const GameSpec& spec);

// Componentwise optimal thresholds against profile k. In the frozen regime
// (money at or above capacity) nobody volunteers and the reply is all zero.
ThresholdVector best_reply_vector(const GameSpec& spec, const ThresholdVector& k, int cap);

enum class EquilibriumKind { trivial, nontrivial, capped };

struct EquilibriumResult {
    ThresholdVector thresholds;
    std::vector<ThresholdVector> trace;  // iterates, starting from the cap vector
    EquilibriumKind kind = EquilibriumKind::trivial;
    std::vector<BestReplyReport> reports;  // per-type reports at the fixed point
};

// Downward best-reply iteration from the all-cap profile. The reply map is
// monotone, so iterates decrease componentwise and reach the greatest fixed
// point in finitely many steps. If the very first reply hits the cap the run
// is flagged capped and should be retried with a larger cap; if an iterate
// falls below the money line the economy freezes and the result is trivial.
EquilibriumResult greatest_equilibrium(const GameSpec& spec, int cap = 0);

}  // namespace scrip
