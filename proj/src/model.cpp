#include "scrip/model.hpp"

#include <cmath>
#include <limits>

namespace scrip {

namespace {

void check_finite(double v, const std::string& what) {
    if (!std::isfinite(v)) throw SpecError(what + " must be finite");
}

void validate_agent_type(const AgentType& t, int index) {
    const std::string tag = "type " + std::to_string(index) + ": ";
    check_finite(t.alpha, tag + "alpha");
    check_finite(t.beta, tag + "beta");
    check_finite(t.gamma, tag + "gamma");
    check_finite(t.delta, tag + "delta");
    check_finite(t.rho, tag + "rho");
    check_finite(t.chi, tag + "chi");
    if (!(t.alpha > 0)) throw SpecError(tag + "alpha must be > 0");
    // beta = 1 (an agent that can always serve) is accepted; the reference
    // experiments use it.
    if (!(t.beta > 0 && t.beta <= 1)) throw SpecError(tag + "beta must be in (0, 1]");
    if (!(t.gamma > t.alpha)) throw SpecError(tag + "gamma must exceed alpha");
    if (!(t.delta > 0 && t.delta < 1)) throw SpecError(tag + "delta must be in (0, 1)");
    if (!(t.rho > 0)) throw SpecError(tag + "rho must be > 0");
    if (!(t.chi > 0)) throw SpecError(tag + "chi must be > 0");
}

}  // namespace

GameSpec build_game_spec(std::vector<AgentType> raw_types, const std::vector<double>& fractions,
                         std::int64_t h, const Rational& m, std::int64_t n) {
    if (raw_types.empty()) throw SpecError("at least one agent type required");
    if (raw_types.size() != fractions.size())
        throw SpecError("types and fractions must have the same length");
    if (h <= 0) throw SpecError("base agent count h must be positive");
    if (n <= 0) throw SpecError("replica count n must be positive");
    if (!m.positive()) throw SpecError("average money m must be positive");

    for (std::size_t i = 0; i < raw_types.size(); ++i)
        validate_agent_type(raw_types[i], static_cast<int>(i));

    // Population fractions: each f_t * h must be a whole number of base agents.
    std::vector<std::int64_t> counts(fractions.size());
    std::int64_t count_sum = 0;
    double fraction_sum = 0;
    for (std::size_t i = 0; i < fractions.size(); ++i) {
        const double f = fractions[i];
        check_finite(f, "fraction " + std::to_string(i));
        if (!(f > 0 && f <= 1))
            throw SpecError("fraction " + std::to_string(i) + " must be in (0, 1]");
        fraction_sum += f;
        const double scaled = f * static_cast<double>(h);
        const double rounded = std::nearbyint(scaled);
        if (std::abs(scaled - rounded) > 1e-9 || rounded < 1)
            throw SpecError("fraction " + std::to_string(i) + " times h = " +
                            std::to_string(scaled) + " is not a positive integer");
        counts[i] = static_cast<std::int64_t>(rounded);
        count_sum += counts[i];
    }
    if (std::abs(fraction_sum - 1.0) > 1e-9 || count_sum != h)
        throw SpecError("fractions must sum to 1 (got " + std::to_string(fraction_sum) + ")");

    const auto mh = m.times_integer(h);
    if (!mh) throw SpecError("m*h = " + m.str() + "*" + std::to_string(h) + " is not an integer");

    // Request rates are relative; rescale so sum_t rho_t f_t = 1.
    double rate = 0;
    for (std::size_t i = 0; i < raw_types.size(); ++i)
        rate += raw_types[i].rho * (static_cast<double>(counts[i]) / static_cast<double>(h));
    if (!(rate > 0)) throw SpecError("request rates must have positive total");
    const double scale = 1.0 / rate;
    for (auto& t : raw_types) t.rho *= scale;

    GameSpec spec;
    spec.types_ = std::move(raw_types);
    spec.base_counts_ = counts;
    spec.fractions_.resize(counts.size());
    spec.base_offsets_.resize(counts.size());
    std::int64_t offset = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        spec.fractions_[i] = static_cast<double>(counts[i]) / static_cast<double>(h);
        spec.base_offsets_[i] = offset;
        offset += counts[i];
    }
    spec.base_types_.reserve(static_cast<std::size_t>(h));
    for (std::size_t i = 0; i < counts.size(); ++i)
        spec.base_types_.insert(spec.base_types_.end(), static_cast<std::size_t>(counts[i]),
                                static_cast<int>(i));
    spec.h_ = h;
    spec.n_ = n;
    spec.m_ = m;
    spec.total_money_ = *mh * n;
    spec.rho_scale_ = scale;
    return spec;
}

GameSpec GameSpec::with_replicas(std::int64_t n) const {
    GameSpec copy = *this;
    if (n <= 0) throw SpecError("replica count n must be positive");
    copy.n_ = n;
    copy.total_money_ = *m_.times_integer(h_) * n;
    return copy;
}

double per_round_discount(double delta, std::int64_t n) {
    if (!(delta > 0 && delta < 1)) throw SpecError("delta must be in (0, 1)");
    if (n < 1) throw SpecError("n must be >= 1");
    return 1.0 - (1.0 - delta) / static_cast<double>(n);
}

bool money_below_capacity(const GameSpec& spec, const ThresholdVector& k) {
    require_valid_thresholds(spec, k);
    // Exact in integer units of 1/h: m*h < sum_t (f_t h) k_t.
    const std::int64_t mh = *spec.m().times_integer(spec.h());
    std::int64_t capacity = 0;
    for (int t = 0; t < spec.num_types(); ++t)
        capacity += spec.base_count(t) * static_cast<std::int64_t>(k[t]);
    return mh < capacity;
}

void require_valid_thresholds(const GameSpec& spec, const ThresholdVector& k) {
    if (k.size() != spec.num_types())
        throw SpecError("threshold vector has " + std::to_string(k.size()) + " entries, spec has " +
                        std::to_string(spec.num_types()) + " types");
    for (int t = 0; t < k.size(); ++t)
        if (k[t] < 0) throw SpecError("threshold for type " + std::to_string(t) + " is negative");
}

}  // namespace scrip
