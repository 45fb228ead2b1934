#include "scrip/wealth_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace scrip {

namespace {

constexpr double kLambdaTolerance = 1e-10;
const double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& v) {
    double hi = kNegInf;
    for (double x : v) hi = std::max(hi, x);
    if (hi == kNegInf) return kNegInf;
    double s = 0;
    for (double x : v) s += std::exp(x - hi);
    return hi + std::log(s);
}

// Mean of the distribution with weights u^i on levels 0..k. Evaluated with
// exponents shifted so the largest is zero; safe for any u > 0 and k.
double tilted_level_mean(double u, int k) {
    if (k == 0) return 0.0;
    const double log_u = std::log(u);
    const double shift = log_u > 0 ? k * log_u : 0.0;
    double weight_sum = 0, level_sum = 0;
    for (int i = 0; i <= k; ++i) {
        const double w = std::exp(i * log_u - shift);
        weight_sum += w;
        level_sum += i * w;
    }
    return level_sum / weight_sum;
}

double threshold_capacity(const GameSpec& spec, const ThresholdVector& k) {
    double capacity = 0;
    for (int t = 0; t < spec.num_types(); ++t) capacity += spec.fraction(t) * k[t];
    return capacity;
}

}  // namespace

double MoneyDistribution::marginal(int t) const {
    const auto& row = levels[static_cast<std::size_t>(t)];
    return std::accumulate(row.begin(), row.end(), 0.0);
}

double MoneyDistribution::mean() const {
    double s = 0;
    for (const auto& row : levels)
        for (std::size_t i = 0; i < row.size(); ++i) s += static_cast<double>(i) * row[i];
    return s;
}

double MoneyDistribution::total() const {
    double s = 0;
    for (const auto& row : levels) s += std::accumulate(row.begin(), row.end(), 0.0);
    return s;
}

void MoneyDistribution::require_member_of_simplex(const GameSpec& spec) const {
    if (num_types() != spec.num_types())
        throw NumericError("distribution type count does not match spec");
    for (int t = 0; t < num_types(); ++t) {
        for (double v : levels[static_cast<std::size_t>(t)])
            if (v < -1e-15) throw NumericError("distribution has a negative entry");
        const double err = std::abs(marginal(t) - spec.fraction(t));
        if (err > 1e-12)
            throw NumericError("type " + std::to_string(t) + " marginal off by " +
                               std::to_string(err));
    }
}

double distance_l2sq(const MoneyDistribution& a, const MoneyDistribution& b,
                     const ThresholdVector& k) {
    double s = 0;
    for (int t = 0; t < k.size(); ++t)
        for (int i = 0; i <= k[t]; ++i) {
            const double diff = a.at(t, i) - b.at(t, i);
            s += diff * diff;
        }
    return s;
}

MoneyDistribution base_distribution(const GameSpec& spec, const ThresholdVector& k) {
    require_valid_thresholds(spec, k);
    MoneyDistribution q;
    q.levels.resize(static_cast<std::size_t>(spec.num_types()));
    // Normalize in log space: entries are omega_t^i / sum over all pairs.
    std::vector<double> log_terms;
    for (int t = 0; t < spec.num_types(); ++t) {
        const double log_w = std::log(spec.type(t).omega());
        for (int i = 0; i <= k[t]; ++i) log_terms.push_back(i * log_w);
    }
    const double log_norm = log_sum_exp(log_terms);
    std::size_t idx = 0;
    for (int t = 0; t < spec.num_types(); ++t) {
        auto& row = q.levels[static_cast<std::size_t>(t)];
        row.resize(static_cast<std::size_t>(k[t]) + 1);
        for (int i = 0; i <= k[t]; ++i) row[static_cast<std::size_t>(i)] = std::exp(log_terms[idx++] - log_norm);
    }
    return q;
}

double mean_money(const GameSpec& spec, const ThresholdVector& k, double lambda) {
    require_valid_thresholds(spec, k);
    if (!(lambda > 0)) throw SpecError("lambda must be positive");
    double g = 0;
    for (int t = 0; t < spec.num_types(); ++t)
        g += spec.fraction(t) * tilted_level_mean(lambda * spec.type(t).omega(), k[t]);
    return g;
}

LambdaSolution solve_lambda(const GameSpec& spec, const ThresholdVector& k) {
    if (!money_below_capacity(spec, k))
        throw SpecError("money supply at or above capacity: m = " + spec.m().str() +
                        " >= sum f_t k_t = " + std::to_string(threshold_capacity(spec, k)));
    const double target = spec.m_value();

    LambdaSolution sol;
    double lo = 1.0, hi = 1.0;
    double g = mean_money(spec, k, 1.0);
    int iterations = 0;
    if (g < target) {
        while (mean_money(spec, k, hi) < target) {
            lo = hi;
            hi *= 2;
            ++iterations;
        }
    } else if (g > target) {
        while (mean_money(spec, k, lo) > target) {
            hi = lo;
            lo /= 2;
            ++iterations;
        }
    }
    sol.bracket_low = lo;
    sol.bracket_high = hi;

    double lambda = (g == target) ? 1.0 : std::sqrt(lo * hi);
    g = mean_money(spec, k, lambda);
    while (std::abs(g - target) > kLambdaTolerance) {
        if (g < target)
            lo = lambda;
        else
            hi = lambda;
        lambda = std::sqrt(lo * hi);
        g = mean_money(spec, k, lambda);
        if (++iterations > 5000)
            throw NumericError("lambda bisection failed to converge; residual " +
                               std::to_string(g - target));
    }
    sol.lambda = lambda;
    sol.achieved_mean = g;
    sol.iterations = iterations;
    return sol;
}

MoneyDistribution min_relent_distribution(const GameSpec& spec, const ThresholdVector& k,
                                          double lambda) {
    require_valid_thresholds(spec, k);
    MoneyDistribution d;
    d.levels.resize(static_cast<std::size_t>(spec.num_types()));
    for (int t = 0; t < spec.num_types(); ++t) {
        const double log_u = std::log(lambda * spec.type(t).omega());
        const double shift = log_u > 0 ? k[t] * log_u : 0.0;
        auto& row = d.levels[static_cast<std::size_t>(t)];
        row.resize(static_cast<std::size_t>(k[t]) + 1);
        double sum = 0;
        for (int i = 0; i <= k[t]; ++i) {
            row[static_cast<std::size_t>(i)] = std::exp(i * log_u - shift);
            sum += row[static_cast<std::size_t>(i)];
        }
        const double scale = spec.fraction(t) / sum;
        for (auto& v : row) v *= scale;
    }
    return d;
}

MoneyDistribution min_relent_distribution(const GameSpec& spec, const ThresholdVector& k) {
    return min_relent_distribution(spec, k, solve_lambda(spec, k).lambda);
}

double relative_entropy(const MoneyDistribution& d, const MoneyDistribution& q) {
    if (d.num_types() != q.num_types())
        throw SpecError("relative entropy over mismatched type sets");
    double h = 0;
    for (int t = 0; t < d.num_types(); ++t) {
        if (d.top_level(t) != q.top_level(t))
            throw SpecError("relative entropy over mismatched level sets");
        for (int i = 0; i <= d.top_level(t); ++i) {
            const double dv = d.at(t, i);
            if (dv == 0) continue;
            const double qv = q.at(t, i);
            if (qv == 0) return std::numeric_limits<double>::infinity();
            h += dv * std::log(dv / qv);
        }
    }
    return h;
}

double log_total_state_weight(const GameSpec& spec, const ThresholdVector& k,
                              std::int64_t work_cap) {
    require_valid_thresholds(spec, k);
    const std::int64_t agents = spec.total_agents();
    const std::int64_t money = spec.total_money();
    int max_k = 0;
    for (int t = 0; t < k.size(); ++t) max_k = std::max(max_k, k[t]);
    if (agents * (money + 1) * (max_k + 1) > work_cap)
        throw SpecError("state space too large for exact weight computation");

    std::vector<double> dp(static_cast<std::size_t>(money) + 1, kNegInf);
    dp[0] = 0.0;
    std::vector<double> next(dp.size());
    std::vector<double> terms;
    for (std::int64_t a = 0; a < agents; ++a) {
        const int t = spec.type_of_agent(a);
        const double log_w = std::log(spec.type(t).omega());
        const int cap = k[t];
        for (std::int64_t s = 0; s <= money; ++s) {
            terms.clear();
            for (int i = 0; i <= cap && i <= s; ++i) {
                const double prev = dp[static_cast<std::size_t>(s - i)];
                if (prev != kNegInf) terms.push_back(prev + i * log_w);
            }
            next[static_cast<std::size_t>(s)] = log_sum_exp(terms);
        }
        dp.swap(next);
    }
    if (dp[static_cast<std::size_t>(money)] == kNegInf)
        throw SpecError("no realizable state: money exceeds total threshold capacity");
    return dp[static_cast<std::size_t>(money)];
}

double potential_value(const MoneyDistribution& d, const GameSpec& spec,
                       const ThresholdVector& k) {
    require_valid_thresholds(spec, k);
    if (d.num_types() != spec.num_types())
        throw SpecError("distribution type count does not match spec");
    for (int t = 0; t < d.num_types(); ++t)
        if (std::abs(d.marginal(t) - spec.fraction(t)) > 1e-9)
            throw SpecError("potential_value requires per-type marginals f_t");
    if (std::abs(d.mean() - spec.m_value()) > 1e-9)
        throw SpecError("potential_value requires mean m");

    double entropy = 0;
    double tilt = 0;
    for (int t = 0; t < d.num_types(); ++t) {
        const double log_w = std::log(spec.type(t).omega());
        for (int i = 0; i <= d.top_level(t); ++i) {
            const double v = d.at(t, i);
            if (v > 0) entropy -= v * std::log(v);
            tilt += i * v * log_w;
        }
    }
    double type_entropy = 0;
    for (int t = 0; t < spec.num_types(); ++t) {
        const double f = spec.fraction(t);
        type_entropy -= f * std::log(f);
    }
    return entropy - type_entropy - log_total_state_weight(spec, k) + tilt;
}

MoneyDistribution nearest_realizable(const MoneyDistribution& d, const GameSpec& spec) {
    if (d.num_types() != spec.num_types())
        throw SpecError("distribution type count does not match spec");
    for (int t = 0; t < d.num_types(); ++t)
        if (std::abs(d.marginal(t) - spec.fraction(t)) > 1e-9)
            throw SpecError("nearest_realizable requires per-type marginals f_t");
    if (std::abs(d.mean() - spec.m_value()) > 1e-9)
        throw SpecError("nearest_realizable requires mean m");

    const std::int64_t agents = spec.total_agents();
    const double unit = 1.0 / static_cast<double>(agents);

    // Integer agent counts per (type, level); all later repairs are exact.
    struct Cell {
        std::int64_t count;
        double residual;  // exact - count, in units of agents
    };
    std::vector<std::vector<Cell>> cells(static_cast<std::size_t>(d.num_types()));
    for (int t = 0; t < d.num_types(); ++t) {
        auto& row = cells[static_cast<std::size_t>(t)];
        row.resize(static_cast<std::size_t>(d.top_level(t)) + 1);
        for (int i = 0; i <= d.top_level(t); ++i) {
            const double exact = d.at(t, i) * static_cast<double>(agents);
            const double floor_v = std::floor(exact);
            const double frac = exact - floor_v;
            std::int64_t c = static_cast<std::int64_t>(floor_v);
            if (frac > 0.5) ++c;  // exact halves round down
            row[static_cast<std::size_t>(i)] = {c, exact - static_cast<double>(c)};
        }
    }

    // Per-type marginal repair: nudge the entries that were rounded the
    // furthest, one unit at a time.
    for (int t = 0; t < d.num_types(); ++t) {
        auto& row = cells[static_cast<std::size_t>(t)];
        std::int64_t have = 0;
        for (const auto& c : row) have += c.count;
        std::int64_t need = spec.agent_count(t) - have;
        while (need != 0) {
            int best = -1;
            for (int i = 0; i < static_cast<int>(row.size()); ++i) {
                const auto& c = row[static_cast<std::size_t>(i)];
                if (need < 0 && c.count == 0) continue;
                if (best == -1) {
                    best = i;
                    continue;
                }
                const double r = c.residual, rb = row[static_cast<std::size_t>(best)].residual;
                if ((need > 0 && r > rb) || (need < 0 && r < rb)) best = i;
            }
            auto& c = row[static_cast<std::size_t>(best)];
            if (need > 0) {
                ++c.count;
                c.residual -= 1.0;
                --need;
            } else {
                --c.count;
                c.residual += 1.0;
                ++need;
            }
        }
    }

    // Mean repair: move single agents between the lowest and highest
    // adjustable levels until the total money is exact.
    std::int64_t money = 0;
    for (int t = 0; t < d.num_types(); ++t)
        for (int i = 0; i <= d.top_level(t); ++i)
            money += static_cast<std::int64_t>(i) * cells[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)].count;
    std::int64_t deficit = spec.total_money() - money;
    while (deficit > 0) {
        // Lowest occupied level with headroom above it.
        int bt = -1, bi = 0;
        for (int t = 0; t < d.num_types(); ++t)
            for (int i = 0; i < d.top_level(t); ++i)
                if (cells[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)].count > 0 && (bt == -1 || i < bi)) {
                    bt = t;
                    bi = i;
                    break;
                }
        if (bt == -1) throw NumericError("mean repair stuck: no agent below its threshold");
        const int dest = static_cast<int>(std::min<std::int64_t>(d.top_level(bt), bi + deficit));
        --cells[static_cast<std::size_t>(bt)][static_cast<std::size_t>(bi)].count;
        ++cells[static_cast<std::size_t>(bt)][static_cast<std::size_t>(dest)].count;
        deficit -= dest - bi;
    }
    while (deficit < 0) {
        // Highest occupied level above zero.
        int bt = -1, bi = 0;
        for (int t = 0; t < d.num_types(); ++t)
            for (int i = d.top_level(t); i > 0; --i)
                if (cells[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)].count > 0 && (bt == -1 || i > bi)) {
                    bt = t;
                    bi = i;
                    break;
                }
        if (bt == -1) throw NumericError("mean repair stuck: no agent above level zero");
        const int dest = static_cast<int>(std::max<std::int64_t>(0, bi + deficit));
        --cells[static_cast<std::size_t>(bt)][static_cast<std::size_t>(bi)].count;
        ++cells[static_cast<std::size_t>(bt)][static_cast<std::size_t>(dest)].count;
        deficit += bi - dest;
    }

    MoneyDistribution out;
    out.levels.resize(static_cast<std::size_t>(d.num_types()));
    for (int t = 0; t < d.num_types(); ++t) {
        auto& row = out.levels[static_cast<std::size_t>(t)];
        row.resize(static_cast<std::size_t>(d.top_level(t)) + 1);
        for (int i = 0; i <= d.top_level(t); ++i)
            row[static_cast<std::size_t>(i)] =
                static_cast<double>(cells[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)].count) * unit;
    }
    return out;
}

}  // namespace scrip
