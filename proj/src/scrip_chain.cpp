#include "scrip/scrip_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

namespace scrip {

std::int64_t WealthState::total() const {
    return std::accumulate(dollars.begin(), dollars.end(), std::int64_t{0});
}

WealthState initial_state(const GameSpec& spec, CounterRng& rng) {
    WealthState state;
    state.dollars.assign(static_cast<std::size_t>(spec.total_agents()), 0);
    const std::uint64_t agents = static_cast<std::uint64_t>(spec.total_agents());
    for (std::int64_t dollar = 0; dollar < spec.total_money(); ++dollar)
        ++state.dollars[rng.below(agents)];
    return state;
}

ScripChain::ScripChain(const GameSpec& spec, ThresholdVector thresholds, CounterRng rng)
    : spec_(spec), thresholds_(std::move(thresholds)), rng_(rng) {
    require_valid_thresholds(spec_, thresholds_);

    // Walker alias table over types, weighted by rho_t f_t (these sum to 1).
    const int nt = spec_.num_types();
    alias_prob_.assign(static_cast<std::size_t>(nt), 1.0);
    alias_other_.assign(static_cast<std::size_t>(nt), 0);
    std::vector<double> scaled(static_cast<std::size_t>(nt));
    std::vector<int> small, large;
    for (int t = 0; t < nt; ++t) {
        scaled[static_cast<std::size_t>(t)] = spec_.type(t).rho * spec_.fraction(t) * nt;
        (scaled[static_cast<std::size_t>(t)] < 1.0 ? small : large).push_back(t);
    }
    while (!small.empty() && !large.empty()) {
        const int s = small.back();
        const int l = large.back();
        small.pop_back();
        alias_prob_[static_cast<std::size_t>(s)] = scaled[static_cast<std::size_t>(s)];
        alias_other_[static_cast<std::size_t>(s)] = l;
        scaled[static_cast<std::size_t>(l)] -= 1.0 - scaled[static_cast<std::size_t>(s)];
        if (scaled[static_cast<std::size_t>(l)] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (int t : large) alias_prob_[static_cast<std::size_t>(t)] = 1.0;
    for (int t : small) alias_prob_[static_cast<std::size_t>(t)] = 1.0;

    init_random();
}

int ScripChain::sample_requester_type() {
    const int nt = spec_.num_types();
    if (nt == 1) return 0;
    const int t = static_cast<int>(rng_.below(static_cast<std::uint64_t>(nt)));
    return rng_.uniform() < alias_prob_[static_cast<std::size_t>(t)]
               ? t
               : alias_other_[static_cast<std::size_t>(t)];
}

void ScripChain::init_random() {
    state_ = initial_state(spec_, rng_);
    round_ = 0;
    rebuild_indexes();
}

void ScripChain::init_from(const WealthState& state) {
    if (static_cast<std::int64_t>(state.dollars.size()) != spec_.total_agents())
        throw SpecError("wealth state has wrong number of agents");
    for (auto d : state.dollars)
        if (d < 0) throw SpecError("wealth state has a negative holding");
    if (state.total() != spec_.total_money())
        throw SpecError("wealth state total " + std::to_string(state.total()) +
                        " does not equal the money supply " +
                        std::to_string(spec_.total_money()));
    state_ = state;
    round_ = 0;
    rebuild_indexes();
}

void ScripChain::rebuild_indexes() {
    const int nt = spec_.num_types();
    open_agents_.assign(static_cast<std::size_t>(nt), {});
    bucket_pos_.assign(state_.dollars.size(), -1);
    level_counts_.assign(static_cast<std::size_t>(nt), {});
    excess_counts_.assign(static_cast<std::size_t>(nt), 0);
    for (int t = 0; t < nt; ++t)
        level_counts_[static_cast<std::size_t>(t)].assign(
            static_cast<std::size_t>(thresholds_[t]) + 1, 0);

    for (std::int64_t i = 0; i < spec_.total_agents(); ++i) {
        const int t = spec_.type_of_agent(i);
        const std::int32_t w = state_.dollars[static_cast<std::size_t>(i)];
        if (w <= thresholds_[t])
            ++level_counts_[static_cast<std::size_t>(t)][static_cast<std::size_t>(w)];
        else
            ++excess_counts_[static_cast<std::size_t>(t)];
        if (w < thresholds_[t]) {
            bucket_pos_[static_cast<std::size_t>(i)] =
                static_cast<std::int64_t>(open_agents_[static_cast<std::size_t>(t)].size());
            open_agents_[static_cast<std::size_t>(t)].push_back(i);
        }
    }
}

void ScripChain::apply_transfer(std::int64_t payer, std::int64_t earner) {
    const int tp = spec_.type_of_agent(payer);
    const int te = spec_.type_of_agent(earner);
    const std::int32_t before_p = state_.dollars[static_cast<std::size_t>(payer)]--;
    const std::int32_t before_e = state_.dollars[static_cast<std::size_t>(earner)]++;

    // Occupancy bookkeeping: payer drops one level, earner climbs one.
    const int kp = thresholds_[tp];
    if (before_p <= kp)
        --level_counts_[static_cast<std::size_t>(tp)][static_cast<std::size_t>(before_p)];
    else
        --excess_counts_[static_cast<std::size_t>(tp)];
    if (before_p - 1 <= kp)
        ++level_counts_[static_cast<std::size_t>(tp)][static_cast<std::size_t>(before_p - 1)];
    else
        ++excess_counts_[static_cast<std::size_t>(tp)];
    const int ke = thresholds_[te];
    --level_counts_[static_cast<std::size_t>(te)][static_cast<std::size_t>(before_e)];
    ++level_counts_[static_cast<std::size_t>(te)][static_cast<std::size_t>(before_e + 1)];

    // Bucket membership: payer may cross below its threshold, the earner may
    // reach it. Removal swaps in the bucket's last element.
    if (before_p == kp && kp > 0) {
        bucket_pos_[static_cast<std::size_t>(payer)] =
            static_cast<std::int64_t>(open_agents_[static_cast<std::size_t>(tp)].size());
        open_agents_[static_cast<std::size_t>(tp)].push_back(payer);
    }
    if (before_e + 1 == ke) {
        auto& bucket = open_agents_[static_cast<std::size_t>(te)];
        const std::int64_t pos = bucket_pos_[static_cast<std::size_t>(earner)];
        const std::int64_t last = bucket.back();
        bucket[static_cast<std::size_t>(pos)] = last;
        bucket_pos_[static_cast<std::size_t>(last)] = pos;
        bucket.pop_back();
        bucket_pos_[static_cast<std::size_t>(earner)] = -1;
    }
}

RoundOutcome ScripChain::step() {
    ++round_;
    RoundOutcome out;

    const int rt = sample_requester_type();
    const std::int64_t within = static_cast<std::int64_t>(
        rng_.below(static_cast<std::uint64_t>(spec_.agent_count(rt))));
    const std::int64_t requester = spec_.agent_of_type(rt, within);
    out.requester = requester;
    const bool can_pay = state_.dollars[static_cast<std::size_t>(requester)] >= 1;

    // Capability draws, one binomial per type over the agents that would
    // volunteer (below threshold, requester excluded).
    const int nt = spec_.num_types();
    std::int64_t total_capable = 0;
    double weight_sum = 0;
    static thread_local std::vector<std::int64_t> capable;
    static thread_local std::vector<double> weights;
    capable.assign(static_cast<std::size_t>(nt), 0);
    weights.assign(static_cast<std::size_t>(nt), 0.0);
    for (int t = 0; t < nt; ++t) {
        std::int64_t eligible =
            static_cast<std::int64_t>(open_agents_[static_cast<std::size_t>(t)].size());
        if (t == rt && bucket_pos_[static_cast<std::size_t>(requester)] >= 0) --eligible;
        if (eligible == 0) continue;
        const double beta = spec_.type(t).beta;
        std::int64_t c = eligible;
        if (beta < 1.0) {
            std::binomial_distribution<std::int64_t> binom(eligible, beta);
            c = binom(rng_);
        }
        capable[static_cast<std::size_t>(t)] = c;
        weights[static_cast<std::size_t>(t)] = static_cast<double>(c) * spec_.type(t).chi;
        weight_sum += weights[static_cast<std::size_t>(t)];
        total_capable += c;
    }
    out.capable = total_capable;
    out.volunteers = can_pay ? total_capable : 0;

    if (!can_pay || total_capable == 0) return out;

    // Winner: type drawn with weight chi_t * capable_t, then a uniform member
    // of that type's open bucket (capable agents are a uniform subset of it).
    double pick = rng_.uniform() * weight_sum;
    int wt = nt - 1;
    for (int t = 0; t < nt; ++t) {
        pick -= weights[static_cast<std::size_t>(t)];
        if (pick < 0) {
            wt = t;
            break;
        }
    }
    const auto& bucket = open_agents_[static_cast<std::size_t>(wt)];
    std::int64_t eligible = static_cast<std::int64_t>(bucket.size());
    const std::int64_t rpos =
        (wt == rt) ? bucket_pos_[static_cast<std::size_t>(requester)] : -1;
    if (rpos >= 0) --eligible;
    std::int64_t u = static_cast<std::int64_t>(rng_.below(static_cast<std::uint64_t>(eligible)));
    if (rpos >= 0 && u >= rpos) ++u;
    const std::int64_t winner = bucket[static_cast<std::size_t>(u)];

    out.winner = winner;
    out.paid = true;
    apply_transfer(requester, winner);
    return out;
}

MoneyDistribution ScripChain::empirical() const {
    MoneyDistribution d;
    const int nt = spec_.num_types();
    std::int32_t top = 0;
    for (std::int64_t i = 0; i < spec_.total_agents(); ++i)
        top = std::max(top, state_.dollars[static_cast<std::size_t>(i)]);
    d.levels.resize(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t)
        d.levels[static_cast<std::size_t>(t)].assign(
            static_cast<std::size_t>(std::max<std::int32_t>(top, thresholds_[t])) + 1, 0.0);
    const double unit = 1.0 / static_cast<double>(spec_.total_agents());
    for (std::int64_t i = 0; i < spec_.total_agents(); ++i) {
        const int t = spec_.type_of_agent(i);
        d.levels[static_cast<std::size_t>(t)]
                [static_cast<std::size_t>(state_.dollars[static_cast<std::size_t>(i)])] += unit;
    }
    return d;
}

MoneyDistribution ScripChain::occupancy() const {
    MoneyDistribution d;
    d.levels.resize(static_cast<std::size_t>(spec_.num_types()));
    const double unit = 1.0 / static_cast<double>(spec_.total_agents());
    for (int t = 0; t < spec_.num_types(); ++t) {
        const auto& counts = level_counts_[static_cast<std::size_t>(t)];
        auto& row = d.levels[static_cast<std::size_t>(t)];
        row.resize(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i)
            row[i] = static_cast<double>(counts[i]) * unit;
    }
    return d;
}

double ScripChain::distance_l2sq_to(const MoneyDistribution& target) const {
    const double unit = 1.0 / static_cast<double>(spec_.total_agents());
    double s = 0;
    for (int t = 0; t < spec_.num_types(); ++t) {
        const auto& counts = level_counts_[static_cast<std::size_t>(t)];
        for (int i = 0; i < static_cast<int>(counts.size()); ++i) {
            const double diff =
                static_cast<double>(counts[static_cast<std::size_t>(i)]) * unit - target.at(t, i);
            s += diff * diff;
        }
    }
    return s;
}

std::int64_t ScripChain::agents_below_threshold() const {
    std::int64_t s = 0;
    for (const auto& bucket : open_agents_) s += static_cast<std::int64_t>(bucket.size());
    return s;
}

double ScripChain::excess_fraction() const {
    const std::int64_t excess =
        std::accumulate(excess_counts_.begin(), excess_counts_.end(), std::int64_t{0});
    return static_cast<double>(excess) / static_cast<double>(spec_.total_agents());
}

TraceSummary run_trace(ScripChain& chain, std::int64_t rounds, std::int64_t cadence,
                       const MoneyDistribution& reference, double epsilon_sq,
                       const TraceObserver& observer, bool stop_at_epsilon) {
    if (rounds < 0) throw SpecError("rounds must be nonnegative");
    if (cadence < 1) throw SpecError("cadence must be >= 1");

    TraceSummary summary;
    summary.rounds = rounds;
    summary.epsilon_sq = epsilon_sq;
    double dist_accum = 0;

    double dist = chain.distance_l2sq_to(reference);
    std::int64_t volunteers = 0;
    const auto record = [&](std::int64_t r) {
        summary.max_distance_sq = std::max(summary.max_distance_sq, dist);
        if (!summary.reached_epsilon && dist < epsilon_sq) {
            summary.reached_epsilon = true;
            summary.first_round_within_epsilon = r;
        }
        summary.frozen_seen = summary.frozen_seen || chain.frozen();
        if (r % cadence == 0 || r == rounds) {
            ++summary.observations;
            dist_accum += dist;
            if (observer) observer(r, dist, volunteers, chain.frozen());
        }
    };

    record(0);
    for (std::int64_t r = 1; r <= rounds && !(stop_at_epsilon && summary.reached_epsilon); ++r) {
        const RoundOutcome outcome = chain.step();
        volunteers = outcome.volunteers;
        dist = chain.distance_l2sq_to(reference);
        record(r);
    }
    summary.final_distance_sq = dist;
    summary.mean_distance_sq =
        summary.observations > 0 ? dist_accum / static_cast<double>(summary.observations) : 0.0;
    return summary;
}

TraceSummary simulate(const GameSpec& spec, const ThresholdVector& k, std::int64_t rounds,
                      CounterRng rng, std::int64_t cadence, double epsilon_sq,
                      const TraceObserver& observer) {
    const MoneyDistribution target = min_relent_distribution(spec, k);
    ScripChain chain(spec, k, rng);
    return run_trace(chain, rounds, cadence, target, epsilon_sq, observer);
}

namespace {

// Enumeration and indexing of all wealth vectors with per-agent caps and a
// fixed total.
struct StateSpace {
    std::vector<std::vector<std::int32_t>> states;
    std::unordered_map<std::uint64_t, std::int32_t> index;
    std::vector<std::int32_t> caps;

    std::uint64_t key(const std::vector<std::int32_t>& x) const {
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            k = k * static_cast<std::uint64_t>(caps[i] + 1) + static_cast<std::uint64_t>(x[i]);
        return k;
    }
};

void enumerate_states(StateSpace& space, std::vector<std::int32_t>& cur, std::size_t pos,
                      std::int64_t remaining, const std::vector<std::int64_t>& tail_capacity,
                      std::size_t cap) {
    if (pos == cur.size()) {
        space.index.emplace(space.key(cur), static_cast<std::int32_t>(space.states.size()));
        space.states.push_back(cur);
        if (space.states.size() > cap)
            throw SpecError("stationary state space exceeds cap of " + std::to_string(cap));
        return;
    }
    const std::int64_t lo =
        std::max<std::int64_t>(0, remaining - tail_capacity[pos + 1]);
    const std::int64_t hi = std::min<std::int64_t>(space.caps[pos], remaining);
    for (std::int64_t v = lo; v <= hi; ++v) {
        cur[pos] = static_cast<std::int32_t>(v);
        enumerate_states(space, cur, pos + 1, remaining - v, tail_capacity, cap);
    }
}

}  // namespace

StationaryReport exact_stationary(const GameSpec& spec, const ThresholdVector& k,
                                  std::size_t state_cap) {
    require_valid_thresholds(spec, k);
    const std::int64_t agents = spec.total_agents();
    if (agents < 3) throw SpecError("stationary analysis requires at least 3 agents");
    if (agents > 20) throw SpecError("stationary analysis supports at most 20 agents");
    if (!money_below_capacity(spec, k))
        throw SpecError("money supply at or above capacity; trade would freeze");

    StateSpace space;
    space.caps.resize(static_cast<std::size_t>(agents));
    double key_bits = 0;
    for (std::int64_t i = 0; i < agents; ++i) {
        space.caps[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(k[spec.type_of_agent(i)]);
        key_bits += std::log2(static_cast<double>(k[spec.type_of_agent(i)]) + 1.0);
    }
    if (key_bits >= 63.0)
        throw SpecError("state space too wide to index; lower the thresholds or population");
    std::vector<std::int64_t> tail_capacity(static_cast<std::size_t>(agents) + 1, 0);
    for (std::int64_t i = agents - 1; i >= 0; --i)
        tail_capacity[static_cast<std::size_t>(i)] =
            tail_capacity[static_cast<std::size_t>(i) + 1] + space.caps[static_cast<std::size_t>(i)];
    std::vector<std::int32_t> cur(static_cast<std::size_t>(agents));
    enumerate_states(space, cur, 0, spec.total_money(), tail_capacity, state_cap);

    const std::size_t num_states = space.states.size();
    StationaryReport report;
    report.states = space.states;

    // Closed-form candidate, normalized in log space.
    std::vector<double> log_omega(static_cast<std::size_t>(agents));
    for (std::int64_t i = 0; i < agents; ++i)
        log_omega[static_cast<std::size_t>(i)] = std::log(spec.type(spec.type_of_agent(i)).omega());
    std::vector<double> log_weight(num_states);
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < num_states; ++s) {
        double lw = 0;
        for (std::int64_t i = 0; i < agents; ++i)
            lw += space.states[s][static_cast<std::size_t>(i)] * log_omega[static_cast<std::size_t>(i)];
        log_weight[s] = lw;
        max_log = std::max(max_log, lw);
    }
    double z = 0;
    for (double lw : log_weight) z += std::exp(lw - max_log);
    report.pi_closed_form.resize(num_states);
    for (std::size_t s = 0; s < num_states; ++s)
        report.pi_closed_form[s] = std::exp(log_weight[s] - max_log) / z;

    // Exact one-round transition matrix. Capability subsets are enumerated
    // exactly, so chi-weighted winner odds carry no sampling error.
    std::vector<std::vector<std::pair<std::int32_t, double>>> rows(num_states);
    std::vector<double> self_loop(num_states, 0.0);
    const double inv_agents = 1.0 / static_cast<double>(agents);
    std::vector<std::int64_t> eligible;
    for (std::size_t s = 0; s < num_states; ++s) {
        const auto& x = space.states[s];
        std::unordered_map<std::int32_t, double> row;
        for (std::int64_t r = 0; r < agents; ++r) {
            const double p_req = spec.type(spec.type_of_agent(r)).rho * inv_agents;
            if (x[static_cast<std::size_t>(r)] == 0) {
                self_loop[s] += p_req;
                continue;
            }
            eligible.clear();
            for (std::int64_t j = 0; j < agents; ++j)
                if (j != r && x[static_cast<std::size_t>(j)] < space.caps[static_cast<std::size_t>(j)])
                    eligible.push_back(j);
            if (eligible.empty()) {
                self_loop[s] += p_req;
                continue;
            }
            const std::size_t ne = eligible.size();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ne); ++mask) {
                double p_set = 1.0;
                double chi_sum = 0;
                for (std::size_t b = 0; b < ne; ++b) {
                    const auto& type = spec.type(spec.type_of_agent(eligible[b]));
                    if (mask & (std::uint64_t{1} << b)) {
                        p_set *= type.beta;
                        chi_sum += type.chi;
                    } else {
                        p_set *= 1.0 - type.beta;
                    }
                }
                if (p_set == 0) continue;
                if (mask == 0) {
                    self_loop[s] += p_req * p_set;
                    continue;
                }
                for (std::size_t b = 0; b < ne; ++b) {
                    if (!(mask & (std::uint64_t{1} << b))) continue;
                    const std::int64_t w = eligible[b];
                    auto y = x;
                    --y[static_cast<std::size_t>(r)];
                    ++y[static_cast<std::size_t>(w)];
                    const std::int32_t target = space.index.at(space.key(y));
                    row[target] +=
                        p_req * p_set * spec.type(spec.type_of_agent(w)).chi / chi_sum;
                }
            }
        }
        rows[s].assign(row.begin(), row.end());
        std::sort(rows[s].begin(), rows[s].end());
        report.transitions += rows[s].size();
    }

    // Connectivity and period of the transition graph.
    {
        std::vector<std::int32_t> dist(num_states, -1);
        std::vector<std::int32_t> queue;
        queue.push_back(0);
        dist[0] = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const std::int32_t u = queue[static_cast<std::size_t>(qi)];
            for (const auto& [v, p] : rows[static_cast<std::size_t>(u)])
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(v);
                }
        }
        bool all_reached = queue.size() == num_states;
        // Reverse reachability: every state must also reach state 0.
        std::vector<std::vector<std::int32_t>> rev(num_states);
        for (std::size_t s = 0; s < num_states; ++s)
            for (const auto& [v, p] : rows[s]) rev[static_cast<std::size_t>(v)].push_back(static_cast<std::int32_t>(s));
        std::vector<char> back(num_states, 0);
        std::vector<std::int32_t> rq{0};
        back[0] = 1;
        for (std::size_t qi = 0; qi < rq.size(); ++qi)
            for (std::int32_t u : rev[static_cast<std::size_t>(rq[qi])])
                if (!back[static_cast<std::size_t>(u)]) {
                    back[static_cast<std::size_t>(u)] = 1;
                    rq.push_back(u);
                }
        all_reached = all_reached && rq.size() == num_states;
        report.irreducible = all_reached;
        if (!report.irreducible)
            throw NumericError("transition chain is not irreducible; stationary analysis invalid");

        std::int64_t g = 0;
        for (std::size_t s = 0; s < num_states; ++s) {
            if (self_loop[s] > 0) g = std::gcd(g, std::int64_t{1});
            for (const auto& [v, p] : rows[s])
                g = std::gcd(g, static_cast<std::int64_t>(dist[s]) + 1 -
                                    static_cast<std::int64_t>(dist[static_cast<std::size_t>(v)]));
        }
        report.aperiodic = g == 1;
    }

    // Stationary vector of the explicit matrix: dense solve for small spaces,
    // power iteration otherwise.
    report.pi_solved.assign(num_states, 1.0 / static_cast<double>(num_states));
    if (num_states <= 600) {
        const std::size_t n = num_states;
        std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
        for (std::size_t s = 0; s < n; ++s) {
            a[s][s] += self_loop[s] - 1.0;
            for (const auto& [v, p] : rows[s]) a[static_cast<std::size_t>(v)][s] += p;
        }
        for (std::size_t c = 0; c < n; ++c) a[n - 1][c] = 1.0;
        a[n - 1][n] = 1.0;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t pivot = c;
            for (std::size_t r = c + 1; r < n; ++r)
                if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
            std::swap(a[c], a[pivot]);
            if (std::abs(a[c][c]) < 1e-300)
                throw NumericError("singular stationary system");
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c) continue;
                const double f = a[r][c] / a[c][c];
                if (f == 0) continue;
                for (std::size_t cc = c; cc <= n; ++cc) a[r][cc] -= f * a[c][cc];
            }
        }
        for (std::size_t s = 0; s < n; ++s) report.pi_solved[s] = a[s][n] / a[s][s];
    } else {
        std::vector<double> next(num_states, 0.0);
        double change = 1.0;
        for (int iter = 0; iter < 2000000 && change > 1e-14; ++iter) {
            std::fill(next.begin(), next.end(), 0.0);
            for (std::size_t s = 0; s < num_states; ++s) {
                next[s] += report.pi_solved[s] * self_loop[s];
                for (const auto& [v, p] : rows[s])
                    next[static_cast<std::size_t>(v)] += report.pi_solved[s] * p;
            }
            change = 0;
            for (std::size_t s = 0; s < num_states; ++s)
                change = std::max(change, std::abs(next[s] - report.pi_solved[s]));
            report.pi_solved.swap(next);
        }
        if (change > 1e-14)
            throw NumericError("stationary power iteration did not converge");
    }

    for (std::size_t s = 0; s < num_states; ++s)
        report.linf_diff =
            std::max(report.linf_diff, std::abs(report.pi_solved[s] - report.pi_closed_form[s]));
    report.mismatch = report.linf_diff > 1e-8;

    // Pairwise detailed balance under the closed-form candidate.
    for (std::size_t s = 0; s < num_states; ++s)
        for (const auto& [v, p] : rows[s]) {
            if (static_cast<std::size_t>(v) == s) continue;
            double back = 0;
            for (const auto& [u, q] : rows[static_cast<std::size_t>(v)])
                if (static_cast<std::size_t>(u) == s) {
                    back = q;
                    break;
                }
            const double gap =
                std::abs(report.pi_closed_form[s] * p - report.pi_closed_form[static_cast<std::size_t>(v)] * back);
            report.max_detailed_balance_gap = std::max(report.max_detailed_balance_gap, gap);
        }

    report.transition_rows = std::move(rows);
    report.self_loops = std::move(self_loop);
    return report;
}

}  // namespace scrip
