#pragma once

#include "scrip/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace scrip {

// Invalid economy parameters or malformed configuration. CLI maps this to
// exit code 2.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numeric cross-check failed (two routes to the same quantity disagree,
// a policy lost its threshold form, ...). CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameters of one agent class.
struct AgentType {
    double alpha = 0;  // cost of performing a service, utils
    double beta = 0;   // probability of being able to serve a given request
    double gamma = 0;  // utility of getting a request satisfied
    double delta = 0;  // discount factor
    double rho = 0;    // relative request rate
    double chi = 0;    // relative weight when volunteers compete

    // Earning-to-spending propensity; recomputed from the tuple, never stored.
    double omega() const { return beta * chi / rho; }
};

// Per-type volunteering thresholds: an agent of type t volunteers iff it
// holds fewer than k[t] dollars and the requester can pay.
struct ThresholdVector {
    std::vector<int> k;

    int size() const { return static_cast<int>(k.size()); }
    int operator[](int t) const { return k[t]; }
    bool operator==(const ThresholdVector& o) const { return k == o.k; }
};

// Validated economy: a base population of h agents, replicated n times, with
// an average of m dollars per agent. Immutable once built; a
// default-constructed spec is empty and only useful as a slot to assign into.
class GameSpec {
public:
    GameSpec() = default;

    const std::vector<AgentType>& types() const { return types_; }
    const AgentType& type(int t) const { return types_[static_cast<std::size_t>(t)]; }
    int num_types() const { return static_cast<int>(types_.size()); }

    double fraction(int t) const { return fractions_[static_cast<std::size_t>(t)]; }
    const std::vector<double>& fractions() const { return fractions_; }

    std::int64_t h() const { return h_; }
    std::int64_t n() const { return n_; }
    const Rational& m() const { return m_; }
    double m_value() const { return m_.value(); }

    std::int64_t total_agents() const { return h_ * n_; }
    std::int64_t total_money() const { return total_money_; }

    // Agents of the base population carry ids 0..h-1; agent i is a replica of
    // base agent i mod h.
    int type_of_agent(std::int64_t agent) const {
        return base_types_[static_cast<std::size_t>(agent % h_)];
    }
    std::int64_t base_count(int t) const { return base_counts_[static_cast<std::size_t>(t)]; }
    std::int64_t agent_count(int t) const { return base_counts_[static_cast<std::size_t>(t)] * n_; }

    // id of the u-th agent of type t, 0 <= u < agent_count(t).
    std::int64_t agent_of_type(int t, std::int64_t u) const {
        const std::int64_t c = base_count(t);
        return base_offsets_[static_cast<std::size_t>(t)] + u % c + (u / c) * h_;
    }

    // Factor the supplied request rates were multiplied by to make
    // sum_t rho_t f_t = 1. Reported for auditability.
    double rho_scale() const { return rho_scale_; }

    // A spec with identical types/counts but a different replica count.
    GameSpec with_replicas(std::int64_t n) const;

    friend GameSpec build_game_spec(std::vector<AgentType> raw_types,
                                    const std::vector<double>& fractions, std::int64_t h,
                                    const Rational& m, std::int64_t n);

private:
    std::vector<AgentType> types_;
    std::vector<double> fractions_;
    std::vector<std::int64_t> base_counts_;
    std::vector<std::int64_t> base_offsets_;
    std::vector<int> base_types_;
    std::int64_t h_ = 0;
    std::int64_t n_ = 0;
    Rational m_;
    std::int64_t total_money_ = 0;
    double rho_scale_ = 1.0;
};

// Validates every bound, checks the integrality constraints f_t*h and m*h,
// and rescales the request rates so sum_t rho_t f_t = 1. Throws SpecError
// naming the violated invariant.
GameSpec build_game_spec(std::vector<AgentType> raw_types, const std::vector<double>& fractions,
                         std::int64_t h, const Rational& m, std::int64_t n);

// The unique per-round discount rate that keeps an always-satisfied
// requester's total utility independent of the replica count: 1 - (1-delta)/n.
double per_round_discount(double delta, std::int64_t n);

// Strict money-supply condition m < sum_t f_t k_t under which the economy can
// circulate. At or above it everyone saturates and trade freezes.
bool money_below_capacity(const GameSpec& spec, const ThresholdVector& k);

// Thresholds valid for this spec (one nonnegative entry per type).
void require_valid_thresholds(const GameSpec& spec, const ThresholdVector& k);

}  // namespace scrip
