#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netgame/rational.hpp"

namespace netgame {

using AgentId = int;

// one hosted gathering: the host attends implicitly, invitees exclude it
struct Event {
  AgentId host = 0;
  std::vector<AgentId> invitees;  // sorted, unique, never contains host
  Rational rate;                  // > 0
};

// everything an agent hosts
using Strategy = std::vector<Event>;

// the per-event fee: either a concrete rational or "arbitrarily small
// positive" (eps), which the utility order treats lexicographically
struct BCost {
  bool is_eps = true;
  Rational value;  // meaningful only when !is_eps; >= 0

  static BCost eps() { return BCost{true, Rational(0)}; }
  static BCost concrete(Rational v) { return BCost{false, std::move(v)}; }
};

struct Parameters {
  Rational a;  // benefit per connection, > 0
  BCost b;     // fee per unit event rate
  Rational c;  // cost per invitee per unit rate, > 0
  int n = 0;   // community size

  Rational gamma() const { return a / c; }
};

// throws DomainError unless a, c > 0, concrete b >= 0, n >= 1
void validate_parameters(const Parameters& p);

struct EventConfiguration {
  Parameters params;
  std::vector<Strategy> strategies;  // indexed by host id, size n
};

// throws DomainError on out-of-range ids, host-in-invitees, duplicate or
// empty invitee lists, non-positive rates, strategies.size() != n
void validate_configuration(const EventConfiguration& config);

// value of the form main + b * b_coeff, kept split so the b -> 0+ regime
// stays exact: compare main first, then b_coeff (bigger is better in both)
struct InfinitesimalUtility {
  Rational main;
  Rational b_coeff;

  bool operator==(const InfinitesimalUtility& o) const {
    return main == o.main && b_coeff == o.b_coeff;
  }
};

// -1 / 0 / +1 as x is worse / equal / better than y for the agent
int compare_utility(const InfinitesimalUtility& x, const InfinitesimalUtility& y,
                    const BCost& b);

// rate at which u and v meet at events hosted by w (host counts as present)
Rational meeting_rate_by(const EventConfiguration& config, AgentId w, AgentId u,
                         AgentId v);

// total over all hosts
Rational meeting_rate(const EventConfiguration& config, AgentId u, AgentId v);

struct ConnectionGraph {
  int n = 0;
  // only pairs that co-attend something; key packs (min,max)
  std::unordered_map<std::uint64_t, Rational> meeting_rates;
  std::vector<std::pair<AgentId, AgentId>> edges;  // u < v, sorted
  std::vector<std::vector<AgentId>> adj;           // sorted neighbor lists

  static std::uint64_t pair_key(AgentId u, AgentId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }
  const Rational* rate_of(AgentId u, AgentId v) const {
    auto it = meeting_rates.find(pair_key(u, v));
    return it == meeting_rates.end() ? nullptr : &it->second;
  }
  bool has_edge(AgentId u, AgentId v) const;
  std::vector<int> degrees() const;
};

// edges exactly where the accumulated meeting rate reaches 1 (inclusive)
ConnectionGraph connection_graph(const EventConfiguration& config);

// hosting cost of a strategy: (c * sum r_i * |invitees_i|, sum r_i);
// caller combines with the fee as main + b * b_coeff
InfinitesimalUtility cost(const Parameters& params, const Strategy& strategy);

// a * |N_v| - cost; b_coeff comes out negated (fees hurt)
InfinitesimalUtility utility(const EventConfiguration& config, AgentId v);

// same, reusing a precomputed graph of the identical configuration
InfinitesimalUtility utility(const EventConfiguration& config,
                             const ConnectionGraph& graph, AgentId v);

// events each agent attends without hosting: index into (host, event index)
using AttendanceIndex = std::vector<std::vector<std::pair<AgentId, int>>>;
AttendanceIndex attendance_index(const EventConfiguration& config);

}  // namespace netgame
