#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netgame/model.hpp"

namespace netgame {

// E_{v,u} = 1 - (meeting rate of v,u supplied by hosts other than v):
// the rate v itself would have to supply to reach the connection threshold.
// Sparse: pairs with no foreign co-attendance sit at the default 1.
struct DeficitMap {
  AgentId agent = 0;
  std::unordered_map<AgentId, Rational> known;

  Rational at(AgentId u) const {
    auto it = known.find(u);
    return it == known.end() ? Rational(1) : it->second;
  }
};

DeficitMap deficits(const EventConfiguration& config, AgentId v);
DeficitMap deficits(const EventConfiguration& config, const AttendanceIndex& idx,
                    AgentId v);

struct ResponseSets {
  std::vector<AgentId> targets;  // 0 < E < gamma, sorted by (E asc, id asc)
  std::vector<AgentId> invited;  // v supplies positive rate, sorted by id
  std::vector<AgentId> free;     // E <= 0, sorted by id
};

ResponseSets response_sets(const EventConfiguration& config, AgentId v);

// cheapest strategy meeting each target rate exactly: sort targets by rate
// descending and host one event per distinct level on the growing prefix
Strategy realize_nested(const std::vector<std::pair<AgentId, Rational>>& targets,
                        AgentId v);

// cost of that realization without building it: (c * sum, max)
InfinitesimalUtility realization_cost(
    const Parameters& params,
    const std::vector<std::pair<AgentId, Rational>>& targets);

struct BestResponse {
  std::vector<std::pair<AgentId, Rational>> target_rates;  // sorted by id
  Strategy strategy;
  InfinitesimalUtility utility;  // of v playing this against the rest
};

// utility-maximal reply for v with everyone else fixed. Candidates are the
// agents with deficit in (0, gamma) sorted by (deficit, id); an optimal
// invite set is always a prefix of that order, so a linear scan suffices
// (cross-checked against exhaustive subset search in the tests).
BestResponse best_response(const EventConfiguration& config, AgentId v);
BestResponse best_response(const EventConfiguration& config,
                           const AttendanceIndex& idx, AgentId v);

struct Violation {
  AgentId agent = 0;
  std::string condition;  // subset | rate-match | ordering | profitable-deviation
  std::pair<int, int> witness{-1, -1};
  std::string detail;
};

struct StabilityReport {
  bool stable = true;
  std::vector<Violation> violations;
};

/// the closed-form test: for every v, (i) invitees lie in the affordable set,
// (ii) supplied rates match deficits exactly, (iii) every invited deficit is
// strictly below every affordable-but-uninvited deficit. Only meaningful in
// the eps-fee regime; concrete b raises UnsupportedRegimeError (use the
// deviation check instead, it is the authoritative one for any b).
StabilityReport check_stability_criterion(const EventConfiguration& config);

/// ground truth: no agent can strictly improve by unilaterally switching to
// its best response (lexicographic comparison under the eps fee)
StabilityReport check_stability_deviation(const EventConfiguration& config);

}  // namespace netgame
