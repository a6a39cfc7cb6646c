#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "netgame/model.hpp"

namespace netgame {

enum class UpdateOrder { round_robin, uniform_random };

// a newcomer and what it hosts the moment it joins; its events must carry the
// id it will be assigned (= community size at the time it joins)
struct Arrival {
  int round = 1;  // joins right before this round's pass
  Strategy initial;
};

struct DynamicsPolicy {
  UpdateOrder order = UpdateOrder::round_robin;
  int max_rounds = 1;
  std::uint64_t seed = 0;  // consumed only by uniform_random ordering
  std::vector<Arrival> arrivals;
};

struct StepRecord {
  int round = 0;
  AgentId agent = 0;
  InfinitesimalUtility old_utility;
  InfinitesimalUtility new_utility;
  std::vector<std::pair<AgentId, AgentId>> edges_added;    // u < v, sorted
  std::vector<std::pair<AgentId, AgentId>> edges_removed;  // u < v, sorted
};

enum class DynamicsStatus { converged, round_limit };

struct Trace {
  std::vector<StepRecord> steps;  // only turns that replaced a strategy
  std::vector<std::pair<int, AgentId>> arrivals_joined;  // (round, new id)
  int rounds = 0;
  DynamicsStatus status = DynamicsStatus::round_limit;
};

struct DynamicsResult {
  EventConfiguration config;
  Trace trace;
};

// One-agent-at-a-time best-response updates. Each round gives every agent one
// turn — in id order, or in a fresh random permutation per round. A strategy
// is replaced only when the best response is strictly better, so a round with
// zero replacements certifies that nobody can improve and the run reports
// "converged". Arrivals join right before their round starts, and convergence
// is never declared while arrivals are still pending. Whether the dynamics
// converge at all is an open question; the trace reports, it never promises.
DynamicsResult run_dynamics(const EventConfiguration& config, const DynamicsPolicy& policy);

}  // namespace netgame
