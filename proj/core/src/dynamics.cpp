#include "netgame/dynamics.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "netgame/errors.hpp"
#include "netgame/rng.hpp"
#include "netgame/stability.hpp"

namespace netgame {
namespace {

// both inputs sorted; returns from \ to
std::vector<std::pair<AgentId, AgentId>> edge_diff(
    const std::vector<std::pair<AgentId, AgentId>>& from,
    const std::vector<std::pair<AgentId, AgentId>>& to) {
  std::vector<std::pair<AgentId, AgentId>> out;
  std::set_difference(from.begin(), from.end(), to.begin(), to.end(),
                      std::back_inserter(out));
  return out;
}

}  // namespace

DynamicsResult run_dynamics(const EventConfiguration& config, const DynamicsPolicy& policy) {
  if (policy.max_rounds < 1) throw DomainError("max_rounds must be at least 1");
  DynamicsResult out;
  out.config = config;
  validate_configuration(out.config);
  Rng rng(policy.seed);

  std::vector<Arrival> pending = policy.arrivals;
  std::stable_sort(pending.begin(), pending.end(),
                   [](const Arrival& x, const Arrival& y) { return x.round < y.round; });
  std::size_t next_arrival = 0;

  for (int round = 1; round <= policy.max_rounds; ++round) {
    while (next_arrival < pending.size() && pending[next_arrival].round <= round) {
      const Arrival& a = pending[next_arrival];
      const AgentId id = out.config.params.n;
      for (const Event& e : a.initial) {
        if (e.host != id)
          throw DomainError("arrival strategy must be hosted by the joining agent, id " +
                            std::to_string(id));
      }
      out.config.params.n = id + 1;
      out.config.strategies.push_back(a.initial);
      validate_configuration(out.config);
      out.trace.arrivals_joined.emplace_back(round, id);
      ++next_arrival;
    }

    const int n = out.config.params.n;
    std::vector<AgentId> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    if (policy.order == UpdateOrder::uniform_random) rng.shuffle(order);

    bool changed = false;
    AttendanceIndex index = attendance_index(out.config);
    ConnectionGraph graph = connection_graph(out.config);
    for (AgentId v : order) {
      BestResponse br = best_response(out.config, index, v);
      InfinitesimalUtility current = utility(out.config, graph, v);
      if (compare_utility(br.utility, current, out.config.params.b) <= 0) continue;

      StepRecord rec;
      rec.round = round;
      rec.agent = v;
      rec.old_utility = current;
      rec.new_utility = br.utility;
      out.config.strategies[v] = std::move(br.strategy);
      ConnectionGraph after = connection_graph(out.config);
      rec.edges_added = edge_diff(after.edges, graph.edges);
      rec.edges_removed = edge_diff(graph.edges, after.edges);
      out.trace.steps.push_back(std::move(rec));
      graph = std::move(after);
      index = attendance_index(out.config);
      changed = true;
    }

    out.trace.rounds = round;
    if (!changed && next_arrival >= pending.size()) {
      out.trace.status = DynamicsStatus::converged;
      return out;
    }
  }
  out.trace.status = DynamicsStatus::round_limit;
  return out;
}

}  // namespace netgame
