#include "netgame/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "netgame/errors.hpp"

namespace netgame {

void validate_parameters(const Parameters& p) {
  if (p.a.sign() <= 0) throw DomainError("parameter a must be positive");
  if (p.c.sign() <= 0) throw DomainError("parameter c must be positive");
  if (!p.b.is_eps && p.b.value.sign() < 0)
    throw DomainError("parameter b must be non-negative");
  if (p.n < 1) throw DomainError("community size n must be >= 1");
}

void validate_configuration(const EventConfiguration& config) {
  validate_parameters(config.params);
  const int n = config.params.n;
  if (static_cast<int>(config.strategies.size()) != n)
    throw DomainError("strategies list must have exactly n entries");
  for (AgentId host = 0; host < n; ++host) {
    for (const Event& ev : config.strategies[host]) {
      if (ev.host != host)
        throw DomainError("event host mismatch at agent " + std::to_string(host));
      if (ev.invitees.empty())
        throw DomainError("empty invitee list (agent " + std::to_string(host) + ")");
      if (ev.rate.sign() <= 0)
        throw DomainError("event rate must be positive (agent " +
                          std::to_string(host) + ")");
      AgentId prev = -1;
      for (AgentId u : ev.invitees) {
        if (u < 0 || u >= n)
          throw DomainError("invitee id out of range: " + std::to_string(u));
        if (u == host)
          throw DomainError("host " + std::to_string(host) +
                            " listed among its own invitees");
        if (u <= prev)
          throw DomainError("invitees must be sorted and unique (agent " +
                            std::to_string(host) + ")");
        prev = u;
      }
    }
  }
}

int compare_utility(const InfinitesimalUtility& x, const InfinitesimalUtility& y,
                    const BCost& b) {
  if (b.is_eps) {
    if (x.main != y.main) return x.main < y.main ? -1 : 1;
    if (x.b_coeff != y.b_coeff) return x.b_coeff < y.b_coeff ? -1 : 1;
    return 0;
  }
  Rational xv = x.main + b.value * x.b_coeff;
  Rational yv = y.main + b.value * y.b_coeff;
  if (xv != yv) return xv < yv ? -1 : 1;
  return 0;
}

namespace {

bool event_has(const Event& ev, AgentId x) {
  if (ev.host == x) return true;
  return std::binary_search(ev.invitees.begin(), ev.invitees.end(), x);
}

}  // namespace

Rational meeting_rate_by(const EventConfiguration& config, AgentId w, AgentId u,
                         AgentId v) {
  if (u == v) throw std::invalid_argument("meeting rate needs two distinct agents");
  Rational total;
  for (const Event& ev : config.strategies[w])
    if (event_has(ev, u) && event_has(ev, v)) total += ev.rate;
  return total;
}

Rational meeting_rate(const EventConfiguration& config, AgentId u, AgentId v) {
  if (u == v) throw std::invalid_argument("meeting rate needs two distinct agents");
  Rational total;
  for (AgentId w = 0; w < config.params.n; ++w)
    total += meeting_rate_by(config, w, u, v);
  return total;
}

bool ConnectionGraph::has_edge(AgentId u, AgentId v) const {
  if (u == v) return false;
  const auto& nu = adj[u];
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<int> ConnectionGraph::degrees() const {
  std::vector<int> d(n);
  for (int v = 0; v < n; ++v) d[v] = static_cast<int>(adj[v].size());
  return d;
}

ConnectionGraph connection_graph(const EventConfiguration& config) {
  ConnectionGraph g;
  g.n = config.params.n;
  g.adj.resize(g.n);
  std::vector<AgentId> attendees;
  for (const Strategy& strat : config.strategies) {
    for (const Event& ev : strat) {
      attendees.clear();
      attendees.push_back(ev.host);
      attendees.insert(attendees.end(), ev.invitees.begin(), ev.invitees.end());
      for (std::size_t i = 0; i < attendees.size(); ++i)
        for (std::size_t j = i + 1; j < attendees.size(); ++j)
          g.meeting_rates[ConnectionGraph::pair_key(attendees[i], attendees[j])] +=
              ev.rate;
    }
  }
  const Rational one(1);
  for (const auto& [key, rate] : g.meeting_rates) {
    if (rate >= one) {
      AgentId u = static_cast<AgentId>(key >> 32);
      AgentId v = static_cast<AgentId>(key & 0xffffffffu);
      g.edges.emplace_back(u, v);
      g.adj[u].push_back(v);
      g.adj[v].push_back(u);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

InfinitesimalUtility cost(const Parameters& params, const Strategy& strategy) {
  InfinitesimalUtility out;
  for (const Event& ev : strategy) {
    out.main += params.c * ev.rate * Rational(static_cast<long>(ev.invitees.size()));
    out.b_coeff += ev.rate;
  }
  return out;
}

InfinitesimalUtility utility(const EventConfiguration& config,
                             const ConnectionGraph& graph, AgentId v) {
  InfinitesimalUtility c = cost(config.params, config.strategies[v]);
  Rational benefit =
      config.params.a * Rational(static_cast<long>(graph.adj[v].size()));
  return InfinitesimalUtility{benefit - c.main, -c.b_coeff};
}

InfinitesimalUtility utility(const EventConfiguration& config, AgentId v) {
  return utility(config, connection_graph(config), v);
}

AttendanceIndex attendance_index(const EventConfiguration& config) {
  AttendanceIndex idx(config.params.n);
  for (AgentId host = 0; host < config.params.n; ++host) {
    const Strategy& strat = config.strategies[host];
    for (int i = 0; i < static_cast<int>(strat.size()); ++i)
      for (AgentId u : strat[i].invitees) idx[u].emplace_back(host, i);
  }
  return idx;
}

}  // namespace netgame
