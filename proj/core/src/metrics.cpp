#include "netgame/metrics.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "netgame/errors.hpp"

namespace netgame {

std::vector<long> triangle_counts(const ConnectionGraph& g) {
  std::vector<long> t(g.n, 0);
  // count each triangle once at its smallest vertex, then credit all three
  for (int v = 0; v < g.n; ++v) {
    const auto& nv = g.adj[v];
    for (std::size_t i = 0; i < nv.size(); ++i) {
      if (nv[i] < v) continue;
      for (std::size_t j = i + 1; j < nv.size(); ++j) {
        if (nv[j] < v) continue;
        if (g.has_edge(nv[i], nv[j])) {
          ++t[v];
          ++t[nv[i]];
          ++t[nv[j]];
        }
      }
    }
  }
  return t;
}

Rational clustering_coefficient(const ConnectionGraph& g) {
  auto tri = triangle_counts(g);
  Rational sum;
  long eligible = 0;
  for (int v = 0; v < g.n; ++v) {
    long d = static_cast<long>(g.adj[v].size());
    if (d < 2) continue;
    ++eligible;
    sum += Rational(tri[v]) / Rational(d * (d - 1) / 2);
  }
  if (eligible == 0) return Rational(0);
  return sum / Rational(eligible);
}

std::vector<std::pair<AgentId, AgentId>> local_bridges(const ConnectionGraph& g) {
  std::vector<std::pair<AgentId, AgentId>> out;
  for (auto [u, v] : g.edges) {
    const auto& nu = g.adj[u];
    const auto& nv = g.adj[v];
    bool shared = false;
    std::size_t i = 0, j = 0;
    while (i < nu.size() && j < nv.size()) {
      if (nu[i] == nv[j]) { shared = true; break; }
      if (nu[i] < nv[j]) ++i; else ++j;
    }
    if (!shared) out.emplace_back(u, v);
  }
  return out;
}

bool strong_subgraph_check(const ConnectionGraph& g,
                           const std::vector<AgentId>& h_vertices) {
  std::set<AgentId> h;
  for (AgentId v : h_vertices) {
    if (v < 0 || v >= g.n)
      throw DomainError("unknown vertex " + std::to_string(v));
    h.insert(v);
  }
  for (AgentId u : h) {
    for (AgentId v : h) {
      if (u >= v) continue;
      const auto& nu = g.adj[u];
      const auto& nv = g.adj[v];
      std::size_t i = 0, j = 0;
      while (i < nu.size() && j < nv.size()) {
        if (nu[i] == nv[j]) {
          if (!h.count(nu[i])) return false;
          ++i; ++j;
        } else if (nu[i] < nv[j]) ++i; else ++j;
      }
    }
  }
  return true;
}

bool is_connected(const ConnectionGraph& g) {
  if (g.n <= 1) return true;
  std::vector<char> seen(g.n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u : g.adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        queue.push_back(u);
      }
    }
  }
  return reached == g.n;
}

std::optional<int> girth(const ConnectionGraph& g) {
  // BFS from each vertex; a cycle through the root shows up as an edge
  // between two reached vertices whose depths certify a closed walk
  int best = std::numeric_limits<int>::max();
  std::vector<int> depth(g.n), parent(g.n);
  for (int root = 0; root < g.n; ++root) {
    std::fill(depth.begin(), depth.end(), -1);
    std::deque<int> queue{root};
    depth[root] = 0;
    parent[root] = -1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (2 * depth[v] >= best) break;  // deeper layers can't improve
      for (int u : g.adj[v]) {
        if (u == parent[v]) continue;
        if (depth[u] == -1) {
          depth[u] = depth[v] + 1;
          parent[u] = v;
          queue.push_back(u);
        } else if (depth[u] >= depth[v]) {
          // non-tree edge: cycle through the BFS tree of length <= sum+1
          best = std::min(best, depth[u] + depth[v] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

GraphStats graph_stats(const ConnectionGraph& g) {
  GraphStats s;
  s.n = g.n;
  s.edge_count = static_cast<int>(g.edges.size());
  s.degree_sequence = g.degrees();
  s.average_degree = g.n > 0
                         ? Rational(2 * static_cast<long>(s.edge_count)) / Rational(g.n)
                         : Rational(0);
  long w = 0, wdeg = 0;
  for (int d : s.degree_sequence)
    if (d >= 2) { ++w; wdeg += d; }
  s.average_degree_over_w = w > 0 ? Rational(wdeg) / Rational(w) : Rational(0);
  s.clustering = clustering_coefficient(g);
  s.triangle_counts = triangle_counts(g);
  s.local_bridges = local_bridges(g);
  s.girth = girth(g);
  s.connected = is_connected(g);
  return s;
}

ClusteringBoundResult verify_clustering_bound(const ConnectionGraph& g) {
  if (!is_connected(g)) throw DomainError("clustering bound needs a connected graph");
  ClusteringBoundResult out;
  Rational e = clustering_coefficient(g);
  long min_deg = g.n > 0 ? std::numeric_limits<long>::max() : 0;
  long eligible = 0;
  for (int v = 0; v < g.n; ++v) {
    long d = static_cast<long>(g.adj[v].size());
    min_deg = std::min(min_deg, d);
    if (d >= 2) ++eligible;
  }
  Rational dbar = g.n > 0
                      ? Rational(2 * static_cast<long>(g.edges.size())) / Rational(g.n)
                      : Rational(0);

  out.base.lhs = e;
  if (eligible == 0 || dbar.sign() == 0) {
    out.base.vacuous = true;
    out.base.holds = true;
    out.base.note = "no vertex of degree >= 2; nothing to assert";
  } else {
    out.base.rhs = Rational(1) / (Rational(2) * dbar);
    out.base.holds = e >= out.base.rhs;
  }

  out.min_degree_two.lhs = e;
  if (min_deg >= 2 && dbar.sign() > 0) {
    out.min_degree_two.rhs = Rational(1) / dbar;
    out.min_degree_two.holds = e >= out.min_degree_two.rhs;
  } else {
    out.min_degree_two.vacuous = true;
    out.min_degree_two.holds = true;
    out.min_degree_two.note = "min degree below 2; sharper bound not applicable";
  }
  return out;
}

int max_invited(const EventConfiguration& config) {
  int worst = 0;
  for (const Strategy& strat : config.strategies) {
    std::set<AgentId> inv;
    for (const Event& ev : strat) inv.insert(ev.invitees.begin(), ev.invitees.end());
    worst = std::max(worst, static_cast<int>(inv.size()));
  }
  return worst;
}

BoundCheck verify_k_supportable_degree_bound(const EventConfiguration& config,
                                             int K) {
  for (AgentId v = 0; v < config.params.n; ++v) {
    std::set<AgentId> inv;
    for (const Event& ev : config.strategies[v])
      inv.insert(ev.invitees.begin(), ev.invitees.end());
    if (static_cast<int>(inv.size()) > K)
      throw DomainError("agent " + std::to_string(v) + " invites " +
                        std::to_string(inv.size()) + " people, exceeding K=" +
                        std::to_string(K));
  }
  ConnectionGraph g = connection_graph(config);
  BoundCheck out;
  out.lhs = g.n > 0
                ? Rational(2 * static_cast<long>(g.edges.size())) / Rational(g.n)
                : Rational(0);
  out.rhs = config.params.gamma() * Rational(K) * Rational(K + 1);
  out.holds = out.lhs <= out.rhs;
  return out;
}

}  // namespace netgame
