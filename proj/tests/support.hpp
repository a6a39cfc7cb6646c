#pragma once

// Brute-force oracles and small generators shared across the test files.
// Everything here recomputes facts straight from the definitions — triple
// loops, subset enumeration, edge-deletion BFS — so the library's shortcuts
// have something independent to answer to.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "doctest.h"
#include "netgame/model.hpp"
#include "netgame/rng.hpp"
#include "netgame/stability.hpp"

namespace netgame {

// pretty assertion messages
inline doctest::String toString(const Rational& r) {
  return doctest::String(r.str().c_str());
}
inline doctest::String toString(const InfinitesimalUtility& u) {
  const std::string s = u.main.str() + " + b*" + u.b_coeff.str();
  return doctest::String(s.c_str());
}

}  // namespace netgame

namespace oracle {

using namespace netgame;

inline bool attends(const Event& ev, AgentId x) {
  return x == ev.host ||
         std::find(ev.invitees.begin(), ev.invitees.end(), x) != ev.invitees.end();
}

// total rate of events both u and v attend, summed over every host
inline Rational meeting_rate(const EventConfiguration& cfg, AgentId u, AgentId v) {
  Rational total;
  for (AgentId w = 0; w < cfg.params.n; ++w)
    for (const Event& ev : cfg.strategies[w])
      if (attends(ev, u) && attends(ev, v)) total += ev.rate;
  return total;
}

// same sum restricted to hosts other than v — the complement of v's deficit
inline Rational foreign_rate(const EventConfiguration& cfg, AgentId v, AgentId u) {
  Rational total;
  for (AgentId w = 0; w < cfg.params.n; ++w) {
    if (w == v) continue;
    for (const Event& ev : cfg.strategies[w])
      if (attends(ev, u) && attends(ev, v)) total += ev.rate;
  }
  return total;
}

inline InfinitesimalUtility utility(const EventConfiguration& cfg, AgentId v) {
  Rational fee, invite_cost;
  for (const Event& ev : cfg.strategies[v]) {
    fee += ev.rate;
    invite_cost += ev.rate * Rational(static_cast<long>(ev.invitees.size()));
  }
  Rational benefit;
  for (AgentId u = 0; u < cfg.params.n; ++u)
    if (u != v && oracle::meeting_rate(cfg, u, v) >= Rational(1))
      benefit += cfg.params.a;
  return InfinitesimalUtility{benefit - cfg.params.c * invite_cost, -fee};
}

// chain of events hitting each (agent, rate) target exactly: sort by rate
// descending and widen a prefix event at every level drop
inline Strategy nested(std::vector<std::pair<AgentId, Rational>> targets, AgentId v) {
  std::sort(targets.begin(), targets.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return y.second < x.second;
    return x.first < y.first;
  });
  Strategy strat;
  std::vector<AgentId> prefix;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    prefix.push_back(targets[i].first);
    const Rational next = i + 1 < targets.size() ? targets[i + 1].second : Rational(0);
    const Rational r = targets[i].second - next;
    if (r.sign() == 0) continue;
    Event ev;
    ev.host = v;
    ev.invitees = prefix;
    std::sort(ev.invitees.begin(), ev.invitees.end());
    ev.rate = r;
    strat.push_back(std::move(ev));
  }
  return strat;
}

struct BestReply {
  InfinitesimalUtility utility;
  std::vector<AgentId> invited;
};

// every subset of the positive-deficit agents, each met at exactly its
// deficit through a nested chain; full-config utility decides the winner
inline BestReply exhaustive_best_reply(const EventConfiguration& cfg, AgentId v) {
  std::vector<std::pair<AgentId, Rational>> positive;
  for (AgentId u = 0; u < cfg.params.n; ++u) {
    if (u == v) continue;
    const Rational e = Rational(1) - foreign_rate(cfg, v, u);
    if (e.sign() > 0) positive.emplace_back(u, e);
  }
  EventConfiguration work = cfg;
  work.strategies[v].clear();
  BestReply best{oracle::utility(work, v), {}};
  const std::size_t count = positive.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << count); ++mask) {
    std::vector<std::pair<AgentId, Rational>> chosen;
    for (std::size_t i = 0; i < count; ++i)
      if (mask & (std::uint64_t{1} << i)) chosen.push_back(positive[i]);
    work.strategies[v] = nested(chosen, v);
    const InfinitesimalUtility u = oracle::utility(work, v);
    if (compare_utility(u, best.utility, cfg.params.b) > 0) {
      best.utility = u;
      best.invited.clear();
      for (const auto& [id, r] : chosen) best.invited.push_back(id);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// graph facts recomputed the slow way

// adjacency-matrix graph assembled by hand, every edge at meeting rate 1
inline ConnectionGraph graph_of(int n, const std::vector<std::pair<int, int>>& edges) {
  ConnectionGraph g;
  g.n = n;
  g.adj.resize(n);
  for (auto [u, v] : edges) {
    if (u > v) std::swap(u, v);
    g.edges.emplace_back(u, v);
    g.meeting_rates[ConnectionGraph::pair_key(u, v)] = Rational(1);
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  std::sort(g.edges.begin(), g.edges.end());
  for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

inline std::vector<long> triangles(const ConnectionGraph& g) {
  std::vector<long> out(g.n, 0);
  for (AgentId v = 0; v < g.n; ++v) {
    const auto& nb = g.adj[v];
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (g.has_edge(nb[i], nb[j])) ++out[v];
  }
  return out;
}

inline Rational clustering(const ConnectionGraph& g) {
  const std::vector<long> tri = triangles(g);
  Rational sum;
  long eligible = 0;
  for (AgentId v = 0; v < g.n; ++v) {
    const long deg = static_cast<long>(g.adj[v].size());
    if (deg < 2) continue;
    ++eligible;
    sum += Rational(tri[v], deg * (deg - 1) / 2);
  }
  return eligible == 0 ? Rational(0) : sum / Rational(eligible);
}

inline bool connected(const ConnectionGraph& g) {
  if (g.n == 0) return true;
  std::vector<char> seen(g.n, 0);
  std::queue<AgentId> q;
  q.push(0);
  seen[0] = 1;
  int visited = 0;
  while (!q.empty()) {
    const AgentId v = q.front();
    q.pop();
    ++visited;
    for (AgentId u : g.adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        q.push(u);
      }
  }
  return visited == g.n;
}

// shortest cycle by a different decomposition than the library's: delete each
// edge in turn and measure the surviving distance between its endpoints
inline std::optional<int> girth_by_edge_deletion(const ConnectionGraph& g) {
  std::optional<int> best;
  for (const auto& [a, b] : g.edges) {
    std::vector<int> dist(g.n, -1);
    std::queue<AgentId> q;
    q.push(a);
    dist[a] = 0;
    while (!q.empty()) {
      const AgentId v = q.front();
      q.pop();
      for (AgentId u : g.adj[v]) {
        if ((v == a && u == b) || (v == b && u == a)) continue;  // the deleted edge
        if (dist[u] == -1) {
          dist[u] = dist[v] + 1;
          q.push(u);
        }
      }
    }
    if (dist[b] != -1 && (!best || dist[b] + 1 < *best)) best = dist[b] + 1;
  }
  return best;
}

// ---------------------------------------------------------------------------
// generators

inline Parameters params_gamma(long a, long c, BCost b = BCost::eps(), int n = 1) {
  Parameters p;
  p.a = Rational(a);
  p.c = Rational(c);
  p.b = b;
  p.n = n;
  return p;
}

// arbitrary small community: random benefit ratio, 0..2 events per agent,
// random invitee sets, rates with numerator and denominator up to 12
inline EventConfiguration random_config(Rng& rng, int n, const BCost& b) {
  Parameters p;
  p.a = Rational(1 + static_cast<long>(rng.below(12)));
  p.c = Rational(1 + static_cast<long>(rng.below(12)));
  p.b = b;
  p.n = n;
  EventConfiguration cfg{p, std::vector<Strategy>(n)};
  for (AgentId v = 0; v < n; ++v) {
    const int events = static_cast<int>(rng.below(3));
    for (int i = 0; i < events; ++i) {
      const int others = n - 1;
      const int count = 1 + static_cast<int>(rng.below(others));
      Event ev;
      ev.host = v;
      for (int id : rng.sample_indices(others, count))
        ev.invitees.push_back(id < v ? id : id + 1);
      ev.rate = Rational(1 + static_cast<long>(rng.below(12)),
                         1 + static_cast<long>(rng.below(12)));
      cfg.strategies[v].push_back(std::move(ev));
    }
  }
  return cfg;
}

}  // namespace oracle
