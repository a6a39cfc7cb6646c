#include "netgame/regular_graph.hpp"

#include <algorithm>
#include <string>

#include "netgame/errors.hpp"
#include "netgame/rng.hpp"

namespace netgame {
namespace {

// minimum order of a k-regular graph with girth 5 (cycle, Petersen,
// Robertson, ... then the general k^2+1 lower bound)
int base_order(int k) {
  switch (k) {
    case 2: return 5;
    case 3: return 10;
    case 4: return 19;
    case 5: return 30;
    case 6: return 40;
    case 7: return 50;
    default: return k * k + 1;
  }
}

struct WorkGraph {
  int m = 0;
  std::vector<std::pair<int, int>> edges;  // multigraph, arbitrary orientation
  std::vector<std::vector<int>> adj;       // multiset adjacency

  void rebuild_adj() {
    adj.assign(m, {});
    for (const auto& [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  }
};

// distance from u to v with one copy of the edge (u,v) removed, capped at 3;
// -1 if farther. Distance <= 3 means the edge lies on a cycle of length <= 4
// (a parallel copy shows up as distance 1).
int detour_within_three(const WorkGraph& g, int u, int v) {
  std::vector<int> dist(g.m, -1);
  std::vector<int> queue{u};
  dist[u] = 0;
  bool skipped = false;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int x = queue[i];
    if (dist[x] >= 3) break;
    for (int y : g.adj[x]) {
      if (x == u && y == v && !skipped) {
        skipped = true;
        continue;
      }
      if (dist[y] == -1) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist[v];
}

bool edge_conflicted(const WorkGraph& g, int i) {
  const auto& [u, v] = g.edges[i];
  if (u == v) return true;  // loop
  return detour_within_three(g, u, v) != -1;
}

int count_in_adj(const WorkGraph& g, int u, int v) {
  return static_cast<int>(std::count(g.adj[u].begin(), g.adj[u].end(), v));
}

// one swap attempt on a conflicted edge: pick a random partner edge and
// rewire (u,v),(x,y) -> (u,x),(v,y). Refuse loops and immediate parallels;
// remaining short cycles are caught by the next sweep.
bool try_swap(WorkGraph& g, Rng& rng, int bad) {
  for (int tries = 0; tries < 64; ++tries) {
    int j = static_cast<int>(rng.below(g.edges.size()));
    if (j == bad) continue;
    auto [u, v] = g.edges[bad];
    auto [x, y] = g.edges[j];
    if (rng.below(2) == 1) std::swap(x, y);
    if (u == x || u == y || v == x || v == y) continue;
    if (count_in_adj(g, u, x) > 0 || count_in_adj(g, v, y) > 0) continue;
    g.edges[bad] = {u, x};
    g.edges[j] = {v, y};
    g.rebuild_adj();
    return true;
  }
  return false;
}

bool repair_conflicts(WorkGraph& g, Rng& rng) {
  for (int sweep = 0; sweep < 200; ++sweep) {
    bool any = false;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
      if (!edge_conflicted(g, i)) continue;
      any = true;
      try_swap(g, rng, i);
    }
    if (!any) return true;
  }
  return false;
}

std::vector<int> component_labels(const WorkGraph& g) {
  std::vector<int> label(g.m, -1);
  int next = 0;
  for (int root = 0; root < g.m; ++root) {
    if (label[root] != -1) continue;
    std::vector<int> queue{root};
    label[root] = next;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (int y : g.adj[queue[i]])
        if (label[y] == -1) {
          label[y] = next;
          queue.push_back(y);
        }
    ++next;
  }
  return label;
}

// Merge components by swapping an edge inside the root component with one
// fully outside it. The two fresh edges cross between the parts, so any new
// cycle must use both and also a detour around each old edge; with girth
// already >= 5 those detours have length >= 4, keeping every new cycle long.
bool merge_components(WorkGraph& g, Rng& rng) {
  for (int rounds = 0; rounds < g.m; ++rounds) {
    std::vector<int> label = component_labels(g);
    if (*std::max_element(label.begin(), label.end()) == 0) return true;
    std::vector<int> inside;
    int outside = -1;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
      const auto& [u, v] = g.edges[i];
      if (label[u] == 0 && label[v] == 0) inside.push_back(i);
      if (label[u] != 0 && label[u] == label[v] && outside == -1) outside = i;
    }
    if (inside.empty() || outside == -1) return false;
    int i = inside[rng.below(inside.size())];
    auto [u, v] = g.edges[i];
    auto [x, y] = g.edges[outside];
    g.edges[i] = {u, x};
    g.edges[outside] = {v, y};
    g.rebuild_adj();
  }
  return false;
}

bool valid_girth5_regular(const WorkGraph& g, int k) {
  for (int u = 0; u < g.m; ++u) {
    if (static_cast<int>(g.adj[u].size()) != k) return false;
    for (int y : g.adj[u])
      if (y == u || count_in_adj(g, u, y) > 1) return false;
  }
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
    if (edge_conflicted(g, i)) return false;
  std::vector<int> label = component_labels(g);
  return *std::max_element(label.begin(), label.end()) == 0;
}

RegularGraph finalize(const WorkGraph& g, int k) {
  RegularGraph out;
  out.m = g.m;
  out.k = k;
  out.edges.reserve(g.edges.size());
  for (const auto& [u, v] : g.edges) out.edges.push_back(std::minmax(u, v));
  std::sort(out.edges.begin(), out.edges.end());
  out.adj = g.adj;
  for (auto& list : out.adj) std::sort(list.begin(), list.end());
  return out;
}

}  // namespace

int min_girth5_order(int k) {
  if (k == 2) return 5;
  return 2 * base_order(k);
}

RegularGraph gen_regular_girth5(int k, int m, std::uint64_t seed) {
  if (k < 2) throw DomainError("regular degree must be at least 2");
  if (m < min_girth5_order(k))
    throw ConstructionError("a " + std::to_string(k) + "-regular graph with girth 5 needs at least " +
                            std::to_string(min_girth5_order(k)) + " vertices, got " +
                            std::to_string(m));
  if (static_cast<long long>(m) * k % 2 != 0)
    throw ConstructionError("m*k must be even for a k-regular graph");

  if (k == 2) {
    WorkGraph g;
    g.m = m;
    for (int i = 0; i < m; ++i) g.edges.emplace_back(i, (i + 1) % m);
    g.rebuild_adj();
    return finalize(g, k);
  }

  Rng rng(seed);
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(m) * k);
    for (int u = 0; u < m; ++u)
      for (int i = 0; i < k; ++i) stubs.push_back(u);
    rng.shuffle(stubs);
    WorkGraph g;
    g.m = m;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
      g.edges.emplace_back(stubs[i], stubs[i + 1]);
    g.rebuild_adj();

    if (!repair_conflicts(g, rng)) continue;
    if (!merge_components(g, rng)) continue;
    if (valid_girth5_regular(g, k)) return finalize(g, k);
  }
  throw ConstructionError("girth-5 sampling did not settle after 50 attempts; use more vertices");
}

}  // namespace netgame
