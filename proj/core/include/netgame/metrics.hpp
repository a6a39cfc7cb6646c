#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netgame/model.hpp"

namespace netgame {

struct GraphStats {
  int n = 0;
  int edge_count = 0;
  std::vector<int> degree_sequence;
  Rational average_degree;         // 2 * edges / n
  Rational average_degree_over_w;  // restricted to vertices of degree >= 2
  Rational clustering;
  std::vector<long> triangle_counts;  // per vertex
  std::vector<std::pair<AgentId, AgentId>> local_bridges;
  std::optional<int> girth;  // nullopt when acyclic
  bool connected = false;
};

// per-vertex count of neighbor pairs that are themselves adjacent
std::vector<long> triangle_counts(const ConnectionGraph& g);

// mean over vertices of degree >= 2 of triangles / C(deg, 2); 0 when no
// vertex qualifies
Rational clustering_coefficient(const ConnectionGraph& g);

// edges whose endpoints have no common neighbor
std::vector<std::pair<AgentId, AgentId>> local_bridges(const ConnectionGraph& g);

// N_u cap N_v lies inside the vertex set, for every pair in it
bool strong_subgraph_check(const ConnectionGraph& g,
                           const std::vector<AgentId>& h_vertices);

bool is_connected(const ConnectionGraph& g);

// shortest cycle length via BFS from every vertex; nullopt if acyclic
std::optional<int> girth(const ConnectionGraph& g);

GraphStats graph_stats(const ConnectionGraph& g);

struct BoundCheck {
  bool holds = false;
  bool vacuous = false;  // no qualifying vertex, nothing to assert
  Rational lhs;
  Rational rhs;
  std::string note;
};

// clustering >= 1/(2 * average degree); needs a connected graph. Also
// reports the sharper >= 1/average-degree variant when min degree >= 2.
struct ClusteringBoundResult {
  BoundCheck base;
  BoundCheck min_degree_two;  // vacuous unless min degree >= 2
};
ClusteringBoundResult verify_clustering_bound(const ConnectionGraph& g);

// average degree <= gamma * K * (K+1); demands every agent invites at most
// K distinct people and names the first offender otherwise
BoundCheck verify_k_supportable_degree_bound(const EventConfiguration& config,
                                             int K);

// largest number of distinct invitees over agents
int max_invited(const EventConfiguration& config);

}  // namespace netgame
