#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netgame/model.hpp"

namespace netgame {

// one agent hosts everyone at rate 1; the only shape that survives gamma > 1
// and a fee below c*(gamma - 1)
EventConfiguration build_complete_single_host(const Parameters& params, int n);

// everybody invites everybody at rate 1/l; pairwise meeting rates land on 1
// exactly; viable iff gamma > 1/l
EventConfiguration build_clique(const Parameters& params, int l);

// ---------------------------------------------------------------------------
// community graphs: cliques on skeleton nodes, joined by bridges, a shared
// vertex, or an overlap of p >= 2 vertices

enum class JoinKind { bridge, shared_vertex, overlap };

struct Join {
  int a = 0;  // skeleton node indices
  int b = 0;
  JoinKind kind = JoinKind::bridge;
  int overlap = 2;  // only for JoinKind::overlap
};

struct CommunitySkeleton {
  std::vector<int> clique_sizes;  // one entry per skeleton node
  std::vector<Join> joins;
};

// How the members host. "combined": every member hosts all its groups in one
// nested strategy (needs every second-largest group rate <= 1 - gamma, and no
// overlap joins). "silent_shared": members belonging to two cliques host
// nothing and the rest cover for them at rate 1/h. "automatic" tries
// combined first.
enum class CommunityScheme { automatic, combined, silent_shared };

struct CommunityResult {
  EventConfiguration config;
  // expansion bookkeeping for tests and callers
  std::vector<std::vector<AgentId>> clique_members;  // per skeleton node
  std::vector<std::pair<AgentId, AgentId>> bridge_pairs;
  CommunityScheme scheme_used = CommunityScheme::combined;
};

CommunityResult build_community_graph(const Parameters& params,
                                      const CommunitySkeleton& skeleton,
                                      CommunityScheme scheme = CommunityScheme::automatic);

// two k-cliques sharing p vertices (n = 2k - p). p = 1 needs gamma > 1/k,
// p > 1 needs gamma > 1/(k-p); both refuse gamma > 1
EventConfiguration build_hkp(const Parameters& params, int k, int p);

// the 4-agent graph of two triangles sharing an edge: 5 edges, one missing
// pair, supportable exactly for gamma in (1/2, 1). Rates come from solving
// the equilibrium equalities; the two meeting rates quoted below pin the
// solution family and the rest follows (tests re-derive and cross-check).
struct H32Rates {
  // host w (agent 3) toward u, x, v and host x (agent 2) toward u, w, v
  Rational p, q, r, p_, q_, r_;
  // silent-side hosts u (agent 0) toward w, x and v (agent 1) toward w, x
  Rational s, s_, t, t_;
};
H32Rates h32_rates(const Rational& gamma, const Rational& eps,
                   const Rational& delta);
EventConfiguration build_h32(const Parameters& params);

// ---------------------------------------------------------------------------
// random constructions

struct HypergraphSpec {
  int n = 0;
  int k = 0;  // agents per hyperedge
  int d = 0;  // hyperedges per agent
  std::uint64_t seed = 0;
};

struct HypergraphResult {
  EventConfiguration config;
  int total_hyperedges = 0;    // m = d*n/k
  int removed_hyperedges = 0;  // overlap cleanup casualties
};

// sample a d-regular k-uniform hypergraph, drop hyperedges sharing >= 2
// vertices with another, then every member of each surviving hyperedge
// hosts it as a rate-1/k event of its own. Needs 1/k < gamma < 1 - 1/k and
// b = 0 exactly (separate events tie with their union except on the fee).
HypergraphResult build_hypergraph_network(const Parameters& params,
                                          const HypergraphSpec& spec);

struct DenseResult {
  EventConfiguration config;
  int group_size = 0;        // k* = floor(1/gamma) + 1
  int dropped_invites = 0;   // de-duplication casualties across all groups
};

// groups of size k* each pull in a random set of outsiders (deduplicated so
// no pair meets through two groups); members host group+guests at rate 1/k*.
// Every agent invites at most K distinct people.
DenseResult build_dense_k_supportable(const Parameters& params, int n, int K,
                                      std::uint64_t seed);

}  // namespace netgame
