#include "netgame/constructions.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "netgame/errors.hpp"
#include "netgame/rng.hpp"
#include "netgame/stability.hpp"

namespace netgame {
namespace {

Parameters with_n(Parameters p, int n) {
  p.n = n;
  validate_parameters(p);
  return p;
}

void require_eps(const Parameters& p, const char* what) {
  if (!p.b.is_eps)
    throw UnsupportedRegimeError(std::string(what) +
                                 " only come out stable under a vanishing fee; pass b = eps");
}

std::vector<AgentId> everyone_but(int n, AgentId v) {
  std::vector<AgentId> out;
  out.reserve(n - 1);
  for (AgentId u = 0; u < n; ++u)
    if (u != v) out.push_back(u);
  return out;
}

}  // namespace

EventConfiguration build_complete_single_host(const Parameters& params, int n) {
  if (n < 2) throw DomainError("a complete graph needs at least 2 agents");
  Parameters p = with_n(params, n);
  const Rational gamma = p.gamma();
  if (!(gamma > Rational(1)))
    throw RegimeError("a lone host pays c per guest for connections worth a; needs a/c > 1, got " +
                      gamma.str());
  if (!p.b.is_eps) {
    const Rational cap = p.c * (gamma - Rational(1));  // = a - c
    if (!(p.b.value < cap))
      throw RegimeError("fee too high for the host: need b < c*(a/c - 1) = " + cap.str() +
                        ", got " + p.b.value.str());
  }
  EventConfiguration cfg{p, std::vector<Strategy>(n)};
  cfg.strategies[0].push_back(Event{0, everyone_but(n, 0), Rational(1)});
  validate_configuration(cfg);
  return cfg;
}

EventConfiguration build_clique(const Parameters& params, int l) {
  if (l < 2) throw DomainError("a clique needs at least 2 members");
  require_eps(params, "shared-rate cliques");
  Parameters p = with_n(params, l);
  const Rational gamma = p.gamma();
  if (!(gamma > Rational(1, l)))
    throw RegimeError("a " + std::to_string(l) + "-clique hosts at rate 1/" + std::to_string(l) +
                      " and needs a/c > 1/" + std::to_string(l) + ", got " + gamma.str());
  const Rational rate(1, l);
  EventConfiguration cfg{p, std::vector<Strategy>(l)};
  for (AgentId v = 0; v < l; ++v)
    cfg.strategies[v].push_back(Event{v, everyone_but(l, v), rate});
  validate_configuration(cfg);
  return cfg;
}

// ---------------------------------------------------------------------------
// community graphs

namespace {

struct Layout {
  std::vector<std::vector<AgentId>> members;  // per skeleton node, ascending ids
  std::vector<std::vector<int>> cliques_of;   // per agent
  std::vector<AgentId> bridge_partner;        // per agent, -1 when none
  std::vector<std::pair<AgentId, AgentId>> bridge_pairs;
  int n = 0;
};

Layout layout_skeleton(const CommunitySkeleton& sk) {
  const int nodes = static_cast<int>(sk.clique_sizes.size());
  if (nodes == 0) throw DomainError("community skeleton has no cliques");
  for (int s : sk.clique_sizes)
    if (s < 1) throw DomainError("every clique needs at least one member of its own");
  std::set<std::pair<int, int>> join_pairs;
  for (const Join& j : sk.joins) {
    if (j.a < 0 || j.a >= nodes || j.b < 0 || j.b >= nodes)
      throw DomainError("join references a clique that is not in the skeleton");
    if (j.a == j.b) throw DomainError("a join must connect two different cliques");
    if (j.kind == JoinKind::overlap && j.overlap < 2)
      throw DomainError("overlap joins share at least 2 members; use shared_vertex for one");
    if (!join_pairs.insert(std::minmax(j.a, j.b)).second)
      throw ConstructionError(
          "two joins between the same cliques would make some cross pair meet through two "
          "hosts; merge them into one join");
  }

  Layout L;
  L.members.resize(nodes);
  int next = 0;
  for (int c = 0; c < nodes; ++c)
    for (int i = 0; i < sk.clique_sizes[c]; ++i) {
      L.members[c].push_back(next);
      L.cliques_of.push_back({c});
      L.bridge_partner.push_back(-1);
      ++next;
    }
  for (const Join& j : sk.joins) {
    if (j.kind == JoinKind::bridge) {
      AgentId ends[2];
      int side = 0;
      for (int c : {j.a, j.b}) {
        AgentId pick = -1;
        for (AgentId v : L.members[c])
          if (L.cliques_of[v].size() == 1 && L.bridge_partner[v] == -1) {
            pick = v;
            break;
          }
        if (pick == -1)
          throw ConstructionError("clique " + std::to_string(c) +
                                  " has no member free to take another bridge; an agent can "
                                  "carry at most one");
        ends[side++] = pick;
      }
      L.bridge_partner[ends[0]] = ends[1];
      L.bridge_partner[ends[1]] = ends[0];
      L.bridge_pairs.emplace_back(ends[0], ends[1]);
    } else {
      const int count = j.kind == JoinKind::shared_vertex ? 1 : j.overlap;
      for (int i = 0; i < count; ++i) {
        L.members[j.a].push_back(next);
        L.members[j.b].push_back(next);
        L.cliques_of.push_back({j.a, j.b});
        L.bridge_partner.push_back(-1);
        ++next;
      }
    }
  }
  L.n = next;
  return L;
}

// empty string when the combined scheme (everyone hosts all their groups in
// one nested strategy) is viable, else the reason it is not
std::string combined_blocker(const Parameters& p, const CommunitySkeleton& sk, const Layout& L) {
  const Rational gamma = p.gamma();
  const Rational one(1);
  if (gamma > one)
    return "a/c > 1 makes strangers worth inviting, so only the single-host complete graph "
           "stays put";
  for (const Join& j : sk.joins)
    if (j.kind == JoinKind::overlap)
      return "overlap members would double-connect under combined hosting; take the "
             "silent-shared scheme";
  // a cross pair reached through two different hosts accumulates meeting rate;
  // that happens exactly when the join graph closes a cycle of length <= 4
  const int nodes = static_cast<int>(sk.clique_sizes.size());
  std::vector<std::vector<int>> adj(nodes);
  for (const Join& j : sk.joins) {
    adj[j.a].push_back(j.b);
    adj[j.b].push_back(j.a);
  }
  for (const Join& j : sk.joins) {
    std::vector<int> dist(nodes, -1);
    std::vector<int> queue{j.a};
    dist[j.a] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int u = queue[h];
      if (dist[u] >= 3) break;
      for (int w : adj[u]) {
        if (u == j.a && w == j.b) continue;  // not the joined edge itself
        if (dist[w] == -1) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    if (dist[j.b] != -1 && dist[j.b] <= 3)
      return "join cycles of length <= 4 double-book cross pairs under combined hosting; "
             "take the silent-shared scheme";
  }
  for (int c = 0; c < nodes; ++c) {
    const int k = static_cast<int>(L.members[c].size());
    if (k >= 2 && !(gamma > Rational(1, k)))
      return "clique " + std::to_string(c) + " has " + std::to_string(k) +
             " members and hosts at rate 1/" + std::to_string(k) + "; needs a/c > 1/" +
             std::to_string(k);
  }
  if (!L.bridge_pairs.empty() && !(gamma > Rational(1, 2)))
    return "a mutual-1/2 bridge needs a/c > 1/2";
  for (AgentId v = 0; v < L.n; ++v) {
    std::vector<Rational> rates;
    for (int c : L.cliques_of[v])
      if (L.members[c].size() >= 2) rates.emplace_back(1, static_cast<long>(L.members[c].size()));
    if (L.bridge_partner[v] != -1) rates.emplace_back(1, 2);
    if (rates.size() < 2) continue;
    std::sort(rates.begin(), rates.end(), [](const Rational& x, const Rational& y) { return y < x; });
    // members of v's two groups co-attend v's base event at the smaller rate
    if (!(rates[1] <= one - gamma))
      return "agent " + std::to_string(v) + " hosts two groups that would cross-meet at rate " +
             rates[1].str() + " > 1 - a/c, making those pairs worth chasing";
  }
  return {};
}

// viability of the silent-shared scheme: members sitting in two cliques host
// nothing, the solo members of each clique cover for them at rate 1/h
std::string silent_shared_blocker(const Parameters& p, const CommunitySkeleton& sk,
                                  const Layout& L) {
  const Rational gamma = p.gamma();
  const Rational one(1);
  if (gamma > one)
    return "a/c > 1 makes strangers worth inviting, so only the single-host complete graph "
           "stays put";
  const int nodes = static_cast<int>(sk.clique_sizes.size());
  for (int c = 0; c < nodes; ++c) {
    if (L.members[c].size() < 2) continue;
    const int h = sk.clique_sizes[c];  // members belonging to this clique alone
    if (h < 2)
      return "clique " + std::to_string(c) +
             " needs at least 2 solo members to host for its silent ones";
    if (!(gamma > Rational(1, h)))
      return "clique " + std::to_string(c) + " hosts at rate 1/" + std::to_string(h) +
             "; needs a/c > 1/" + std::to_string(h);
  }
  if (!L.bridge_pairs.empty() && !(gamma > Rational(1, 2)))
    return "a mutual-1/2 bridge needs a/c > 1/2";
  for (const auto& pr : L.bridge_pairs) {
    for (AgentId v : {pr.first, pr.second}) {
      const int c = L.cliques_of[v][0];
      if (L.members[c].size() < 2) continue;
      const int h = sk.clique_sizes[c];
      // the partner sits in v's clique event next to v's mates
      if (!(gamma <= one - Rational(1, h)))
        return "agent " + std::to_string(v) + "'s bridge partner meets its clique at rate 1/" +
               std::to_string(h) + "; needs a/c <= 1 - 1/" + std::to_string(h);
    }
  }
  return {};
}

EventConfiguration build_combined(const Parameters& p, const Layout& L) {
  EventConfiguration cfg{p, std::vector<Strategy>(L.n)};
  for (AgentId v = 0; v < L.n; ++v) {
    std::vector<std::pair<AgentId, Rational>> targets;
    for (int c : L.cliques_of[v]) {
      const int k = static_cast<int>(L.members[c].size());
      if (k < 2) continue;
      for (AgentId u : L.members[c])
        if (u != v) targets.emplace_back(u, Rational(1, k));
    }
    if (L.bridge_partner[v] != -1) targets.emplace_back(L.bridge_partner[v], Rational(1, 2));
    if (!targets.empty()) cfg.strategies[v] = realize_nested(targets, v);
  }
  validate_configuration(cfg);
  return cfg;
}

EventConfiguration build_silent_shared(const Parameters& p, const CommunitySkeleton& sk,
                                       const Layout& L) {
  EventConfiguration cfg{p, std::vector<Strategy>(L.n)};
  for (AgentId v = 0; v < L.n; ++v) {
    if (L.cliques_of[v].size() != 1) continue;  // shared members stay silent
    const int c = L.cliques_of[v][0];
    std::vector<std::pair<AgentId, Rational>> targets;
    if (L.members[c].size() >= 2) {
      const Rational rate(1, sk.clique_sizes[c]);
      for (AgentId u : L.members[c])
        if (u != v) targets.emplace_back(u, rate);
    }
    if (L.bridge_partner[v] != -1) targets.emplace_back(L.bridge_partner[v], Rational(1, 2));
    if (!targets.empty()) cfg.strategies[v] = realize_nested(targets, v);
  }
  validate_configuration(cfg);
  return cfg;
}

}  // namespace

CommunityResult build_community_graph(const Parameters& params, const CommunitySkeleton& skeleton,
                                      CommunityScheme scheme) {
  require_eps(params, "community graphs");
  Layout L = layout_skeleton(skeleton);
  Parameters p = with_n(params, L.n);
  CommunityResult out;
  out.clique_members = L.members;
  out.bridge_pairs = L.bridge_pairs;
  std::string a_block;
  if (scheme != CommunityScheme::silent_shared) {
    a_block = combined_blocker(p, skeleton, L);
    if (a_block.empty()) {
      out.config = build_combined(p, L);
      out.scheme_used = CommunityScheme::combined;
      return out;
    }
    if (scheme == CommunityScheme::combined) throw RegimeError(a_block);
  }
  const std::string b_block = silent_shared_blocker(p, skeleton, L);
  if (!b_block.empty()) {
    if (scheme == CommunityScheme::silent_shared) throw RegimeError(b_block);
    throw RegimeError("no hosting scheme fits: " + a_block + "; " + b_block);
  }
  out.config = build_silent_shared(p, skeleton, L);
  out.scheme_used = CommunityScheme::silent_shared;
  return out;
}

EventConfiguration build_hkp(const Parameters& params, int k, int p) {
  if (p < 1) throw DomainError("the two cliques must share at least one agent");
  if (k < p + 2)
    throw DomainError("two k-cliques sharing p agents need k >= p + 2 so both keep private "
                      "members");
  require_eps(params, "two-clique networks");
  Parameters probe = with_n(params, 2 * k - p);
  const Rational gamma = probe.gamma();
  const Rational lo = p == 1 ? Rational(1, k) : Rational(1, k - p);
  if (!(gamma > lo))
    throw RegimeError("two " + std::to_string(k) + "-cliques sharing " + std::to_string(p) +
                      " need a/c > " + lo.str() + ", got " + gamma.str());
  if (gamma > Rational(1))
    throw RegimeError("a/c > 1 only supports the complete graph");
  CommunitySkeleton sk;
  sk.clique_sizes = {k - p, k - p};
  Join j;
  j.a = 0;
  j.b = 1;
  if (p == 1) {
    j.kind = JoinKind::shared_vertex;
  } else {
    j.kind = JoinKind::overlap;
    j.overlap = p;
  }
  sk.joins.push_back(j);
  CommunityScheme scheme = CommunityScheme::automatic;
  if (p == 1)
    scheme = gamma < Rational(1) - Rational(1, k) ? CommunityScheme::combined
                                                  : CommunityScheme::silent_shared;
  return build_community_graph(params, sk, scheme).config;
}

// ---------------------------------------------------------------------------
// the double triangle (two triangles sharing the 2-3 edge, 0 and 1 apart)

H32Rates h32_rates(const Rational& gamma, const Rational& eps, const Rational& delta) {
  const Rational half(1, 2);
  H32Rates R;
  R.p = (Rational(1) - gamma) * half;
  R.q = R.p + delta;
  R.r = half;
  R.p_ = half + eps + delta;
  R.q_ = R.p + eps;
  R.r_ = R.p;
  R.s = gamma - eps;
  R.s_ = gamma * half - eps - delta;
  R.t = gamma * half;
  R.t_ = gamma - delta;
  return R;
}

EventConfiguration build_h32(const Parameters& params) {
  require_eps(params, "double-triangle networks");
  Parameters p = with_n(params, 4);
  const Rational gamma = p.gamma();
  if (!(gamma > Rational(1, 2)))
    throw RegimeError("the double triangle needs a/c > 1/2, got " + gamma.str());
  if (!(gamma < Rational(1)))
    throw RegimeError("at a/c >= 1 the missing pair becomes worth closing; needs a/c < 1");
  // one canonical point of the two-parameter family of solutions to the
  // equilibrium equalities; the tests re-derive it from the constraints and
  // sweep other slack values
  const Rational slack = (2 * gamma - Rational(1)) / Rational(8);
  const H32Rates R = h32_rates(gamma, slack, slack);
  EventConfiguration cfg{p, std::vector<Strategy>(4)};
  cfg.strategies[0] = realize_nested({{3, R.s}, {2, R.s_}}, 0);
  cfg.strategies[1] = realize_nested({{3, R.t}, {2, R.t_}}, 1);
  cfg.strategies[2] = realize_nested({{0, R.p_}, {3, R.q_}, {1, R.r_}}, 2);
  cfg.strategies[3] = realize_nested({{1, R.r}, {2, R.q}, {0, R.p}}, 3);
  validate_configuration(cfg);
  return cfg;
}

// ---------------------------------------------------------------------------
// random constructions

namespace {

}  // namespace

HypergraphResult build_hypergraph_network(const Parameters& params, const HypergraphSpec& spec) {
  if (spec.k < 3)
    throw DomainError("hyperedges need k >= 3 so that 1/k < a/c < 1 - 1/k leaves room");
  if (spec.d < 1) throw DomainError("per-agent degree must be >= 1");
  if (spec.n < spec.k) throw DomainError("need at least k agents");
  if (static_cast<long long>(spec.d) * spec.n % spec.k != 0)
    throw DomainError("d*n must be divisible by k for a d-regular k-uniform sample");
  // an agent hosting its d hyperedges separately ties with hosting their
  // union on every connection and every hosting cost, but the union carries
  // a strictly smaller total event rate, so any fee that counts (concrete
  // positive or the vanishing one) makes the merged strategy a profitable
  // deviation; only b = 0 keeps one-event-per-hyperedge a best response
  if (params.b.is_eps || params.b.value.sign() != 0)
    throw UnsupportedRegimeError(
        "per-hyperedge hosting is fee-dominated by merged events; pass b = 0 exactly");
  Parameters p = with_n(params, spec.n);
  const Rational gamma = p.gamma();
  const Rational lo(1, spec.k);
  const Rational hi = Rational(1) - lo;
  if (!(lo < gamma && gamma < hi))
    throw RegimeError("needs 1/k < a/c < 1 - 1/k at k = " + std::to_string(spec.k) +
                      ", got a/c = " + gamma.str());
  const int m = static_cast<int>(static_cast<long long>(spec.d) * spec.n / spec.k);

  // repeated k-subsets against remaining per-agent capacity; a tail deadlock
  // (fewer than k agents left with room) restarts the whole sample
  Rng rng(spec.seed);
  std::vector<std::vector<AgentId>> edges;
  bool complete = false;
  for (int attempt = 0; attempt < 64 && !complete; ++attempt) {
    edges.clear();
    std::vector<int> cap(spec.n, spec.d);
    std::vector<AgentId> pool;
    complete = true;
    for (int e = 0; e < m; ++e) {
      pool.clear();
      for (AgentId v = 0; v < spec.n; ++v)
        if (cap[v] > 0) pool.push_back(v);
      if (static_cast<int>(pool.size()) < spec.k) {
        complete = false;
        break;
      }
      std::vector<int> idx = rng.sample_indices(static_cast<int>(pool.size()), spec.k);
      std::vector<AgentId> edge(spec.k);
      for (int i = 0; i < spec.k; ++i) {
        edge[i] = pool[idx[i]];
        --cap[edge[i]];
      }
      edges.push_back(std::move(edge));
    }
  }
  if (!complete)
    throw ConstructionError("could not finish a d-regular k-uniform sample in 64 attempts");

  // drop every hyperedge that meets another in >= 2 agents. Survivors give
  // each co-member pair meeting rate exactly 1 (k hosts at 1/k); a doubly
  // covered pair would be free for its hosts, who then profit by cutting
  // their own event. Pairs in no common hyperedge never co-attend anything
  // under per-hyperedge hosting, so their deficit stays a full 1 > gamma
  // and longer hypergraph cycles are harmless.
  std::vector<std::vector<int>> inc(spec.n);
  for (int e = 0; e < m; ++e)
    for (AgentId v : edges[e]) inc[v].push_back(e);
  std::vector<char> bad(m, 0);
  for (int e = 0; e < m; ++e) {
    std::vector<int> nbr;
    for (AgentId v : edges[e])
      for (int f : inc[v])
        if (f > e) nbr.push_back(f);
    std::sort(nbr.begin(), nbr.end());
    for (std::size_t i = 0; i + 1 < nbr.size(); ++i)
      if (nbr[i] == nbr[i + 1]) bad[e] = bad[nbr[i]] = 1;
  }

  int removed = 0;
  for (char b : bad) removed += b;

  // one event per surviving hyperedge: every member hosts the others at 1/k
  EventConfiguration cfg{p, std::vector<Strategy>(spec.n)};
  for (int e = 0; e < m; ++e) {
    if (bad[e]) continue;
    for (AgentId v : edges[e]) {
      std::vector<AgentId> inv;
      inv.reserve(spec.k - 1);
      for (AgentId u : edges[e])
        if (u != v) inv.push_back(u);
      std::sort(inv.begin(), inv.end());
      cfg.strategies[v].push_back(Event{v, std::move(inv), Rational(1, spec.k)});
    }
  }
  validate_configuration(cfg);
  HypergraphResult out;
  out.config = std::move(cfg);
  out.total_hyperedges = m;
  out.removed_hyperedges = removed;
  return out;
}

DenseResult build_dense_k_supportable(const Parameters& params, int n, int K,
                                      std::uint64_t seed) {
  require_eps(params, "dense grouped networks");
  Parameters p = with_n(params, n);
  const Rational gamma = p.gamma();
  if (!(gamma < Rational(1)))
    throw RegimeError("grouped hosting needs a/c < 1, got " + gamma.str());
  const long floor_inv = (p.c / p.a).floor_long();
  if (floor_inv + 1 > n)
    throw DomainError("group size floor(c/a) + 1 = " + std::to_string(floor_inv + 1) +
                      " exceeds n");
  const int kstar = static_cast<int>(floor_inv) + 1;
  if (K <= kstar)
    throw DomainError("invite cap K must exceed the group size " + std::to_string(kstar));
  if (n % kstar != 0)
    throw DomainError("n must be a multiple of the group size " + std::to_string(kstar));
  const int guests = K + 1 - kstar;
  if (guests > n - kstar)
    throw DomainError("not enough outsiders for a guest list of " + std::to_string(guests));

  Rng rng(seed);
  const int groups = n / kstar;
  // pairs already sharing some group; keeping this empty of repeats is what
  // pins every meeting rate to exactly 0 or 1
  std::unordered_set<std::uint64_t> met;
  for (int g = 0; g < groups; ++g)
    for (int i = 0; i < kstar; ++i)
      for (int j = i + 1; j < kstar; ++j)
        met.insert(ConnectionGraph::pair_key(g * kstar + i, g * kstar + j));
  int dropped = 0;
  std::vector<std::vector<AgentId>> party(groups);
  for (int g = 0; g < groups; ++g) {
    std::vector<AgentId>& who = party[g];
    for (int i = 0; i < kstar; ++i) who.push_back(g * kstar + i);
    std::vector<AgentId> outsiders;
    outsiders.reserve(n - kstar);
    for (AgentId v = 0; v < n; ++v)
      if (v < g * kstar || v >= (g + 1) * kstar) outsiders.push_back(v);
    for (int id : rng.sample_indices(n - kstar, guests)) {
      const AgentId x = outsiders[id];
      bool clash = false;
      for (AgentId y : who)
        if (met.count(ConnectionGraph::pair_key(x, y)) != 0) {
          clash = true;
          break;
        }
      if (clash) {
        ++dropped;
        continue;
      }
      for (AgentId y : who) met.insert(ConnectionGraph::pair_key(x, y));
      who.push_back(x);
    }
  }
  EventConfiguration cfg{p, std::vector<Strategy>(n)};
  for (int g = 0; g < groups; ++g)
    for (int i = 0; i < kstar; ++i) {
      const AgentId host = g * kstar + i;
      std::vector<AgentId> inv;
      inv.reserve(party[g].size() - 1);
      for (AgentId u : party[g])
        if (u != host) inv.push_back(u);
      std::sort(inv.begin(), inv.end());
      cfg.strategies[host].push_back(Event{host, std::move(inv), Rational(1, kstar)});
    }
  validate_configuration(cfg);
  DenseResult out;
  out.config = std::move(cfg);
  out.group_size = kstar;
  out.dropped_invites = dropped;
  return out;
}

}  // namespace netgame
