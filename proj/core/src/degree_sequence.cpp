#include "netgame/degree_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "netgame/errors.hpp"
#include "netgame/metrics.hpp"
#include "netgame/regular_graph.hpp"
#include "netgame/stability.hpp"

namespace netgame {
namespace {

Rational rat_pow(const Rational& base, long e) {
  Rational r(1);
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

std::string istr(long v) { return std::to_string(v); }

// The whole realization is driven by three per-vertex ledgers: `target` is
// the degree we currently intend to deliver (input degree plus every logged
// shift), `work` is the part of it later phases still owe, and `targets`
// accumulates the invitations that will become the vertex's nested strategy.
// At the end the built graph must match `target` exactly — any disagreement
// is a bookkeeping bug and aborts the run.
struct Pipeline {
  const DegreeSequence& input;
  Parameters params;
  int n;
  int K;
  std::uint64_t seed;

  std::vector<int> target;
  std::vector<int> work;
  std::vector<char> consumed;  // fully wired, no further participation
  std::vector<char> is_pendant;
  std::vector<AgentId> bridge_of;  // mutual-1/2 partner, -1 if none
  std::vector<std::vector<std::pair<AgentId, Rational>>> targets;
  std::vector<StepLogEntry> log;
  std::vector<AgentId> pendants;
  std::size_t next_pendant = 0;

  struct ClassPlan {
    int k = 0;
    bool case2 = false;
    // case 2: bridges aligned with the H edge list, materialized at the end
    std::vector<std::pair<AgentId, AgentId>> bridges;
    std::vector<int> breakable;  // bridge indices off the spanning tree
    std::size_t next_breakable = 0;
    std::set<int> broken;
    std::vector<AgentId> free_slots;  // endpoints freed by a break
    std::size_t next_slot = 0;
    // case 1: members without a bridge, plain blocks first
    std::vector<AgentId> spare;
    std::size_t next_spare = 0;
  };
  std::map<int, ClassPlan> plans;

  Pipeline(const DegreeSequence& degrees, const Parameters& p, int K_, std::uint64_t s)
      : input(degrees),
        params(p),
        n(static_cast<int>(degrees.size())),
        K(K_),
        seed(s),
        target(degrees.begin(), degrees.end()),
        work(degrees.begin(), degrees.end()),
        consumed(n, 0),
        is_pendant(n, 0),
        bridge_of(n, -1),
        targets(n) {}

  bool active(AgentId v) const { return !consumed[v] && !is_pendant[v]; }

  void note(const std::string& phase, const std::string& text) {
    log.push_back({phase, -1, 0, 0, text});
  }
  void shift(const std::string& phase, AgentId v, int to, const std::string& text) {
    log.push_back({phase, v, target[v], to, text});
    work[v] += to - target[v];
    target[v] = to;
  }
  void invite(AgentId host, AgentId guest, const Rational& rate) {
    targets[host].push_back({guest, rate});
  }
  void mutual(AgentId u, AgentId v, const Rational& rate) {
    invite(u, v, rate);
    invite(v, u, rate);
  }
  // Both structural moves debit `work` for the edges they deliver, so a
  // placed vertex drops out of class_of and can't be placed twice.
  void add_bridge(AgentId u, AgentId v) {
    if (bridge_of[u] != -1 || bridge_of[v] != -1)
      throw ConstructionError("vertex " + istr(bridge_of[u] != -1 ? u : v) +
                              " would carry two mutual-1/2 bridges");
    bridge_of[u] = v;
    bridge_of[v] = u;
    mutual(u, v, Rational(1, 2));
    work[u] -= 1;
    work[v] -= 1;
  }
  // clique where every member hosts the others at 1/size
  void all_host_clique(const std::vector<AgentId>& members) {
    Rational rate(1, static_cast<long>(members.size()));
    for (AgentId u : members)
      for (AgentId v : members)
        if (u != v) invite(u, v, rate);
    for (AgentId u : members) work[u] -= static_cast<int>(members.size()) - 1;
  }

  std::vector<AgentId> class_of(int k) const {
    std::vector<AgentId> out;
    for (AgentId v = 0; v < n; ++v)
      if (active(v) && work[v] == k) out.push_back(v);
    return out;
  }
  std::size_t pendants_left() const { return pendants.size() - next_pendant; }

  // ---- step 1: degree-2 vertices in pairs, each pair leaning on one
  // high-degree vertex that silently attends both events
  void step1() {
    std::vector<AgentId> deg2 = class_of(2);
    std::size_t i = 0;
    while (deg2.size() - i >= 2) {
      AgentId w = -1;
      int best = 4;  // need work >= 5 so w stays a valid class member
      for (AgentId u = 0; u < n; ++u)
        if (active(u) && work[u] > best && work[u] != 2) {
          best = work[u];
          w = u;
        }
      if (w == -1) break;
      AgentId u = deg2[i], v = deg2[i + 1];
      i += 2;
      add_bridge(u, v);
      invite(u, w, Rational(1, 2));
      invite(v, w, Rational(1, 2));
      consumed[u] = consumed[v] = 1;
      work[u] = work[v] = 0;
      work[w] -= 2;
    }
    for (; i < deg2.size(); ++i)
      shift("step1", deg2[i], target[deg2[i]] + 1,
            "degree-2 vertex without a pair or a host, promoted");
  }

  // ---- step 2a: round class sizes to multiples of k so the absorption
  // below can always grab whole cliques
  void rounding() {
    for (int k = K; k >= 4; --k) {
      std::vector<AgentId> members = class_of(k);
      std::size_t excess = members.size() % static_cast<std::size_t>(k);
      for (std::size_t j = members.size() - excess; j < members.size(); ++j)
        shift("rounding", members[j], target[members[j]] - 1,
              "class size rounded down to a multiple");
    }
  }

  // ---- step 2b: grind every degree >= K+3 down by wiring it into cliques
  // of low-degree vertices; the host vertex attends for free
  void absorb() {
    std::map<int, std::vector<AgentId>> avail;
    std::map<int, std::size_t> head;
    for (int k = 3; k <= K; ++k) {
      avail[k] = class_of(k);
      head[k] = 0;
    }
    long used = 0;
    while (true) {
      AgentId v = -1;
      int best = K + 2;
      for (AgentId u = 0; u < n; ++u)
        if (active(u) && work[u] > best) {
          best = work[u];
          v = u;
        }
      if (v == -1) break;

      int kv = -1;  // degree-1 variant: k-1 donors, each with a pendant
      if (pendants_left() > 0)
        for (int k = K; k >= 4; --k)
          if (avail[k].size() - head[k] >= static_cast<std::size_t>(k - 1) &&
              pendants_left() >= static_cast<std::size_t>(k - 1)) {
            kv = k;
            break;
          }
      if (kv != -1) {
        std::vector<AgentId> donors(avail[kv].begin() + head[kv],
                                    avail[kv].begin() + head[kv] + (kv - 1));
        head[kv] += kv - 1;
        Rational rate(1, kv - 1);
        for (std::size_t j = 0; j < donors.size(); ++j) {
          AgentId m = donors[j];
          invite(m, v, rate);
          for (AgentId other : donors)
            if (other != m) invite(m, other, rate);
          AgentId p = pendants[next_pendant++];
          add_bridge(m, p);
          consumed[p] = 1;
          work[p] = 0;
          consumed[m] = 1;
          work[m] = 0;
        }
        work[v] -= kv - 1;
        used += kv - 1;
        continue;
      }

      int ks = -1;
      for (int k = K; k >= 3; --k)
        if (avail[k].size() - head[k] >= static_cast<std::size_t>(k)) {
          ks = k;
          break;
        }
      if (ks == -1)
        throw ConstructionError("absorption of vertex " + istr(v) + " (degree still " +
                                istr(work[v]) + ") ran out of low-degree hosts");
      std::vector<AgentId> donors(avail[ks].begin() + head[ks],
                                  avail[ks].begin() + head[ks] + ks);
      head[ks] += ks;
      Rational rate(1, ks);
      for (AgentId m : donors) {
        invite(m, v, rate);
        for (AgentId other : donors)
          if (other != m) invite(m, other, rate);
        consumed[m] = 1;
        work[m] = 0;
      }
      work[v] -= ks;
      used += ks;
    }
    long left = 0;
    for (auto& [k, list] : avail) left += static_cast<long>(list.size() - head[k]);
    note("absorb", "consumed " + istr(used) + " low-degree hosts, " + istr(left) +
                       " left; every remaining degree is at most " + istr(K + 2));
  }

  // ---- case 2 helpers
  AgentId case2_slot(ClassPlan& plan) {
    if (plan.next_slot >= plan.free_slots.size() &&
        plan.next_breakable < plan.breakable.size()) {
      int idx = plan.breakable[plan.next_breakable++];
      plan.broken.insert(idx);
      plan.free_slots.push_back(plan.bridges[idx].first);
      plan.free_slots.push_back(plan.bridges[idx].second);
    }
    if (plan.next_slot < plan.free_slots.size()) return plan.free_slots[plan.next_slot++];
    return -1;
  }
  // an endpoint able to carry one more mutual-1/2: free in case 2, a spare
  // member (one extra degree, logged) in case 1
  AgentId connector(ClassPlan& plan, const std::string& phase, const std::string& why) {
    if (plan.case2) return case2_slot(plan);
    while (plan.next_spare < plan.spare.size()) {
      AgentId v = plan.spare[plan.next_spare++];
      if (bridge_of[v] != -1) continue;
      shift(phase, v, target[v] + 1, why);
      return v;
    }
    return -1;
  }

  // ---- step 3, case 2: k-cliques arranged like a k-regular girth-5 graph,
  // one bridge per member realizing one H-edge each
  void build_case2(int k, const std::vector<AgentId>& members, int r2, ClassPlan& plan) {
    const int mH = static_cast<int>((members.size() - r2) / k);
    RegularGraph H = gen_regular_girth5(k, mH, seed * 1000003ULL + static_cast<std::uint64_t>(k));
    note("case2", "class " + istr(k) + ": " + istr(mH) + " cliques over a girth-5 " + istr(k) +
                      "-regular frame (smallest sampling size " + istr(min_girth5_order(k)) +
                      "), remainder " + istr(r2));
    std::vector<std::vector<AgentId>> clique(mH);
    for (int i = 0; i < mH; ++i)
      clique[i].assign(members.begin() + static_cast<std::size_t>(i) * k,
                       members.begin() + static_cast<std::size_t>(i + 1) * k);
    std::vector<AgentId> pool(members.begin() + static_cast<std::size_t>(mH) * k, members.end());

    if (r2 == 1 || r2 == 2)  // stretch the first cliques by one member each;
      for (int i = 0; i < r2; ++i) {
        clique[i].push_back(pool[i]);
        // the guest lands exactly on k, but the k frame members still carry
        // their frame bridge on top of the larger clique: one over, logged
        for (int j = 0; j < k; ++j)
          shift("case2", clique[i][j], target[clique[i][j]] + 1,
                "clique stretched by a remainder member");
      }
    for (int i = 0; i < mH; ++i) all_host_clique(clique[i]);

    for (const auto& [hu, hv] : H.edges) {
      auto pu = std::lower_bound(H.adj[hu].begin(), H.adj[hu].end(), hv) - H.adj[hu].begin();
      auto pv = std::lower_bound(H.adj[hv].begin(), H.adj[hv].end(), hu) - H.adj[hv].begin();
      plan.bridges.push_back({clique[hu][pu], clique[hv][pv]});
    }

    // spanning tree of H: only the edges off it may be broken later
    std::vector<int> parent(mH, -2);
    std::vector<int> queue{0};
    parent[0] = -1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (int nb : H.adj[queue[qi]])
        if (parent[nb] == -2) {
          parent[nb] = queue[qi];
          queue.push_back(nb);
        }
    std::set<std::pair<int, int>> tree;
    for (int u = 0; u < mH; ++u)
      if (parent[u] >= 0) tree.insert(std::minmax(u, parent[u]));
    for (std::size_t i = 0; i < H.edges.size(); ++i)
      if (!tree.count(H.edges[i])) plan.breakable.push_back(static_cast<int>(i));

    if (r2 >= 3) {
      std::vector<AgentId> rem(pool.begin(), pool.end());
      for (AgentId v : rem)
        if (work[v] != r2 - 1)
          shift("case2", v, target[v] + (r2 - 1) - work[v], "remainder clique of " + istr(r2));
      all_host_clique(rem);
      AgentId slot = case2_slot(plan);
      if (slot == -1)
        throw ConstructionError("class " + istr(k) + ": no spare endpoint for the remainder clique");
      shift("case2", rem[0], target[rem[0]] + 1, "remainder clique joined to the frame");
      add_bridge(rem[0], slot);
    }
  }

  // ---- step 3, case 1: blocks of k+1 chained by mutual-1/2 bridges
  void build_case1(int k, std::vector<AgentId> members, ClassPlan& plan) {
    long B = static_cast<long>(members.size()) / (k + 1);
    long r = static_cast<long>(members.size()) % (k + 1);
    if ((r == 1 || r == 2) && k >= 4) {
      // moving the leftovers down a class is a shift of 1 each, far cheaper
      // than stretching whole blocks
      for (long j = 0; j < r; ++j) {
        shift("case1", members.back(), target[members.back()] - 1,
              "remainder vertex moved down one class");
        members.pop_back();
      }
      r = 0;
      B = static_cast<long>(members.size()) / (k + 1);
    }

    std::vector<long> sizes(B, k + 1);
    if (r == 1 || r == 2) {  // k == 3 here: stretch the tail blocks instead
      if (B >= r)
        for (long j = 0; j < r; ++j) sizes[B - 1 - j] += 1;
      else
        sizes[B - 1] += r;
      r = 0;
    }
    if (r >= 3) sizes.push_back(r);

    note("case1", "class " + istr(k) + ": " + istr(sizes.size()) + " blocks");
    std::vector<std::vector<AgentId>> blocks;
    std::size_t at = 0;
    for (long s : sizes) {
      blocks.emplace_back(members.begin() + at, members.begin() + at + s);
      at += s;
    }
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const int achieved = static_cast<int>(blocks[bi].size()) - 1;
      for (AgentId v : blocks[bi])
        if (achieved != work[v])  // the block covers whatever the vertex still owes
          shift("case1", v, target[v] + achieved - work[v],
                "block of " + istr(blocks[bi].size()));
      all_host_clique(blocks[bi]);
    }
    for (std::size_t bi = 0; bi + 1 < blocks.size(); ++bi) {
      AgentId x = blocks[bi].back(), y = blocks[bi + 1].front();
      shift("case1", x, target[x] + 1, "chain bridge");
      shift("case1", y, target[y] + 1, "chain bridge");
      add_bridge(x, y);
    }
    for (const auto& block : blocks)
      for (AgentId v : block)
        if (bridge_of[v] == -1) plan.spare.push_back(v);
  }

  void step3() {
    // a class of one or two can't form a block; push its members somewhere useful
    std::vector<AgentId> c3 = class_of(3);
    if (c3.size() == 1 || c3.size() == 2) {
      int promote_to = 0;
      for (int k = 4; k <= K + 2 && promote_to == 0; ++k)
        if (!class_of(k).empty()) promote_to = k;
      for (AgentId v : c3) {
        if (promote_to != 0) {
          shift("step3", v, target[v] - work[v] + promote_to, "tiny class 3 promoted");
        } else {
          shift("step3", v, target[v] - work[v] + 1, "tiny class 3 demoted to pendant");
          is_pendant[v] = 1;
          pendants.push_back(v);
        }
      }
    }

    int kmax = 0;
    for (AgentId v = 0; v < n; ++v)
      if (active(v)) kmax = std::max(kmax, work[v]);
    if (kmax > K + 2)
      throw ConstructionError("a degree of " + istr(kmax) + " survived absorption (limit " +
                              istr(K + 2) + ")");
    for (int k = kmax; k >= 3; --k) {
      std::vector<AgentId> members = class_of(k);
      if (members.empty()) continue;
      if (members.size() <= 2) {
        for (AgentId v : members) {
          if (k > 3) {
            shift("step3", v, target[v] - 1, "tiny class moved down");
          } else {
            shift("step3", v, target[v] - work[v] + 1, "tiny class 3 demoted to pendant");
            is_pendant[v] = 1;
            pendants.push_back(v);
          }
        }
        continue;
      }
      ClassPlan plan;
      plan.k = k;
      const int mod = (k % 2 == 0) ? k : 2 * k;  // odd k: frame size must be even
      const int r2 = static_cast<int>(members.size() % mod);
      const int mH = static_cast<int>((members.size() - r2) / k);
      if (mH >= min_girth5_order(k)) {
        plan.case2 = true;
        build_case2(k, members, r2, plan);
      } else {
        build_case1(k, std::move(members), plan);
      }
      plans.emplace(k, std::move(plan));
    }
  }

  // ---- step 4: one bridge between consecutive degree classes
  void step4() {
    ClassPlan* prev = nullptr;
    int prev_k = 0;
    for (auto& [k, plan] : plans) {
      if (prev != nullptr) {
        AgentId x = connector(*prev, "step4", "bridge to the class of degree " + istr(k));
        AgentId y = connector(plan, "step4", "bridge to the class of degree " + istr(prev_k));
        if (x == -1 || y == -1)
          throw ConstructionError("no free endpoint to connect the degree classes " +
                                  istr(prev_k) + " and " + istr(k));
        add_bridge(x, y);
      }
      prev = &plan;
      prev_k = k;
    }
  }

  // ---- degree-1 vertices: mutual-1/2 onto hosts of class >= 4, where the
  // host's clique mates stay comfortably out of reach
  void attach_pendants() {
    while (next_pendant < pendants.size()) {
      AgentId p = pendants[next_pendant];
      AgentId host = -1;
      for (auto& [k, plan] : plans) {
        if (k < 4) continue;
        host = connector(plan, "pendants", "pendant attached");
        if (host != -1) break;
      }
      if (host == -1)
        throw ConstructionError("no remaining capacity for " +
                                istr(pendants.size() - next_pendant) + " degree-1 vertices");
      ++next_pendant;
      add_bridge(p, host);
      consumed[p] = 1;
      work[p] = 0;
    }
  }

  RealizationReport finish() {
    for (auto& [k, plan] : plans) {
      for (std::size_t i = 0; i < plan.bridges.size(); ++i)
        if (!plan.broken.count(static_cast<int>(i)))
          add_bridge(plan.bridges[i].first, plan.bridges[i].second);
      for (std::size_t i = plan.next_slot; i < plan.free_slots.size(); ++i) {
        AgentId v = plan.free_slots[i];
        shift("finalize", v, target[v] - 1, "freed bridge endpoint left open");
      }
    }

    EventConfiguration config;
    config.params = params;
    config.params.n = n;
    config.strategies.resize(n);
    for (AgentId v = 0; v < n; ++v)
      if (!targets[v].empty()) config.strategies[v] = realize_nested(targets[v], v);
    validate_configuration(config);

    ConnectionGraph g = connection_graph(config);
    std::vector<int> achieved = g.degrees();
    for (AgentId v = 0; v < n; ++v)
      if (achieved[v] != target[v])
        throw ConstructionError("degree bookkeeping mismatch at vertex " + istr(v) + ": built " +
                                istr(achieved[v]) + ", intended " + istr(target[v]) + " (" +
                                istr(log.size()) + " log entries)");
    if (!is_connected(g)) throw ConstructionError("realization came out disconnected");
    const int mi = max_invited(config);
    if (mi > K + 3)
      throw ConstructionError("an agent invites " + istr(mi) + " others, above the K+3 limit of " +
                              istr(K + 3));

    RealizationReport report;
    report.config = std::move(config);
    report.achieved.assign(achieved.begin(), achieved.end());
    for (AgentId v = 0; v < n; ++v) report.l1_shift += std::abs(achieved[v] - input[v]);
    report.K_used = K;
    report.step_log = std::move(log);
    return report;
  }
};

}  // namespace

SequenceCheck validate_sequence(const DegreeSequence& degrees, const Rational& gamma) {
  const int n = static_cast<int>(degrees.size());
  if (n == 0) throw DomainError("empty degree sequence");
  if (!(Rational(1, 2) < gamma && gamma < Rational(2, 3)))
    throw RegimeError("degree-sequence realization needs 1/2 < gamma < 2/3, got " + gamma.str());
  long n1 = 0, n2 = 0, high4 = 0, slack6 = 0;
  int dmax = 0;
  for (int d : degrees) {
    if (d < 1 || d > n - 1)
      throw DomainError("degree " + istr(d) + " outside [1, " + istr(n - 1) + "]");
    dmax = std::max(dmax, d);
    if (d == 1) ++n1;
    if (d == 2) ++n2;
    if (d >= 4) ++high4;
    if (d >= 6) slack6 += d - 3;
  }
  int K = std::max(2, dmax);
  for (int cand = 2; cand <= dmax; ++cand) {
    long low = 0, above = 0;
    for (int d : degrees) {
      if (d >= 2 && d <= cand) ++low;
      if (d > cand) above += d;
    }
    if (low >= above) {
      K = cand;
      break;
    }
  }
  if (n2 > slack6)
    throw DomainError("assumption (2) fails: " + istr(n2) +
                      " degree-2 vertices against a high-degree slack of " + istr(slack6));
  if (3 * n1 > high4)
    throw DomainError("assumption (3) fails: " + istr(n1) + " degree-1 vertices but only " +
                      istr(high4) + " vertices of degree >= 4");
  SequenceCheck out;
  out.K = K;
  out.diagnostics.push_back("K = " + istr(K) + ", max degree " + istr(dmax));
  out.diagnostics.push_back("degree-2 supply: " + istr(n2) + " of slack " + istr(slack6));
  out.diagnostics.push_back("degree-1 supply: " + istr(n1) + " of capacity " + istr(high4 / 3));
  return out;
}

DegreeSequence powerlaw_sequence(const Rational& alpha, int n) {
  if (n < 1) throw DomainError("sequence length must be positive");
  if (!(alpha > Rational(2)))
    throw DomainError("power-law exponent must exceed 2 for a finite-mean sequence");
  const long p = alpha.num_long(), q = alpha.den_long();
  const Rational cn = Rational(74544, 100000) * Rational(n);
  const Rational cnq = rat_pow(cn, q);

  std::map<int, long> counts;
  long total = 0;
  for (int k = 1; k <= n - 1; ++k) {
    // largest m with m^q * k^p <= (c*n)^q, i.e. m <= c*n*k^(-alpha), exactly
    long m = static_cast<long>(cn.to_double() * std::pow(static_cast<double>(k),
                                                         -alpha.to_double()));
    if (m < 0) m = 0;
    const Rational kp = rat_pow(Rational(k), p);
    while (m > 0 && rat_pow(Rational(m), q) * kp > cnq) --m;
    while (rat_pow(Rational(m + 1), q) * kp <= cnq) ++m;
    if (m == 0 && k > 1) break;
    counts[k] = m;
    total += m;
  }
  while (total > n) {  // floor(c*n*k^-a) sums to slightly above n for small alpha
    auto it = std::prev(counts.end());
    while (it->second == 0) it = std::prev(it);
    --it->second;
    --total;
  }
  if (total < n) counts[3] += n - total;

  long high4 = 0, slack6 = 0;
  for (const auto& [k, c] : counts) {
    if (k >= 4) high4 += c;
    if (k >= 6) slack6 += static_cast<long>(k - 3) * c;
  }
  if (counts.count(1) && counts[1] > high4 / 3) {  // degree-1 capacity
    counts[3] += counts[1] - high4 / 3;
    counts[1] = high4 / 3;
  }
  // each degree-2 pair burns two units of slack on one host, so stay at half
  if (counts.count(2) && counts[2] > slack6 / 2) {
    counts[3] += counts[2] - slack6 / 2;
    counts[2] = slack6 / 2;
  }

  DegreeSequence out;
  out.reserve(n);
  for (auto it = counts.rbegin(); it != counts.rend(); ++it)
    for (long j = 0; j < it->second; ++j) out.push_back(it->first);
  for (int d : out)
    if (d > n - 1) throw DomainError("power-law sequence needs a larger n");
  return out;
}

RealizationReport realize_degrees(const DegreeSequence& degrees, const Parameters& params,
                                  std::uint64_t seed) {
  if (!params.b.is_eps)
    throw UnsupportedRegimeError(
        "degree-sequence realizations only come out stable under a vanishing fee; pass b = eps");
  SequenceCheck check = validate_sequence(degrees, params.gamma());

  Pipeline pipe(degrees, params, check.K, seed);
  for (AgentId v = 0; v < pipe.n; ++v)
    if (degrees[v] == 1) {
      pipe.is_pendant[v] = 1;
      pipe.pendants.push_back(v);
    }
  for (const std::string& d : check.diagnostics) pipe.note("setup", d);

  pipe.step1();
  pipe.rounding();
  pipe.absorb();
  pipe.step3();
  pipe.step4();
  pipe.attach_pendants();
  return pipe.finish();
}

}  // namespace netgame
