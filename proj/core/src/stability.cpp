#include "netgame/stability.hpp"

#include <algorithm>
#include <map>

#include "netgame/errors.hpp"
#include "netgame/parallel.hpp"

namespace netgame {

DeficitMap deficits(const EventConfiguration& config, const AttendanceIndex& idx,
                    AgentId v) {
  DeficitMap out;
  out.agent = v;
  std::unordered_map<AgentId, Rational> supplied;  // by hosts != v
  for (auto [host, i] : idx[v]) {
    const Event& ev = config.strategies[host][i];
    supplied[ev.host] += ev.rate;
    for (AgentId u : ev.invitees)
      if (u != v) supplied[u] += ev.rate;
  }
  const Rational one(1);
  for (auto& [u, m] : supplied) out.known.emplace(u, one - m);
  return out;
}

DeficitMap deficits(const EventConfiguration& config, AgentId v) {
  return deficits(config, attendance_index(config), v);
}

namespace {

// agents with deficit in (0, gamma), sorted by (deficit, id). When gamma > 1
// the default deficit 1 qualifies too, so every agent missing from the
// sparse map is a candidate — that regime only shows up at small n.
std::vector<std::pair<Rational, AgentId>> affordable_sorted(
    const DeficitMap& dm, const Rational& gamma, int n, AgentId v) {
  std::vector<std::pair<Rational, AgentId>> cand;
  const Rational zero(0), one(1);
  for (const auto& [u, e] : dm.known)
    if (e > zero && e < gamma) cand.emplace_back(e, u);
  if (gamma > one) {
    for (AgentId u = 0; u < n; ++u)
      if (u != v && !dm.known.count(u)) cand.emplace_back(one, u);
  }
  std::sort(cand.begin(), cand.end());
  return cand;
}

// positive rate v currently supplies toward each agent
std::unordered_map<AgentId, Rational> supplied_by(const EventConfiguration& config,
                                                  AgentId v) {
  std::unordered_map<AgentId, Rational> m;
  for (const Event& ev : config.strategies[v])
    for (AgentId u : ev.invitees) m[u] += ev.rate;
  return m;
}

}  // namespace

ResponseSets response_sets(const EventConfiguration& config, AgentId v) {
  DeficitMap dm = deficits(config, v);
  ResponseSets out;
  const Rational zero(0);
  for (const auto& [u, e] : dm.known)
    if (e <= zero) out.free.push_back(u);
  std::sort(out.free.begin(), out.free.end());
  for (auto& [e, u] : affordable_sorted(dm, config.params.gamma(),
                                        config.params.n, v))
    out.targets.push_back(u);
  for (auto& [u, r] : supplied_by(config, v))
    if (r.sign() > 0) out.invited.push_back(u);
  std::sort(out.invited.begin(), out.invited.end());
  return out;
}

Strategy realize_nested(const std::vector<std::pair<AgentId, Rational>>& targets,
                        AgentId v) {
  std::vector<std::pair<Rational, AgentId>> order;
  order.reserve(targets.size());
  for (const auto& [u, r] : targets) {
    if (r.sign() < 0) throw DomainError("negative target rate for agent " +
                                        std::to_string(u));
    if (r.sign() > 0) order.emplace_back(r, u);
  }
  // descending rate, ascending id within a level
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;
  });
  Strategy strat;
  std::vector<AgentId> prefix;
  for (std::size_t i = 0; i < order.size(); ++i) {
    prefix.push_back(order[i].second);
    Rational next = (i + 1 < order.size()) ? order[i + 1].first : Rational(0);
    Rational r = order[i].first - next;
    if (r.sign() == 0) continue;  // same level, the next pass widens the event
    Event ev;
    ev.host = v;
    ev.invitees = prefix;
    std::sort(ev.invitees.begin(), ev.invitees.end());
    ev.rate = r;
    strat.push_back(std::move(ev));
  }
  return strat;
}

InfinitesimalUtility realization_cost(
    const Parameters& params,
    const std::vector<std::pair<AgentId, Rational>>& targets) {
  InfinitesimalUtility out;
  Rational sum, maxr;
  for (const auto& [u, r] : targets) {
    if (r.sign() < 0) throw DomainError("negative target rate for agent " +
                                        std::to_string(u));
    sum += r;
    if (r > maxr) maxr = r;
  }
  out.main = params.c * sum;
  out.b_coeff = maxr;
  return out;
}

BestResponse best_response(const EventConfiguration& config,
                           const AttendanceIndex& idx, AgentId v) {
  const Parameters& p = config.params;
  DeficitMap dm = deficits(config, idx, v);

  int free_count = 0;
  const Rational zero(0);
  for (const auto& [u, e] : dm.known)
    if (e <= zero) ++free_count;

  auto cand = affordable_sorted(dm, p.gamma(), p.n, v);

  // utility of inviting the first j candidates at exactly their deficits:
  // main = a*(free + j) - c*sum(e_1..e_j), b_coeff = -e_j (nested total rate)
  Rational base = p.a * Rational(free_count);
  InfinitesimalUtility best{base, Rational(0)};
  int best_j = 0;
  Rational running;
  for (int j = 1; j <= static_cast<int>(cand.size()); ++j) {
    running += cand[j - 1].first;
    InfinitesimalUtility alt{p.a * Rational(free_count + j) - p.c * running,
                             -cand[j - 1].first};
    if (compare_utility(alt, best, p.b) > 0) {  // ties keep the smaller j
      best = alt;
      best_j = j;
    }
  }

  BestResponse out;
  for (int i = 0; i < best_j; ++i)
    out.target_rates.emplace_back(cand[i].second, cand[i].first);
  std::sort(out.target_rates.begin(), out.target_rates.end());
  out.strategy = realize_nested(out.target_rates, v);
  out.utility = best;
  return out;
}

BestResponse best_response(const EventConfiguration& config, AgentId v) {
  return best_response(config, attendance_index(config), v);
}

namespace {

StabilityReport merge_sorted(std::vector<std::vector<Violation>>& per_agent) {
  StabilityReport report;
  for (auto& vs : per_agent)
    for (auto& viol : vs) report.violations.push_back(std::move(viol));
  report.stable = report.violations.empty();
  return report;
}

}  // namespace

StabilityReport check_stability_criterion(const EventConfiguration& config) {
  if (!config.params.b.is_eps)
    throw UnsupportedRegimeError(
        "closed-form stability test applies only to the eps-fee regime; "
        "use the deviation check for concrete b");
  const int n = config.params.n;
  const Rational gamma = config.params.gamma();
  AttendanceIndex idx = attendance_index(config);
  std::vector<std::vector<Violation>> found(n);

  parallel_for(n, [&](int v) {
    DeficitMap dm = deficits(config, idx, v);
    auto supplied = supplied_by(config, v);

    auto cand = affordable_sorted(dm, gamma, n, v);
    std::unordered_map<AgentId, Rational> in_t;
    for (auto& [e, u] : cand) in_t.emplace(u, e);

    std::vector<std::pair<Rational, AgentId>> invited;  // (deficit, id)
    for (auto& [u, r] : supplied) {
      if (r.sign() <= 0) continue;
      Rational e = dm.at(u);
      auto t = in_t.find(u);
      if (t == in_t.end()) {
        found[v].push_back({v, "subset", {v, u},
                            "invited agent " + std::to_string(u) +
                                " has deficit " + e.str() +
                                " outside (0, " + gamma.str() + ")"});
        continue;
      }
      if (r != e)
        found[v].push_back({v, "rate-match", {v, u},
                            "supplies " + r.str() + " but the deficit is " +
                                e.str()});
      invited.emplace_back(e, u);
    }

    if (!invited.empty()) {
      auto worst_in = *std::max_element(invited.begin(), invited.end());
      // smallest uninvited affordable deficit, if any
      for (auto& [e, u] : cand) {
        if (supplied.count(u) && supplied[u].sign() > 0) continue;
        if (worst_in.first >= e)
          found[v].push_back({v, "ordering", {worst_in.second, u},
                              "invited deficit " + worst_in.first.str() +
                                  " is not below uninvited deficit " + e.str()});
        break;  // cand is sorted, the first uninvited is the minimum
      }
    }
  });

  return merge_sorted(found);
}

StabilityReport check_stability_deviation(const EventConfiguration& config) {
  const int n = config.params.n;
  ConnectionGraph graph = connection_graph(config);
  AttendanceIndex idx = attendance_index(config);
  std::vector<std::vector<Violation>> found(n);

  parallel_for(n, [&](int v) {
    InfinitesimalUtility current = utility(config, graph, v);
    BestResponse br = best_response(config, idx, v);
    if (compare_utility(br.utility, current, config.params.b) > 0) {
      found[v].push_back(
          {v, "profitable-deviation", {v, -1},
           "current (" + current.main.str() + ", " + current.b_coeff.str() +
               ") beaten by (" + br.utility.main.str() + ", " +
               br.utility.b_coeff.str() + ") inviting " +
               std::to_string(br.target_rates.size()) + " agents"});
    }
  });

  return merge_sorted(found);
}

}  // namespace netgame
