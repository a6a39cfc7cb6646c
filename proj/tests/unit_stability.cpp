#include <algorithm>

#include "doctest.h"

#include "netgame/errors.hpp"
#include "netgame/stability.hpp"
#include "support.hpp"

using namespace netgame;

namespace {

// everyone invites everyone at the given rate
EventConfiguration uniform_clique(int n, const Rational& rate, long a, long c) {
  EventConfiguration cfg{oracle::params_gamma(a, c, BCost::eps(), n),
                         std::vector<Strategy>(n)};
  for (AgentId v = 0; v < n; ++v) {
    Event ev;
    ev.host = v;
    for (AgentId u = 0; u < n; ++u)
      if (u != v) ev.invitees.push_back(u);
    ev.rate = rate;
    cfg.strategies[v].push_back(ev);
  }
  return cfg;
}

bool has_condition(const StabilityReport& r, const std::string& want) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.condition == want; });
}

}  // namespace

TEST_SUITE("stability") {

TEST_CASE("deficits default to 1 and subtract only foreign supply") {
  // 0 hosts {1,2} at 2/5; 1 hosts {0} at 1/5. From 0's seat: own events do
  // not count, so E(0,1) = 1 - 1/5 and E(0,2) = 1.
  EventConfiguration cfg{oracle::params_gamma(1, 2, BCost::eps(), 4),
                         std::vector<Strategy>(4)};
  cfg.strategies[0].push_back(Event{0, {1, 2}, Rational(2, 5)});
  cfg.strategies[1].push_back(Event{1, {0}, Rational(1, 5)});

  const DeficitMap d0 = deficits(cfg, 0);
  CHECK(d0.at(1) == Rational(4, 5));
  CHECK(d0.at(2) == Rational(1));  // stranger, never co-attended
  CHECK(d0.at(3) == Rational(1));

  // from 2's seat, 0's event supplies 2/5 toward agent 1 as well
  const DeficitMap d2 = deficits(cfg, 2);
  CHECK(d2.at(0) == Rational(3, 5));
  CHECK(d2.at(1) == Rational(3, 5));
}

TEST_CASE("deficits agree with the brute-force sum on random configurations") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const EventConfiguration cfg = oracle::random_config(rng, n, BCost::eps());
    const AttendanceIndex idx = attendance_index(cfg);
    for (AgentId v = 0; v < n; ++v) {
      const DeficitMap plain = deficits(cfg, v);
      const DeficitMap indexed = deficits(cfg, idx, v);
      for (AgentId u = 0; u < n; ++u) {
        if (u == v) continue;
        const Rational want = Rational(1) - oracle::foreign_rate(cfg, v, u);
        CHECK(plain.at(u) == want);
        CHECK(indexed.at(u) == want);
      }
    }
  }
}

TEST_CASE("response sets split targets, invited and free correctly") {
  // gamma = 3/5. Arrange, from 0's seat: E(1) = 1/2 (target), E(2) = 0
  // (free), E(3) = 3/5 (exactly gamma, unaffordable), E(4) = 1 (stranger).
  EventConfiguration cfg{oracle::params_gamma(3, 5, BCost::eps(), 5),
                         std::vector<Strategy>(5)};
  cfg.strategies[1].push_back(Event{1, {0}, Rational(1, 2)});
  cfg.strategies[2].push_back(Event{2, {0}, Rational(1)});
  cfg.strategies[3].push_back(Event{3, {0}, Rational(2, 5)});
  cfg.strategies[0].push_back(Event{0, {1}, Rational(1, 8)});

  const ResponseSets rs = response_sets(cfg, 0);
  CHECK(rs.targets == std::vector<AgentId>{1});
  CHECK(rs.free == std::vector<AgentId>{2});
  CHECK(rs.invited == std::vector<AgentId>{1});
}

TEST_CASE("targets sort by deficit first, id second") {
  // E(3) = 1/4, E(1) = E(2) = 1/2, gamma = 9/10
  EventConfiguration cfg{oracle::params_gamma(9, 10, BCost::eps(), 4),
                         std::vector<Strategy>(4)};
  cfg.strategies[3].push_back(Event{3, {0}, Rational(3, 4)});
  cfg.strategies[1].push_back(Event{1, {0}, Rational(1, 2)});
  cfg.strategies[2].push_back(Event{2, {0}, Rational(1, 2)});
  const ResponseSets rs = response_sets(cfg, 0);
  CHECK(rs.targets == std::vector<AgentId>{3, 1, 2});
}

TEST_CASE("realize_nested builds a chain of widening events") {
  const Strategy s = realize_nested({{1, Rational(1, 2)}, {2, Rational(1, 4)},
                                     {3, Rational(1, 4)}},
                                    0);
  REQUIRE(s.size() == 2);
  CHECK(s[0].invitees == std::vector<AgentId>{1});
  CHECK(s[0].rate == Rational(1, 4));
  CHECK(s[1].invitees == std::vector<AgentId>{1, 2, 3});
  CHECK(s[1].rate == Rational(1, 4));

  // equal targets collapse to a single event
  const Strategy tie = realize_nested({{2, Rational(1, 3)}, {1, Rational(1, 3)}}, 0);
  REQUIRE(tie.size() == 1);
  CHECK(tie[0].invitees == std::vector<AgentId>{1, 2});
  CHECK(tie[0].rate == Rational(1, 3));

  // zero-rate targets are dropped, negative ones refused
  CHECK(realize_nested({{1, Rational(0)}}, 0).empty());
  CHECK_THROWS_AS(realize_nested({{1, Rational(-1, 2)}}, 0), DomainError);
}

TEST_CASE("each nested target is supplied exactly its rate") {
  Rng rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    const int count = 1 + static_cast<int>(rng.below(8));
    std::vector<std::pair<AgentId, Rational>> targets;
    for (int i = 0; i < count; ++i)
      targets.emplace_back(i + 1, Rational(1 + static_cast<long>(rng.below(12)),
                                           1 + static_cast<long>(rng.below(12))));
    const Strategy s = realize_nested(targets, 0);
    for (const auto& [u, want] : targets) {
      Rational got;
      for (const Event& ev : s)
        if (std::find(ev.invitees.begin(), ev.invitees.end(), u) != ev.invitees.end())
          got += ev.rate;
      CHECK(got == want);
    }
    // chain shape: each event's invitees contain the previous event's
    for (std::size_t i = 1; i < s.size(); ++i) {
      CHECK(s[i - 1].invitees.size() < s[i].invitees.size());
      CHECK(std::includes(s[i].invitees.begin(), s[i].invitees.end(),
                          s[i - 1].invitees.begin(), s[i - 1].invitees.end()));
    }
  }
}

TEST_CASE("realization_cost equals the cost of the realized strategy") {
  Rng rng(61);
  const Parameters p = oracle::params_gamma(3, 7, BCost::eps(), 20);
  for (int trial = 0; trial < 40; ++trial) {
    const int count = 1 + static_cast<int>(rng.below(10));
    std::vector<std::pair<AgentId, Rational>> targets;
    Rational sum, maxr;
    for (int i = 0; i < count; ++i) {
      const Rational r(1 + static_cast<long>(rng.below(12)),
                       1 + static_cast<long>(rng.below(12)));
      targets.emplace_back(i + 1, r);
      sum += r;
      if (r > maxr) maxr = r;
    }
    const InfinitesimalUtility closed = realization_cost(p, targets);
    CHECK(closed.main == p.c * sum);
    CHECK(closed.b_coeff == maxr);
    const InfinitesimalUtility built = cost(p, realize_nested(targets, 0));
    CHECK(built.main == closed.main);
    CHECK(built.b_coeff == closed.b_coeff);
  }
}

TEST_CASE("best response ties the exhaustive subset search") {
  Rng rng(73);
  int trials = 0;
  for (const BCost& b : {BCost::eps(), BCost::concrete(Rational(0)),
                         BCost::concrete(Rational(1, 3))}) {
    for (int i = 0; i < 60; ++i) {
      const int n = 2 + static_cast<int>(rng.below(5));
      const EventConfiguration cfg = oracle::random_config(rng, n, b);
      const AgentId v = static_cast<AgentId>(rng.below(n));
      const BestResponse got = best_response(cfg, v);
      const oracle::BestReply want = oracle::exhaustive_best_reply(cfg, v);
      CHECK(compare_utility(got.utility, want.utility, b) == 0);
      // target_rates comes back sorted by id
      CHECK(std::is_sorted(got.target_rates.begin(), got.target_rates.end(),
                           [](const auto& x, const auto& y) { return x.first < y.first; }));
      // and the returned strategy really achieves the claimed utility
      EventConfiguration replay = cfg;
      replay.strategies[v] = got.strategy;
      const InfinitesimalUtility real = oracle::utility(replay, v);
      CHECK(real.main == got.utility.main);
      CHECK(real.b_coeff == got.utility.b_coeff);
      ++trials;
    }
  }
  CHECK(trials == 180);
}

TEST_CASE("the two-agent best response invites iff the deficit is affordable") {
  // gamma = 3/2 > 1: hosting {1} at rate 1 nets a - c > 0
  EventConfiguration want{oracle::params_gamma(3, 2, BCost::eps(), 2),
                          std::vector<Strategy>(2)};
  const BestResponse yes = best_response(want, 0);
  REQUIRE(yes.strategy.size() == 1);
  CHECK(yes.strategy[0].invitees == std::vector<AgentId>{1});
  CHECK(yes.strategy[0].rate == Rational(1));
  CHECK(yes.utility.main == Rational(1));

  // gamma = 2/3 < 1: the stranger costs more than it pays
  EventConfiguration no{oracle::params_gamma(2, 3, BCost::eps(), 2),
                        std::vector<Strategy>(2)};
  CHECK(best_response(no, 0).strategy.empty());
}

TEST_CASE("criterion checker accepts the uniform clique above threshold") {
  const EventConfiguration cfg = uniform_clique(4, Rational(1, 4), 2, 5);  // gamma 2/5
  const StabilityReport crit = check_stability_criterion(cfg);
  CHECK(crit.stable);
  CHECK(crit.violations.empty());
  CHECK(check_stability_deviation(cfg).stable);
}

TEST_CASE("criterion checker flags unaffordable invitations as subset violations") {
  // gamma = 1/4 makes the 1/4-deficit clique exactly unaffordable
  const EventConfiguration cfg = uniform_clique(4, Rational(1, 4), 1, 4);
  const StabilityReport crit = check_stability_criterion(cfg);
  CHECK_FALSE(crit.stable);
  CHECK(has_condition(crit, "subset"));
  CHECK_FALSE(check_stability_deviation(cfg).stable);
}

TEST_CASE("criterion checker flags oversupplied connections as rate mismatches") {
  // the pair overshoots: both host each other at 3/4, so each pays 3/4
  // against a deficit of only 1/4
  EventConfiguration cfg{oracle::params_gamma(1, 2, BCost::eps(), 2),
                         std::vector<Strategy>(2)};
  cfg.strategies[0].push_back(Event{0, {1}, Rational(3, 4)});
  cfg.strategies[1].push_back(Event{1, {0}, Rational(3, 4)});
  const StabilityReport crit = check_stability_criterion(cfg);
  CHECK_FALSE(crit.stable);
  CHECK(has_condition(crit, "rate-match"));
  CHECK_FALSE(check_stability_deviation(cfg).stable);
}

TEST_CASE("criterion checker flags skipping a cheaper target as an ordering violation") {
  // agent 0 sees E(1) = 1/5 and E(2) = 2/5, both under gamma = 1/2, but
  // invites only the dearer one at its exact deficit
  EventConfiguration cfg{oracle::params_gamma(1, 2, BCost::eps(), 3),
                         std::vector<Strategy>(3)};
  cfg.strategies[1].push_back(Event{1, {0}, Rational(4, 5)});
  cfg.strategies[2].push_back(Event{2, {0}, Rational(3, 5)});
  cfg.strategies[0].push_back(Event{0, {2}, Rational(2, 5)});
  const StabilityReport crit = check_stability_criterion(cfg);
  CHECK_FALSE(crit.stable);
  CHECK(has_condition(crit, "ordering"));
  CHECK_FALSE(check_stability_deviation(cfg).stable);
}

TEST_CASE("criterion checker refuses concrete fees") {
  const EventConfiguration zero = uniform_clique(3, Rational(1, 3), 1, 2);
  EventConfiguration concrete = zero;
  concrete.params.b = BCost::concrete(Rational(0));
  CHECK_THROWS_AS(check_stability_criterion(concrete), UnsupportedRegimeError);
  concrete.params.b = BCost::concrete(Rational(1, 10));
  CHECK_THROWS_AS(check_stability_criterion(concrete), UnsupportedRegimeError);
}

TEST_CASE("deviation checker reports the violating agent with a utility gap") {
  // a lone host serving two guests at gamma < 1 wants out
  EventConfiguration cfg{oracle::params_gamma(3, 4, BCost::eps(), 3),
                         std::vector<Strategy>(3)};
  cfg.strategies[0].push_back(Event{0, {1}, Rational(1)});
  cfg.strategies[0].push_back(Event{0, {2}, Rational(1)});
  const StabilityReport dev = check_stability_deviation(cfg);
  CHECK_FALSE(dev.stable);
  REQUIRE_FALSE(dev.violations.empty());
  CHECK(dev.violations[0].agent == 0);
  CHECK(dev.violations[0].condition == "profitable-deviation");
  CHECK_FALSE(dev.violations[0].detail.empty());
}

TEST_CASE("the empty configuration is stable exactly when strangers are dear") {
  EventConfiguration sparse{oracle::params_gamma(2, 3, BCost::eps(), 4),
                            std::vector<Strategy>(4)};
  CHECK(check_stability_deviation(sparse).stable);
  CHECK(check_stability_criterion(sparse).stable);

  EventConfiguration eager{oracle::params_gamma(3, 2, BCost::eps(), 4),
                           std::vector<Strategy>(4)};
  CHECK_FALSE(check_stability_deviation(eager).stable);
}

TEST_CASE("checkers agree on the uniform clique across the threshold") {
  for (int l = 2; l <= 6; ++l) {
    // gamma a hair above 1/l: 11/(10l) versus a hair below: 9/(10l)
    const EventConfiguration above = uniform_clique(l, Rational(1, l), 11, 10 * l);
    CHECK(check_stability_criterion(above).stable);
    CHECK(check_stability_deviation(above).stable);
    const EventConfiguration below = uniform_clique(l, Rational(1, l), 9, 10 * l);
    CHECK_FALSE(check_stability_criterion(below).stable);
    CHECK_FALSE(check_stability_deviation(below).stable);
  }
}

}  // TEST_SUITE
