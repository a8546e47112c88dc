#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "support/standing.hpp"

using namespace galg;

using testing::standing_instances;

TEST_CASE("invariant subring and traces agree with the definitions") {
  for (const auto& [name, s] : standing_instances()) {
    INFO(name);
    const UnitalAction& u = s.groupoid_level;
    const auto& beta = u.action;
    InvariantSubring inv = invariant_subring(u);
    std::set<Elem> expected = oracle::invariants(beta, u.base);
    CHECK(std::set<Elem>(inv.elements.begin(), inv.elements.end()) == expected);
    CHECK(inv.presentation.order() == expected.size());
    for (Elem a : u.base.elements()) {
      Elem t = trace(u, a);
      CHECK(t == oracle::trace(beta, a));
      CHECK(expected.count(t) == 1);
    }
    std::vector<Elem> img = trace_image(u).elements();
    CHECK(std::set<Elem>(img.begin(), img.end()) == oracle::trace_image(beta, u.base));
  }
}

TEST_CASE("partial traces decompose the full trace") {
  for (const auto& [name, s] : standing_instances()) {
    INFO(name);
    const UnitalAction& u = s.groupoid_level;
    const auto& G = *u.action.groupoid();
    const auto& A = *u.action.ring();
    for (Elem a : u.base.elements()) {
      Elem by_pairs = A.zero(), by_targets = A.zero();
      for (Mor z : G.objects()) {
        by_targets = A.add(by_targets, trace(u, a, TraceKind::ToObject, kNoMor, z));
        for (Mor y : G.objects()) by_pairs = A.add(by_pairs, trace(u, a, TraceKind::Partial, y, z));
      }
      CHECK(by_pairs == trace(u, a));
      CHECK(by_targets == trace(u, a));
    }
  }
  auto s = standing_assumptions(instances::pair_swap_datum());
  CHECK_THROWS_AS(trace(s.groupoid_level, 0, TraceKind::Partial), Error);
  auto g = s.datum.groupoid;
  CHECK_THROWS_AS(trace(s.groupoid_level, 0, TraceKind::ToObject, kNoMor, g->index("(1,2)")), Error);
}

TEST_CASE("datum-level invariance and trace identities hold on every instance") {
  for (const auto& [name, s] : standing_instances()) {
    INFO(name);
    CHECK(check_invariants_prop(s).ok);
    CHECK(check_trace_transport(s).ok);
    CHECK(check_trace_corollary(s).ok);
    auto fixed = oracle::invariants(s.groupoid_level.action, Ideal::whole(s.datum.ring));
    for (Elem b = 0; b < s.datum.ring->size(); ++b)
      CHECK(is_invariant_via_datum(s, b) == (fixed.count(b) == 1));
  }
}

TEST_CASE("trace surjectivity is the same at both levels") {
  for (const auto& [name, s] : standing_instances()) {
    INFO(name);
    TraceSurjectivity r = trace_surjectivity(s);
    CHECK(r.full == r.group_part);
    auto inv = oracle::invariants(s.groupoid_level.action, s.groupoid_level.base);
    CHECK(r.full == (oracle::trace_image(s.groupoid_level.action, s.groupoid_level.base) == inv));
  }
  auto char2 = trace_surjectivity(standing_assumptions(instances::char2_trivial_datum()));
  CHECK_FALSE(char2.full);
  CHECK_FALSE(char2.group_part);
  auto pair = trace_surjectivity(standing_assumptions(instances::pair_swap_datum()));
  CHECK(pair.full);
  CHECK(pair.group_part);
}
