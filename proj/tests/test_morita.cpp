#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "support/standing.hpp"

using namespace galg;

using testing::standing_instances;

namespace {

StandingInstance standing(const Datum& d) { return standing_assumptions(d); }

}  // namespace

TEST_CASE("the skew rings form a Morita context on every instance") {
  for (const auto& [name, s] : standing_instances()) {
    INFO(name);
    MoritaReport rep = skew_skew_context(s);
    INFO(rep.part << " " << rep.witness);
    CHECK(rep.ok);
    CHECK(rep.u_closed_form);
    CHECK(rep.v_closed_form);
    CHECK(rep.corner_is_s);
    CHECK(rep.ideal_is_r);
    CHECK(rep.associative);
    CHECK(rep.exhibited);
  }
}

TEST_CASE("the idempotent coordinates are Galois on the pair action") {
  StandingInstance s = standing(instances::pair_swap_datum());
  const FiniteRing& A = *s.datum.ring;
  const Elem e1 = A.parse("e1"), e2 = A.parse("e2");
  CHECK(verify_galois({{e1, e1}, {e2, e2}}, s.groupoid_level));
  CHECK_FALSE(verify_galois({{e1, e1}}, s.groupoid_level));
  CHECK_FALSE(verify_galois({{e1, e2}, {e2, e1}}, s.groupoid_level));

  GaloisSearch found = search_galois(s.groupoid_level, 2);
  REQUIRE(found.coordinates);
  CHECK(verify_galois(*found.coordinates, s.groupoid_level));
  CHECK(found.complete);
  auto by_span = galois_by_span(s.groupoid_level);
  REQUIRE(by_span);
  CHECK(verify_galois(*by_span, s.groupoid_level));
}

TEST_CASE("Galois search and the span criterion agree") {
  for (const auto& [name, s] : standing_instances()) {
    INFO(name);
    for (const UnitalAction* u : {&s.groupoid_level, &s.group_level}) {
      auto by_span = galois_by_span(*u);
      if (by_span) CHECK(verify_galois(*by_span, *u));
      GaloisSearch found = search_galois(*u, u->base.generators().size());
      CHECK(found.complete);
      CHECK(found.coordinates.has_value() == by_span.has_value());
    }
  }
  Caps tight;
  tight.search_candidates = 1;
  CHECK_THROWS_AS(search_galois(standing(instances::square_tau_global_datum()).groupoid_level, 3, tight),
                  Error);
}

TEST_CASE("the four strictness conditions agree") {
  for (const auto& [name, s] : standing_instances()) {
    INFO(name);
    StrictnessReport r = strictness_report(s);
    CHECK(r.consistent);
    for (bool c : r.condition) CHECK(c == r.strict);
    CHECK(r.gamma.balanced);
    CHECK(r.gamma.gamma == r.gamma.group_gamma);
    CHECK(r.gamma.gamma_prime == r.gamma.group_gamma_prime);
  }
  StrictnessReport pair = strictness_report(standing(instances::pair_swap_datum()));
  for (bool c : pair.condition) CHECK(c);
  CHECK(pair.search_found);
  StrictnessReport char2 = strictness_report(standing(instances::char2_trivial_datum()));
  for (bool c : char2.condition) CHECK_FALSE(c);
  CHECK_FALSE(char2.search_found);
  CHECK(char2.search_complete);
}

TEST_CASE("Gamma values land in the invariants") {
  for (const auto& [name, s] : standing_instances()) {
    INFO(name);
    const UnitalAction& u = s.groupoid_level;
    auto inv = oracle::invariants(u.action, u.base);
    for (Elem a : u.base.generators())
      for (Elem b : u.base.generators()) CHECK(inv.count(gamma_map(u, a, b)) == 1);
  }
}

TEST_CASE("separability elements exist at both levels or at neither") {
  std::size_t positive = 0, negative = 0;
  for (const auto& [name, s] : standing_instances()) {
    INFO(name);
    SeparabilityReport rep = separability_element(s);
    CHECK(rep.equivalent());
    CHECK(rep.witnesses_verified);
    CHECK(rep.transported);
    auto top = oracle::separability_elements(s.groupoid_level.action, s.groupoid_level.base);
    auto low = oracle::separability_elements(s.group_level.action, s.group_level.base);
    CHECK(rep.groupoid_witness.has_value() == !top.empty());
    CHECK(rep.group_witness.has_value() == !low.empty());
    for (Elem a : top) CHECK(is_groupoid_separability_element(s, a));
    for (Elem b : low) CHECK(is_group_separability_element(s, b));
    (rep.groupoid_witness ? positive : negative) += 1;
  }
  CHECK(positive >= 3);
  CHECK(negative >= 1);
  SeparabilityReport char2 = separability_element(standing(instances::char2_trivial_datum()));
  CHECK_FALSE(char2.groupoid_witness);
  CHECK_FALSE(char2.group_witness);
}

TEST_CASE("the Frobenius element is central with counit identity") {
  for (const Datum& d : {instances::pair_swap_datum(), instances::square_tau_global_datum()}) {
    StandingInstance s = standing(d);
    FrobeniusReport rep = frobenius_witness(s.groupoid_level);
    INFO(rep.witness);
    CHECK(rep.central);
    CHECK(rep.counit_identity);
    CHECK(rep.counit_bimodule);
    CHECK(rep.tensor_generators > 0);
  }
}
