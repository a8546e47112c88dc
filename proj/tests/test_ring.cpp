#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace galg;

namespace {

// Ring axioms over every triple, by direct evaluation.
bool ring_axioms(const FiniteRing& A) {
  for (Elem a = 0; a < A.size(); ++a) {
    if (A.add(a, A.zero()) != a || A.add(a, A.neg(a)) != A.zero()) return false;
    if (auto one = A.one(); one && (A.mul(*one, a) != a || A.mul(a, *one) != a)) return false;
    for (Elem b = 0; b < A.size(); ++b) {
      if (A.add(a, b) != A.add(b, a)) return false;
      for (Elem c = 0; c < A.size(); ++c) {
        if (A.add(A.add(a, b), c) != A.add(a, A.add(b, c))) return false;
        if (A.mul(A.mul(a, b), c) != A.mul(a, A.mul(b, c))) return false;
        if (A.mul(a, A.add(b, c)) != A.add(A.mul(a, b), A.mul(a, c))) return false;
        if (A.mul(A.add(a, b), c) != A.add(A.mul(a, c), A.mul(b, c))) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("Z/n tables agree with integer arithmetic") {
  for (int n : {2, 3, 4, 6, 12}) {
    auto A = ring_zmod(n);
    REQUIRE(A->size() == static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        CHECK(A->add(A->parse(std::to_string(a)), A->parse(std::to_string(b))) ==
              A->parse(std::to_string((a + b) % n)));
        CHECK(A->mul(A->parse(std::to_string(a)), A->parse(std::to_string(b))) ==
              A->parse(std::to_string(a * b % n)));
      }
    CHECK(A->exponent() == n);
  }
}

TEST_CASE("finite fields are fields with a Frobenius automorphism") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}, {2, 4}}) {
    INFO("GF(" << p << "^" << k << ")");
    auto F = ring_gf(p, k);
    const auto& c = F->component(0);
    std::size_t q = 1;
    for (int i = 0; i < k; ++i) q *= static_cast<std::size_t>(p);
    REQUIRE(F->size() == q);
    REQUIRE(F->one());
    for (Elem a = 1; a < q; ++a) {
      bool invertible = false;
      for (Elem b = 1; b < q && !invertible; ++b) invertible = F->mul(a, b) == *F->one();
      CHECK(invertible);
    }
    REQUIRE(c.has_frobenius());
    std::size_t fixed = 0;
    for (RingComponent::Index a = 0; a < q; ++a) {
      RingComponent::Index x = a;
      for (int i = 0; i < k; ++i) x = c.frobenius(x);
      CHECK(x == a);
      if (c.frobenius(a) == a) ++fixed;
      for (RingComponent::Index b = 0; b < q; ++b) {
        CHECK(c.frobenius(c.mul(a, b)) == c.mul(c.frobenius(a), c.frobenius(b)));
        CHECK(c.frobenius(c.add(a, b)) == c.add(c.frobenius(a), c.frobenius(b)));
      }
    }
    CHECK(fixed == static_cast<std::size_t>(p));
  }
  CHECK_THROWS_AS(ring_gf(4, 1), Error);
}

TEST_CASE("ring axioms hold exhaustively on small rings") {
  CHECK(ring_axioms(*ring_gf(3, 2)));
  CHECK(ring_axioms(*ring_product({ring_zmod(4), ring_gf(2, 2)})));
  CHECK(ring_axioms(*oracle::upper_triangular_z2()));
}

TEST_CASE("a noncommutative table ring") {
  auto T = oracle::upper_triangular_z2();
  CHECK(T->size() == 8);
  bool commutative = true;
  for (Elem a = 0; a < 8; ++a)
    for (Elem b = 0; b < 8; ++b) commutative = commutative && T->mul(a, b) == T->mul(b, a);
  CHECK_FALSE(commutative);
  // Only 0 and 1 are central idempotents although there are other idempotents
  CHECK(central_idempotents(*T).size() == 2);
  CHECK(T->is_idempotent(T->parse("u100")));
  CHECK_FALSE(T->is_central(T->parse("u100")));
}

TEST_CASE("bad tables are rejected") {
  std::vector<std::string> names = {"0", "1"};
  std::vector<std::vector<std::size_t>> add = {{0, 1}, {1, 0}};
  std::vector<std::vector<std::size_t>> not_distributive = {{0, 1}, {1, 1}};
  CHECK_THROWS_AS(ring_from_tables(names, add, not_distributive), Error);
  std::vector<std::vector<std::size_t>> not_group = {{0, 1}, {1, 1}};
  CHECK_THROWS_AS(ring_from_tables(names, not_group, {{0, 0}, {0, 1}}), Error);
  try {
    ring_from_tables(names, add, {{0, 1}});
    FAIL("ragged table accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TableInvalid);
  }
}

TEST_CASE("product rings decompose by central idempotents") {
  auto A = ring_product({ring_zmod(4), ring_gf(3, 2), ring_zmod(2)});
  CHECK(A->size() == 72);
  CHECK(A->component_count() == 3);
  // Z/4, GF(9) and Z/2 are connected, so the central idempotents are the 2^3 sums of e_i
  CHECK(central_idempotents(*A).size() == 8);
  Elem sum = A->zero();
  for (std::size_t i = 0; i < 3; ++i) {
    Elem e = A->component_idempotent(i);
    CHECK(A->is_idempotent(e));
    CHECK(A->is_central(e));
    sum = A->add(sum, e);
  }
  CHECK(sum == *A->one());
  CHECK(A->exponent() == 12);
  for (Elem a = 0; a < A->size(); ++a) {
    CHECK(A->from_embedded(A->embed(a)) == a);
    CHECK(A->parse(A->name(a)) == a);
    for (Elem b = 0; b < A->size(); ++b)
      for (std::size_t i = 0; i < 3; ++i)
        CHECK(A->digit(A->mul(a, b), i) ==
              A->component(i).mul(A->digit(a, i), A->digit(b, i)));
  }
  CHECK(oracle::additive_closure(*A, A->basis()).size() == A->size());
  std::vector<Elem> span = A->span({A->parse("e1*2"), A->parse("e3")});
  CHECK(span.size() == 4);
}

TEST_CASE("element names parse back in every supported ring") {
  for (const RingPtr& A : {ring_gf(2, 3), ring_power(ring_gf(3, 2), 2), ring_zmod(9),
                           oracle::upper_triangular_z2()})
    for (Elem a = 0; a < A->size(); ++a) CHECK(A->parse(A->name(a)) == a);
  auto F = ring_gf(3, 2);
  CHECK_THROWS_AS(F->parse("e7"), Error);
}

TEST_CASE("size caps") {
  Caps c;
  c.ring_component = 8;
  CHECK_THROWS_AS(ring_gf(3, 2, c), Error);
  CHECK_NOTHROW(ring_gf(2, 3, c));
  Caps t;
  t.ring_total = 100;
  try {
    ring_power(ring_gf(3, 2), 3, t);
    FAIL("cap ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeCapExceeded);
  }
  Caps o;
  o.apply_override(4);
  CHECK(o.ring_component == 4);
  CHECK(o.tensor_generators == 4);
}
