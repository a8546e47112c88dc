#include <catch_amalgamated.hpp>

#include <random>

#include "support/oracles.hpp"

using namespace galg;

namespace {

std::vector<RingPtr> sample_rings() {
  return {ring_product({ring_zmod(12), ring_gf(2, 2)}), ring_product({ring_zmod(8), ring_zmod(2)}),
          oracle::upper_triangular_z2(), ring_power(ring_gf(3, 2), 2)};
}

std::vector<std::vector<Elem>> random_generator_sets(const FiniteRing& A, std::size_t count) {
  std::mt19937_64 rng(A.size() * 7919);
  std::vector<std::vector<Elem>> out;
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<Elem> g(rng() % 3);
    for (auto& x : g) x = static_cast<Elem>(rng() % A.size());
    out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("ideal closure agrees with saturation") {
  for (const RingPtr& A : sample_rings())
    for (const auto& gens : random_generator_sets(*A, 20)) {
      Ideal I = ideal_closure(A, gens);
      std::set<Elem> expected = oracle::two_sided_ideal(*A, gens);
      CHECK(oracle::as_set(I) == expected);
      CHECK(oracle::is_ideal(*A, expected));
      CHECK_FALSE(I.ring_ideal_violation());
      auto id = oracle::identity_of(*A, expected);
      CHECK(I.identity() == id);
      CHECK(I.is_unital() == id.has_value());
    }
}

TEST_CASE("intersections and sums of ideals") {
  for (const RingPtr& A : sample_rings()) {
    auto sets = random_generator_sets(*A, 12);
    for (std::size_t i = 0; i + 1 < sets.size(); ++i) {
      Ideal I = ideal_closure(A, sets[i]), J = ideal_closure(A, sets[i + 1]);
      std::set<Elem> both;
      for (Elem a : I.elements())
        if (J.contains(a)) both.insert(a);
      CHECK(oracle::as_set(intersect(I, J)) == both);
      std::vector<Elem> all = I.elements();
      all.insert(all.end(), J.elements().begin(), J.elements().end());
      CHECK(oracle::as_set(ideal_sum(I, J)) == oracle::additive_closure(*A, all));
      CHECK(intersect(I, J).subset_of(I));
      CHECK(I.subset_of(ideal_sum(I, J)));
    }
  }
}

TEST_CASE("unital ideals of central idempotents") {
  auto A = ring_product({ring_zmod(4), ring_gf(3, 2)});
  Elem e = A->component_idempotent(1);
  Ideal I = unital_ideal(A, e);
  CHECK(I.size() == 9);
  CHECK(I.identity() == e);
  CHECK_THROWS_AS(unital_ideal(A, A->parse("e1*2")), Error);
  auto T = oracle::upper_triangular_z2();
  try {
    unital_ideal(T, T->parse("u100"));
    FAIL("non-central idempotent accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NotCentral);
  }
}

TEST_CASE("checked construction rejects non-subgroups") {
  auto A = ring_zmod(6);
  CHECK_NOTHROW(Ideal::from_elements(A, {0, 2, 4}));
  CHECK_THROWS_AS(Ideal::from_elements(A, {0, 1, 4}), Error);
  CHECK_THROWS_AS(Ideal::from_elements(A, {1}), Error);
  Ideal sub = Ideal::from_elements(A, {0, 3});
  CHECK_FALSE(sub.ideal_violation(Ideal::whole(A)));
  // The diagonal of Z/2 x Z/2 is an additive subgroup but not an ideal
  auto B = ring_power(ring_zmod(2), 2);
  Ideal diagonal = Ideal::span(B, {*B->one()});
  CHECK(diagonal.ideal_violation(Ideal::whole(B)));
}

TEST_CASE("ring maps compose, invert and restrict") {
  auto A = ring_power(ring_gf(3, 2), 2);
  Ideal whole = Ideal::whole(A);
  const auto& F = A->component(0);
  auto swap_frob = [&](Elem a) {
    return A->compose({F.frobenius(A->digit(a, 1)), F.frobenius(A->digit(a, 0))});
  };
  RingMap f = validate_map(swap_frob, whole, whole, true);
  RingMap ff = compose(f, f);
  CHECK(ff.is_identity());
  CHECK(f.inverse() == f);
  CHECK(compose(f, f.inverse()) == RingMap::identity(whole));
  Ideal first = unital_ideal(A, A->component_idempotent(0));
  RingMap r = f.restrict(first);
  CHECK(r.domain() == first);
  for (Elem a : first.elements()) CHECK(r(a) == f(a));
  CHECK(oracle::as_set(Ideal(A, r.image_of(first))) ==
        oracle::as_set(unital_ideal(A, A->component_idempotent(1))));
}

TEST_CASE("map validation reports the failing law") {
  auto A = ring_zmod(4);
  Ideal whole = Ideal::whole(A);
  auto kind = [&](const std::function<Elem(Elem)>& f, bool iso) {
    try {
      validate_map(f, whole, whole, iso);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::BadDescription;
  };
  CHECK(kind([](Elem a) { return (a * a) % 4; }, false) == ErrorKind::NotAdditive);
  CHECK(kind([](Elem a) { return (2 * a) % 4; }, false) == ErrorKind::NotMultiplicative);
  auto B = ring_power(ring_zmod(2), 2);
  Ideal wb = Ideal::whole(B);
  auto proj = [&](Elem a) { return B->compose({B->digit(a, 0), 0}); };
  CHECK_NOTHROW(validate_map(proj, wb, wb, false));
  CHECK_THROWS_AS(validate_map(proj, wb, wb, true), Error);
}

TEST_CASE("abelian presentations of additive subgroups") {
  auto A = ring_product({ring_zmod(12), ring_gf(2, 2)});
  for (const auto& gens : random_generator_sets(*A, 30)) {
    AbelianPresentation P = subgroup_span(A, gens);
    std::set<Elem> expected = oracle::additive_closure(*A, gens);
    CHECK(P.order() == expected.size());
    for (Elem a = 0; a < A->size(); ++a) {
      CHECK(P.contains(a) == (expected.count(a) == 1));
      if (auto x = P.solve(a)) {
        Elem s = A->zero();
        for (std::size_t i = 0; i < x->size(); ++i)
          s = A->add(s, A->scalar((*x)[i], P.generators()[i]));
        CHECK(s == a);
      }
    }
  }
  // Multiplication by 3 kills 4Z/12 and is the identity on GF(4)
  auto times3 = [&](Elem a) { return A->embed(A->scalar(3, a)); };
  AbelianPresentation K = kernel(A, A->basis(), times3, A->rank());
  std::size_t count = 0;
  for (Elem a = 0; a < A->size(); ++a) {
    bool zero = A->scalar(3, a) == A->zero();
    count += zero;
    CHECK(K.contains(a) == zero);
  }
  CHECK(K.order() == count);
  CHECK(count == 3);
  AbelianPresentation Im = image(A, A->basis(), [&](Elem a) { return A->scalar(3, a); });
  CHECK(Im.order() * K.order() == A->size());
}
