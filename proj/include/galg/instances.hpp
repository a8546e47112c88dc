#pragma once

// Bundled instances. Where a construction calls for complex conjugation,
// GF(9) with its Frobenius automorphism stands in: both are involutions
// fixing a subfield of index two.

#include <optional>
#include <string>
#include <vector>

#include "galg/globalization.hpp"
#include "galg/groupoid.hpp"

namespace galg::instances {

// Component `from` is carried to component `to`, through Frobenius when
// `frobenius` is set. Components must have the same type.
struct Move {
  std::size_t from, to;
  bool frobenius = false;
};

// Table of the map on the sum of the `from` components; kNone elsewhere.
inline std::vector<Elem> component_table(const FiniteRing& A, const std::vector<Move>& moves) {
  const std::size_t c = A.component_count();
  std::vector<Elem> t(A.size(), kNone);
  std::vector<FiniteRing::Index> d(c);
  for (Elem e = 0; e < A.size(); ++e) {
    for (std::size_t i = 0; i < c; ++i) d[i] = A.component(i).zero();
    bool inside = true;
    for (std::size_t i = 0; i < c && inside; ++i) {
      auto v = A.digit(e, i);
      if (v == A.component(i).zero()) continue;
      inside = false;
      for (const Move& m : moves)
        if (m.from == i) {
          d[m.to] = m.frobenius ? A.component(m.to).frobenius(v) : v;
          inside = true;
        }
    }
    if (inside) t[e] = A.compose(d);
  }
  return t;
}

// Every component to itself, through Frobenius on all or none.
inline std::vector<Move> diagonal(std::initializer_list<std::size_t> comps, bool frobenius) {
  std::vector<Move> m;
  for (std::size_t i : comps) m.push_back({i, i, frobenius});
  return m;
}

// The ideal sum of the listed components.
inline Ideal components(const RingPtr& A, const std::vector<std::size_t>& comps) {
  Elem e = A->zero();
  for (std::size_t i : comps) e = A->add(e, A->component_idempotent(i));
  return unital_ideal(A, e);
}

// Two objects x, y; G(x) = {x, g}, G(y) = {y, h}, l and m from x to y,
// with g^2 = x, h^2 = y and lg = m = hl.
inline GroupoidPtr square_groupoid() {
  struct M {
    const char* name;
    int k;
    int tgt, src;  // 0 = x, 1 = y
  };
  const std::vector<M> ms = {{"x", 0, 0, 0},    {"y", 0, 1, 1},    {"g", 1, 0, 0},
                             {"h", 1, 1, 1},    {"l", 0, 1, 0},    {"m", 1, 1, 0},
                             {"l^-1", 0, 0, 1}, {"m^-1", 1, 0, 1}};
  auto find = [&](int k, int t, int s) {
    for (const M& m : ms)
      if (m.k == k && m.tgt == t && m.src == s) return std::string(m.name);
    throw Error(ErrorKind::BadDescription, "square table is incomplete");
  };
  GroupoidDescription d;
  for (const M& m : ms) d.morphisms.push_back(m.name);
  d.objects = {"x", "y"};
  for (const M& a : ms) {
    d.src[a.name] = find(0, a.src, a.src);
    d.tgt[a.name] = find(0, a.tgt, a.tgt);
    d.inv[a.name] = find(a.k, a.src, a.tgt);
    for (const M& b : ms)
      if (b.tgt == a.src) d.compose.push_back({a.name, b.name, find((a.k + b.k) % 2, a.tgt, b.src)});
  }
  return validate_groupoid(d);
}

// A lifting datum on the square groupoid, over A = I = GF(9)^3 with
// L = <e1,e2>, J = <e2,e3>, sigma = Frobenius and gamma swapping e2, e3.
struct SquareLifting {
  Datum datum;
  std::vector<Elem> sigma, gamma;  // tables on A
  Ideal L, J;
};

inline SquareLifting square_lifting_datum() {
  GroupoidPtr G = square_groupoid();
  RingPtr A = ring_power(ring_gf(3, 2), 3);
  SquareLifting out;
  out.sigma = component_table(*A, diagonal({0, 1, 2}, true));
  out.gamma = component_table(*A, {{0, 0}, {1, 2}, {2, 1}});
  out.L = components(A, {0, 1});
  out.J = components(A, {1, 2});
  const Mor x = G->index("x"), l = G->index("l");
  DatumParts p;
  p.groupoid = G;
  p.ring = A;
  p.tau = make_transversal(*G, x, {{G->index("y"), l}});
  Ideal whole = Ideal::whole(A);
  p.objects = {whole, whole};
  p.tau_domain = {whole, out.J};
  p.tau_range = {whole, out.J};
  p.tau_maps = {RingMap::identity(whole).table(), out.gamma};
  p.group_ideals = {whole, out.L};
  p.group_maps = {RingMap::identity(whole).table(), out.sigma};
  out.datum = validate_datum(p);
  return out;
}

// A globalizable datum on the square groupoid over A = GF(9)^3:
// e = e1 + e2, sigma = Frobenius composed with the swap of e2 and e3,
// gamma the cyclic shift e1 -> e2 -> e3 -> e1. The globalization lives in A itself.
struct SquareGlobalization {
  GlobalizableDatum gdatum;
  std::vector<Elem> sigma, gamma;  // automorphisms of A
};

inline SquareGlobalization square_globalization() {
  GroupoidPtr G = square_groupoid();
  RingPtr A = ring_power(ring_gf(3, 2), 3);
  SquareGlobalization out;
  out.sigma = component_table(*A, {{0, 0, true}, {1, 2, true}, {2, 1, true}});
  out.gamma = component_table(*A, {{0, 1}, {1, 2}, {2, 0}});
  const Mor x = G->index("x");
  Ideal Ix = components(A, {0, 1});
  Ideal Iy = components(A, {1, 2});
  Ideal Ig = components(A, {0});  // A e sigma(e)
  DatumParts p;
  p.groupoid = G;
  p.ring = A;
  p.tau = make_transversal(*G, x, {{G->index("y"), G->index("l")}});
  p.objects = {Ix, Iy};
  p.tau_domain = {Ix, Ix};
  p.tau_range = {Ix, Iy};
  p.tau_maps = {RingMap::identity(Ix).table(), out.gamma};
  p.group_ideals = {Ix, Ig};
  p.group_maps = {RingMap::identity(Ix).table(), out.sigma};
  Datum d = validate_datum(p);
  Ideal whole = Ideal::whole(A);
  std::vector<Elem> id = RingMap::identity(whole).table();
  out.gdatum = make_globalizable_datum(d, A, id, {whole, whole}, {id, out.gamma}, {id, out.sigma});
  return out;
}

// A tau(x)-global partial action on the square groupoid over GF(9)^4:
// A_x = <e1,e2> = A_{l^-1}, A_y = <e3,e4> = A_l, A_g = <e1> = A_{m^-1},
// A_m = A_h = <e3>, with Frobenius on the one-dimensional pieces.
// With `broken`, A_m becomes <e4> and the extension axiom fails at (l, g).
inline PartialGroupoidAction square_tau_global_action(bool broken = false) {
  GroupoidPtr G = square_groupoid();
  RingPtr A = ring_power(ring_gf(3, 2), 4);
  auto I = [&](std::vector<std::size_t> c) { return components(A, c); };
  const std::size_t am = broken ? 3 : 2;
  std::vector<Ideal> ideals(G->size());
  std::vector<std::vector<Elem>> maps(G->size());
  auto set = [&](const char* n, Ideal ideal, std::vector<Elem> table) {
    ideals[G->index(n)] = std::move(ideal);
    maps[G->index(n)] = std::move(table);
  };
  set("x", I({0, 1}), component_table(*A, diagonal({0, 1}, false)));
  set("y", I({2, 3}), component_table(*A, diagonal({2, 3}, false)));
  set("g", I({0}), component_table(*A, diagonal({0}, true)));
  set("h", I({2}), component_table(*A, diagonal({2}, true)));
  set("m", I({am}), component_table(*A, {{0, am, true}}));
  set("m^-1", I({0}), component_table(*A, {{am, 0, true}}));
  set("l", I({2, 3}), component_table(*A, {{0, 2}, {1, 3}}));
  set("l^-1", I({0, 1}), component_table(*A, {{2, 0}, {3, 1}}));
  return validate_partial_action(G, A, std::move(ideals), maps);
}

inline Transversal square_transversal(const FiniteGroupoid& G, const char* base = "x",
                                    const char* pick = "l") {
  const Mor b = G.index(base);
  const Mor other = G.index(std::string(base) == "x" ? "y" : "x");
  return make_transversal(G, b, {{other, G.index(pick)}});
}

inline Datum square_tau_global_datum() {
  PartialGroupoidAction alpha = square_tau_global_action();
  return extract_datum(alpha, square_transversal(*alpha.groupoid()));
}

// Gamma over Z2 with two objects, on GF(9)e1 + GF(9)e2: the group acts on
// the first copy by Frobenius and the transversal copies e1 to e2.
inline Datum gamma_z2_datum() {
  GroupoidPtr H = cyclic_group(2);
  GroupoidPtr G = gamma_groupoid(*H, 2, 1);
  RingPtr A = ring_power(ring_gf(3, 2), 2);
  Ideal I1 = components(A, {0}), I2 = components(A, {1});
  DatumParts p;
  p.groupoid = G;
  p.ring = A;
  p.tau = make_transversal(*G, G->objects()[0]);
  p.objects = {I1, I2};
  p.tau_domain = {I1, I1};
  p.tau_range = {I1, I2};
  p.tau_maps = {RingMap::identity(I1).table(), component_table(*A, {{0, 1}})};
  IsotropyGroup iso = isotropy_group(*G, p.tau.base);
  for (Mor i = 0; i < iso.size(); ++i) {
    p.group_ideals.push_back(I1);
    p.group_maps.push_back(component_table(*A, diagonal({0}, !G->is_object(iso.parent[i]))));
  }
  return validate_datum(p);
}

// The pair groupoid on {1, 2} acting on GF(3)e1 + GF(3)e2 by moving e_y to
// e_z along (y, z).
inline PartialGroupoidAction pair_swap_action() {
  GroupoidPtr G = pair_groupoid({"1", "2"});
  RingPtr A = ring_power(ring_gf(3, 1), 2);
  std::vector<Ideal> ideals;
  std::vector<std::vector<Elem>> maps;
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t z = 0; z < 2; ++z) {
      ideals.push_back(components(A, {z}));
      maps.push_back(component_table(*A, {{y, z}}));
    }
  return validate_partial_action(G, A, std::move(ideals), maps);
}

inline Datum pair_swap_datum() {
  PartialGroupoidAction a = pair_swap_action();
  return extract_datum(a, make_transversal(*a.groupoid(), a.groupoid()->objects()[0]));
}

// Z2 acting trivially on Z/2: traces vanish identically.
inline Datum char2_trivial_datum() {
  GroupoidPtr G = cyclic_group(2);
  RingPtr A = ring_zmod(2);
  Ideal whole = Ideal::whole(A);
  auto id = RingMap::identity(whole);
  auto alpha = validate_partial_action(G, A, {whole, whole}, std::vector<RingMap>{id, id});
  return extract_datum(alpha, make_transversal(*G, G->objects()[0]));
}

// Z2 swapping the factors of GF(2) x GF(2).
inline Datum z2_swap_datum() {
  GroupoidPtr G = cyclic_group(2);
  RingPtr A = ring_power(ring_zmod(2), 2);
  Ideal whole = Ideal::whole(A);
  std::vector<std::vector<Elem>> maps(2);
  for (Mor g = 0; g < 2; ++g)
    maps[g] = G->is_object(g) ? component_table(*A, diagonal({0, 1}, false))
                              : component_table(*A, {{0, 1}, {1, 0}});
  auto alpha = validate_partial_action(G, A, {whole, whole}, maps);
  return extract_datum(alpha, make_transversal(*G, G->objects()[0]));
}

// One object, no other morphisms, GF(3).
inline Datum trivial_datum() {
  GroupoidPtr G = cyclic_group(1);
  RingPtr A = ring_gf(3, 1);
  Ideal whole = Ideal::whole(A);
  auto alpha = validate_partial_action(G, A, {whole}, std::vector<RingMap>{RingMap::identity(whole)});
  return extract_datum(alpha, make_transversal(*G, G->objects()[0]));
}

// Z2 on Z/4 with A_g = 2Z/4 and alpha_g the identity: a partial action
// that is not globalizable, since 2Z/4 has no identity.
inline PartialGroupoidAction z4_action() {
  GroupoidPtr G = cyclic_group(2);
  RingPtr A = ring_zmod(4);
  Ideal whole = Ideal::whole(A);
  Ideal two = Ideal::span(A, {A->parse("2")});
  return validate_partial_action(G, A, {whole, two},
                                 std::vector<RingMap>{RingMap::identity(whole), RingMap::identity(two)});
}

inline Datum z4_datum() {
  auto a = z4_action();
  return extract_datum(a, make_transversal(*a.groupoid(), a.groupoid()->objects()[0]));
}

struct Named {
  std::string name;
  Datum datum;
  std::optional<GlobalizableDatum> globalization;
};

// Every bundled datum, in a fixed order.
inline std::vector<Named> all_data() {
  SquareGlobalization sg = square_globalization();
  return {{"square-lifting", square_lifting_datum().datum, {}},
          {"square-globalization", sg.gdatum.base, sg.gdatum},
          {"square-tau-global", square_tau_global_datum(), {}},
          {"gamma-z2-2", gamma_z2_datum(), {}},
          {"pair-gf3", pair_swap_datum(), {}},
          {"char2-trivial", char2_trivial_datum(), {}},
          {"z2-swap-gf2", z2_swap_datum(), {}},
          {"trivial", trivial_datum(), {}},
          {"z4-nonunital", z4_datum(), {}}};
}

}  // namespace galg::instances
