#pragma once

// Invariants and trace maps of a unital partial action, and their relation
// to the group-level data at the base object.

#include <optional>
#include <string>
#include <vector>

#include "galg/skewring.hpp"

namespace galg {

struct InvariantSubring {
  RingPtr ring;
  std::vector<Elem> elements;        // sorted
  AbelianPresentation presentation;  // generated by a kernel computation
  bool contains(Elem a) const { return std::binary_search(elements.begin(), elements.end(), a); }
};

// beta_g(a 1_{g^-1}) = a 1_g for every g.
inline bool is_invariant(const UnitalAction& u, Elem a) {
  const PartialGroupoidAction& beta = u.action;
  const FiniteRing& A = *beta.ring();
  const FiniteGroupoid& G = *beta.groupoid();
  for (Mor g = 0; g < G.size(); ++g)
    if (beta.apply(g, A.mul(a, u.units[G.inv(g)])) != A.mul(a, u.units[g])) return false;
  return true;
}

inline Vec invariance_defect(const UnitalAction& u, Elem a) {
  const PartialGroupoidAction& beta = u.action;
  const FiniteRing& A = *beta.ring();
  const FiniteGroupoid& G = *beta.groupoid();
  Vec out;
  for (Mor g = 0; g < G.size(); ++g) {
    Elem d = A.sub(beta.apply(g, A.mul(a, u.units[G.inv(g)])), A.mul(a, u.units[g]));
    Vec v = A.embed(d);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

// Kernel of a -> (beta_g(a 1_{g^-1}) - a 1_g)_g on the base ideal,
// cross-checked against a filter over every element of the base.
inline InvariantSubring invariant_subring(const UnitalAction& u) {
  const RingPtr& A = u.action.ring();
  const std::size_t dim = u.action.groupoid()->size() * A->rank();
  AbelianPresentation ker =
      kernel(A, u.base.generators(), [&](Elem a) { return invariance_defect(u, a); }, dim);
  InvariantSubring inv{A, ker.elements(), ker};
  std::sort(inv.elements.begin(), inv.elements.end());
  std::vector<Elem> filtered;
  for (Elem a : u.base.elements())
    if (is_invariant(u, a)) filtered.push_back(a);
  if (filtered != inv.elements)
    throw Error(ErrorKind::InconsistentEquivalence, "invariant kernel disagrees with the element filter");
  for (Elem a : ker.generators())
    for (Elem b : ker.generators())
      if (!inv.contains(A->mul(a, b)))
        throw Error(ErrorKind::InconsistentEquivalence, "invariants not closed under products",
                    A->name(a) + " * " + A->name(b));
  if (!inv.contains(u.one))
    throw Error(ErrorKind::InconsistentEquivalence, "identity is not invariant");
  return inv;
}

enum class TraceKind { Full, Partial, ToObject };

// t(a) = sum of beta_g(a 1_{g^-1}) over all g, over G(y,z), or over the
// morphisms ending at z.
inline Elem trace(const UnitalAction& u, Elem a, TraceKind kind = TraceKind::Full,
                  Mor y = kNoMor, Mor z = kNoMor) {
  const PartialGroupoidAction& beta = u.action;
  const FiniteRing& A = *beta.ring();
  const FiniteGroupoid& G = *beta.groupoid();
  if ((kind == TraceKind::Partial && (y == kNoMor || z == kNoMor)) ||
      (kind == TraceKind::ToObject && z == kNoMor))
    throw Error(ErrorKind::BadKind, "trace kind needs object arguments");
  if ((y != kNoMor && (y >= G.size() || !G.is_object(y))) ||
      (z != kNoMor && (z >= G.size() || !G.is_object(z))))
    throw Error(ErrorKind::BadKind, "trace arguments must be objects");
  Elem sum = A.zero();
  for (Mor g = 0; g < G.size(); ++g) {
    if (kind == TraceKind::Partial && (G.src(g) != y || G.tgt(g) != z)) continue;
    if (kind == TraceKind::ToObject && G.tgt(g) != z) continue;
    sum = A.add(sum, beta.apply(g, A.mul(a, u.units[G.inv(g)])));
  }
  return sum;
}

inline AbelianPresentation trace_image(const UnitalAction& u) {
  return image(u.action.ring(), u.base.generators(), [&](Elem a) { return trace(u, a); });
}

// Datum route: b_x invariant under the group part and b_y = gamma_{tau_y}(b_x).
inline bool is_invariant_via_datum(const StandingInstance& s, Elem b) {
  const Datum& d = s.datum;
  const FiniteRing& A = *d.ring;
  const FiniteGroupoid& G = *d.groupoid;
  Elem bx = A.mul(b, s.groupoid_level.units[d.tau.base]);
  if (!is_invariant(s.group_level, bx)) return false;
  for (std::size_t i = 0; i < G.object_count(); ++i) {
    Elem by = A.mul(b, s.groupoid_level.units[G.objects()[i]]);
    if (by != d.tau_maps[i](bx)) return false;
  }
  return true;
}

struct TraceSurjectivity {
  bool full = false;
  bool group_part = false;
};

inline TraceSurjectivity trace_surjectivity(const StandingInstance& s) {
  TraceSurjectivity r;
  InvariantSubring inv = invariant_subring(s.groupoid_level);
  InvariantSubring inv_x = invariant_subring(s.group_level);
  AbelianPresentation img = trace_image(s.groupoid_level);
  AbelianPresentation img_x = trace_image(s.group_level);
  for (Elem a : img.generators())
    if (!inv.contains(a))
      throw Error(ErrorKind::InconsistentEquivalence, "trace leaves the invariants",
                  s.datum.ring->name(a));
  for (Elem a : img_x.generators())
    if (!inv_x.contains(a))
      throw Error(ErrorKind::InconsistentEquivalence, "group trace leaves the invariants",
                  s.datum.ring->name(a));
  r.full = img == inv.presentation;
  r.group_part = img_x == inv_x.presentation;
  if (r.full != r.group_part)
    throw Error(ErrorKind::InconsistentEquivalence, "trace surjectivity differs between levels");
  return r;
}

// Exhaustive checks of the trace identities on one instance; returns the
// first failure.
inline CheckResult check_invariants_prop(const StandingInstance& s) {
  const FiniteRing& A = *s.datum.ring;
  for (Elem b = 0; b < A.size(); ++b)
    if (is_invariant(s.groupoid_level, b) != is_invariant_via_datum(s, b))
      return CheckResult::fail("invariants-via-datum", A.name(b));
  return CheckResult::pass();
}

inline CheckResult check_trace_transport(const StandingInstance& s) {
  const Datum& d = s.datum;
  const FiniteRing& A = *d.ring;
  const FiniteGroupoid& G = *d.groupoid;
  const std::size_t k = G.object_count();
  for (Elem bx : d.base_ideal().elements()) {
    Elem rhs = A.zero();
    Elem tx = trace(s.group_level, bx);
    for (std::size_t y = 0; y < k; ++y) rhs = A.add(rhs, d.tau_maps[y](tx));
    for (std::size_t z = 0; z < k; ++z)
      if (trace(s.groupoid_level, d.tau_maps[z](bx)) != rhs)
        return CheckResult::fail("trace-transport", A.name(bx) + " at " + G.name(G.objects()[z]));
  }
  return CheckResult::pass();
}

// t(sum_z gamma_{tau_z}(c_z)) = sum_y gamma_{tau_y}(t_x(sum_z c_z)), over
// generator tuples c_z (one generator of B_x per object, the rest zero, and
// all pairs of such tuples).
inline CheckResult check_trace_corollary(const StandingInstance& s) {
  const Datum& d = s.datum;
  const FiniteRing& A = *d.ring;
  const std::size_t k = d.groupoid->object_count();
  const auto& gens = d.base_ideal().generators();
  std::vector<std::vector<Elem>> tuples;
  for (std::size_t z = 0; z < k; ++z)
    for (Elem c : gens) {
      std::vector<Elem> t(k, A.zero());
      t[z] = c;
      tuples.push_back(std::move(t));
    }
  const std::size_t base = tuples.size();
  for (std::size_t i = 0; i < base; ++i)
    for (std::size_t j = i + 1; j < base; ++j) {
      std::vector<Elem> t(k);
      for (std::size_t z = 0; z < k; ++z) t[z] = A.add(tuples[i][z], tuples[j][z]);
      tuples.push_back(std::move(t));
    }
  for (const auto& c : tuples) {
    Elem a = A.zero(), csum = A.zero();
    for (std::size_t z = 0; z < k; ++z) {
      a = A.add(a, d.tau_maps[z](c[z]));
      csum = A.add(csum, c[z]);
    }
    Elem tx = trace(s.group_level, csum), rhs = A.zero();
    for (std::size_t y = 0; y < k; ++y) rhs = A.add(rhs, d.tau_maps[y](tx));
    if (trace(s.groupoid_level, a) != rhs) return CheckResult::fail("trace-sums", A.name(a));
  }
  return CheckResult::pass();
}

}  // namespace galg
