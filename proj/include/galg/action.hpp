#pragma once

// Partial groupoid actions on finite rings, the data they restrict to at a
// base object, the lifting and extraction between the two, re-basing along
// another transversal, and the extension order on actions.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galg/groupoid.hpp"
#include "galg/ideal.hpp"

namespace galg {

class PartialGroupoidAction {
 public:
  PartialGroupoidAction() = default;

  const GroupoidPtr& groupoid() const { return groupoid_; }
  const RingPtr& ring() const { return ring_; }
  const Ideal& ideal(Mor g) const { return ideals_[g]; }
  const RingMap& map(Mor g) const { return maps_[g]; }
  const std::vector<Ideal>& ideals() const { return ideals_; }
  const std::vector<RingMap>& maps() const { return maps_; }
  bool is_global() const { return global_; }
  bool is_unital() const { return unital_; }

  Elem apply(Mor g, Elem a) const { return maps_[g](a); }

  // 1_g, the identity of A_g.
  Elem unit(Mor g) const {
    auto e = ideals_[g].identity();
    if (!e)
      throw Error(ErrorKind::NotUnitalAction, "ideal has no identity",
                  groupoid_->name(g));
    return *e;
  }

 private:
  friend PartialGroupoidAction validate_partial_action(
      GroupoidPtr, RingPtr, std::vector<Ideal>, const std::vector<std::vector<Elem>>&);

  GroupoidPtr groupoid_;
  RingPtr ring_;
  std::vector<Ideal> ideals_;
  std::vector<RingMap> maps_;
  bool global_ = false;
  bool unital_ = false;
};

namespace detail {

inline std::string pair_name(const FiniteGroupoid& G, Mor g, Mor h) {
  return G.name(g) + "," + G.name(h);
}

}  // namespace detail

// Checks, in order: ideal nesting, each alpha_g an isomorphism
// A_{g^-1} -> A_g, the identity axiom, the extension axiom. The derived
// identities (inverse maps, intersections, the global criterion) are then
// re-checked; a failure there is an internal inconsistency.
inline PartialGroupoidAction validate_partial_action(
    GroupoidPtr G, RingPtr A, std::vector<Ideal> ideals,
    const std::vector<std::vector<Elem>>& raw_maps) {
  const FiniteGroupoid& g_ = *G;
  const FiniteRing& R = *A;
  const std::size_t n = g_.size();
  if (ideals.size() != n || raw_maps.size() != n)
    throw Error(ErrorKind::BadDescription, "one ideal and one map per morphism required");
  for (const auto& I : ideals)
    if (I.ring() != A)
      throw Error(ErrorKind::BadDescription, "ideal over a different ring");

  for (Mor y : g_.objects())
    if (auto w = ideals[y].ring_ideal_violation())
      throw Error(ErrorKind::IdealNesting, "A_" + g_.name(y) + " is not an ideal of A", *w);
  for (Mor g = 0; g < n; ++g)
    if (auto w = ideals[g].ideal_violation(ideals[g_.tgt(g)]))
      throw Error(ErrorKind::IdealNesting,
                  "A_" + g_.name(g) + " is not an ideal of A_" + g_.name(g_.tgt(g)), *w);

  std::vector<RingMap> maps;
  maps.reserve(n);
  for (Mor g = 0; g < n; ++g) {
    try {
      maps.push_back(validate_map(raw_maps[g], ideals[g_.inv(g)], ideals[g], true));
    } catch (const Error& e) {
      throw Error(e.kind(), "alpha_" + g_.name(g) + ": " + e.message(), e.witness());
    }
  }

  for (Mor x : g_.objects())
    for (Elem a : ideals[x].elements())
      if (maps[x](a) != a)
        throw Error(ErrorKind::IdentityAxiomFails,
                    "alpha_" + g_.name(x) + " is not the identity", R.name(a));

  bool global = true;
  for (Mor g = 0; g < n; ++g)
    for (Mor h = 0; h < n; ++h) {
      if (!g_.composable(g, h)) continue;
      const Mor gh = g_.compose(g, h);
      const Ideal& dom_gh = ideals[g_.inv(gh)];
      for (Elem a : ideals[g_.inv(h)].elements()) {
        Elem b = maps[h](a);
        if (!maps[g].defined(b)) continue;
        if (!dom_gh.contains(a) || maps[gh](a) != maps[g](b))
          throw Error(ErrorKind::ExtensionAxiomFails,
                      "alpha_" + g_.name(gh) + " does not extend alpha_" + g_.name(g) +
                          " alpha_" + g_.name(h),
                      detail::pair_name(g_, g, h) + ": " + R.name(a));
      }
      if (global) {
        for (Elem a : dom_gh.elements())
          if (!maps[h].defined(a) || !maps[g].defined(maps[h](a))) {
            global = false;
            break;
          }
      }
    }

  // derived identities, re-checked as consistency tests
  for (Mor g = 0; g < n; ++g) {
    const Mor gi = g_.inv(g);
    for (Elem a : ideals[gi].elements())
      if (maps[gi](maps[g](a)) != a)
        throw Error::tagged(ErrorKind::InconsistentEquivalence, "inverse-maps",
                            "alpha_g^-1 differs from alpha_{g^-1}",
                            g_.name(g) + ": " + R.name(a));
  }
  for (Mor g = 0; g < n; ++g)
    for (Mor h = 0; h < n; ++h) {
      if (g_.tgt(h) != g_.src(g)) continue;
      const Mor gh = g_.compose(g, h);
      std::vector<Elem> img;
      for (Elem a : ideals[g_.inv(g)].elements())
        if (ideals[h].contains(a)) img.push_back(maps[g](a));
      Ideal lhs(A, std::move(img));
      if (!(lhs == intersect(ideals[g], ideals[gh])))
        throw Error::tagged(ErrorKind::InconsistentEquivalence, "intersections",
                            "alpha_g(A_{g^-1} cap A_h) != A_g cap A_gh",
                            detail::pair_name(g_, g, h));
    }
  bool full = true;
  for (Mor g = 0; g < n && full; ++g) full = ideals[g] == ideals[g_.tgt(g)];
  if (full != global)
    throw Error::tagged(ErrorKind::InconsistentEquivalence, "global-criterion",
                        "global criterion disagrees with the composition test");

  PartialGroupoidAction out;
  out.groupoid_ = std::move(G);
  out.ring_ = std::move(A);
  out.unital_ = std::all_of(ideals.begin(), ideals.end(),
                            [](const Ideal& I) { return I.is_unital(); });
  out.ideals_ = std::move(ideals);
  out.maps_ = std::move(maps);
  out.global_ = global;
  return out;
}

inline PartialGroupoidAction validate_partial_action(GroupoidPtr G, RingPtr A,
                                                     std::vector<Ideal> ideals,
                                                     const std::vector<RingMap>& maps) {
  std::vector<std::vector<Elem>> raw;
  raw.reserve(maps.size());
  for (const auto& m : maps) raw.push_back(m.table());
  return validate_partial_action(std::move(G), std::move(A), std::move(ideals), raw);
}

// The identity action: A_g = A_{t(g)} and every map the identity. Only
// valid on a groupoid without non-identity morphisms.
inline PartialGroupoidAction identity_action(const GroupoidPtr& G, const RingPtr& A,
                                             const std::vector<Ideal>& object_ideals) {
  std::vector<Ideal> ideals;
  std::vector<RingMap> maps;
  for (Mor g = 0; g < G->size(); ++g) {
    ideals.push_back(object_ideals[G->object_pos(G->tgt(g))]);
    maps.push_back(RingMap::identity(ideals.back()));
  }
  return validate_partial_action(G, A, ideals, maps);
}

// Extension order: beta <= alpha when every beta_g is a restriction of alpha_g.
inline bool action_leq(const PartialGroupoidAction& beta,
                       const PartialGroupoidAction& alpha) {
  if (beta.groupoid() != alpha.groupoid() || beta.ring() != alpha.ring())
    throw Error(ErrorKind::Incompatible, "actions over different groupoids or rings");
  for (Mor g = 0; g < beta.groupoid()->size(); ++g) {
    const Ideal& dom = beta.ideal(beta.groupoid()->inv(g));
    if (!dom.subset_of(alpha.ideal(alpha.groupoid()->inv(g)))) return false;
    for (Elem a : dom.elements())
      if (beta.apply(g, a) != alpha.apply(g, a)) return false;
  }
  return true;
}

inline bool action_eq(const PartialGroupoidAction& beta,
                      const PartialGroupoidAction& alpha) {
  return action_leq(beta, alpha) && action_leq(alpha, beta);
}

inline bool is_tau_global(const PartialGroupoidAction& alpha, const Transversal& tau) {
  const FiniteGroupoid& G = *alpha.groupoid();
  for (Mor y : G.objects()) {
    Mor t = tau.at(G, y);
    if (!(alpha.ideal(G.inv(t)) == alpha.ideal(tau.base)) ||
        !(alpha.ideal(t) == alpha.ideal(y)))
      return false;
  }
  return true;
}

// The data at a base object: ideals at every object, the isomorphisms
// along the transversal, and a partial action of the isotropy group on I_x.
struct Datum {
  GroupoidPtr groupoid;
  RingPtr ring;
  Transversal tau;
  IsotropyGroup iso;
  std::vector<Ideal> objects;      // I_y, by object position
  std::vector<Ideal> tau_domain;   // I_{tau_y^-1}
  std::vector<Ideal> tau_range;    // I_{tau_y}
  std::vector<RingMap> tau_maps;   // gamma_{tau_y}
  PartialGroupoidAction group;     // gamma_(x) over iso.group

  const Ideal& base_ideal() const { return objects[groupoid->object_pos(tau.base)]; }
  // I_h and gamma_h for h in G(x), addressed by parent morphism index.
  const Ideal& group_ideal(Mor h) const { return group.ideal(iso.to_local(h)); }
  const RingMap& group_map(Mor h) const { return group.map(iso.to_local(h)); }
};

// Unvalidated datum components. Maps are dense tables over the ring.
struct DatumParts {
  GroupoidPtr groupoid;
  RingPtr ring;
  Transversal tau;
  std::vector<Ideal> objects;
  std::vector<Ideal> tau_domain;
  std::vector<Ideal> tau_range;
  std::vector<std::vector<Elem>> tau_maps;
  std::vector<Ideal> group_ideals;             // by isotropy-local index
  std::vector<std::vector<Elem>> group_maps;   // by isotropy-local index
};

// Conditions (a)-(f) on a datum, checked exhaustively. Condition (f) is
// checked for every morphism, identities included.
inline Datum validate_datum(const DatumParts& p) {
  const FiniteGroupoid& G = *p.groupoid;
  const FiniteRing& R = *p.ring;
  const std::size_t k = G.object_count();
  if (p.objects.size() != k || p.tau_domain.size() != k || p.tau_range.size() != k ||
      p.tau_maps.size() != k)
    throw Error(ErrorKind::BadDescription, "datum needs one entry per object");
  auto fail = [](const char* c, std::string msg, std::string w = {}) {
    return Error::tagged(ErrorKind::ConditionFails, c, std::move(msg), std::move(w));
  };
  Datum d;
  d.groupoid = p.groupoid;
  d.ring = p.ring;
  d.tau = p.tau;
  d.iso = isotropy_group(G, p.tau.base);
  d.objects = p.objects;
  d.tau_domain = p.tau_domain;
  d.tau_range = p.tau_range;
  const Mor x = p.tau.base;
  const std::size_t xp = G.object_pos(x);

  for (std::size_t i = 0; i < k; ++i)
    if (auto w = p.objects[i].ring_ideal_violation())
      throw fail("a", "I_" + G.name(G.objects()[i]) + " is not an ideal of A", *w);

  for (std::size_t i = 0; i < k; ++i) {
    try {
      d.tau_maps.push_back(validate_map(p.tau_maps[i], p.tau_domain[i], p.tau_range[i], true));
    } catch (const Error& e) {
      throw fail("b", "gamma_" + G.name(p.tau.pick[i]) + ": " + e.message(), e.witness());
    }
  }

  if (p.group_ideals.size() != d.iso.size() || p.group_maps.size() != d.iso.size())
    throw Error(ErrorKind::BadDescription, "group part needs one entry per element of G(x)");
  try {
    d.group = validate_partial_action(d.iso.group, p.ring, p.group_ideals, p.group_maps);
  } catch (const Error& e) {
    throw fail("c", "group part: " + e.message(), e.witness());
  }
  if (!(d.group.ideal(d.iso.to_local(x)) == p.objects[xp]))
    throw fail("c", "group part does not act on I_x");

  if (!(p.tau_domain[xp] == p.objects[xp]) || !(p.tau_range[xp] == p.objects[xp]) ||
      !d.tau_maps[xp].is_identity())
    throw fail("d", "gamma_{tau_x} is not the identity of I_x", G.name(x));

  for (std::size_t i = 0; i < k; ++i) {
    if (auto w = p.tau_range[i].ideal_violation(p.objects[i]))
      throw fail("e", "I_{tau_y} is not an ideal of I_y", G.name(G.objects()[i]) + ": " + *w);
    if (auto w = p.tau_domain[i].ideal_violation(p.objects[xp]))
      throw fail("e", "I_{tau_y^-1} is not an ideal of I_x",
                 G.name(G.objects()[i]) + ": " + *w);
  }

  for (Mor g = 0; g < G.size(); ++g) {
    const std::size_t s = G.object_pos(G.src(g)), t = G.object_pos(G.tgt(g));
    const Mor gx = project_pi(G, p.tau, g);
    const Ideal& Igx_inv = d.group_ideal(G.inv(gx));
    // gamma_{g_x}(I_{tau_s^-1} cap I_{g_x^-1})
    std::vector<Elem> inner;
    for (Elem a : p.tau_domain[s].elements())
      if (Igx_inv.contains(a)) inner.push_back(d.group_map(gx)(a));
    std::vector<Elem> outer;
    for (Elem b : inner)
      if (p.tau_domain[t].contains(b)) outer.push_back(d.tau_maps[t](b));
    Ideal S(p.ring, std::move(outer));
    if (auto w = S.ideal_violation(p.objects[t]))
      throw fail("f", "translated ideal is not an ideal of I_{t(g)}", G.name(g) + ": " + *w);
  }
  (void)R;
  return d;
}

inline bool datum_eq(const Datum& a, const Datum& b) {
  if (a.groupoid != b.groupoid || a.ring != b.ring || !(a.tau == b.tau)) return false;
  for (std::size_t i = 0; i < a.objects.size(); ++i)
    if (!(a.objects[i] == b.objects[i]) || !(a.tau_domain[i] == b.tau_domain[i]) ||
        !(a.tau_range[i] == b.tau_range[i]) || !(a.tau_maps[i] == b.tau_maps[i]))
      return false;
  for (Mor h = 0; h < a.iso.size(); ++h)
    if (!(a.group.ideal(h) == b.group.ideal(h)) || !(a.group.map(h) == b.group.map(h)))
      return false;
  return true;
}

inline DatumParts parts_of(const Datum& d) {
  DatumParts p;
  p.groupoid = d.groupoid;
  p.ring = d.ring;
  p.tau = d.tau;
  p.objects = d.objects;
  p.tau_domain = d.tau_domain;
  p.tau_range = d.tau_range;
  for (const auto& m : d.tau_maps) p.tau_maps.push_back(m.table());
  for (Mor h = 0; h < d.iso.size(); ++h) {
    p.group_ideals.push_back(d.group.ideal(h));
    p.group_maps.push_back(d.group.map(h).table());
  }
  return p;
}

// beta_g = gamma_{tau_t(g)} o gamma_{g_x} o gamma_{tau_s(g)}^-1 with the
// composite's natural domain, and the identity of I_y at each object y.
inline PartialGroupoidAction lift_datum(const Datum& d) {
  const FiniteGroupoid& G = *d.groupoid;
  std::vector<Ideal> ideals(G.size());
  std::vector<std::vector<Elem>> maps(G.size());
  for (Mor g = 0; g < G.size(); ++g) {
    if (G.is_object(g)) {
      const Ideal& I = d.objects[G.object_pos(g)];
      ideals[g] = I;
      maps[g] = RingMap::identity(I).table();
      continue;
    }
    const std::size_t s = G.object_pos(G.src(g)), t = G.object_pos(G.tgt(g));
    RingMap m = compose(d.tau_maps[t],
                        compose(d.group_map(project_pi(G, d.tau, g)), d.tau_maps[s].inverse()));
    ideals[g] = m.codomain();
    maps[g] = m.table();
  }
  try {
    return validate_partial_action(d.groupoid, d.ring, std::move(ideals), maps);
  } catch (const Error& e) {
    throw Error(ErrorKind::InconsistentEquivalence,
                "lifted action fails validation: " + e.message(), e.witness());
  }
}

inline Datum extract_datum(const PartialGroupoidAction& alpha, const Transversal& tau) {
  const FiniteGroupoid& G = *alpha.groupoid();
  DatumParts p;
  p.groupoid = alpha.groupoid();
  p.ring = alpha.ring();
  p.tau = tau;
  for (Mor y : G.objects()) {
    Mor t = tau.at(G, y);
    p.objects.push_back(alpha.ideal(y));
    p.tau_domain.push_back(alpha.ideal(G.inv(t)));
    p.tau_range.push_back(alpha.ideal(t));
    p.tau_maps.push_back(alpha.map(t).table());
  }
  IsotropyGroup iso = isotropy_group(G, tau.base);
  for (Mor h : iso.parent) {
    p.group_ideals.push_back(alpha.ideal(h));
    p.group_maps.push_back(alpha.map(h).table());
  }
  try {
    return validate_datum(p);
  } catch (const Error& e) {
    throw Error(ErrorKind::InconsistentEquivalence,
                "extracted datum fails validation: " + e.message(), e.witness());
  }
}

// Relabels the group part along conjugation h -> c^-1 h c, c in G(x).
inline Datum conjugate_group_part(const Datum& d, Mor c) {
  const FiniteGroupoid& G = *d.groupoid;
  DatumParts p = parts_of(d);
  for (Mor i = 0; i < d.iso.size(); ++i) {
    Mor h = d.iso.parent[i];
    Mor conj = G.compose(G.inv(c), G.compose(h, c));
    p.group_ideals[i] = d.group_ideal(conj);
    p.group_maps[i] = d.group_map(conj).table();
  }
  return validate_datum(p);
}

// Moves a datum at (x, tau) to (z, lambda): the ideals at x and z trade
// places, so do the transversal isomorphisms, and the group part is
// transported along l -> tau_z^-1 l tau_z from G(z) to G(x).
inline Datum rebase_datum(const Datum& d, const Transversal& lambda) {
  const FiniteGroupoid& G = *d.groupoid;
  const Mor x = d.tau.base, z = lambda.base;
  const std::size_t xp = G.object_pos(x), zp = G.object_pos(z);
  DatumParts old = parts_of(d);
  DatumParts p = old;
  p.tau = lambda;
  std::swap(p.objects[xp], p.objects[zp]);
  std::swap(p.tau_domain[xp], p.tau_domain[zp]);
  std::swap(p.tau_range[xp], p.tau_range[zp]);
  std::swap(p.tau_maps[xp], p.tau_maps[zp]);
  IsotropyGroup target = isotropy_group(G, z);
  const Mor tz = d.tau.at(G, z);
  p.group_ideals.clear();
  p.group_maps.clear();
  for (Mor l : target.parent) {
    Mor phi = G.compose(G.inv(tz), G.compose(l, tz));
    p.group_ideals.push_back(d.group_ideal(phi));
    p.group_maps.push_back(d.group_map(phi).table());
  }
  try {
    return validate_datum(p);
  } catch (const Error& e) {
    throw Error(ErrorKind::InconsistentEquivalence,
                "rebased datum fails validation: " + e.message(), e.witness());
  }
}

// The element c = lambda_x tau_z of G(x) whose conjugation a round trip
// (x, tau) -> (z, lambda) -> (x, tau) applies to the group part.
inline Mor rebase_round_trip_twist(const FiniteGroupoid& G, const Transversal& tau,
                                   const Transversal& lambda) {
  return G.compose(lambda.at(G, tau.base), tau.at(G, lambda.base));
}

inline bool is_gamma_unital(const Datum& d) {
  if (!d.base_ideal().is_unital()) return false;
  for (Mor h = 0; h < d.iso.size(); ++h)
    if (!d.group.ideal(h).is_unital()) return false;
  return true;
}

// Lifted actions in the extension order: lift(extract(alpha)) = alpha
// exactly when A_g lies in A_{tau_t(g)} cap A_{g tau_s(g)} for every g.
inline bool lift_extract_criterion(const PartialGroupoidAction& alpha,
                                   const Transversal& tau) {
  const FiniteGroupoid& G = *alpha.groupoid();
  for (Mor g = 0; g < G.size(); ++g) {
    if (G.is_object(g)) continue;
    Mor ts = tau.at(G, G.src(g)), tt = tau.at(G, G.tgt(g));
    const Ideal& Ag = alpha.ideal(g);
    if (!Ag.subset_of(alpha.ideal(tt)) || !Ag.subset_of(alpha.ideal(G.compose(g, ts))))
      return false;
  }
  return true;
}

// psi_y : A_y -> A'_y, by object position.
inline CheckResult validate_action_morphism(const std::vector<RingMap>& psi,
                                            const PartialGroupoidAction& alpha,
                                            const PartialGroupoidAction& alpha2) {
  const FiniteGroupoid& G = *alpha.groupoid();
  const FiniteRing& R = *alpha.ring();
  if (psi.size() != G.object_count())
    throw Error(ErrorKind::BadDescription, "one map per object required");
  for (std::size_t i = 0; i < psi.size(); ++i) {
    Mor y = G.objects()[i];
    try {
      validate_map(psi[i].table(), alpha.ideal(y), alpha2.ideal(y), false);
    } catch (const Error& e) {
      return CheckResult::fail("hom", G.name(y) + ": " + e.what());
    }
  }
  for (Mor g = 0; g < G.size(); ++g) {
    const RingMap& pt = psi[G.object_pos(G.tgt(g))];
    const RingMap& ps = psi[G.object_pos(G.src(g))];
    for (Elem a : alpha.ideal(g).generators())
      if (!alpha2.ideal(g).contains(pt(a)))
        return CheckResult::fail("a", G.name(g) + ": " + R.name(a));
    for (Elem a : alpha.ideal(G.inv(g)).elements()) {
      Elem lhs = alpha2.apply(g, ps(a));
      if (lhs != pt(alpha.apply(g, a)))
        return CheckResult::fail("b", G.name(g) + ": " + R.name(a));
    }
  }
  return CheckResult::pass();
}

// f_y : I_y -> I'_y, by object position.
inline CheckResult validate_datum_morphism(const std::vector<RingMap>& f, const Datum& d,
                                           const Datum& d2) {
  const FiniteGroupoid& G = *d.groupoid;
  const FiniteRing& R = *d.ring;
  const std::size_t xp = G.object_pos(d.tau.base);
  if (f.size() != G.object_count())
    throw Error(ErrorKind::BadDescription, "one map per object required");
  for (std::size_t i = 0; i < f.size(); ++i) {
    try {
      validate_map(f[i].table(), d.objects[i], d2.objects[i], false);
    } catch (const Error& e) {
      return CheckResult::fail("hom", G.name(G.objects()[i]) + ": " + e.what());
    }
  }
  const RingMap& fx = f[xp];
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::string y = G.name(G.objects()[i]);
    for (Elem a : d.tau_range[i].generators())
      if (!d2.tau_range[i].contains(f[i](a))) return CheckResult::fail("range", y + ": " + R.name(a));
    for (Elem a : d.tau_domain[i].generators())
      if (!d2.tau_domain[i].contains(fx(a))) return CheckResult::fail("domain", y + ": " + R.name(a));
    for (Elem a : d.tau_domain[i].elements())
      if (d2.tau_maps[i](fx(a)) != f[i](d.tau_maps[i](a)))
        return CheckResult::fail("tau", y + ": " + R.name(a));
  }
  for (Mor h = 0; h < d.iso.size(); ++h) {
    const std::string hn = d.iso.group->name(h);
    for (Elem a : d.group.ideal(h).generators())
      if (!d2.group.ideal(h).contains(fx(a))) return CheckResult::fail("group", hn + ": " + R.name(a));
    for (Elem a : d.group.ideal(d.iso.group->inv(h)).elements())
      if (d2.group.apply(h, fx(a)) != fx(d.group.apply(h, a)))
        return CheckResult::fail("group", hn + ": " + R.name(a));
  }
  return CheckResult::pass();
}

}  // namespace galg
