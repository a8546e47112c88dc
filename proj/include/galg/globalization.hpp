#pragma once

// Globalizability and globalizations: the unitality criterion, globalizable
// data and the global action they induce, and an axiom-by-axiom check that
// a global action on a larger ring globalizes a given partial action.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galg/action.hpp"

namespace galg {

// A global action on an ambient ring together with a ring embedding of the
// acting ring into it.
struct Globalization {
  PartialGroupoidAction global;
  RingMap embedding;  // whole A -> ambient ring (image as codomain)
};

inline RingMap identity_embedding(const RingPtr& A) {
  return RingMap::identity(Ideal::whole(A));
}

// Validates an injective ring homomorphism A -> B given by its table.
inline RingMap validate_embedding(const RingPtr& A, const RingPtr& B,
                                  const std::vector<Elem>& table) {
  Ideal whole = Ideal::whole(A);
  std::vector<Elem> img;
  for (Elem a = 0; a < A->size(); ++a) {
    if (a >= table.size() || table[a] >= B->size())
      throw Error(ErrorKind::NotInDomain, "embedding undefined", A->name(a));
    img.push_back(table[a]);
  }
  Ideal image(B, img);
  if (image.size() != A->size())
    throw Error(ErrorKind::NotBijective, "embedding is not injective");
  return validate_map(table, whole, image, true);
}

inline std::vector<Elem> embed_elements(const RingMap& iota, const Ideal& I) {
  std::vector<Elem> out;
  for (Elem a : I.elements()) out.push_back(iota(a));
  return out;
}

struct GlobalizabilityResult {
  bool globalizable = false;
  std::vector<Elem> units;        // 1_g per morphism when globalizable
  std::optional<Mor> failing;     // first g with A_g not unital
};

// With every A_y unital, alpha is globalizable exactly when every A_g is.
inline GlobalizabilityResult is_globalizable(const PartialGroupoidAction& alpha) {
  const FiniteGroupoid& G = *alpha.groupoid();
  for (Mor y : G.objects())
    if (!alpha.ideal(y).is_unital())
      throw Error(ErrorKind::ObjectIdealNotUnital, "object ideal has no identity", G.name(y));
  GlobalizabilityResult r;
  for (Mor g = 0; g < G.size(); ++g) {
    auto e = alpha.ideal(g).identity();
    if (!e) {
      r.failing = g;
      r.units.clear();
      return r;
    }
    r.units.push_back(*e);
  }
  r.globalizable = true;
  return r;
}

struct LiftedGlobalizability {
  bool value = false;
  bool cross_checked = false;  // the lifted action's criterion could be evaluated
};

// For a datum: the group part is globalizable (every I_h unital) and every
// I_y and I_{tau_y^-1} is unital. When every I_y is unital the answer is
// compared with the criterion applied to the lifted action.
inline LiftedGlobalizability lifted_globalizable_check(const Datum& d) {
  LiftedGlobalizability r;
  bool ok = true;
  for (Mor h = 0; h < d.iso.size(); ++h) ok = ok && d.group.ideal(h).is_unital();
  for (std::size_t i = 0; i < d.objects.size(); ++i)
    ok = ok && d.objects[i].is_unital() && d.tau_domain[i].is_unital();
  r.value = ok;
  bool objects_unital = true;
  for (const auto& I : d.objects) objects_unital = objects_unital && I.is_unital();
  if (objects_unital) {
    bool lifted = is_globalizable(lift_datum(d)).globalizable;
    if (lifted != ok)
      throw Error(ErrorKind::InconsistentEquivalence,
                  "datum criterion disagrees with the lifted action");
    r.cross_checked = true;
  }
  return r;
}

struct AxiomReport {
  bool ok = true;
  std::string axiom;   // "pre", "a", "b", "c" or "d" when failing
  std::string witness;
};

// The four globalization axioms, checked exhaustively through the embedding.
inline AxiomReport verify_globalization(const PartialGroupoidAction& alpha,
                                        const Globalization& glob) {
  const FiniteGroupoid& G = *alpha.groupoid();
  const PartialGroupoidAction& beta = glob.global;
  const RingMap& iota = glob.embedding;
  const RingPtr& B = beta.ring();
  auto fail = [](std::string ax, std::string w) { return AxiomReport{false, std::move(ax), std::move(w)}; };
  if (beta.groupoid() != alpha.groupoid())
    return fail("pre", "different groupoids");
  if (!beta.is_global()) return fail("pre", "ambient action is not global");
  if (iota.domain().ring() != alpha.ring() || iota.codomain().ring() != B)
    return fail("pre", "embedding does not connect the two rings");
  std::vector<Ideal> img(G.size());
  for (Mor g = 0; g < G.size(); ++g) img[g] = Ideal(B, embed_elements(iota, alpha.ideal(g)));
  for (Mor y : G.objects())
    if (auto w = img[y].ideal_violation(beta.ideal(y))) return fail("a", G.name(y) + ": " + *w);
  for (Mor g = 0; g < G.size(); ++g) {
    const Ideal& src_img = img[G.src(g)];
    std::vector<Elem> moved;
    for (Elem b : src_img.elements())
      if (beta.map(g).defined(b)) moved.push_back(beta.apply(g, b));
    Ideal rhs = intersect(img[G.tgt(g)], Ideal(B, std::move(moved)));
    if (!(rhs == img[g])) return fail("b", G.name(g));
  }
  for (Mor g = 0; g < G.size(); ++g)
    for (Elem a : alpha.ideal(G.inv(g)).elements()) {
      Elem ia = iota(a);
      if (!beta.map(g).defined(ia) || beta.apply(g, ia) != iota(alpha.apply(g, a)))
        return fail("c", G.name(g) + ": " + alpha.ring()->name(a));
    }
  for (Mor g = 0; g < G.size(); ++g) {
    std::vector<Elem> gens;
    for (Mor h : G.ending_at(G.tgt(g)))
      for (Elem b : img[G.src(h)].generators()) gens.push_back(beta.apply(h, b));
    if (!(Ideal::span(B, gens) == beta.ideal(g))) return fail("d", G.name(g));
  }
  return {};
}

// Globalization data for a datum: an ambient ring B, ideals J_y, a global
// action of G(x) on J_x and isomorphisms J_x -> J_y along the transversal.
struct GlobalizableDatum {
  Datum base;
  RingPtr ambient;
  RingMap embedding;                  // A -> B
  std::vector<Ideal> J;               // by object position
  std::vector<RingMap> tau_ext;       // J_x -> J_y, by object position
  std::vector<RingMap> group_ext;     // J_x -> J_x, by isotropy-local index
};

inline GlobalizableDatum make_globalizable_datum(
    const Datum& base, const RingPtr& B, const std::vector<Elem>& embedding,
    const std::vector<Ideal>& J, const std::vector<std::vector<Elem>>& tau_ext,
    const std::vector<std::vector<Elem>>& group_ext) {
  const FiniteGroupoid& G = *base.groupoid;
  const std::size_t xp = G.object_pos(base.tau.base);
  GlobalizableDatum gd;
  gd.base = base;
  gd.ambient = B;
  gd.embedding = validate_embedding(base.ring, B, embedding);
  gd.J = J;
  if (J.size() != G.object_count() || tau_ext.size() != G.object_count() ||
      group_ext.size() != base.iso.size())
    throw Error(ErrorKind::BadDescription, "globalization data has the wrong shape");
  for (std::size_t i = 0; i < J.size(); ++i) {
    try {
      gd.tau_ext.push_back(validate_map(tau_ext[i], J[xp], J[i], true));
    } catch (const Error& e) {
      throw Error::tagged(ErrorKind::ConditionFails, "b",
                          "extension along the transversal: " + std::string(e.what()));
    }
  }
  for (std::size_t h = 0; h < group_ext.size(); ++h) {
    try {
      gd.group_ext.push_back(validate_map(group_ext[h], J[xp], J[xp], true));
    } catch (const Error& e) {
      throw Error::tagged(ErrorKind::ConditionFails, "a",
                          "group extension: " + std::string(e.what()));
    }
  }
  return gd;
}

// Conditions (a)-(c) of a globalizable datum.
inline CheckResult validate_globalizable_datum(const GlobalizableDatum& gd) {
  const Datum& d = gd.base;
  const FiniteGroupoid& G = *d.groupoid;
  const FiniteRing& A = *d.ring;
  const std::size_t xp = G.object_pos(d.tau.base);
  if (!d.base_ideal().is_unital()) return CheckResult::fail("a", "I_x has no identity");
  PartialGroupoidAction ext;
  try {
    ext = validate_partial_action(d.iso.group, gd.ambient,
                                  std::vector<Ideal>(d.iso.size(), gd.J[xp]), gd.group_ext);
  } catch (const Error& e) {
    return CheckResult::fail("a", e.what());
  }
  AxiomReport rep = verify_globalization(d.group, Globalization{ext, gd.embedding});
  if (!rep.ok) return CheckResult::fail("a", "axiom " + rep.axiom + ": " + rep.witness);
  for (std::size_t i = 0; i < G.object_count(); ++i) {
    const std::string y = G.name(G.objects()[i]);
    if (auto w = gd.J[i].ring_ideal_violation()) return CheckResult::fail("b", y + ": " + *w);
    Ideal img(gd.ambient, embed_elements(gd.embedding, d.objects[i]));
    if (auto w = img.ideal_violation(gd.J[i])) return CheckResult::fail("b", y + ": " + *w);
    for (Elem a : d.tau_domain[i].elements()) {
      Elem ia = gd.embedding(a);
      if (!gd.tau_ext[i].defined(ia) ||
          gd.tau_ext[i](ia) != gd.embedding(d.tau_maps[i](a)))
        return CheckResult::fail("b", y + ": " + A.name(a));
    }
    if (!(d.tau_domain[i] == d.objects[xp]) || !(d.tau_range[i] == d.objects[i]))
      return CheckResult::fail("c", y);
  }
  return CheckResult::pass();
}

// beta~_g = gamma~_{tau_t(g)} o gamma~_{g_x} o gamma~_{tau_s(g)}^-1 on J_{s(g)}.
inline Globalization build_global_action(const GlobalizableDatum& gd) {
  const Datum& d = gd.base;
  const FiniteGroupoid& G = *d.groupoid;
  std::vector<Ideal> ideals(G.size());
  std::vector<RingMap> maps(G.size());
  for (Mor g = 0; g < G.size(); ++g) {
    const std::size_t s = G.object_pos(G.src(g)), t = G.object_pos(G.tgt(g));
    if (G.is_object(g)) {
      ideals[g] = gd.J[t];
      maps[g] = RingMap::identity(gd.J[t]);
      continue;
    }
    Mor gx = project_pi(G, d.tau, g);
    maps[g] = compose(gd.tau_ext[t],
                      compose(gd.group_ext[d.iso.to_local(gx)], gd.tau_ext[s].inverse()));
    ideals[g] = maps[g].codomain();
  }
  try {
    return Globalization{validate_partial_action(d.groupoid, gd.ambient, ideals, maps),
                         gd.embedding};
  } catch (const Error& e) {
    throw Error(ErrorKind::InconsistentEquivalence,
                "induced global action fails validation: " + e.message(), e.witness());
  }
}

// Restriction of a global action to an ideal E of the ring: A'_g =
// E cap beta_g(E cap A_{s(g)}) cap A_{t(g)}. The global action, with the
// identity embedding, globalizes the restriction.
inline PartialGroupoidAction restrict_action(const PartialGroupoidAction& beta,
                                             const Ideal& E) {
  const FiniteGroupoid& G = *beta.groupoid();
  const RingPtr& A = beta.ring();
  std::vector<Ideal> ideals(G.size());
  for (Mor g = 0; g < G.size(); ++g) {
    std::vector<Elem> moved;
    const Ideal inside = intersect(E, beta.ideal(G.src(g)));
    for (Elem a : inside.elements()) moved.push_back(beta.apply(g, a));
    ideals[g] = intersect(intersect(E, Ideal(A, std::move(moved))), beta.ideal(G.tgt(g)));
  }
  std::vector<std::vector<Elem>> maps(G.size());
  for (Mor g = 0; g < G.size(); ++g) {
    maps[g].assign(A->size(), kNone);
    for (Elem a : ideals[G.inv(g)].elements()) maps[g][a] = beta.apply(g, a);
  }
  return validate_partial_action(beta.groupoid(), A, std::move(ideals), maps);
}

}  // namespace galg
