#pragma once

// Partial skew groupoid rings, generic over the coefficient ring so that the
// iterated ring (A *_{alpha*} G0^2) *_theta G(x) reuses the same code, plus
// the global pair-groupoid action alpha*, the partial action theta and the
// comparison isomorphism phi. Ring-level identities are verified on
// additive generators {b delta_g}: every identity involved is multi-additive.

#include <atomic>
#include <concepts>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "galg/action.hpp"
#include "galg/zmod_linalg.hpp"

namespace galg {

using linalg::Int;
using linalg::Vec;

template <class R>
concept CoefficientRing = requires(const R& r, const typename R::value_type& a) {
  { r.zero() } -> std::convertible_to<typename R::value_type>;
  { r.add(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.neg(a) } -> std::convertible_to<typename R::value_type>;
  { r.mul(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.equal(a, a) } -> std::convertible_to<bool>;
  { r.coordinates(a) } -> std::convertible_to<Vec>;
  { r.dimension() } -> std::convertible_to<std::size_t>;
  { r.modulus() } -> std::convertible_to<Int>;
  { r.name(a) } -> std::convertible_to<std::string>;
};

// A finite ring seen as a coefficient ring.
class BaseRing {
 public:
  using value_type = Elem;

  BaseRing() = default;
  explicit BaseRing(RingPtr A) : A_(std::move(A)) {}

  const RingPtr& ring() const { return A_; }
  Elem zero() const { return A_->zero(); }
  Elem add(Elem a, Elem b) const { return A_->add(a, b); }
  Elem neg(Elem a) const { return A_->neg(a); }
  Elem mul(Elem a, Elem b) const { return A_->mul(a, b); }
  bool equal(Elem a, Elem b) const { return a == b; }
  Vec coordinates(Elem a) const { return A_->embed(a); }
  std::size_t dimension() const { return A_->rank(); }
  Int modulus() const { return A_->exponent(); }
  std::string name(Elem a) const { return A_->name(a); }

 private:
  RingPtr A_;
};

template <class V>
struct SkewElement {
  std::uint64_t ring = 0;
  std::vector<V> coeff;  // indexed by morphism
};

namespace detail {
inline std::uint64_t next_ring_id() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}
}  // namespace detail

template <CoefficientRing R>
struct SkewData {
  using V = typename R::value_type;
  GroupoidPtr groupoid;
  R coefficients;
  std::vector<V> units;                   // 1_g
  std::function<V(Mor, const V&)> act;    // alpha_g on the domain A_{g^-1}
  std::vector<std::vector<V>> generators; // additive generators of A_g
};

template <CoefficientRing R>
class SkewRing {
 public:
  using Coeff = typename R::value_type;
  using value_type = SkewElement<Coeff>;

  SkewRing() = default;
  explicit SkewRing(SkewData<R> data)
      : data_(std::make_shared<const SkewData<R>>(std::move(data))),
        id_(detail::next_ring_id()) {}

  const FiniteGroupoid& groupoid() const { return *data_->groupoid; }
  const GroupoidPtr& groupoid_ptr() const { return data_->groupoid; }
  const R& coefficients() const { return data_->coefficients; }
  const Coeff& unit(Mor g) const { return data_->units[g]; }
  std::uint64_t id() const { return id_; }

  value_type zero() const {
    return value_type{id_, std::vector<Coeff>(groupoid().size(), coefficients().zero())};
  }

  // a delta_g; the caller guarantees a in A_g.
  value_type term(Mor g, const Coeff& a) const {
    value_type r = zero();
    r.coeff[g] = a;
    return r;
  }

  // sum over objects of 1_y delta_y
  value_type one() const {
    value_type r = zero();
    for (Mor y : groupoid().objects()) r.coeff[y] = unit(y);
    return r;
  }

  const Coeff& coefficient(const value_type& r, Mor g) const {
    check(r);
    return r.coeff[g];
  }

  value_type add(const value_type& a, const value_type& b) const {
    check(a);
    check(b);
    value_type r = a;
    for (std::size_t g = 0; g < r.coeff.size(); ++g)
      r.coeff[g] = coefficients().add(a.coeff[g], b.coeff[g]);
    return r;
  }

  value_type neg(const value_type& a) const {
    check(a);
    value_type r = a;
    for (auto& c : r.coeff) c = coefficients().neg(c);
    return r;
  }

  value_type sub(const value_type& a, const value_type& b) const { return add(a, neg(b)); }

  // (a delta_g)(b delta_h) = a alpha_g(b 1_{g^-1}) delta_{gh} when s(g) = t(h).
  value_type mul(const value_type& a, const value_type& b) const {
    check(a);
    check(b);
    const FiniteGroupoid& G = groupoid();
    const R& K = coefficients();
    value_type r = zero();
    for (Mor g = 0; g < G.size(); ++g) {
      if (is_zero_coeff(a.coeff[g])) continue;
      const Coeff& inv_unit = unit(G.inv(g));
      for (Mor h = 0; h < G.size(); ++h) {
        if (!G.composable(g, h) || is_zero_coeff(b.coeff[h])) continue;
        Coeff moved = data_->act(g, K.mul(b.coeff[h], inv_unit));
        Mor gh = G.compose(g, h);
        r.coeff[gh] = K.add(r.coeff[gh], K.mul(a.coeff[g], moved));
      }
    }
    return r;
  }

  bool equal(const value_type& a, const value_type& b) const {
    check(a);
    check(b);
    for (std::size_t g = 0; g < a.coeff.size(); ++g)
      if (!coefficients().equal(a.coeff[g], b.coeff[g])) return false;
    return true;
  }

  bool is_zero(const value_type& a) const { return equal(a, zero()); }

  Vec coordinates(const value_type& a) const {
    check(a);
    Vec out;
    out.reserve(dimension());
    for (const Coeff& c : a.coeff) {
      Vec v = coefficients().coordinates(c);
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  }
  std::size_t dimension() const { return groupoid().size() * coefficients().dimension(); }
  Int modulus() const { return coefficients().modulus(); }

  std::string name(const value_type& a) const {
    check(a);
    std::string s;
    for (Mor g = 0; g < a.coeff.size(); ++g) {
      if (is_zero_coeff(a.coeff[g])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + coefficients().name(a.coeff[g]) + ")d_" + groupoid().name(g);
    }
    return s.empty() ? "0" : s;
  }

  // Additive generators b delta_g, b running over generators of A_g.
  std::vector<value_type> generators() const {
    std::vector<value_type> out;
    for (Mor g = 0; g < groupoid().size(); ++g)
      for (const Coeff& b : data_->generators[g]) out.push_back(term(g, b));
    return out;
  }
  const std::vector<Coeff>& generators_of(Mor g) const { return data_->generators[g]; }

  // alpha_g(a) for a in A_{g^-1}.
  Coeff act(Mor g, const Coeff& a) const { return data_->act(g, a); }

 private:
  void check(const value_type& a) const {
    if (a.ring != id_)
      throw Error(ErrorKind::MixedRings, "operand belongs to another skew ring");
  }
  bool is_zero_coeff(const Coeff& c) const {
    return coefficients().equal(c, coefficients().zero());
  }

  std::shared_ptr<const SkewData<R>> data_;
  std::uint64_t id_ = 0;
};

using BaseSkewRing = SkewRing<BaseRing>;
using BaseSkewElement = SkewElement<Elem>;

inline std::vector<Elem> action_units(const PartialGroupoidAction& alpha) {
  std::vector<Elem> u;
  for (Mor g = 0; g < alpha.groupoid()->size(); ++g) u.push_back(alpha.unit(g));
  return u;
}

// A *_alpha G for a unital partial action.
inline BaseSkewRing skew_ring(const PartialGroupoidAction& alpha) {
  if (!alpha.is_unital())
    throw Error(ErrorKind::NotUnitalAction, "skew ring needs a unital partial action");
  SkewData<BaseRing> d;
  d.groupoid = alpha.groupoid();
  d.coefficients = BaseRing(alpha.ring());
  d.units = action_units(alpha);
  d.act = [alpha](Mor g, const Elem& a) { return alpha.apply(g, a); };
  for (Mor g = 0; g < alpha.groupoid()->size(); ++g)
    d.generators.push_back(alpha.ideal(g).generators());
  return BaseSkewRing(std::move(d));
}

// Outcome of an exhaustive or sampled ring-axiom check.
struct RingAxiomReport {
  bool ok = true;
  std::string failing;     // "associativity", "left identity", ...
  std::string witness;
  std::size_t checked = 0; // triples or pairs examined
  bool sampled = false;
};

// Associativity on triples of additive generators (exhaustive up to
// caps.triple_checks, then that many seeded samples) and the identity laws.
template <CoefficientRing R>
RingAxiomReport verify_skew_ring(const SkewRing<R>& S, const Caps& caps = default_caps()) {
  RingAxiomReport rep;
  auto gens = S.generators();
  const std::size_t n = gens.size();
  auto triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    auto lhs = S.mul(S.mul(gens[i], gens[j]), gens[k]);
    auto rhs = S.mul(gens[i], S.mul(gens[j], gens[k]));
    ++rep.checked;
    if (!S.equal(lhs, rhs)) {
      rep.ok = false;
      rep.failing = "associativity";
      rep.witness = S.name(gens[i]) + " | " + S.name(gens[j]) + " | " + S.name(gens[k]);
    }
    return rep.ok;
  };
  if (n * n * n <= caps.triple_checks) {
    for (std::size_t i = 0; i < n && rep.ok; ++i)
      for (std::size_t j = 0; j < n && rep.ok; ++j)
        for (std::size_t k = 0; k < n && rep.ok; ++k) triple(i, j, k);
  } else {
    rep.sampled = true;
    std::mt19937_64 rng(caps.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t t = 0; t < caps.triple_checks && rep.ok; ++t)
      triple(pick(rng), pick(rng), pick(rng));
  }
  if (!rep.ok) return rep;
  auto one = S.one();
  for (const auto& g : gens) {
    if (!S.equal(S.mul(one, g), g)) return {false, "left identity", S.name(g), rep.checked, rep.sampled};
    if (!S.equal(S.mul(g, one), g)) return {false, "right identity", S.name(g), rep.checked, rep.sampled};
  }
  return rep;
}

// Global action of the pair groupoid G0^2 on A: A*_u = A_{t(u)},
// alpha*_u = alpha_{tau_{t(u)}} o alpha_{tau_{s(u)}^-1}.
struct AlphaStar {
  GroupoidPtr pair;
  PartialGroupoidAction action;
  std::size_t objects = 0;

  // (y,z) by object positions
  Mor pair_index(std::size_t y, std::size_t z) const { return y * objects + z; }
};

inline AlphaStar alpha_star(const PartialGroupoidAction& alpha, const Transversal& tau) {
  if (!is_tau_global(alpha, tau))
    throw Error(ErrorKind::NotTauGlobal, "alpha* needs a tau(x)-global action");
  const FiniteGroupoid& G = *alpha.groupoid();
  const std::size_t k = G.object_count();
  std::vector<std::string> names;
  for (Mor y : G.objects()) names.push_back(G.name(y));
  AlphaStar out;
  out.pair = pair_groupoid(names);
  out.objects = k;
  std::vector<Ideal> ideals(k * k);
  std::vector<RingMap> maps(k * k);
  for (std::size_t y = 0; y < k; ++y)
    for (std::size_t z = 0; z < k; ++z) {
      Mor ts = tau.pick[y], tt = tau.pick[z];
      ideals[y * k + z] = alpha.ideal(G.objects()[z]);
      maps[y * k + z] = compose(alpha.map(tt), alpha.map(G.inv(ts)));
    }
  out.action = validate_partial_action(out.pair, alpha.ring(), std::move(ideals), maps);
  if (!out.action.is_global())
    throw Error(ErrorKind::InconsistentEquivalence, "alpha* is not global");
  return out;
}

// The partial action theta of G(x) on C = A *_{alpha*} G0^2 and the ring
// C *_theta G(x).
struct ThetaData {
  GroupoidPtr groupoid;  // G
  Transversal tau;
  IsotropyGroup iso;
  AlphaStar star;
  BaseSkewRing C;
  // [local h][object position z]
  std::vector<std::vector<Ideal>> component;      // C_{z,h} = alpha_{tau_z}(A_h)
  std::vector<std::vector<RingMap>> component_map;  // theta_{z,h}: C_{z,h^-1} -> C_{z,h}
  std::vector<BaseSkewElement> units;             // 1'_h
  SkewRing<BaseSkewRing> D;                       // C *_theta G(x)

  std::size_t objects() const { return tau.pick.size(); }
  std::size_t object_of(std::size_t pair_index) const { return pair_index % objects(); }  // t(u)
};

// theta_h on an element of C_{h^-1}.
inline BaseSkewElement theta_apply(const ThetaData& t, Mor h_local, const BaseSkewElement& c) {
  BaseSkewElement r = t.C.zero();
  for (Mor u = 0; u < c.coeff.size(); ++u)
    r.coeff[u] = t.component_map[h_local][t.object_of(u)](c.coeff[u]);
  return r;
}

struct Verification {
  bool ok = true;
  std::string step;
  std::string witness;
  static Verification pass() { return {}; }
  static Verification fail(std::string s, std::string w) { return {false, std::move(s), std::move(w)}; }
};

inline ThetaData theta_data(const PartialGroupoidAction& alpha, const Transversal& tau) {
  if (!alpha.is_unital())
    throw Error(ErrorKind::NotUnitalAction, "theta needs a unital partial action");
  ThetaData t;
  t.groupoid = alpha.groupoid();
  t.tau = tau;
  const FiniteGroupoid& G = *alpha.groupoid();
  const RingPtr& A = alpha.ring();
  t.iso = isotropy_group(G, tau.base);
  t.star = alpha_star(alpha, tau);
  t.C = skew_ring(t.star.action);
  const std::size_t k = G.object_count();
  for (Mor hl = 0; hl < t.iso.size(); ++hl) {
    Mor h = t.iso.parent[hl];
    std::vector<Ideal> comp;
    std::vector<RingMap> cmap;
    for (std::size_t z = 0; z < k; ++z) {
      Mor tz = tau.pick[z];
      comp.emplace_back(A, alpha.map(tz).image_of(alpha.ideal(h)));
      cmap.push_back(compose(alpha.map(tz), compose(alpha.map(h), alpha.map(G.inv(tz)))));
    }
    t.component.push_back(std::move(comp));
    t.component_map.push_back(std::move(cmap));
    BaseSkewElement one_h = t.C.zero();
    for (std::size_t z = 0; z < k; ++z)
      one_h.coeff[z * k + z] = alpha.apply(tau.pick[z], alpha.unit(h));
    t.units.push_back(std::move(one_h));
  }
  SkewData<BaseSkewRing> d;
  d.groupoid = t.iso.group;
  d.coefficients = t.C;
  d.units = t.units;
  // theta reads component maps through a shared copy of the tables.
  auto maps = std::make_shared<const std::vector<std::vector<RingMap>>>(t.component_map);
  BaseSkewRing C = t.C;
  d.act = [maps, C, k](Mor hl, const BaseSkewElement& c) {
    BaseSkewElement r = C.zero();
    for (Mor u = 0; u < c.coeff.size(); ++u) r.coeff[u] = (*maps)[hl][u % k](c.coeff[u]);
    return r;
  };
  for (Mor hl = 0; hl < t.iso.size(); ++hl) {
    std::vector<BaseSkewElement> gens;
    for (Mor u = 0; u < k * k; ++u)
      for (Elem b : t.component[hl][u % k].generators()) gens.push_back(t.C.term(u, b));
    d.generators.push_back(std::move(gens));
  }
  t.D = SkewRing<BaseSkewRing>(std::move(d));
  return t;
}

// Unitality of every C_h (identity 1'_h), C_x = C, and the four partial
// action steps for theta. Steps 3 and 4 decompose over the direct sum
// C_h = sum_u C_{t(u),h} d_u and are checked exhaustively per component.
inline Verification verify_theta(const ThetaData& t, const PartialGroupoidAction& alpha) {
  const FiniteGroupoid& H = *t.iso.group;
  const FiniteRing& A = *alpha.ring();
  const std::size_t k = t.objects();
  const BaseSkewRing& C = t.C;
  const Mor e = H.objects()[0];
  for (std::size_t z = 0; z < k; ++z)
    if (!(t.component[e][z] == alpha.ideal(alpha.groupoid()->objects()[z])))
      return Verification::fail("C_x = C", "component " + std::to_string(z));
  auto cgens = C.generators();
  for (Mor hl = 0; hl < H.size(); ++hl) {
    const auto& one = t.units[hl];
    const std::string h = H.name(hl);
    if (!C.equal(C.mul(one, one), one)) return Verification::fail("unital ideal", "1'_" + h + " not idempotent");
    for (const auto& c : cgens)
      if (!C.equal(C.mul(one, c), C.mul(c, one)))
        return Verification::fail("unital ideal", "1'_" + h + " not central: " + C.name(c));
    for (Mor u = 0; u < k * k; ++u) {
      std::vector<Elem> absorbed;
      for (Elem b : C.generators_of(u)) absorbed.push_back(C.mul(one, C.term(u, b)).coeff[u]);
      absorbed.push_back(A.zero());
      if (!(Ideal::span(alpha.ring(), absorbed) == t.component[hl][u % k]))
        return Verification::fail("unital ideal", "C_" + h + " != 1'_" + h + " C at " + C.groupoid().name(u));
    }
    for (const auto& g : t.D.generators_of(hl))
      if (!C.equal(C.mul(one, g), g) || !C.equal(C.mul(g, one), g))
        return Verification::fail("unital ideal", "1'_" + h + " does not act as 1 on " + C.name(g));
  }
  for (std::size_t z = 0; z < k; ++z)
    if (!t.component_map[e][z].is_identity())
      return Verification::fail("step 1", "theta_x not the identity at " + std::to_string(z));
  for (Mor hl = 0; hl < H.size(); ++hl) {
    const auto& dom = t.D.generators_of(H.inv(hl));
    for (const auto& a : dom)
      for (const auto& b : dom) {
        auto lhs = theta_apply(t, hl, C.mul(a, b));
        auto rhs = C.mul(theta_apply(t, hl, a), theta_apply(t, hl, b));
        if (!C.equal(lhs, rhs))
          return Verification::fail("step 2", H.name(hl) + ": " + C.name(a) + " , " + C.name(b));
      }
  }
  for (Mor hl = 0; hl < H.size(); ++hl)
    for (Mor ll = 0; ll < H.size(); ++ll) {
      Mor hlc = H.compose(hl, ll);
      Mor l_inv = H.inv(ll), h_inv = H.inv(hl), hl_inv = H.inv(hlc);
      for (std::size_t z = 0; z < k; ++z) {
        Ideal meet = intersect(t.component[ll][z], t.component[h_inv][z]);
        for (Elem c : meet.elements()) {
          Elem moved = t.component_map[l_inv][z](c);
          if (!t.component[hl_inv][z].contains(moved))
            return Verification::fail("step 3", H.name(hl) + "," + H.name(ll) + ": " + A.name(c));
          Elem lhs = t.component_map[hl][z](t.component_map[ll][z](moved));
          Elem rhs = t.component_map[hlc][z](moved);
          if (lhs != rhs)
            return Verification::fail("step 4", H.name(hl) + "," + H.name(ll) + ": " + A.name(moved));
        }
      }
    }
  return Verification::pass();
}

// phi(a delta_g) = a delta_{(s(g),t(g))} delta_{g_x}
inline SkewElement<BaseSkewElement> phi_apply(const ThetaData& t, const BaseSkewRing& R,
                                              const BaseSkewElement& r) {
  const FiniteGroupoid& G = *t.groupoid;
  const std::size_t k = t.objects();
  auto out = t.D.zero();
  for (Mor g = 0; g < G.size(); ++g) {
    Elem a = R.coefficient(r, g);
    if (a == R.coefficients().zero()) continue;
    Mor u = G.object_pos(G.src(g)) * k + G.object_pos(G.tgt(g));
    Mor hl = t.iso.to_local(project_pi(G, t.tau, g));
    auto& c = out.coeff[hl];
    c.coeff[u] = R.coefficients().add(c.coeff[u], a);
  }
  return out;
}

struct PhiReport {
  bool well_defined = false;
  bool additive = false;
  bool multiplicative = false;
  bool bijective = false;
  std::size_t generator_count = 0;
  std::size_t pairs_checked = 0;
  std::string failing;
  std::string witness;
  bool ok() const { return well_defined && additive && multiplicative && bijective; }
};

// Checks phi : A *_alpha G -> (A *_{alpha*} G0^2) *_theta G(x) step by step.
inline PhiReport phi_iso(const PartialGroupoidAction& alpha, const Transversal& tau) {
  PhiReport rep;
  ThetaData t = theta_data(alpha, tau);
  BaseSkewRing R = skew_ring(alpha);
  const FiniteGroupoid& G = *alpha.groupoid();
  const FiniteRing& A = *alpha.ring();
  const std::size_t k = t.objects();
  auto fail = [&](std::string what, std::string w) {
    rep.failing = std::move(what);
    rep.witness = std::move(w);
    return rep;
  };
  for (Mor g = 0; g < G.size(); ++g) {
    Mor hl = t.iso.to_local(project_pi(G, tau, g));
    const Ideal& target = t.component[hl][G.object_pos(G.tgt(g))];
    for (Elem a : alpha.ideal(g).generators())
      if (!target.contains(a)) return fail("well-defined", G.name(g) + ": " + A.name(a));
  }
  rep.well_defined = true;

  auto gens = R.generators();
  rep.generator_count = gens.size();
  std::vector<SkewElement<BaseSkewElement>> images;
  for (const auto& r : gens) images.push_back(phi_apply(t, R, r));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (!t.D.equal(phi_apply(t, R, R.add(gens[i], gens[j])), t.D.add(images[i], images[j])))
        return fail("additive", R.name(gens[i]) + " + " + R.name(gens[j]));
    }
  rep.additive = true;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      ++rep.pairs_checked;
      auto lhs = phi_apply(t, R, R.mul(gens[i], gens[j]));
      auto rhs = t.D.mul(images[i], images[j]);
      if (!t.D.equal(lhs, rhs)) return fail("multiplicative", R.name(gens[i]) + " * " + R.name(gens[j]));
    }
  rep.multiplicative = true;

  // Grading: g -> ((s(g), t(g)), g_x) must be a bijection onto G0^2 x G(x),
  // and on each graded piece the coefficient map A_g -> C_{t(g), g_x} is the
  // inclusion, so bijectivity there is equality of the two ideals.
  std::vector<Mor> preimage(k * k * t.iso.size(), kNoMor);
  for (Mor g = 0; g < G.size(); ++g) {
    Mor u = G.object_pos(G.src(g)) * k + G.object_pos(G.tgt(g));
    Mor hl = t.iso.to_local(project_pi(G, tau, g));
    Mor& slot = preimage[hl * k * k + u];
    if (slot != kNoMor) return fail("bijective", "grading collision at " + G.name(g) + ", " + G.name(slot));
    slot = g;
  }
  for (std::size_t i = 0; i < preimage.size(); ++i) {
    if (preimage[i] == kNoMor) return fail("bijective", "grading misses component " + std::to_string(i));
    Mor g = preimage[i];
    Mor hl = i / (k * k), u = i % (k * k);
    if (!(alpha.ideal(g) == t.component[hl][u % k]))
      return fail("bijective", "coefficient map at " + G.name(g) + " is not onto C_{" +
                                   t.C.groupoid().name(u) + "," + t.iso.group->name(hl) + "}");
  }
  rep.bijective = true;
  return rep;
}

// The running hypotheses of the later theory: a lifted action that is
// tau(x)-global and gamma-unital with A the direct sum of the B_y.
struct UnitalAction {
  PartialGroupoidAction action;
  std::vector<Elem> units;  // 1_g
  Ideal base;               // sum of the object ideals
  Elem one = 0;             // identity of `base`
};

inline UnitalAction make_unital_action(const PartialGroupoidAction& alpha) {
  if (!alpha.is_unital())
    throw Error(ErrorKind::NotUnitalAction, "partial action is not unital");
  const FiniteGroupoid& G = *alpha.groupoid();
  const FiniteRing& A = *alpha.ring();
  UnitalAction u;
  u.action = alpha;
  u.units = action_units(alpha);
  std::vector<Ideal> parts;
  Elem one = A.zero();
  for (Mor y : G.objects()) {
    for (Mor z : G.objects())
      if (y < z && A.mul(u.units[y], u.units[z]) != A.zero())
        throw Error(ErrorKind::StandingAssumptionsFail, "object units are not orthogonal",
                    G.name(y) + ", " + G.name(z));
    parts.push_back(alpha.ideal(y));
    one = A.add(one, u.units[y]);
  }
  u.base = ideal_sum(alpha.ring(), parts);
  u.one = one;
  return u;
}

struct StandingInstance {
  Datum datum;
  UnitalAction groupoid_level;  // beta on A
  UnitalAction group_level;     // beta_(x) = gamma_(x) on B_x
  const Transversal& tau() const { return datum.tau; }
};

// Why a datum fails the running hypotheses, or nothing when it satisfies them.
inline std::optional<std::string> standing_violation(const Datum& d) {
  PartialGroupoidAction beta = lift_datum(d);
  if (!is_tau_global(beta, d.tau)) return "NotTauGlobal";
  if (!is_gamma_unital(d)) return "NotGammaUnital";
  if (!beta.is_unital()) return "NotUnital";
  const FiniteRing& A = *d.ring;
  if (!A.one()) return "RingNotUnital";
  Elem sum = A.zero();
  const FiniteGroupoid& G = *d.groupoid;
  for (Mor y : G.objects()) {
    for (Mor z : G.objects())
      if (y < z && A.mul(beta.unit(y), beta.unit(z)) != A.zero()) return "ObjectsNotOrthogonal";
    sum = A.add(sum, beta.unit(y));
  }
  if (sum != *A.one()) return "NotDirectSum";
  return std::nullopt;
}

inline StandingInstance standing_assumptions(const Datum& d) {
  if (auto why = standing_violation(d))
    throw Error::tagged(ErrorKind::StandingAssumptionsFail, *why, "standing assumptions fail");
  StandingInstance s;
  s.datum = d;
  s.groupoid_level = make_unital_action(lift_datum(d));
  s.group_level = make_unital_action(d.group);
  return s;
}

// The group-level instance: gamma_(x) acting on B_x.
inline const UnitalAction& restrict_to_isotropy(const StandingInstance& s) { return s.group_level; }

}  // namespace galg
