#pragma once

// Morita contexts attached to a unital partial action, Galois coordinates,
// the strictness equivalences, separability elements and the Frobenius
// witness. Rings like A *_beta G are never enumerated; every statement is
// reduced to additive spans of products of generators.

#include <optional>
#include <string>
#include <vector>

#include "galg/invariants.hpp"
#include "galg/tensor.hpp"

namespace galg {

namespace detail {

template <CoefficientRing R, class Range>
linalg::Submodule skew_span(const SkewRing<R>& S, const Range& elems, bool solvable = false) {
  std::vector<Vec> rows;
  for (const auto& e : elems) rows.push_back(S.coordinates(e));
  return linalg::Submodule(S.modulus(), S.dimension(), std::move(rows), solvable);
}

// a in A viewed in A *_beta G: sum_y (a 1_y) delta_y.
inline BaseSkewElement embed_base(const BaseSkewRing& R, const UnitalAction& u, Elem a) {
  const FiniteRing& A = *u.action.ring();
  auto r = R.zero();
  for (Mor y : R.groupoid().objects()) r.coeff[y] = A.mul(a, u.units[y]);
  return r;
}

inline Vec concat_embedded(const FiniteRing& A, const std::vector<Elem>& parts) {
  Vec out;
  for (Elem e : parts) {
    Vec v = A.embed(e);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace detail

struct MoritaReport {
  bool ok = true;
  std::string part;     // first failing part
  std::string witness;
  bool u_closed_form = false;   // R 1_S spans sum over S_x of B_g d_g
  bool v_closed_form = false;   // 1_S R spans sum over T_x of B_g d_g
  bool corner_is_s = false;     // 1_S R 1_S = S
  bool ideal_is_r = false;      // R 1_S R = R
  bool associative = false;     // both conditions of the context
  bool mu_onto = false;
  bool nu_onto = false;
  bool exhibited = false;       // explicit factorization of each generator
};

// R = A *_beta G, S = B_x *_{beta_(x)} G(x) sitting inside R, 1_S = 1_x d_x,
// U = R 1_S, V = 1_S R, mu and nu are multiplication.
inline MoritaReport skew_skew_context(const StandingInstance& s) {
  MoritaReport rep;
  const UnitalAction& u = s.groupoid_level;
  const Datum& d = s.datum;
  const FiniteGroupoid& G = *d.groupoid;
  const FiniteRing& A = *d.ring;
  const Mor x = d.tau.base;
  BaseSkewRing R = skew_ring(u.action);
  auto fail = [&](std::string part, std::string w) {
    rep.ok = false;
    rep.part = std::move(part);
    rep.witness = std::move(w);
    return rep;
  };
  auto gens = R.generators();
  auto one_s = R.term(x, u.units[x]);
  std::vector<BaseSkewElement> u_gens, v_gens, s_gens, u_closed, v_closed, corner, ideal;
  for (const auto& r : gens) {
    u_gens.push_back(R.mul(r, one_s));
    v_gens.push_back(R.mul(one_s, r));
  }
  for (Mor g = 0; g < G.size(); ++g)
    for (Elem b : R.generators_of(g)) {
      if (G.src(g) == x) u_closed.push_back(R.term(g, b));
      if (G.tgt(g) == x) v_closed.push_back(R.term(g, b));
      if (G.src(g) == x && G.tgt(g) == x) s_gens.push_back(R.term(g, b));
    }
  auto span = [&](const std::vector<BaseSkewElement>& v) { return detail::skew_span(R, v); };
  if (!(span(u_gens) == span(u_closed))) return fail("U closed form", "R 1_S");
  rep.u_closed_form = true;
  if (!(span(v_gens) == span(v_closed))) return fail("V closed form", "1_S R");
  rep.v_closed_form = true;
  for (const auto& v : v_gens) corner.push_back(R.mul(v, one_s));
  if (!(span(corner) == span(s_gens))) return fail("1_S R 1_S = S", "");
  rep.corner_is_s = true;
  for (const auto& a : u_closed)
    for (const auto& b : v_closed) ideal.push_back(R.mul(a, b));
  if (!(span(ideal) == span(gens))) return fail("R 1_S R = R", "");
  rep.ideal_is_r = true;
  rep.mu_onto = true;  // mu(U (x) V) = R 1_S R
  std::vector<BaseSkewElement> vu;
  for (const auto& b : v_closed)
    for (const auto& a : u_closed) vu.push_back(R.mul(b, a));
  if (!(span(vu) == span(s_gens))) return fail("nu onto", "");
  rep.nu_onto = true;
  for (const auto& a : u_closed)
    for (const auto& b : v_closed)
      for (const auto& c : u_closed)
        if (!R.equal(R.mul(a, R.mul(b, c)), R.mul(R.mul(a, b), c)))
          return fail("associativity", R.name(a) + " | " + R.name(b) + " | " + R.name(c));
  for (const auto& b : v_closed)
    for (const auto& a : u_closed)
      for (const auto& c : v_closed)
        if (!R.equal(R.mul(b, R.mul(a, c)), R.mul(R.mul(b, a), c)))
          return fail("associativity", R.name(b) + " | " + R.name(a) + " | " + R.name(c));
  rep.associative = true;
  // gamma_{tau_t(g)}(a') d_g = (gamma_{tau_t(g)}(a') d_{tau_t(g)}) (1_{g_x} d_{tau_t(g)^-1 g})
  for (Mor g = 0; g < G.size(); ++g) {
    const std::size_t tp = G.object_pos(G.tgt(g));
    Mor tt = d.tau.pick[tp];
    Mor gx = project_pi(G, d.tau, g);
    Mor right = G.compose(G.inv(tt), g);
    for (Elem a : R.generators_of(g)) {
      Elem ap = d.tau_maps[tp].inverse()(a);
      auto lhs = R.term(g, a);
      auto rhs = R.mul(R.term(tt, d.tau_maps[tp](ap)), R.term(right, u.units[gx]));
      if (!R.equal(lhs, rhs)) return fail("factorization", G.name(g) + ": " + A.name(a));
    }
  }
  rep.exhibited = true;
  return rep;
}

// Gamma(a, b) = t(ab) and Gamma'(a, b) = sum_g a beta_g(b 1_{g^-1}) d_g.
inline Elem gamma_map(const UnitalAction& u, Elem a, Elem b) {
  return trace(u, u.action.ring()->mul(a, b));
}

inline BaseSkewElement gamma_prime_map(const BaseSkewRing& R, const UnitalAction& u, Elem a,
                                       Elem b) {
  const FiniteRing& A = *u.action.ring();
  const FiniteGroupoid& G = R.groupoid();
  auto r = R.zero();
  for (Mor g = 0; g < G.size(); ++g)
    r.coeff[g] = A.mul(a, u.action.apply(g, A.mul(b, u.units[G.inv(g)])));
  return r;
}

struct GammaLevel {
  bool gamma_onto = false;
  bool gamma_prime_onto = false;
  bool balanced = false;
  bool lands_in_invariants = false;
};

// Surjectivity of Gamma and Gamma' on one level, with the balancing and
// codomain checks on generators.
inline GammaLevel gamma_level(const UnitalAction& u) {
  GammaLevel out;
  const RingPtr& Ap = u.action.ring();
  const FiniteRing& A = *Ap;
  const FiniteGroupoid& G = *u.action.groupoid();
  BaseSkewRing R = skew_ring(u.action);
  InvariantSubring inv = invariant_subring(u);
  const auto& base = u.base.generators();
  std::vector<Elem> gamma_vals;
  std::vector<BaseSkewElement> prime_vals;
  out.lands_in_invariants = true;
  for (Elem a : base)
    for (Elem b : base) {
      Elem v = gamma_map(u, a, b);
      out.lands_in_invariants = out.lands_in_invariants && inv.contains(v);
      gamma_vals.push_back(v);
      prime_vals.push_back(gamma_prime_map(R, u, a, b));
    }
  out.gamma_onto = AbelianPresentation(Ap, gamma_vals) == inv.presentation;
  out.gamma_prime_onto = detail::skew_span(R, prime_vals) == detail::skew_span(R, R.generators());
  // Gamma is balanced over R: Gamma(a . r, b) = Gamma(a, r . b), with
  // b . (c d_g) = beta_{g^-1}(b c) and (c d_g) . b = c beta_g(b 1_{g^-1}).
  // Gamma' is balanced over the invariants.
  out.balanced = true;
  for (Mor g = 0; g < G.size() && out.balanced; ++g)
    for (Elem c : R.generators_of(g))
      for (Elem a : base)
        for (Elem b : base) {
          Elem a_r = u.action.apply(G.inv(g), A.mul(a, c));
          Elem r_b = A.mul(c, u.action.apply(g, A.mul(b, u.units[G.inv(g)])));
          if (gamma_map(u, a_r, b) != gamma_map(u, a, r_b)) out.balanced = false;
        }
  for (Elem c : inv.presentation.generators())
    for (Elem a : base)
      for (Elem b : base)
        if (!R.equal(gamma_prime_map(R, u, A.mul(a, c), b), gamma_prime_map(R, u, a, A.mul(c, b))))
          out.balanced = false;
  return out;
}

struct GammaSurjectivity {
  bool gamma = false;
  bool gamma_prime = false;
  bool group_gamma = false;
  bool group_gamma_prime = false;
  bool balanced = false;
};

inline GammaSurjectivity gamma_surjectivity(const StandingInstance& s) {
  GammaLevel top = gamma_level(s.groupoid_level);
  GammaLevel low = gamma_level(s.group_level);
  if (!top.lands_in_invariants || !low.lands_in_invariants)
    throw Error(ErrorKind::InconsistentEquivalence, "Gamma leaves the invariants");
  GammaSurjectivity r{top.gamma_onto, top.gamma_prime_onto, low.gamma_onto,
                      low.gamma_prime_onto, top.balanced && low.balanced};
  if (r.gamma != r.group_gamma)
    throw Error(ErrorKind::InconsistentEquivalence, "Gamma surjectivity differs between levels");
  if (r.gamma_prime != r.group_gamma_prime)
    throw Error(ErrorKind::InconsistentEquivalence, "Gamma' surjectivity differs between levels");
  return r;
}

using GaloisCoordinates = std::vector<std::pair<Elem, Elem>>;

// sum_i a_i beta_g(b_i 1_{g^-1}) equals 1_g for objects g and 0 otherwise.
inline bool verify_galois(const GaloisCoordinates& coords, const UnitalAction& u) {
  const FiniteRing& A = *u.action.ring();
  const FiniteGroupoid& G = *u.action.groupoid();
  for (Mor g = 0; g < G.size(); ++g) {
    Elem sum = A.zero();
    for (const auto& [a, b] : coords)
      sum = A.add(sum, A.mul(a, u.action.apply(g, A.mul(b, u.units[G.inv(g)]))));
    if (sum != (G.is_object(g) ? u.units[g] : A.zero())) return false;
  }
  return true;
}

// Galois coordinates exist iff 1 lies in the span of Gamma'(a, b) over
// generator pairs; the solution is read off the span coefficients.
inline std::optional<GaloisCoordinates> galois_by_span(const UnitalAction& u) {
  const FiniteRing& A = *u.action.ring();
  BaseSkewRing R = skew_ring(u.action);
  const auto& base = u.base.generators();
  std::vector<BaseSkewElement> vals;
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem a : base)
    for (Elem b : base) {
      vals.push_back(gamma_prime_map(R, u, a, b));
      pairs.emplace_back(a, b);
    }
  if (vals.empty()) return verify_galois({}, u) ? std::optional(GaloisCoordinates{}) : std::nullopt;
  auto span = detail::skew_span(R, vals, true);
  auto sol = span.solve(R.coordinates(R.one()));
  if (!sol) return std::nullopt;
  GaloisCoordinates out;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if ((*sol)[i] != 0) out.emplace_back(A.scalar((*sol)[i], pairs[i].first), pairs[i].second);
  return out;
}

struct GaloisSearch {
  std::optional<GaloisCoordinates> coordinates;
  std::size_t candidates = 0;
  // A miss is conclusive once r_max reaches the number of generators: the
  // identity is additive in each b_i, so the full generator tuple subsumes
  // every other choice of b's.
  bool complete = false;
};

// Fixes b-tuples (multisets of additive generators, size 1..r_max, in
// increasing size) and solves the identity for the a_i exactly.
inline GaloisSearch search_galois(const UnitalAction& u, std::size_t r_max,
                                  const Caps& caps = default_caps()) {
  const FiniteRing& A = *u.action.ring();
  const FiniteGroupoid& G = *u.action.groupoid();
  const auto& base = u.base.generators();
  const std::size_t n = base.size();
  GaloisSearch out;
  out.complete = r_max >= n;
  if (n == 0) {
    if (verify_galois({}, u)) out.coordinates = GaloisCoordinates{};
    out.complete = true;
    return out;
  }
  // number of multisets of size 1..r_max from n items
  std::size_t total = 0;
  {
    std::size_t c = 1;  // C(n-1+r, r)
    for (std::size_t r = 1; r <= r_max; ++r) {
      c = c * (n - 1 + r) / r;
      total += c;
      if (total > caps.search_candidates)
        throw Error(ErrorKind::SearchSpaceExceeded,
                    "Galois search exceeds " + std::to_string(caps.search_candidates) + " candidates");
    }
  }
  std::vector<Elem> target_parts;
  for (Mor g = 0; g < G.size(); ++g) target_parts.push_back(G.is_object(g) ? u.units[g] : A.zero());
  const Vec target = detail::concat_embedded(A, target_parts);
  const std::size_t dim = G.size() * A.rank();
  for (std::size_t r = 1; r <= r_max && r <= std::max<std::size_t>(r_max, 1); ++r) {
    std::vector<std::size_t> idx(r, 0);
    for (;;) {
      ++out.candidates;
      // a_i runs over span(base); row (i, k) is the image of base[k] in slot i.
      std::vector<Vec> rows;
      for (std::size_t i = 0; i < r; ++i) {
        Elem b = base[idx[i]];
        std::vector<Elem> moved(G.size());
        for (Mor g = 0; g < G.size(); ++g) moved[g] = u.action.apply(g, A.mul(b, u.units[G.inv(g)]));
        for (Elem e : base) {
          std::vector<Elem> parts(G.size());
          for (Mor g = 0; g < G.size(); ++g) parts[g] = A.mul(e, moved[g]);
          rows.push_back(detail::concat_embedded(A, parts));
        }
      }
      linalg::Submodule span(A.exponent(), dim, std::move(rows), true);
      if (auto sol = span.solve(target)) {
        GaloisCoordinates coords;
        for (std::size_t i = 0; i < r; ++i) {
          Elem a = A.zero();
          for (std::size_t k = 0; k < n; ++k) a = A.add(a, A.scalar((*sol)[i * n + k], base[k]));
          coords.emplace_back(a, base[idx[i]]);
        }
        if (!verify_galois(coords, u))
          throw Error(ErrorKind::InconsistentEquivalence, "solved Galois coordinates fail verification");
        out.coordinates = std::move(coords);
        return out;
      }
      // next non-decreasing index tuple
      std::size_t p = r;
      while (p > 0 && idx[p - 1] == n - 1) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (std::size_t q = p; q < r; ++q) idx[q] = idx[p - 1];
    }
  }
  return out;
}

struct StrictnessReport {
  bool galois = false;            // groupoid level
  bool trace_onto = false;
  bool group_galois = false;
  bool group_trace_onto = false;
  GammaSurjectivity gamma;
  bool condition[4] = {false, false, false, false};  // (i)..(iv)
  bool strict = false;
  bool consistent = true;
  bool fg_projective_assumed = true;  // caller-asserted, never checked
  bool search_found = false;
  bool search_complete = false;
};

// Evaluates the four equivalent conditions: (i) Galois and trace onto,
// (ii) the groupoid-level context strict, (iii) the group-level context
// strict, (iv) group-level Galois and trace onto. A context whose pairings
// are both onto is strict.
inline StrictnessReport strictness_report(const StandingInstance& s, std::size_t search_r = 2,
                                          const Caps& caps = default_caps()) {
  StrictnessReport r;
  auto coords = galois_by_span(s.groupoid_level);
  auto coords_x = galois_by_span(s.group_level);
  if ((coords && !verify_galois(*coords, s.groupoid_level)) ||
      (coords_x && !verify_galois(*coords_x, s.group_level)))
    throw Error(ErrorKind::InconsistentEquivalence, "span solution is not a Galois coordinate system");
  r.galois = coords.has_value();
  r.group_galois = coords_x.has_value();
  TraceSurjectivity t = trace_surjectivity(s);
  r.trace_onto = t.full;
  r.group_trace_onto = t.group_part;
  r.gamma = gamma_surjectivity(s);
  r.condition[0] = r.galois && r.trace_onto;
  r.condition[1] = r.gamma.gamma && r.gamma.gamma_prime;
  r.condition[2] = r.gamma.group_gamma && r.gamma.group_gamma_prime;
  r.condition[3] = r.group_galois && r.group_trace_onto;
  r.consistent = r.condition[0] == r.condition[1] && r.condition[1] == r.condition[2] &&
                 r.condition[2] == r.condition[3];
  r.strict = r.condition[1];
  GaloisSearch found = search_galois(s.groupoid_level, search_r, caps);
  r.search_found = found.coordinates.has_value();
  r.search_complete = found.complete;
  if (r.search_found && !r.galois) r.consistent = false;
  if (found.complete && r.search_found != r.galois) r.consistent = false;
  if (!r.consistent)
    throw Error(ErrorKind::InconsistentEquivalence, "strictness conditions disagree");
  return r;
}

// C(I): elements of I commuting with every generator of I.
inline std::vector<Elem> center_of(const Ideal& I) {
  const FiniteRing& A = *I.ring();
  std::vector<Elem> out;
  for (Elem a : I.elements()) {
    bool central = true;
    for (Elem g : I.generators()) central = central && A.mul(a, g) == A.mul(g, a);
    if (central) out.push_back(a);
  }
  return out;
}

// Solves sum over the center c_i central_gen_i mapped by f = target.
inline std::optional<Elem> solve_over(const FiniteRing& A, const std::vector<Elem>& gens,
                                      const std::function<Vec(Elem)>& f, const Vec& target) {
  std::vector<Vec> rows;
  for (Elem g : gens) rows.push_back(f(g));
  if (rows.empty()) {
    for (Int v : target)
      if (v != 0) return std::nullopt;
    return A.zero();
  }
  linalg::Submodule span(A.exponent(), target.size(), std::move(rows), true);
  auto sol = span.solve(target);
  if (!sol) return std::nullopt;
  Elem a = A.zero();
  for (std::size_t i = 0; i < gens.size(); ++i) a = A.add(a, A.scalar((*sol)[i], gens[i]));
  return a;
}

struct SeparabilityReport {
  std::optional<Elem> groupoid_witness;  // a in C(A), t_y(a) = 1_y
  std::optional<Elem> group_witness;     // b in C(B_x), t_x(b) = 1_x
  bool witnesses_verified = false;
  bool transported = false;              // each witness rebuilt from the other
  bool equivalent() const { return groupoid_witness.has_value() == group_witness.has_value(); }
};

inline bool is_groupoid_separability_element(const StandingInstance& s, Elem a) {
  const FiniteRing& A = *s.datum.ring;
  const FiniteGroupoid& G = *s.datum.groupoid;
  const Ideal whole = Ideal::whole(s.datum.ring);
  for (Elem g : whole.generators())
    if (A.mul(a, g) != A.mul(g, a)) return false;
  for (Mor y : G.objects())
    if (trace(s.groupoid_level, a, TraceKind::ToObject, kNoMor, y) != s.groupoid_level.units[y])
      return false;
  return true;
}

inline bool is_group_separability_element(const StandingInstance& s, Elem b) {
  const FiniteRing& A = *s.datum.ring;
  const Ideal& Bx = s.datum.base_ideal();
  if (!Bx.contains(b)) return false;
  for (Elem g : Bx.generators())
    if (A.mul(b, g) != A.mul(g, b)) return false;
  return trace(s.group_level, b) == s.group_level.one;
}

inline SeparabilityReport separability_element(const StandingInstance& s) {
  SeparabilityReport rep;
  const Datum& d = s.datum;
  const FiniteRing& A = *d.ring;
  const FiniteGroupoid& G = *d.groupoid;
  const UnitalAction& u = s.groupoid_level;
  auto center = center_of(Ideal::whole(d.ring));
  auto center_gens = greedy_generators(A, center);
  std::vector<Elem> target_parts;
  for (Mor y : G.objects()) target_parts.push_back(u.units[y]);
  rep.groupoid_witness = solve_over(
      A, center_gens,
      [&](Elem a) {
        std::vector<Elem> parts;
        for (Mor y : G.objects()) parts.push_back(trace(u, a, TraceKind::ToObject, kNoMor, y));
        return detail::concat_embedded(A, parts);
      },
      detail::concat_embedded(A, target_parts));
  auto center_x = center_of(d.base_ideal());
  rep.group_witness = solve_over(
      A, greedy_generators(A, center_x),
      [&](Elem b) { return A.embed(trace(s.group_level, b)); }, A.embed(s.group_level.one));
  rep.witnesses_verified =
      (!rep.groupoid_witness || is_groupoid_separability_element(s, *rep.groupoid_witness)) &&
      (!rep.group_witness || is_group_separability_element(s, *rep.group_witness));
  // a -> b = sum_y gamma_{tau_y}^{-1}(a 1_y), and b -> b itself.
  rep.transported = true;
  if (rep.groupoid_witness) {
    Elem b = A.zero();
    for (std::size_t i = 0; i < G.object_count(); ++i)
      b = A.add(b, d.tau_maps[i].inverse()(A.mul(*rep.groupoid_witness, u.units[G.objects()[i]])));
    rep.transported = rep.transported && is_group_separability_element(s, b);
  }
  if (rep.group_witness)
    rep.transported = rep.transported && is_groupoid_separability_element(s, *rep.group_witness);
  if (!rep.equivalent())
    throw Error(ErrorKind::InconsistentEquivalence, "separability differs between levels");
  return rep;
}

struct FrobeniusReport {
  bool central = false;           // s u = u s for every additive generator s
  bool counit_identity = false;   // sum eps(s_i1) s_i2 = sum s_i1 eps(s_i2) = 1
  bool counit_bimodule = false;   // eps is an A-bimodule map
  std::size_t tensor_generators = 0;
  std::vector<Int> tensor_invariant_factors;
  std::string witness;
  bool ok() const { return central && counit_identity && counit_bimodule; }
};

// u = sum_g 1_g d_g (x) 1_{g^-1} d_{g^-1} in S (x)_A S, eps(a_g d_g) = a_g
// for objects g and 0 otherwise.
inline FrobeniusReport frobenius_witness(const UnitalAction& u, const Caps& caps = default_caps()) {
  FrobeniusReport rep;
  const RingPtr& Ap = u.action.ring();
  const FiniteRing& A = *Ap;
  const FiniteGroupoid& G = *u.action.groupoid();
  BaseSkewRing S = skew_ring(u.action);
  const auto& ring_gens = u.base.generators();
  // Module generators: (g, generator of B_g), with per-morphism presentations.
  std::vector<AbelianPresentation> piece;
  std::vector<std::size_t> offset;
  std::size_t count = 0;
  for (Mor g = 0; g < G.size(); ++g) {
    offset.push_back(count);
    piece.emplace_back(Ap, S.generators_of(g));
    count += S.generators_of(g).size();
  }
  auto coords = [&](const BaseSkewElement& r) {
    Vec v(count, 0);
    for (Mor g = 0; g < G.size(); ++g) {
      Elem c = S.coefficient(r, g);
      if (c == A.zero()) continue;
      auto sol = piece[g].solve(c);
      if (!sol)
        throw Error(ErrorKind::InconsistentEquivalence, "coefficient outside its ideal",
                    G.name(g) + ": " + A.name(c));
      for (std::size_t i = 0; i < sol->size(); ++i) v[offset[g] + i] = (*sol)[i];
    }
    return v;
  };
  ModulePresentation right, left;
  right.modulus = left.modulus = A.exponent();
  right.generator_count = left.generator_count = count;
  for (Mor g = 0; g < G.size(); ++g)
    if (!S.generators_of(g).empty())
      for (const Vec& rel : piece[g].submodule().relations()) {
        Vec row(count, 0);
        for (std::size_t i = 0; i < rel.size(); ++i) row[offset[g] + i] = rel[i];
        right.relations.push_back(row);
        left.relations.push_back(row);
      }
  auto gens = S.generators();
  for (Elem a : ring_gens) {
    auto ea = detail::embed_base(S, u, a);
    std::vector<Vec> ra, la;
    for (const auto& s : gens) {
      ra.push_back(coords(S.mul(s, ea)));
      la.push_back(coords(S.mul(ea, s)));
    }
    right.action.push_back(std::move(ra));
    left.action.push_back(std::move(la));
  }
  TensorProduct T(right, left, caps);
  rep.tensor_generators = T.generator_count();
  rep.tensor_invariant_factors = T.invariant_factors();
  std::vector<BaseSkewElement> first, second;
  for (Mor g = 0; g < G.size(); ++g) {
    first.push_back(S.term(g, u.units[g]));
    second.push_back(S.term(G.inv(g), u.units[G.inv(g)]));
  }
  auto tensor_of = [&](const std::vector<BaseSkewElement>& l, const std::vector<BaseSkewElement>& r) {
    Vec t(T.generator_count(), 0);
    for (std::size_t i = 0; i < l.size(); ++i) {
      Vec p = T.pure(coords(l[i]), coords(r[i]));
      for (std::size_t k = 0; k < t.size(); ++k) t[k] = (t[k] + p[k]) % A.exponent();
    }
    return t;
  };
  rep.central = true;
  for (const auto& s : gens) {
    std::vector<BaseSkewElement> sl, sr;
    for (std::size_t i = 0; i < first.size(); ++i) {
      sl.push_back(S.mul(s, first[i]));
      sr.push_back(S.mul(second[i], s));
    }
    if (!T.equal(tensor_of(sl, second), tensor_of(first, sr))) {
      rep.central = false;
      rep.witness = S.name(s);
      break;
    }
  }
  auto eps = [&](const BaseSkewElement& r) {
    Elem e = A.zero();
    for (Mor y : G.objects()) e = A.add(e, S.coefficient(r, y));
    return e;
  };
  auto sum_l = S.zero(), sum_r = S.zero();
  for (std::size_t i = 0; i < first.size(); ++i) {
    sum_l = S.add(sum_l, S.mul(detail::embed_base(S, u, eps(first[i])), second[i]));
    sum_r = S.add(sum_r, S.mul(first[i], detail::embed_base(S, u, eps(second[i]))));
  }
  rep.counit_identity = S.equal(sum_l, S.one()) && S.equal(sum_r, S.one());
  rep.counit_bimodule = true;
  for (const auto& s : gens)
    for (Elem a : ring_gens) {
      auto ea = detail::embed_base(S, u, a);
      if (eps(S.mul(ea, s)) != A.mul(a, eps(s)) || eps(S.mul(s, ea)) != A.mul(eps(s), a))
        rep.counit_bimodule = false;
    }
  return rep;
}

}  // namespace galg
