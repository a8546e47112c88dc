#pragma once

// Additive subgroups and ideals of a finite ring, validated ring maps
// between them, and additive-subgroup computations (spans, kernels,
// images) over the embedded coordinates of the ring.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galg/ring.hpp"

namespace galg {

// Greedy additive generators of a subgroup given by its elements: an
// element joins the list when it is not yet in the span of the earlier ones.
inline std::vector<Elem> greedy_generators(const FiniteRing& A,
                                           const std::vector<Elem>& elements) {
  std::vector<char> in(A.size(), 0);
  std::vector<Elem> span{A.zero()};
  in[A.zero()] = 1;
  std::vector<Elem> gens;
  for (Elem e : elements) {
    if (in[e]) continue;
    gens.push_back(e);
    // span + <e>: keep adding e to every span element until closed
    const std::size_t old = span.size();
    for (std::size_t i = 0; i < old; ++i) {
      Elem x = A.add(span[i], e);
      while (!in[x]) {
        in[x] = 1;
        span.push_back(x);
        x = A.add(x, e);
      }
    }
    for (std::size_t i = old; i < span.size(); ++i) {
      for (Elem g : gens) {
        Elem x = A.add(span[i], g);
        if (!in[x]) {
          in[x] = 1;
          span.push_back(x);
        }
      }
    }
  }
  return gens;
}

// An additive subgroup of a ring, usually an ideal of something. The
// identity (a central idempotent acting as 1 on the subgroup) is located by
// exhaustive search at construction.
class Ideal {
 public:
  Ideal() = default;

  // Trusted constructor: `elements` must be an additive subgroup.
  Ideal(RingPtr ring, std::vector<Elem> elements)
      : ring_(std::move(ring)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()),
                    elements_.end());
    member_.assign(ring_->size(), 0);
    for (Elem e : elements_) member_[e] = 1;
    gens_ = greedy_generators(*ring_, elements_);
    locate_identity();
  }

  static Ideal whole(const RingPtr& A) {
    std::vector<Elem> all(A->size());
    for (Elem e = 0; e < A->size(); ++e) all[e] = e;
    return Ideal(A, std::move(all));
  }

  static Ideal zero(const RingPtr& A) { return Ideal(A, {A->zero()}); }

  // Additive span of arbitrary elements.
  static Ideal span(const RingPtr& A, const std::vector<Elem>& gens) {
    return Ideal(A, A->span(gens));
  }

  // Checked constructor from an explicit element list.
  static Ideal from_elements(const RingPtr& A, std::vector<Elem> elems) {
    Ideal I(A, std::move(elems));
    if (!I.contains(A->zero()))
      throw Error(ErrorKind::NotIdeal, "subset does not contain 0");
    for (Elem a : I.elements_)
      for (Elem g : I.gens_)
        if (!I.contains(A->sub(a, g)))
          throw Error(ErrorKind::NotIdeal, "subset is not an additive subgroup",
                      A->name(a) + " - " + A->name(g));
    return I;
  }

  const RingPtr& ring() const { return ring_; }
  bool valid() const { return ring_ != nullptr; }
  bool contains(Elem e) const { return e < member_.size() && member_[e]; }
  const std::vector<Elem>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Elem>& generators() const { return gens_; }
  std::optional<Elem> identity() const { return identity_; }
  bool is_unital() const { return identity_.has_value(); }
  bool is_zero() const { return elements_.size() == 1; }

  bool subset_of(const Ideal& other) const {
    return std::all_of(gens_.begin(), gens_.end(),
                       [&](Elem g) { return other.contains(g); });
  }

  bool operator==(const Ideal& other) const {
    return ring_ == other.ring_ && elements_ == other.elements_;
  }

  // First element of this subgroup outside `parent`, or of the absorption
  // products g*p, p*g (g a generator here, p a generator of the parent)
  // that escape this subgroup. Returns a printable witness when the check
  // fails: the subgroup is then not an ideal of `parent`.
  std::optional<std::string> ideal_violation(const Ideal& parent) const {
    for (Elem g : gens_)
      if (!parent.contains(g)) return ring_->name(g) + " lies outside the parent";
    for (Elem g : gens_)
      for (Elem p : parent.generators()) {
        if (!contains(ring_->mul(g, p)))
          return ring_->name(g) + " * " + ring_->name(p);
        if (!contains(ring_->mul(p, g)))
          return ring_->name(p) + " * " + ring_->name(g);
      }
    return std::nullopt;
  }

  std::optional<std::string> ring_ideal_violation() const {
    for (Elem g : gens_)
      for (Elem p : ring_->basis()) {
        if (!contains(ring_->mul(g, p)))
          return ring_->name(g) + " * " + ring_->name(p);
        if (!contains(ring_->mul(p, g)))
          return ring_->name(p) + " * " + ring_->name(g);
      }
    return std::nullopt;
  }

  bool is_ideal_of(const Ideal& parent) const {
    return !ideal_violation(parent).has_value();
  }
  bool is_ideal_of_ring() const { return !ring_ideal_violation().has_value(); }

 private:
  void locate_identity() {
    const FiniteRing& A = *ring_;
    for (Elem e : elements_) {
      bool ok = true;
      for (Elem g : gens_)
        if (A.mul(e, g) != g || A.mul(g, e) != g) {
          ok = false;
          break;
        }
      if (ok && A.is_idempotent(e) && A.is_central(e)) {
        identity_ = e;
        return;
      }
    }
  }

  RingPtr ring_;
  std::vector<Elem> elements_;
  std::vector<char> member_;
  std::vector<Elem> gens_;
  std::optional<Elem> identity_;
};

// The ideal A*e for a central idempotent e.
inline Ideal unital_ideal(const RingPtr& A, Elem e) {
  if (!A->is_idempotent(e))
    throw Error(ErrorKind::NotIdempotent, "element is not idempotent", A->name(e));
  if (!A->is_central(e))
    throw Error(ErrorKind::NotCentral, "element is not central", A->name(e));
  std::vector<Elem> elems;
  elems.reserve(A->size());
  for (Elem a = 0; a < A->size(); ++a) elems.push_back(A->mul(a, e));
  return Ideal(A, std::move(elems));
}

inline std::optional<Elem> find_identity(const Ideal& I) { return I.identity(); }

// Smallest two-sided ideal of the ring containing `gens`.
inline Ideal ideal_closure(const RingPtr& A, const std::vector<Elem>& gens) {
  std::vector<Elem> cur = A->span(gens);
  for (;;) {
    std::vector<Elem> g = greedy_generators(*A, cur);
    std::vector<Elem> more = g;
    for (Elem x : g)
      for (Elem b : A->basis()) {
        more.push_back(A->mul(x, b));
        more.push_back(A->mul(b, x));
      }
    std::vector<Elem> next = A->span(more);
    if (next.size() == cur.size()) return Ideal(A, std::move(cur));
    cur = std::move(next);
  }
}

inline Ideal intersect(const Ideal& I, const Ideal& J) {
  std::vector<Elem> out;
  std::set_intersection(I.elements().begin(), I.elements().end(),
                        J.elements().begin(), J.elements().end(),
                        std::back_inserter(out));
  return Ideal(I.ring(), std::move(out));
}

inline Ideal ideal_sum(const Ideal& I, const Ideal& J) {
  std::vector<Elem> g = I.generators();
  g.insert(g.end(), J.generators().begin(), J.generators().end());
  return Ideal::span(I.ring(), g);
}

inline Ideal ideal_sum(const RingPtr& A, const std::vector<Ideal>& parts) {
  std::vector<Elem> g;
  for (const auto& I : parts)
    g.insert(g.end(), I.generators().begin(), I.generators().end());
  return Ideal::span(A, g);
}

// A map between additive subgroups stored as a dense table over the domain
// ring (kNone outside the domain). Rings may differ (embeddings).
class RingMap {
 public:
  RingMap() = default;

  // Trusted: table must be defined exactly on `domain` with values in
  // `codomain`.
  RingMap(Ideal domain, Ideal codomain, std::vector<Elem> table)
      : dom_(std::move(domain)), cod_(std::move(codomain)), table_(std::move(table)) {}

  static RingMap identity(const Ideal& I) {
    std::vector<Elem> t(I.ring()->size(), kNone);
    for (Elem a : I.elements()) t[a] = a;
    return RingMap(I, I, std::move(t));
  }

  const Ideal& domain() const { return dom_; }
  const Ideal& codomain() const { return cod_; }
  const std::vector<Elem>& table() const { return table_; }
  bool defined(Elem a) const { return a < table_.size() && table_[a] != kNone; }

  Elem operator()(Elem a) const {
    if (!defined(a))
      throw Error(ErrorKind::NotInDomain, "map applied outside its domain",
                  dom_.ring()->name(a));
    return table_[a];
  }

  // Defined on the codomain, assuming the map is injective.
  RingMap inverse() const {
    std::vector<Elem> t(cod_.ring()->size(), kNone);
    for (Elem a : dom_.elements()) t[table_[a]] = a;
    return RingMap(cod_, dom_, std::move(t));
  }

  // Restriction to a subgroup of the domain; the codomain becomes the image.
  RingMap restrict(const Ideal& sub) const {
    std::vector<Elem> t(dom_.ring()->size(), kNone);
    std::vector<Elem> img;
    for (Elem a : sub.elements()) {
      t[a] = (*this)(a);
      img.push_back(t[a]);
    }
    return RingMap(sub, Ideal(cod_.ring(), std::move(img)), std::move(t));
  }

  std::vector<Elem> image_of(const Ideal& sub) const {
    std::vector<Elem> img;
    for (Elem a : sub.elements())
      if (defined(a)) img.push_back(table_[a]);
    return img;
  }

  bool is_identity() const {
    if (!(dom_ == cod_)) return false;
    return std::all_of(dom_.elements().begin(), dom_.elements().end(),
                       [&](Elem a) { return table_[a] == a; });
  }

  // Extensional equality: same domain, codomain and values.
  bool operator==(const RingMap& other) const {
    if (!(dom_ == other.dom_ && cod_ == other.cod_)) return false;
    return std::all_of(dom_.elements().begin(), dom_.elements().end(),
                       [&](Elem a) { return table_[a] == other.table_[a]; });
  }

 private:
  Ideal dom_, cod_;
  std::vector<Elem> table_;
};

// Composition of partial maps, outer after inner: defined on the elements
// of dom(inner) that inner sends into dom(outer).
inline RingMap compose(const RingMap& outer, const RingMap& inner) {
  const RingPtr& src = inner.domain().ring();
  std::vector<Elem> t(src->size(), kNone);
  std::vector<Elem> dom, img;
  for (Elem a : inner.domain().elements()) {
    Elem b = inner.table()[a];
    if (!outer.defined(b)) continue;
    t[a] = outer.table()[b];
    dom.push_back(a);
    img.push_back(t[a]);
  }
  return RingMap(Ideal(src, std::move(dom)),
                 Ideal(outer.codomain().ring(), std::move(img)), std::move(t));
}

// Validates a raw table as a ring homomorphism I -> J (an isomorphism when
// `iso`). Checks are complete: additivity on (element, generator) pairs and
// multiplicativity on generator pairs imply the full identities.
inline RingMap validate_map(const std::vector<Elem>& raw, const Ideal& I,
                            const Ideal& J, bool iso) {
  const FiniteRing& A = *I.ring();
  const FiniteRing& B = *J.ring();
  std::vector<Elem> t(A.size(), kNone);
  for (Elem a : I.elements()) {
    if (a >= raw.size() || raw[a] == kNone)
      throw Error(ErrorKind::NotInDomain, "map is not defined on its domain",
                  A.name(a));
    if (!J.contains(raw[a]))
      throw Error(ErrorKind::NotInDomain, "map leaves its codomain",
                  A.name(a) + " -> " + B.name(raw[a]));
    t[a] = raw[a];
  }
  for (Elem a : I.elements())
    for (Elem g : I.generators()) {
      Elem s = A.add(a, g);
      if (t[s] != B.add(t[a], t[g]))
        throw Error(ErrorKind::NotAdditive, "map is not additive",
                    A.name(a) + " + " + A.name(g));
    }
  if (t[A.zero()] != B.zero())
    throw Error(ErrorKind::NotAdditive, "map does not fix 0");
  for (Elem g : I.generators())
    for (Elem h : I.generators()) {
      Elem p = A.mul(g, h);
      if (!I.contains(p))
        throw Error(ErrorKind::NotMultiplicative,
                    "domain is not closed under multiplication",
                    A.name(g) + " * " + A.name(h));
      if (t[p] != B.mul(t[g], t[h]))
        throw Error(ErrorKind::NotMultiplicative, "map is not multiplicative",
                    A.name(g) + " * " + A.name(h));
    }
  if (iso) {
    for (Elem a : I.elements())
      if (t[a] == B.zero() && a != A.zero())
        throw Error(ErrorKind::NotBijective, "map has nonzero kernel", A.name(a));
    if (I.size() != J.size())
      throw Error(ErrorKind::NotBijective, "map is not onto its codomain");
  }
  return RingMap(I, J, std::move(t));
}

inline RingMap validate_map(const std::function<Elem(Elem)>& f, const Ideal& I,
                            const Ideal& J, bool iso) {
  std::vector<Elem> raw(I.ring()->size(), kNone);
  for (Elem a : I.elements()) raw[a] = f(a);
  return validate_map(raw, I, J, iso);
}

// Additive subgroup of a ring as a row span in embedded coordinates.
class AbelianPresentation {
 public:
  AbelianPresentation(RingPtr ring, std::vector<Elem> gens)
      : ring_(std::move(ring)), gens_(std::move(gens)), sub_(make(*ring_, gens_)) {}

  const RingPtr& ring() const { return ring_; }
  const std::vector<Elem>& generators() const { return gens_; }
  const linalg::Submodule& submodule() const { return sub_; }
  bool contains(Elem e) const { return sub_.contains(ring_->embed(e)); }
  std::vector<Int> invariant_factors() const { return sub_.invariant_factors(); }
  std::uint64_t order() const { return sub_.order(); }
  bool operator==(const AbelianPresentation& o) const { return sub_ == o.sub_; }
  std::vector<Elem> elements() const { return ring_->span(gens_); }

  // Coefficients over the generator list.
  std::optional<Vec> solve(Elem e) const { return sub_.solve(ring_->embed(e)); }

 private:
  static linalg::Submodule make(const FiniteRing& A, const std::vector<Elem>& g) {
    std::vector<Vec> rows;
    rows.reserve(g.size());
    for (Elem e : g) rows.push_back(A.embed(e));
    return linalg::Submodule(A.exponent(), A.rank(), std::move(rows), true);
  }

  RingPtr ring_;
  std::vector<Elem> gens_;
  linalg::Submodule sub_;
};

inline AbelianPresentation subgroup_span(const RingPtr& A,
                                         const std::vector<Elem>& elems) {
  return AbelianPresentation(A, greedy_generators(*A, A->span(elems)));
}

// Kernel of an additive map out of span(domain_gens). `f` returns the
// image in some (Z/N)^image_dim with N the ring exponent.
inline AbelianPresentation kernel(const RingPtr& A,
                                  const std::vector<Elem>& domain_gens,
                                  const std::function<Vec(Elem)>& f,
                                  std::size_t image_dim) {
  std::vector<Vec> dom, img;
  for (Elem g : domain_gens) {
    dom.push_back(A->embed(g));
    img.push_back(f(g));
  }
  std::vector<Elem> out;
  for (const Vec& v : linalg::kernel_generators(A->exponent(), dom, img, image_dim))
    out.push_back(A->from_embedded(v));
  return AbelianPresentation(A, std::move(out));
}

// Image of an additive map from span(domain_gens) into the same ring.
inline AbelianPresentation image(const RingPtr& A,
                                 const std::vector<Elem>& domain_gens,
                                 const std::function<Elem(Elem)>& f) {
  std::vector<Elem> out;
  for (Elem g : domain_gens) out.push_back(f(g));
  return AbelianPresentation(A, std::move(out));
}

}  // namespace galg
