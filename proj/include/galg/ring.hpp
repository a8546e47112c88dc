#pragma once

// Exact finite rings. A ring is a finite product of components, each one
// stored as dense addition and multiplication tables (Z/n, GF(p^k) or an
// arbitrary validated table ring). Elements of the product are mixed-radix
// indices over the component indices, so arithmetic is componentwise table
// lookup and the product is never tabulated as a whole.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "galg/error.hpp"
#include "galg/zmod_linalg.hpp"

namespace galg {

using Elem = std::uint32_t;
inline constexpr Elem kNone = 0xFFFFFFFFu;

using linalg::Int;
using linalg::Vec;

namespace detail {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Polynomials over F_p, low degree first.
using Poly = std::vector<int>;

inline void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_rem(Poly f, const Poly& g, int p) {
  poly_trim(f);
  const int dg = static_cast<int>(g.size()) - 1;
  int inv_lead = 1;
  while ((inv_lead * g.back()) % p != 1) ++inv_lead;
  while (static_cast<int>(f.size()) - 1 >= dg && !f.empty()) {
    int shift = static_cast<int>(f.size()) - 1 - dg;
    int c = (f.back() * inv_lead) % p;
    for (int i = 0; i <= dg; ++i)
      f[i + shift] = ((f[i + shift] - c * g[i]) % p + p) % p;
    poly_trim(f);
  }
  return f;
}

// Monic polynomial of degree `deg` whose low coefficients are the base-p
// digits of `code`.
inline Poly monic_from_code(int code, int deg, int p) {
  Poly f(deg + 1, 0);
  for (int i = 0; i < deg; ++i) {
    f[i] = code % p;
    code /= p;
  }
  f[deg] = 1;
  return f;
}

inline bool irreducible(const Poly& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= deg / 2; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int code = 0; code < count; ++code)
      if (poly_rem(f, monic_from_code(code, d, p), p).empty()) return false;
  }
  return true;
}

// Lexicographically first monic irreducible of degree k, ordering the
// candidates by their low coefficients read as a base-p number.
inline Poly first_irreducible(int p, int k) {
  int count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (int code = 0; code < count; ++code) {
    Poly f = monic_from_code(code, k, p);
    if (irreducible(f, p)) return f;
  }
  throw Error(ErrorKind::TableInvalid, "no irreducible polynomial found");
}

inline bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        c == '*' || c == '(' || c == ')' || c == '^')
      return false;
  return true;
}

// Tokens for the element-expression grammar shared by components and
// product rings.
struct Token {
  enum Kind { number, ident, op, end } kind;
  std::string text;
  Int value = 0;
};

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j])))
        ++j;
      std::string t{s.substr(i, j - i)};
      bool all_digits = std::all_of(t.begin(), t.end(), [](char d) {
        return std::isdigit(static_cast<unsigned char>(d));
      });
      if (all_digits && t.size() <= 9)
        out.push_back({Token::number, t, std::stoll(t)});
      else
        out.push_back({Token::ident, t});
      i = j;
    } else if (std::string_view("+-*()^").find(c) != std::string_view::npos) {
      out.push_back({Token::op, std::string(1, c)});
      ++i;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
             std::string_view("+-*()^").find(s[j]) == std::string_view::npos)
        ++j;
      out.push_back({Token::ident, std::string(s.substr(i, j - i))});
      i = j;
    }
  }
  out.push_back({Token::end, ""});
  return out;
}

}  // namespace detail

// One factor of a product ring, stored as dense tables.
class RingComponent {
 public:
  enum class Kind { zmod, gf, table };
  using Index = std::uint16_t;

  static RingComponent zmod(int n, const Caps& caps = default_caps()) {
    if (n < 2) throw Error(ErrorKind::BadDescription, "Z/n needs n >= 2");
    if (static_cast<std::size_t>(n) > caps.ring_component)
      throw Error(ErrorKind::SizeCapExceeded,
                  "Z/" + std::to_string(n) + " exceeds the ring cap");
    RingComponent r;
    r.kind_ = Kind::zmod;
    r.n_ = static_cast<std::size_t>(n);
    r.allocate();
    for (int a = 0; a < n; ++a) {
      r.names_[a] = std::to_string(a);
      for (int b = 0; b < n; ++b) {
        r.add_[a * n + b] = static_cast<Index>((a + b) % n);
        r.mul_[a * n + b] = static_cast<Index>((a * b) % n);
      }
    }
    r.orders_ = {n};
    r.coords_.resize(r.n_);
    for (int a = 0; a < n; ++a) r.coords_[a] = a;
    r.finalize(true);
    return r;
  }

  static RingComponent gf(int p, int k, const Caps& caps = default_caps()) {
    if (!detail::is_prime(p))
      throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (k < 1 || k > 4)
      throw Error(ErrorKind::BadDescription, "GF(p^k) needs 1 <= k <= 4");
    std::size_t q = 1;
    for (int i = 0; i < k; ++i) q *= static_cast<std::size_t>(p);
    if (q > caps.ring_component)
      throw Error(ErrorKind::SizeCapExceeded,
                  "GF(" + std::to_string(q) + ") exceeds the ring cap");
    RingComponent r;
    r.kind_ = Kind::gf;
    r.n_ = q;
    r.p_ = p;
    r.k_ = k;
    r.modulus_ = detail::first_irreducible(p, k);
    r.allocate();
    auto digits = [&](std::size_t a) {
      detail::Poly f(k, 0);
      for (int i = 0; i < k; ++i) {
        f[i] = static_cast<int>(a % p);
        a /= p;
      }
      return f;
    };
    auto index = [&](const detail::Poly& f) {
      std::size_t a = 0;
      for (int i = k - 1; i >= 0; --i)
        a = a * p + (i < static_cast<int>(f.size()) ? f[i] : 0);
      return static_cast<Index>(a);
    };
    std::vector<detail::Poly> polys(q);
    for (std::size_t a = 0; a < q; ++a) polys[a] = digits(a);
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = 0; b < q; ++b) {
        detail::Poly s(k);
        for (int i = 0; i < k; ++i) s[i] = (polys[a][i] + polys[b][i]) % p;
        r.add_[a * q + b] = index(s);
        detail::Poly prod(2 * k, 0);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            prod[i + j] = (prod[i + j] + polys[a][i] * polys[b][j]) % p;
        r.mul_[a * q + b] = index(k == 1 ? detail::Poly{prod[0]}
                                         : detail::poly_rem(prod, r.modulus_, p));
      }
    }
    r.orders_.assign(k, p);
    r.coords_.resize(q * k);
    for (std::size_t a = 0; a < q; ++a)
      for (int i = 0; i < k; ++i) r.coords_[a * k + i] = polys[a][i];
    for (std::size_t a = 0; a < q; ++a) r.names_[a] = gf_name(polys[a], p);
    r.finalize(true);
    r.frobenius_.resize(q);
    for (std::size_t a = 0; a < q; ++a) {
      Index x = static_cast<Index>(r.one_ ? *r.one_ : 0);
      for (int i = 0; i < p; ++i) x = r.mul(x, static_cast<Index>(a));
      r.frobenius_[a] = x;
    }
    return r;
  }

  // Arbitrary ring given by tables over named elements. Validation is
  // complete: the additive group is presented and checked against the whole
  // addition table, and multiplication is checked to be bi-additive,
  // associative on additive generators and (when present) unital.
  static RingComponent table(std::vector<std::string> names,
                             const std::vector<std::vector<std::size_t>>& add,
                             const std::vector<std::vector<std::size_t>>& mul,
                             const Caps& caps = default_caps()) {
    const std::size_t n = names.size();
    if (n == 0) throw Error(ErrorKind::TableInvalid, "empty element list");
    if (n > caps.ring_component)
      throw Error(ErrorKind::SizeCapExceeded,
                  "table ring of " + std::to_string(n) +
                      " elements exceeds the ring cap");
    if (add.size() != n || mul.size() != n)
      throw Error(ErrorKind::TableInvalid, "tables must be square");
    RingComponent r;
    r.kind_ = Kind::table;
    r.n_ = n;
    r.allocate();
    for (std::size_t a = 0; a < n; ++a) {
      if (!detail::valid_name(names[a]))
        throw Error(ErrorKind::BadDescription,
                    "element name may not contain operators or spaces",
                    names[a]);
      if (add[a].size() != n || mul[a].size() != n)
        throw Error(ErrorKind::TableInvalid, "tables must be square");
      for (std::size_t b = 0; b < n; ++b) {
        if (add[a][b] >= n || mul[a][b] >= n)
          throw Error(ErrorKind::TableInvalid, "table entry out of range");
        r.add_[a * n + b] = static_cast<Index>(add[a][b]);
        r.mul_[a * n + b] = static_cast<Index>(mul[a][b]);
      }
    }
    r.names_ = std::move(names);
    r.present_additive_group();
    r.finalize(false);
    return r;
  }

  Kind kind() const { return kind_; }
  std::size_t size() const { return n_; }
  int prime() const { return p_; }
  int degree() const { return k_; }
  const detail::Poly& modulus_polynomial() const { return modulus_; }

  Index add(Index a, Index b) const { return add_[a * n_ + b]; }
  Index mul(Index a, Index b) const { return mul_[a * n_ + b]; }
  Index neg(Index a) const { return neg_[a]; }
  Index zero() const { return zero_; }
  std::optional<Index> one() const { return one_; }
  Index frobenius(Index a) const { return frobenius_.empty() ? a : frobenius_[a]; }
  bool has_frobenius() const { return !frobenius_.empty(); }

  const std::string& name(Index a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Index> find(std::string_view s) const {
    auto it = by_name_.find(std::string(s));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  // Additive presentation: Z/orders[0] (+) ... with raw coordinates.
  const std::vector<Int>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  Int coord(Index a, std::size_t i) const { return coords_[a * rank() + i]; }
  Index from_coords(const Int* c) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i)
      idx = idx * orders_[i] + static_cast<std::size_t>(linalg::mod(c[i], orders_[i]));
    return from_coords_[idx];
  }
  const std::vector<Index>& basis() const { return basis_; }

  Index scalar(Int k, Index a) const {
    std::vector<Int> c(rank());
    for (std::size_t i = 0; i < rank(); ++i) c[i] = k * coord(a, i);
    return from_coords(c.data());
  }

  // Parses a component expression: names, integers (multiples of 1, or
  // scalars when they multiply something), the generator "a" of GF(p^k),
  // sums, differences, products, powers and parentheses.
  Index parse(std::string_view s) const {
    if (auto hit = find(s)) return *hit;
    auto toks = detail::tokenize(s);
    std::size_t pos = 0;
    Index v = parse_sum(toks, pos);
    if (toks[pos].kind != detail::Token::end)
      throw Error(ErrorKind::UnknownElement, "trailing input in element",
                  std::string(s));
    return v;
  }

 private:
  friend class FiniteRing;

  // An intermediate value: either a ring element or a bare integer that
  // still has to decide whether it is a scalar or a multiple of 1.
  struct Value {
    bool is_scalar;
    Int k;
    Index e;
  };

  Index as_element(const Value& v) const {
    if (!v.is_scalar) return v.e;
    if (!one_)
      throw Error(ErrorKind::UnknownElement,
                  "integer literal in a ring without identity");
    return scalar(v.k, *one_);
  }

  Value times(const Value& x, const Value& y) const {
    if (x.is_scalar && y.is_scalar) return {true, x.k * y.k, 0};
    if (x.is_scalar) return {false, 0, scalar(x.k, y.e)};
    if (y.is_scalar) return {false, 0, scalar(y.k, x.e)};
    return {false, 0, mul(x.e, y.e)};
  }

  Index parse_sum(const std::vector<detail::Token>& t, std::size_t& pos) const {
    bool negate = false;
    if (t[pos].kind == detail::Token::op && t[pos].text == "-") {
      negate = true;
      ++pos;
    }
    Index acc = as_element(parse_product(t, pos));
    if (negate) acc = neg(acc);
    while (t[pos].kind == detail::Token::op &&
           (t[pos].text == "+" || t[pos].text == "-")) {
      bool minus = t[pos].text == "-";
      ++pos;
      Index term = as_element(parse_product(t, pos));
      acc = add(acc, minus ? neg(term) : term);
    }
    return acc;
  }

  Value parse_product(const std::vector<detail::Token>& t,
                      std::size_t& pos) const {
    Value acc = parse_power(t, pos);
    while (t[pos].kind == detail::Token::op && t[pos].text == "*") {
      ++pos;
      acc = times(acc, parse_power(t, pos));
    }
    return acc;
  }

  Value parse_power(const std::vector<detail::Token>& t,
                    std::size_t& pos) const {
    Value base = parse_atom(t, pos);
    while (t[pos].kind == detail::Token::op && t[pos].text == "^") {
      ++pos;
      if (t[pos].kind != detail::Token::number)
        throw Error(ErrorKind::UnknownElement, "exponent must be an integer");
      Int e = t[pos++].value;
      if (e < 1) throw Error(ErrorKind::UnknownElement, "exponent must be >= 1");
      Value r = base;
      for (Int i = 1; i < e; ++i) r = times(r, base);
      base = r;
    }
    return base;
  }

  Value parse_atom(const std::vector<detail::Token>& t, std::size_t& pos) const {
    const detail::Token& tok = t[pos];
    if (tok.kind == detail::Token::op && tok.text == "(") {
      ++pos;
      Index v = parse_sum(t, pos);
      if (!(t[pos].kind == detail::Token::op && t[pos].text == ")"))
        throw Error(ErrorKind::UnknownElement, "missing ')'");
      ++pos;
      return {false, 0, v};
    }
    if (tok.kind == detail::Token::number) {
      ++pos;
      if (kind_ == Kind::table) {
        if (auto hit = find(tok.text)) return {false, 0, *hit};
      }
      return {true, tok.value, 0};
    }
    if (tok.kind == detail::Token::ident) {
      ++pos;
      if (kind_ == Kind::gf && tok.text == "a") return {false, 0, generator()};
      if (auto hit = find(tok.text)) return {false, 0, *hit};
      throw Error(ErrorKind::UnknownElement, "unknown element name", tok.text);
    }
    throw Error(ErrorKind::UnknownElement, "unexpected token", tok.text);
  }

  Index generator() const {
    // the residue class of x, which has coefficient vector (0,1,0,...)
    if (k_ == 1) return static_cast<Index>(one_ ? *one_ : 0);
    return static_cast<Index>(p_);
  }

  static std::string gf_name(const detail::Poly& f, int p) {
    (void)p;
    std::string s;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
      if (f[i] == 0) continue;
      if (!s.empty()) s += "+";
      std::string mono = i == 0 ? "" : (i == 1 ? "a" : "a^" + std::to_string(i));
      if (mono.empty())
        s += std::to_string(f[i]);
      else if (f[i] == 1)
        s += mono;
      else
        s += std::to_string(f[i]) + "*" + mono;
    }
    return s.empty() ? "0" : s;
  }

  void allocate() {
    add_.assign(n_ * n_, 0);
    mul_.assign(n_ * n_, 0);
    names_.assign(n_, {});
  }

  // Greedy polycyclic normal forms followed by a diagonalization of the
  // relation matrix give cyclic coordinates for an abelian table group.
  void present_additive_group() {
    const std::size_t n = n_;
    std::optional<Index> z;
    for (std::size_t a = 0; a < n; ++a)
      if (add(static_cast<Index>(a), static_cast<Index>(a)) == a) {
        z = static_cast<Index>(a);
        break;
      }
    if (!z) throw Error(ErrorKind::TableInvalid, "addition has no zero");
    std::vector<std::vector<Int>> nf(n);
    std::vector<char> in(n, 0);
    std::vector<Index> members{*z};
    in[*z] = 1;
    std::vector<std::pair<Int, std::vector<Int>>> rel;  // (order, lower coeffs)
    for (std::size_t e = 0; e < n; ++e) {
      if (in[e]) continue;
      const Index g = static_cast<Index>(e);
      Index cur = g;
      Int m = 1;
      while (!in[cur]) {
        cur = add(cur, g);
        if (++m > static_cast<Int>(n))
          throw Error(ErrorKind::TableInvalid, "addition is not a group law");
      }
      const std::size_t k = rel.size();
      rel.push_back({m, nf[cur]});
      const std::vector<Index> old = members;
      std::vector<Index> layer = old;
      for (Int j = 1; j < m; ++j) {
        for (std::size_t i = 0; i < layer.size(); ++i) {
          Index x = add(layer[i], g);
          if (in[x])
            throw Error(ErrorKind::TableInvalid, "addition is not a group law",
                        names_[x]);
          in[x] = 1;
          nf[x] = nf[old[i]];
          nf[x].resize(k, 0);
          nf[x].push_back(j);
          members.push_back(x);
          layer[i] = x;
        }
      }
    }
    const std::size_t K = rel.size();
    const Int order = static_cast<Int>(n);
    std::vector<Vec> rows(K, Vec(K, 0));
    for (std::size_t k = 0; k < K; ++k) {
      rows[k][k] = rel[k].first;
      for (std::size_t i = 0; i < rel[k].second.size(); ++i)
        rows[k][i] = -rel[k].second[i];
    }
    linalg::Diagonalization d(order, rows, K, false);
    std::vector<Int> factor(K, order);
    for (std::size_t i = 0; i < d.rank(); ++i)
      factor[i] = std::gcd(d.pivot(i), order);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < K; ++i)
      if (factor[i] > 1) keep.push_back(i);
    orders_.clear();
    for (std::size_t i : keep) orders_.push_back(factor[i]);
    coords_.assign(n * keep.size(), 0);
    for (std::size_t a = 0; a < n; ++a) {
      Vec v = nf[a];
      v.resize(K, 0);
      Vec w = d.apply_right(v);
      for (std::size_t c = 0; c < keep.size(); ++c)
        coords_[a * keep.size() + c] = linalg::mod(w[keep[c]], orders_[c]);
    }
  }

  void finalize(bool trusted_presentation) {
    (void)trusted_presentation;
    const std::size_t n = n_;
    const std::size_t r = orders_.size();
    std::size_t span = 1;
    for (Int o : orders_) span *= static_cast<std::size_t>(o);
    if (span != n)
      throw Error(ErrorKind::TableInvalid, "additive presentation has wrong order");
    from_coords_.assign(n, static_cast<Index>(0));
    std::vector<char> hit(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < r; ++i)
        idx = idx * orders_[i] + static_cast<std::size_t>(coords_[a * r + i]);
      if (hit[idx])
        throw Error(ErrorKind::TableInvalid, "addition is not a group law",
                    names_[a]);
      hit[idx] = 1;
      from_coords_[idx] = static_cast<Index>(a);
    }
    // the whole addition table must be the transported coordinate addition
    std::vector<Int> c(r);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t i = 0; i < r; ++i)
          c[i] = coords_[a * r + i] + coords_[b * r + i];
        if (from_coords(c.data()) != add_[a * n + b])
          throw Error(ErrorKind::TableInvalid,
                      "addition is not an abelian group law",
                      names_[a] + " + " + names_[b]);
      }
    }
    std::fill(c.begin(), c.end(), 0);
    zero_ = from_coords(c.data());
    neg_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t i = 0; i < r; ++i) c[i] = -coords_[a * r + i];
      neg_[a] = from_coords(c.data());
    }
    basis_.clear();
    for (std::size_t i = 0; i < r; ++i) {
      std::fill(c.begin(), c.end(), 0);
      c[i] = 1;
      basis_.push_back(from_coords(c.data()));
    }
    // bi-additivity against additive generators covers every pair
    for (std::size_t a = 0; a < n; ++a) {
      for (Index b : basis_) {
        Index ab = add(static_cast<Index>(a), b);
        for (std::size_t x = 0; x < n; ++x) {
          Index xi = static_cast<Index>(x);
          if (mul(ab, xi) != add(mul(static_cast<Index>(a), xi), mul(b, xi)) ||
              mul(xi, ab) != add(mul(xi, static_cast<Index>(a)), mul(xi, b)))
            throw Error(ErrorKind::TableInvalid,
                        "multiplication is not bi-additive",
                        names_[a] + ", " + names_[b] + ", " + names_[x]);
        }
      }
    }
    for (Index a : basis_)
      for (Index b : basis_)
        for (Index d : basis_)
          if (mul(mul(a, b), d) != mul(a, mul(b, d)))
            throw Error(ErrorKind::TableInvalid,
                        "multiplication is not associative",
                        names_[a] + ", " + names_[b] + ", " + names_[d]);
    one_.reset();
    for (std::size_t e = 0; e < n && !one_; ++e) {
      Index ei = static_cast<Index>(e);
      bool ok = std::all_of(basis_.begin(), basis_.end(), [&](Index b) {
        return mul(ei, b) == b && mul(b, ei) == b;
      });
      if (ok) one_ = ei;
    }
    by_name_.clear();
    for (std::size_t a = 0; a < n; ++a) {
      if (!by_name_.emplace(names_[a], static_cast<Index>(a)).second)
        throw Error(ErrorKind::BadDescription, "duplicate element name",
                    names_[a]);
    }
  }

  Kind kind_ = Kind::zmod;
  std::size_t n_ = 0;
  int p_ = 0, k_ = 0;
  detail::Poly modulus_;
  std::vector<Index> add_, mul_, neg_;
  Index zero_ = 0;
  std::optional<Index> one_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Index> by_name_;
  std::vector<Int> orders_;
  std::vector<Int> coords_;
  std::vector<Index> from_coords_;
  std::vector<Index> basis_;
  std::vector<Index> frobenius_;
};

// Finite product of components. Shared by pointer: ideals, maps, actions
// and skew rings all refer back to one immutable ring.
class FiniteRing {
 public:
  using Index = RingComponent::Index;

  static std::shared_ptr<const FiniteRing> make(
      std::vector<RingComponent> components,
      const Caps& caps = default_caps()) {
    if (components.empty())
      throw Error(ErrorKind::BadDescription, "product of no rings");
    std::size_t total = 1;
    for (const auto& c : components) {
      if (total > caps.ring_total / c.size())
        throw Error(ErrorKind::SizeCapExceeded,
                    "product ring exceeds the enumeration cap");
      total *= c.size();
    }
    return std::shared_ptr<const FiniteRing>(
        new FiniteRing(std::move(components), total));
  }

  std::size_t size() const { return size_; }
  std::size_t component_count() const { return comps_.size(); }
  const RingComponent& component(std::size_t i) const { return comps_[i]; }
  const std::vector<RingComponent>& components() const { return comps_; }

  Index digit(Elem e, std::size_t i) const {
    return static_cast<Index>((e / stride_[i]) % comps_[i].size());
  }

  Elem compose(const std::vector<Index>& d) const {
    Elem e = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      e += static_cast<Elem>(d[i] * stride_[i]);
    return e;
  }

  Elem add(Elem a, Elem b) const {
    if (comps_.size() == 1) return comps_[0].add(static_cast<Index>(a), static_cast<Index>(b));
    Elem e = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      e += static_cast<Elem>(comps_[i].add(digit(a, i), digit(b, i)) * stride_[i]);
    return e;
  }

  Elem mul(Elem a, Elem b) const {
    if (comps_.size() == 1) return comps_[0].mul(static_cast<Index>(a), static_cast<Index>(b));
    Elem e = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      e += static_cast<Elem>(comps_[i].mul(digit(a, i), digit(b, i)) * stride_[i]);
    return e;
  }

  Elem neg(Elem a) const {
    Elem e = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      e += static_cast<Elem>(comps_[i].neg(digit(a, i)) * stride_[i]);
    return e;
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem zero() const { return zero_; }
  bool is_zero(Elem a) const { return a == zero_; }
  std::optional<Elem> one() const { return one_; }

  Elem scalar(Int k, Elem a) const {
    Elem e = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      e += static_cast<Elem>(comps_[i].scalar(k, digit(a, i)) * stride_[i]);
    return e;
  }

  // The element with component i equal to `value` and zeros elsewhere.
  Elem inject(std::size_t i, Index value) const {
    std::vector<Index> d(comps_.size());
    for (std::size_t j = 0; j < comps_.size(); ++j) d[j] = comps_[j].zero();
    d[i] = value;
    return compose(d);
  }

  // The canonical central idempotent e_i of a unital component.
  Elem component_idempotent(std::size_t i) const {
    if (i >= comps_.size())
      throw Error(ErrorKind::BadIndex, "no component " + std::to_string(i + 1));
    if (!comps_[i].one())
      throw Error(ErrorKind::NotIdempotent,
                  "component " + std::to_string(i + 1) + " has no identity");
    return inject(i, *comps_[i].one());
  }

  bool is_idempotent(Elem e) const { return mul(e, e) == e; }

  bool is_central(Elem e) const {
    return std::all_of(basis_.begin(), basis_.end(),
                       [&](Elem b) { return mul(e, b) == mul(b, e); });
  }

  // additive structure, embedded into (Z/N)^rank
  Int exponent() const { return exponent_; }
  std::size_t rank() const { return scale_.size(); }
  const std::vector<Elem>& basis() const { return basis_; }

  Vec embed(Elem e) const {
    Vec v(rank());
    std::size_t k = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      Index di = digit(e, i);
      for (std::size_t j = 0; j < comps_[i].rank(); ++j, ++k)
        v[k] = comps_[i].coord(di, j) * scale_[k];
    }
    return v;
  }

  void embed_into(Elem e, Int* out) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      Index di = digit(e, i);
      for (std::size_t j = 0; j < comps_[i].rank(); ++j, ++k)
        out[k] = comps_[i].coord(di, j) * scale_[k];
    }
  }

  // Inverse of embed on the image; entries must be multiples of the scale.
  Elem from_embedded(const Int* v) const {
    std::vector<Index> d(comps_.size());
    std::size_t k = 0;
    std::vector<Int> c;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      c.assign(comps_[i].rank(), 0);
      for (std::size_t j = 0; j < comps_[i].rank(); ++j, ++k)
        c[j] = linalg::mod(v[k], exponent_) / scale_[k];
      d[i] = comps_[i].from_coords(c.data());
    }
    return compose(d);
  }
  Elem from_embedded(const Vec& v) const { return from_embedded(v.data()); }

  std::string name(Elem e) const {
    if (comps_.size() == 1) return comps_[0].name(static_cast<Index>(e));
    std::string s;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      const RingComponent& c = comps_[i];
      Index di = digit(e, i);
      if (di == c.zero()) continue;
      if (!s.empty()) s += " + ";
      s += "e" + std::to_string(i + 1);
      if (c.one() && di == *c.one()) continue;
      const std::string& n = c.name(di);
      bool simple = n.find_first_of("+-*") == std::string::npos;
      s += simple ? "*" + n : "*(" + n + ")";
    }
    return s.empty() ? "0" : s;
  }

  // Grammar: sums of products. In a product ring, a factor e<i> makes the
  // rest of its product term a component-i expression; a bare e<i> is the
  // idempotent of component i, and integers are multiples of 1 or scalars.
  Elem parse(std::string_view s) const {
    if (comps_.size() == 1) return comps_[0].parse(s);
    auto toks = detail::tokenize(s);
    std::size_t pos = 0;
    Elem v = parse_sum(toks, pos);
    if (toks[pos].kind != detail::Token::end)
      throw Error(ErrorKind::UnknownElement, "trailing input in element",
                  std::string(s));
    return v;
  }

  // Elements of the additive subgroup generated by `gens` (closure by
  // breadth-first search; at most size() elements).
  std::vector<Elem> span(const std::vector<Elem>& gens) const {
    std::vector<char> seen(size_, 0);
    std::vector<Elem> out{zero_};
    seen[zero_] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (Elem g : gens) {
        Elem x = add(out[i], g);
        if (!seen[x]) {
          seen[x] = 1;
          out.push_back(x);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  FiniteRing(std::vector<RingComponent> comps, std::size_t total)
      : comps_(std::move(comps)), size_(total) {
    stride_.assign(comps_.size(), 1);
    for (std::size_t i = comps_.size(); i-- > 1;)
      stride_[i - 1] = stride_[i] * comps_[i].size();
    std::vector<Index> d(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) d[i] = comps_[i].zero();
    zero_ = compose(d);
    bool unital = true;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      if (!comps_[i].one()) {
        unital = false;
        break;
      }
      d[i] = *comps_[i].one();
    }
    if (unital) one_ = compose(d);
    exponent_ = 1;
    for (const auto& c : comps_)
      for (Int o : c.orders()) exponent_ = std::lcm(exponent_, o);
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      for (std::size_t j = 0; j < comps_[i].rank(); ++j) {
        scale_.push_back(exponent_ / comps_[i].orders()[j]);
        basis_.push_back(inject(i, comps_[i].basis()[j]));
      }
    }
  }

  struct Value {
    bool is_scalar;
    Int k;
    Elem e;
  };

  Elem as_element(const Value& v) const {
    if (!v.is_scalar) return v.e;
    if (!one_)
      throw Error(ErrorKind::UnknownElement,
                  "integer literal in a ring without identity");
    return scalar(v.k, *one_);
  }

  Value times(const Value& x, const Value& y) const {
    if (x.is_scalar && y.is_scalar) return {true, x.k * y.k, 0};
    if (x.is_scalar) return {false, 0, scalar(x.k, y.e)};
    if (y.is_scalar) return {false, 0, scalar(y.k, x.e)};
    return {false, 0, mul(x.e, y.e)};
  }

  static std::optional<std::size_t> idempotent_token(const detail::Token& t) {
    if (t.kind != detail::Token::ident || t.text.size() < 2 || t.text[0] != 'e')
      return std::nullopt;
    std::size_t i = 0;
    for (std::size_t k = 1; k < t.text.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(t.text[k]))) return std::nullopt;
      i = i * 10 + static_cast<std::size_t>(t.text[k] - '0');
    }
    if (i == 0) return std::nullopt;
    return i - 1;
  }

  Elem parse_sum(const std::vector<detail::Token>& t, std::size_t& pos) const {
    bool negate = false;
    if (t[pos].kind == detail::Token::op && t[pos].text == "-") {
      negate = true;
      ++pos;
    }
    Elem acc = as_element(parse_product(t, pos));
    if (negate) acc = neg(acc);
    while (t[pos].kind == detail::Token::op &&
           (t[pos].text == "+" || t[pos].text == "-")) {
      bool minus = t[pos].text == "-";
      ++pos;
      Elem term = as_element(parse_product(t, pos));
      acc = add(acc, minus ? neg(term) : term);
    }
    return acc;
  }

  Value parse_product(const std::vector<detail::Token>& t,
                      std::size_t& pos) const {
    Value acc{true, 1, 0};
    for (;;) {
      if (auto ci = idempotent_token(t[pos])) {
        if (*ci >= comps_.size())
          throw Error(ErrorKind::UnknownElement, "no such component", t[pos].text);
        ++pos;
        const RingComponent& c = comps_[*ci];
        Index local;
        if (t[pos].kind == detail::Token::op && t[pos].text == "*") {
          ++pos;
          auto v = c.parse_product(t, pos);
          local = c.as_element(v);
        } else {
          if (!c.one())
            throw Error(ErrorKind::UnknownElement,
                        "component has no identity", t[pos - 1].text);
          local = *c.one();
        }
        return times(acc, {false, 0, inject(*ci, local)});
      }
      acc = times(acc, parse_factor(t, pos));
      if (t[pos].kind == detail::Token::op && t[pos].text == "*") {
        ++pos;
        continue;
      }
      return acc;
    }
  }

  Value parse_factor(const std::vector<detail::Token>& t, std::size_t& pos) const {
    const detail::Token& tok = t[pos];
    Value base;
    if (tok.kind == detail::Token::op && tok.text == "(") {
      ++pos;
      Elem v = parse_sum(t, pos);
      if (!(t[pos].kind == detail::Token::op && t[pos].text == ")"))
        throw Error(ErrorKind::UnknownElement, "missing ')'");
      ++pos;
      base = {false, 0, v};
    } else if (tok.kind == detail::Token::number) {
      ++pos;
      base = {true, tok.value, 0};
    } else {
      throw Error(ErrorKind::UnknownElement, "unexpected token", tok.text);
    }
    while (t[pos].kind == detail::Token::op && t[pos].text == "^") {
      ++pos;
      if (t[pos].kind != detail::Token::number || t[pos].value < 1)
        throw Error(ErrorKind::UnknownElement, "exponent must be a positive integer");
      Int e = t[pos++].value;
      Value r = base;
      for (Int i = 1; i < e; ++i) r = times(r, base);
      base = r;
    }
    return base;
  }

  std::vector<RingComponent> comps_;
  std::size_t size_;
  std::vector<std::size_t> stride_;
  Elem zero_ = 0;
  std::optional<Elem> one_;
  Int exponent_ = 1;
  std::vector<Int> scale_;
  std::vector<Elem> basis_;
};

using RingPtr = std::shared_ptr<const FiniteRing>;

inline RingPtr ring_zmod(int n, const Caps& caps = default_caps()) {
  return FiniteRing::make({RingComponent::zmod(n, caps)}, caps);
}

inline RingPtr ring_gf(int p, int k, const Caps& caps = default_caps()) {
  return FiniteRing::make({RingComponent::gf(p, k, caps)}, caps);
}

// Flattens the factors' components, so the result carries one canonical
// central idempotent e_i per component.
inline RingPtr ring_product(const std::vector<RingPtr>& factors,
                            const Caps& caps = default_caps()) {
  std::vector<RingComponent> comps;
  for (const auto& f : factors)
    for (const auto& c : f->components()) comps.push_back(c);
  return FiniteRing::make(std::move(comps), caps);
}

inline RingPtr ring_power(const RingPtr& factor, std::size_t copies,
                          const Caps& caps = default_caps()) {
  return ring_product(std::vector<RingPtr>(copies, factor), caps);
}

inline RingPtr ring_from_tables(std::vector<std::string> names,
                                const std::vector<std::vector<std::size_t>>& add,
                                const std::vector<std::vector<std::size_t>>& mul,
                                const Caps& caps = default_caps()) {
  return FiniteRing::make(
      {RingComponent::table(std::move(names), add, mul, caps)}, caps);
}

// All central idempotents, by exhaustive search.
inline std::vector<Elem> central_idempotents(const FiniteRing& A,
                                             const Caps& caps = default_caps()) {
  if (A.size() > caps.ring_total)
    throw Error(ErrorKind::SizeCapExceeded, "ring exceeds the enumeration cap");
  std::vector<Elem> out;
  for (Elem e = 0; e < A.size(); ++e)
    if (A.is_idempotent(e) && A.is_central(e)) out.push_back(e);
  return out;
}

}  // namespace galg
