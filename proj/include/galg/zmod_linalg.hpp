#pragma once

// Exact linear algebra over Z/N for finite abelian groups.
//
// Every finite abelian group handled by the library has exponent dividing
// some N, so it embeds into (Z/N)^r with Z/d sitting inside Z/N as the
// multiples of N/d. Submodules of (Z/N)^r are then row spans, and
// membership, solving, kernels and invariant factors all come from one
// diagonalization U*M*V = D with unimodular U, V over Z/N.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "galg/error.hpp"

namespace galg::linalg {

using Int = std::int64_t;
using Vec = std::vector<Int>;

inline Int mod(Int a, Int n) {
  a %= n;
  return a < 0 ? a + n : a;
}

struct Bezout {
  Int g, s, t;  // s*a + t*b = g = gcd(a, b)
};

inline Bezout ext_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
    std::tie(old_t, t) = std::pair{t, old_t - q * t};
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// Does c*a = b have a solution c in Z/N?
inline bool divides(Int a, Int b, Int n) {
  return mod(b, std::gcd(a, n)) == 0;
}

// Some c with c*a = b (mod n); requires divides(a, b, n).
inline Int quotient(Int a, Int b, Int n) {
  Int g = std::gcd(a, n);
  Int nn = n / g;
  if (nn == 1) return 0;
  Int aa = mod(a / g, nn);
  Int bb = mod(b / g, nn);
  Int inv = mod(ext_gcd(aa, nn).s, nn);
  return mod(inv * bb, nn);
}

inline std::vector<Vec> identity_matrix(std::size_t n) {
  std::vector<Vec> m(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Invariant factors d_1 | d_2 | ... (all > 1, ascending) of the direct sum
// of cyclic groups of the given orders, by regrouping prime powers.
inline std::vector<Int> smith_chain(const std::vector<Int>& orders) {
  std::vector<std::pair<Int, std::vector<Int>>> primes;  // prime, its powers
  for (Int n : orders)
    for (Int p = 2; n > 1; ++p) {
      if (p * p > n) p = n;
      if (n % p != 0) continue;
      Int q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      auto it = std::find_if(primes.begin(), primes.end(), [&](const auto& e) { return e.first == p; });
      if (it == primes.end()) it = primes.insert(primes.end(), {p, {}});
      it->second.push_back(q);
    }
  std::size_t len = 0;
  for (auto& [p, powers] : primes) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    len = std::max(len, powers.size());
  }
  std::vector<Int> chain(len, 1);
  for (const auto& [p, powers] : primes)
    for (std::size_t j = 0; j < powers.size(); ++j) chain[j] *= powers[j];
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// U * A * V = D with D diagonal, computed over Z/N. U is tracked only when
// requested because it is |rows|^2 in size.
class Diagonalization {
 public:
  Diagonalization(Int modulus, std::vector<Vec> rows, std::size_t cols,
                  bool track_rows)
      : n_(modulus), m_(rows.size()), c_(cols), a_(std::move(rows)) {
    assert(n_ >= 1 && n_ < (Int{1} << 31));
    for (auto& r : a_) {
      assert(r.size() == c_);
      for (auto& x : r) x = mod(x, n_);
    }
    v_ = identity_matrix(c_);
    if (track_rows) u_ = identity_matrix(m_);
    run();
  }

  Int modulus() const { return n_; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return c_; }
  std::size_t rank() const { return rank_; }
  Int pivot(std::size_t i) const { return a_[i][i]; }
  bool tracks_rows() const { return !u_.empty() || m_ == 0; }
  const std::vector<Vec>& left() const { return u_; }
  const std::vector<Vec>& right() const { return v_; }

  // w = v * V
  Vec apply_right(const Vec& v) const {
    Vec w(c_, 0);
    for (std::size_t i = 0; i < c_; ++i) {
      Int vi = mod(v[i], n_);
      if (vi == 0) continue;
      const Vec& row = v_[i];
      for (std::size_t j = 0; j < c_; ++j) w[j] = (w[j] + vi * row[j]) % n_;
    }
    return w;
  }

 private:
  void row_combine(std::size_t p, std::size_t q, Int a, Int b, Int c, Int d) {
    // row_p <- a*row_p + b*row_q ; row_q <- c*row_p + d*row_q
    auto mix = [&](Vec& rp, Vec& rq) {
      for (std::size_t j = 0; j < rp.size(); ++j) {
        Int x = rp[j], y = rq[j];
        rp[j] = mod(a * x + b * y, n_);
        rq[j] = mod(c * x + d * y, n_);
      }
    };
    mix(a_[p], a_[q]);
    if (!u_.empty()) mix(u_[p], u_[q]);
  }

  void col_combine(std::size_t p, std::size_t q, Int a, Int b, Int c, Int d) {
    // col_p <- a*col_p + b*col_q ; col_q <- c*col_p + d*col_q
    auto mix = [&](std::vector<Vec>& m) {
      for (auto& r : m) {
        Int x = r[p], y = r[q];
        r[p] = mod(a * x + b * y, n_);
        r[q] = mod(c * x + d * y, n_);
      }
    };
    mix(a_);
    mix(v_);
  }

  void clear_below(std::size_t t, std::size_t i) {
    Int p = a_[t][t], b = a_[i][t];
    if (divides(p, b, n_)) {
      Int q = quotient(p, b, n_);
      row_combine(t, i, 1, 0, mod(-q, n_), 1);
      return;
    }
    auto [g, s, u] = ext_gcd(p, b);
    row_combine(t, i, mod(s, n_), mod(u, n_), mod(-b / g, n_),
                mod(p / g, n_));
  }

  void clear_right(std::size_t t, std::size_t j) {
    Int p = a_[t][t], b = a_[t][j];
    if (divides(p, b, n_)) {
      Int q = quotient(p, b, n_);
      col_combine(t, j, 1, 0, mod(-q, n_), 1);
      return;
    }
    auto [g, s, u] = ext_gcd(p, b);
    col_combine(t, j, mod(s, n_), mod(u, n_), mod(-b / g, n_),
                mod(p / g, n_));
  }

  void run() {
    std::size_t t = 0;
    const std::size_t lim = std::min(m_, c_);
    while (t < lim) {
      std::size_t bi = m_, bj = c_;
      Int best = n_;
      for (std::size_t i = t; i < m_ && best > 1; ++i) {
        for (std::size_t j = t; j < c_; ++j) {
          if (a_[i][j] == 0) continue;
          Int g = std::gcd(a_[i][j], n_);
          if (g < best) {
            best = g;
            bi = i;
            bj = j;
            if (g == 1) break;
          }
        }
      }
      if (bi == m_) break;
      if (bi != t) {
        std::swap(a_[bi], a_[t]);
        if (!u_.empty()) std::swap(u_[bi], u_[t]);
      }
      if (bj != t) col_combine(t, bj, 0, 1, 1, 0);
      for (;;) {
        for (std::size_t i = t + 1; i < m_; ++i)
          if (a_[i][t] != 0) clear_below(t, i);
        for (std::size_t j = t + 1; j < c_; ++j)
          if (a_[t][j] != 0) clear_right(t, j);
        bool dirty = false;
        for (std::size_t i = t + 1; i < m_ && !dirty; ++i)
          dirty = a_[i][t] != 0;
        if (!dirty) break;
      }
      ++t;
    }
    rank_ = t;
  }

  Int n_;
  std::size_t m_, c_;
  std::vector<Vec> a_;
  std::vector<Vec> u_, v_;
  std::size_t rank_ = 0;
};

// Row span of a generator list inside (Z/N)^dim.
class Submodule {
 public:
  Submodule(Int modulus, std::size_t dim, std::vector<Vec> generators,
            bool solvable = true)
      : n_(modulus),
        dim_(dim),
        gens_(std::move(generators)),
        diag_(modulus, gens_, dim, solvable) {}

  Int modulus() const { return n_; }
  std::size_t dimension() const { return dim_; }
  const std::vector<Vec>& generators() const { return gens_; }

  bool contains(const Vec& v) const {
    Vec w = diag_.apply_right(v);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (i < diag_.rank()) {
        if (!divides(diag_.pivot(i), w[i], n_)) return false;
      } else if (w[i] != 0) {
        return false;
      }
    }
    return true;
  }

  bool contains(const Submodule& other) const {
    return std::all_of(other.gens_.begin(), other.gens_.end(),
                       [&](const Vec& g) { return contains(g); });
  }

  bool operator==(const Submodule& other) const {
    return contains(other) && other.contains(*this);
  }

  // Coefficients x with sum_i x_i * generator_i = v, when v is in the span.
  std::optional<Vec> solve(const Vec& v) const {
    if (!diag_.tracks_rows())
      throw Error(ErrorKind::BadDescription,
                  "submodule was built without solving support");
    Vec w = diag_.apply_right(v);
    const std::size_t m = gens_.size();
    Vec x(m, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (i < diag_.rank()) {
        if (!divides(diag_.pivot(i), w[i], n_)) return std::nullopt;
        Int yi = quotient(diag_.pivot(i), w[i], n_);
        if (yi == 0) continue;
        const Vec& ui = diag_.left()[i];
        for (std::size_t k = 0; k < m; ++k) x[k] = (x[k] + yi * ui[k]) % n_;
      } else if (w[i] != 0) {
        return std::nullopt;
      }
    }
    return x;
  }

  // Generators of { x : sum_i x_i * generator_i = 0 }.
  std::vector<Vec> relations() const {
    if (!diag_.tracks_rows())
      throw Error(ErrorKind::BadDescription,
                  "submodule was built without solving support");
    std::vector<Vec> out;
    const std::size_t m = gens_.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec& ui = diag_.left()[i];
      Int scale = 1;
      if (i < diag_.rank()) scale = n_ / std::gcd(diag_.pivot(i), n_);
      if (scale == n_) continue;
      Vec r(m);
      bool nonzero = false;
      for (std::size_t k = 0; k < m; ++k) {
        r[k] = (scale * ui[k]) % n_;
        nonzero |= r[k] != 0;
      }
      if (nonzero) out.push_back(std::move(r));
    }
    return out;
  }

  // Invariant factors of the span, ascending, each dividing the next.
  std::vector<Int> invariant_factors() const {
    std::vector<Int> f;
    for (std::size_t i = 0; i < diag_.rank(); ++i)
      f.push_back(n_ / std::gcd(diag_.pivot(i), n_));
    return smith_chain(f);
  }

  // Invariant factors of the quotient (Z/N)^dim / span, ascending.
  std::vector<Int> quotient_invariant_factors() const {
    std::vector<Int> f;
    for (std::size_t i = 0; i < diag_.rank(); ++i) {
      Int d = std::gcd(diag_.pivot(i), n_);
      if (d > 1) f.push_back(d);
    }
    for (std::size_t i = diag_.rank(); i < dim_; ++i) f.push_back(n_);
    return smith_chain(f);
  }

  std::size_t rank() const { return diag_.rank(); }

  // Cardinality, saturating at UINT64_MAX.
  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (Int f : invariant_factors()) {
      auto uf = static_cast<std::uint64_t>(f);
      if (o > UINT64_MAX / uf) return UINT64_MAX;
      o *= uf;
    }
    return o;
  }

  bool is_zero() const { return diag_.rank() == 0; }

 private:
  Int n_;
  std::size_t dim_;
  std::vector<Vec> gens_;
  Diagonalization diag_;
};

// Kernel of the additive map sending domain_gens[i] to images[i]. The map
// must be well defined on the span of domain_gens; the result generates
// { sum c_i d_i : sum c_i f(d_i) = 0 }.
inline std::vector<Vec> kernel_generators(Int modulus,
                                          const std::vector<Vec>& domain_gens,
                                          const std::vector<Vec>& images,
                                          std::size_t image_dim) {
  assert(domain_gens.size() == images.size());
  Submodule img(modulus, image_dim, images, true);
  std::vector<Vec> out;
  const std::size_t dom_dim = domain_gens.empty() ? 0 : domain_gens[0].size();
  for (const Vec& c : img.relations()) {
    Vec v(dom_dim, 0);
    bool nonzero = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t k = 0; k < dom_dim; ++k)
        v[k] = (v[k] + c[i] * domain_gens[i][k]) % modulus;
    }
    for (Int x : v) nonzero |= x != 0;
    if (nonzero) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace galg::linalg
