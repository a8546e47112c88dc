#pragma once

// Tensor products of finite modules over a finite ring, computed as
// (M (x)_Z N) / < m.r (x) n - m (x) r.n > and decided by diagonalization.
// Modules are presented by additive generators rather than bases, so the
// same code handles free and torsion modules alike.

#include <cstddef>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "galg/zmod_linalg.hpp"

namespace galg {

using linalg::Int;
using linalg::Vec;

// A finite module over a ring R. Generators are abstract; `relations`
// generate the kernel of (Z/N)^generators -> module, and `action[k][i]` is
// generator i acted on by the k-th additive generator of R, written in the
// module generators (on the right for a right module, on the left for a left
// module).
struct ModulePresentation {
  Int modulus = 1;
  std::size_t generator_count = 0;
  std::vector<Vec> relations;
  std::vector<std::vector<Vec>> action;
};

class TensorProduct {
 public:
  // right (x)_R left. Both presentations must use the same R-generators.
  TensorProduct(const ModulePresentation& right, const ModulePresentation& left,
                const Caps& caps = default_caps())
      : n_(right.modulus), p_(right.generator_count), q_(left.generator_count) {
    if (right.modulus != left.modulus)
      throw Error(ErrorKind::BadDescription, "modules have different exponents");
    if (right.action.size() != left.action.size())
      throw Error(ErrorKind::BadDescription, "modules use different ring generators");
    if (p_ * q_ > caps.tensor_generators)
      throw Error(ErrorKind::SizeCapExceeded,
                  "tensor product has " + std::to_string(p_ * q_) +
                      " generator pairs, cap " + std::to_string(caps.tensor_generators));
    std::vector<Sparse> rows;
    for (const Vec& rel : right.relations)
      for (std::size_t j = 0; j < q_; ++j) {
        Sparse r;
        for (std::size_t i = 0; i < p_; ++i) add_to(r, index(i, j), rel[i]);
        rows.push_back(std::move(r));
      }
    for (const Vec& rel : left.relations)
      for (std::size_t i = 0; i < p_; ++i) {
        Sparse r;
        for (std::size_t j = 0; j < q_; ++j) add_to(r, index(i, j), rel[j]);
        rows.push_back(std::move(r));
      }
    for (std::size_t k = 0; k < right.action.size(); ++k)
      for (std::size_t i = 0; i < p_; ++i)
        for (std::size_t j = 0; j < q_; ++j) {
          Sparse r;
          const Vec& mr = right.action[k][i];
          const Vec& rn = left.action[k][j];
          for (std::size_t a = 0; a < p_; ++a) add_to(r, index(a, j), mr[a]);
          for (std::size_t b = 0; b < q_; ++b) add_to(r, index(i, b), -rn[b]);
          rows.push_back(std::move(r));
        }
    split_blocks(rows);
  }

  std::size_t generator_count() const { return p_ * q_; }
  std::size_t block_count() const { return blocks_.size(); }

  // Coordinates of m (x) n from coordinates of m and n.
  Vec pure(const Vec& m, const Vec& n) const {
    Vec t(p_ * q_, 0);
    for (std::size_t i = 0; i < p_; ++i) {
      if (m[i] == 0) continue;
      for (std::size_t j = 0; j < q_; ++j)
        t[index(i, j)] = linalg::mod(t[index(i, j)] + m[i] * n[j], n_);
    }
    return t;
  }

  bool is_zero(const Vec& t) const {
    for (const Block& b : blocks_) {
      Vec local(b.members.size());
      bool nonzero = false;
      for (std::size_t k = 0; k < b.members.size(); ++k) {
        local[k] = linalg::mod(t[b.members[k]], n_);
        nonzero |= local[k] != 0;
      }
      if (nonzero && !b.relations.contains(local)) return false;
    }
    return true;
  }

  bool equal(const Vec& a, const Vec& b) const {
    Vec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = linalg::mod(a[i] - b[i], n_);
    return is_zero(d);
  }

  // Invariant factors of the tensor group, ascending.
  std::vector<Int> invariant_factors() const {
    std::vector<Int> f;
    for (const Block& b : blocks_) {
      auto part = b.relations.quotient_invariant_factors();
      f.insert(f.end(), part.begin(), part.end());
    }
    return linalg::smith_chain(f);
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (Int f : invariant_factors()) {
      auto uf = static_cast<std::uint64_t>(f);
      if (o > UINT64_MAX / uf) return UINT64_MAX;
      o *= uf;
    }
    return o;
  }

 private:
  using Sparse = std::map<std::size_t, Int>;
  struct Block {
    std::vector<std::size_t> members;
    linalg::Submodule relations;
  };

  std::size_t index(std::size_t i, std::size_t j) const { return i * q_ + j; }

  void add_to(Sparse& r, std::size_t at, Int v) const {
    v = linalg::mod(v, n_);
    if (v == 0) return;
    Int& slot = r[at];
    slot = linalg::mod(slot + v, n_);
    if (slot == 0) r.erase(at);
  }

  // Generators linked by a relation row land in one block; every block is
  // diagonalized on its own.
  void split_blocks(const std::vector<Sparse>& rows) {
    const std::size_t total = p_ * q_;
    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (const Sparse& r : rows) {
      if (r.empty()) continue;
      std::size_t first = root(r.begin()->first);
      for (const auto& [at, v] : r) parent[root(at)] = first;
    }
    std::map<std::size_t, std::size_t> block_of_root;
    std::vector<std::vector<std::size_t>> members;
    std::vector<std::size_t> local(total);
    for (std::size_t a = 0; a < total; ++a) {
      auto [it, fresh] = block_of_root.try_emplace(root(a), members.size());
      if (fresh) members.emplace_back();
      local[a] = members[it->second].size();
      members[it->second].push_back(a);
    }
    std::vector<std::vector<Vec>> block_rows(members.size());
    for (const Sparse& r : rows) {
      if (r.empty()) continue;
      std::size_t b = block_of_root.at(root(r.begin()->first));
      Vec dense(members[b].size(), 0);
      for (const auto& [at, v] : r) dense[local[at]] = v;
      block_rows[b].push_back(std::move(dense));
    }
    for (std::size_t b = 0; b < members.size(); ++b) {
      std::size_t dim = members[b].size();
      blocks_.push_back(Block{std::move(members[b]),
                              linalg::Submodule(n_, dim, std::move(block_rows[b]), false)});
    }
  }

  Int n_;
  std::size_t p_, q_;
  std::vector<Block> blocks_;
};

}  // namespace galg
