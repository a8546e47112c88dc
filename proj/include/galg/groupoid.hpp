#pragma once

// Finite groupoids given by explicit source, target, inverse and
// composition tables. Objects are identified with their identity
// morphisms; morphism indices follow input order, which also fixes the
// deterministic tie-breaking when a transversal is filled in.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "galg/error.hpp"

namespace galg {

using Mor = std::size_t;
inline constexpr Mor kNoMor = static_cast<Mor>(-1);

struct GroupoidDescription {
  std::vector<std::string> morphisms;
  std::vector<std::string> objects;
  std::map<std::string, std::string> src, tgt, inv;
  std::vector<std::array<std::string, 3>> compose;  // {g, h, gh}
};

class FiniteGroupoid {
 public:
  std::size_t size() const { return names_.size(); }
  const std::string& name(Mor g) const { return names_[g]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<Mor> find(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Mor index(const std::string& n) const {
    if (auto m = find(n)) return *m;
    throw Error(ErrorKind::UnknownMorphism, "no such morphism", n);
  }

  Mor src(Mor g) const { return src_[g]; }
  Mor tgt(Mor g) const { return tgt_[g]; }
  Mor inv(Mor g) const { return inv_[g]; }
  bool composable(Mor g, Mor h) const { return src_[g] == tgt_[h]; }

  Mor compose(Mor g, Mor h) const {
    if (!composable(g, h))
      throw Error(ErrorKind::BadSourceTarget, "morphisms are not composable",
                  names_[g] + " * " + names_[h]);
    return table_[g * size() + h];
  }

  const std::vector<Mor>& objects() const { return objects_; }
  std::size_t object_count() const { return objects_.size(); }
  bool is_object(Mor g) const { return object_pos_[g] >= 0; }
  std::size_t object_pos(Mor x) const {
    if (object_pos_[x] < 0)
      throw Error(ErrorKind::UnknownObject, "not an object", names_[x]);
    return static_cast<std::size_t>(object_pos_[x]);
  }
  Mor object_index(const std::string& n) const {
    auto m = find(n);
    if (!m || !is_object(*m)) throw Error(ErrorKind::UnknownObject, "no such object", n);
    return *m;
  }

  // G(y, z): morphisms y -> z
  std::vector<Mor> hom(Mor y, Mor z) const {
    std::vector<Mor> out;
    for (Mor g = 0; g < size(); ++g)
      if (src_[g] == y && tgt_[g] == z) out.push_back(g);
    return out;
  }
  std::vector<Mor> starting_at(Mor x) const {
    std::vector<Mor> out;
    for (Mor g = 0; g < size(); ++g)
      if (src_[g] == x) out.push_back(g);
    return out;
  }
  std::vector<Mor> ending_at(Mor x) const {
    std::vector<Mor> out;
    for (Mor g = 0; g < size(); ++g)
      if (tgt_[g] == x) out.push_back(g);
    return out;
  }

  GroupoidDescription description() const {
    GroupoidDescription d;
    d.morphisms = names_;
    for (Mor x : objects_) d.objects.push_back(names_[x]);
    for (Mor g = 0; g < size(); ++g) {
      d.src[names_[g]] = names_[src_[g]];
      d.tgt[names_[g]] = names_[tgt_[g]];
      d.inv[names_[g]] = names_[inv_[g]];
      for (Mor h = 0; h < size(); ++h)
        if (composable(g, h))
          d.compose.push_back({names_[g], names_[h], names_[compose(g, h)]});
    }
    return d;
  }

 private:
  friend std::shared_ptr<const FiniteGroupoid> validate_groupoid(
      const GroupoidDescription&, const Caps&);

  std::vector<std::string> names_;
  std::unordered_map<std::string, Mor> index_;
  std::vector<Mor> src_, tgt_, inv_;
  std::vector<Mor> table_;  // size*size, kNoMor off the composable pairs
  std::vector<Mor> objects_;
  std::vector<std::ptrdiff_t> object_pos_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

// Validates every groupoid axiom exhaustively, in the order: names,
// source/target, identities, composition table, identity laws, inverses,
// associativity. Errors name the offending morphisms.
inline GroupoidPtr validate_groupoid(const GroupoidDescription& d,
                                     const Caps& caps = default_caps()) {
  auto G = std::shared_ptr<FiniteGroupoid>(new FiniteGroupoid());
  const std::size_t n = d.morphisms.size();
  if (n == 0) throw Error(ErrorKind::EmptyObjectSet, "groupoid has no morphisms");
  if (n > caps.groupoid_morphisms)
    throw Error(ErrorKind::SizeCapExceeded,
                "groupoid exceeds " + std::to_string(caps.groupoid_morphisms) +
                    " morphisms");
  G->names_ = d.morphisms;
  for (Mor g = 0; g < n; ++g)
    if (!G->index_.emplace(d.morphisms[g], g).second)
      throw Error(ErrorKind::BadDescription, "duplicate morphism", d.morphisms[g]);
  auto lookup = [&](const std::string& s, const char* what) {
    auto it = G->index_.find(s);
    if (it == G->index_.end())
      throw Error(ErrorKind::BadDescription,
                  std::string("unknown morphism in ") + what, s);
    return it->second;
  };
  G->object_pos_.assign(n, -1);
  for (const auto& o : d.objects) {
    Mor x = lookup(o, "objects");
    if (G->object_pos_[x] >= 0)
      throw Error(ErrorKind::BadDescription, "duplicate object", o);
    G->object_pos_[x] = static_cast<std::ptrdiff_t>(G->objects_.size());
    G->objects_.push_back(x);
  }
  if (G->objects_.empty())
    throw Error(ErrorKind::EmptyObjectSet, "groupoid has no objects");
  auto table_of = [&](const std::map<std::string, std::string>& m,
                      const char* what) {
    std::vector<Mor> out(n);
    for (Mor g = 0; g < n; ++g) {
      auto it = m.find(d.morphisms[g]);
      if (it == m.end())
        throw Error(ErrorKind::BadDescription,
                    std::string(what) + " is undefined", d.morphisms[g]);
      out[g] = lookup(it->second, what);
    }
    return out;
  };
  G->src_ = table_of(d.src, "src");
  G->tgt_ = table_of(d.tgt, "tgt");
  for (Mor g = 0; g < n; ++g) {
    if (G->object_pos_[G->src_[g]] < 0 || G->object_pos_[G->tgt_[g]] < 0)
      throw Error(ErrorKind::MissingIdentity,
                  "source or target is not an identity", d.morphisms[g]);
  }
  for (Mor x : G->objects_)
    if (G->src_[x] != x || G->tgt_[x] != x)
      throw Error(ErrorKind::BadSourceTarget,
                  "identity must be its own source and target", d.morphisms[x]);
  G->table_.assign(n * n, kNoMor);
  for (const auto& [a, b, c] : d.compose) {
    Mor g = lookup(a, "compose"), h = lookup(b, "compose"), k = lookup(c, "compose");
    if (G->src_[g] != G->tgt_[h])
      throw Error(ErrorKind::BadSourceTarget, "composition of non-composable pair",
                  a + " * " + b);
    if (G->src_[k] != G->src_[h] || G->tgt_[k] != G->tgt_[g])
      throw Error(ErrorKind::BadSourceTarget,
                  "composite has the wrong source or target",
                  a + " * " + b + " = " + c);
    Mor& slot = G->table_[g * n + h];
    if (slot != kNoMor && slot != k)
      throw Error(ErrorKind::BadDescription, "conflicting composition entries",
                  a + " * " + b);
    slot = k;
  }
  for (Mor g = 0; g < n; ++g)
    for (Mor h = 0; h < n; ++h)
      if (G->src_[g] == G->tgt_[h] && G->table_[g * n + h] == kNoMor)
        throw Error(ErrorKind::MissingComposition, "composable pair has no entry",
                    d.morphisms[g] + " * " + d.morphisms[h]);
  for (Mor g = 0; g < n; ++g) {
    if (G->table_[G->tgt_[g] * n + g] != g || G->table_[g * n + G->src_[g]] != g)
      throw Error(ErrorKind::MissingIdentity, "identity law fails", d.morphisms[g]);
  }
  G->inv_ = table_of(d.inv, "inv");
  for (Mor g = 0; g < n; ++g) {
    Mor i = G->inv_[g];
    if (G->src_[i] != G->tgt_[g] || G->tgt_[i] != G->src_[g] ||
        G->table_[i * n + g] != G->src_[g] || G->table_[g * n + i] != G->tgt_[g] ||
        G->inv_[i] != g)
      throw Error(ErrorKind::MissingInverse, "inverse law fails",
                  d.morphisms[g] + " / " + d.morphisms[i]);
  }
  for (Mor g = 0; g < n; ++g)
    for (Mor h = 0; h < n; ++h) {
      if (G->src_[g] != G->tgt_[h]) continue;
      Mor gh = G->table_[g * n + h];
      for (Mor k = 0; k < n; ++k) {
        if (G->src_[h] != G->tgt_[k]) continue;
        if (G->table_[gh * n + k] != G->table_[g * n + G->table_[h * n + k]])
          throw Error(ErrorKind::NonAssociative, "associativity fails",
                      d.morphisms[g] + ", " + d.morphisms[h] + ", " + d.morphisms[k]);
      }
    }
  return G;
}

// Full subgroupoid on the morphisms whose source and target lie in
// `objects`; the second component maps local indices to parent indices.
inline std::pair<GroupoidPtr, std::vector<Mor>> full_subgroupoid(
    const FiniteGroupoid& G, const std::vector<Mor>& objects) {
  std::vector<char> keep_obj(G.size(), 0);
  for (Mor x : objects) keep_obj[x] = 1;
  std::vector<Mor> keep;
  for (Mor g = 0; g < G.size(); ++g)
    if (keep_obj[G.src(g)] && keep_obj[G.tgt(g)]) keep.push_back(g);
  GroupoidDescription d;
  for (Mor g : keep) d.morphisms.push_back(G.name(g));
  for (Mor x : G.objects())
    if (keep_obj[x]) d.objects.push_back(G.name(x));
  for (Mor g : keep) {
    d.src[G.name(g)] = G.name(G.src(g));
    d.tgt[G.name(g)] = G.name(G.tgt(g));
    d.inv[G.name(g)] = G.name(G.inv(g));
    for (Mor h : keep)
      if (G.composable(g, h))
        d.compose.push_back({G.name(g), G.name(h), G.name(G.compose(g, h))});
  }
  return {validate_groupoid(d), keep};
}

// Components ordered by their first object in input order.
inline std::vector<GroupoidPtr> connected_components(const FiniteGroupoid& G) {
  const std::size_t k = G.object_count();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Mor g = 0; g < G.size(); ++g) {
    std::size_t a = root(G.object_pos(G.src(g))), b = root(G.object_pos(G.tgt(g)));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<Mor>> groups;
  std::vector<std::ptrdiff_t> slot(k, -1);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t r = root(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(G.objects()[i]);
  }
  std::vector<GroupoidPtr> out;
  for (const auto& objs : groups) out.push_back(full_subgroupoid(G, objs).first);
  return out;
}

inline bool is_connected(const FiniteGroupoid& G) {
  return connected_components(G).size() == 1;
}

inline GroupoidPtr disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  GroupoidDescription d = a.description(), e = b.description();
  d.morphisms.insert(d.morphisms.end(), e.morphisms.begin(), e.morphisms.end());
  d.objects.insert(d.objects.end(), e.objects.begin(), e.objects.end());
  d.src.insert(e.src.begin(), e.src.end());
  d.tgt.insert(e.tgt.begin(), e.tgt.end());
  d.inv.insert(e.inv.begin(), e.inv.end());
  d.compose.insert(d.compose.end(), e.compose.begin(), e.compose.end());
  return validate_groupoid(d);
}

// G(x) as a one-object groupoid together with the index translation.
struct IsotropyGroup {
  GroupoidPtr group;
  Mor base = 0;                       // x in the parent
  std::vector<Mor> parent;            // local -> parent
  std::vector<std::ptrdiff_t> local;  // parent -> local, -1 outside G(x)

  std::size_t size() const { return parent.size(); }
  bool contains(Mor g) const { return local[g] >= 0; }
  Mor to_local(Mor g) const { return static_cast<Mor>(local[g]); }
};

inline IsotropyGroup isotropy_group(const FiniteGroupoid& G, Mor x) {
  if (x >= G.size() || !G.is_object(x))
    throw Error(ErrorKind::UnknownObject, "not an object",
                x < G.size() ? G.name(x) : std::to_string(x));
  auto [sub, keep] = full_subgroupoid(G, {x});
  IsotropyGroup iso;
  iso.group = sub;
  iso.base = x;
  iso.parent = keep;
  iso.local.assign(G.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i)
    iso.local[keep[i]] = static_cast<std::ptrdiff_t>(i);
  return iso;
}

struct Transversal {
  Mor base = 0;
  std::vector<Mor> pick;  // by object position: tau_y with src x, tgt y

  Mor at(const FiniteGroupoid& G, Mor y) const { return pick[G.object_pos(y)]; }
  bool operator==(const Transversal&) const = default;
};

inline Transversal make_transversal(const FiniteGroupoid& G, Mor x,
                                    const std::map<Mor, Mor>& choices = {}) {
  if (x >= G.size() || !G.is_object(x))
    throw Error(ErrorKind::UnknownObject, "base is not an object");
  Transversal t;
  t.base = x;
  t.pick.assign(G.object_count(), kNoMor);
  for (const auto& [y, g] : choices) {
    if (!G.is_object(y)) throw Error(ErrorKind::UnknownObject, "not an object", G.name(y));
    if (G.src(g) != x || G.tgt(g) != y)
      throw Error(ErrorKind::BadChoice, "choice does not run from the base",
                  G.name(y) + " -> " + G.name(g));
    if (y == x && g != x)
      throw Error(ErrorKind::BadChoice, "the base must pick its identity", G.name(g));
    t.pick[G.object_pos(y)] = g;
  }
  for (std::size_t i = 0; i < G.object_count(); ++i) {
    Mor y = G.objects()[i];
    if (t.pick[i] != kNoMor) continue;
    if (y == x) {
      t.pick[i] = x;
      continue;
    }
    auto h = G.hom(x, y);
    if (h.empty())
      throw Error(ErrorKind::NotConnected, "no morphism from the base",
                  G.name(x) + " -> " + G.name(y));
    t.pick[i] = h.front();
  }
  return t;
}

// g_x = tau_{t(g)}^{-1} g tau_{s(g)}
inline Mor project_pi(const FiniteGroupoid& G, const Transversal& tau, Mor g) {
  Mor a = tau.at(G, G.tgt(g)), b = tau.at(G, G.src(g));
  return G.compose(G.inv(a), G.compose(g, b));
}

inline GroupoidPtr pair_groupoid(const std::vector<std::string>& objects) {
  if (objects.empty()) throw Error(ErrorKind::EmptyObjectSet, "pair groupoid of no objects");
  auto nm = [](const std::string& y, const std::string& z) {
    return "(" + y + "," + z + ")";
  };
  GroupoidDescription d;
  for (const auto& y : objects)
    for (const auto& z : objects) d.morphisms.push_back(nm(y, z));
  for (const auto& y : objects) d.objects.push_back(nm(y, y));
  for (const auto& y : objects)
    for (const auto& z : objects) {
      d.src[nm(y, z)] = nm(y, y);
      d.tgt[nm(y, z)] = nm(z, z);
      d.inv[nm(y, z)] = nm(z, y);
      for (const auto& r : objects) d.compose.push_back({nm(y, z), nm(r, y), nm(r, z)});
    }
  return validate_groupoid(d);
}

// One-object groupoid from a multiplication table; the identity is found.
inline GroupoidPtr group_from_table(const std::vector<std::string>& names,
                                    const std::vector<std::vector<std::size_t>>& mul) {
  const std::size_t n = names.size();
  std::optional<std::size_t> e;
  for (std::size_t i = 0; i < n && !e; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = mul[i][j] == j && mul[j][i] == j;
    if (ok) e = i;
  }
  if (!e) throw Error(ErrorKind::MissingIdentity, "group table has no identity");
  GroupoidDescription d;
  d.morphisms = names;
  d.objects = {names[*e]};
  for (std::size_t i = 0; i < n; ++i) {
    d.src[names[i]] = names[*e];
    d.tgt[names[i]] = names[*e];
    for (std::size_t j = 0; j < n; ++j) {
      d.compose.push_back({names[i], names[j], names[mul[i][j]]});
      if (mul[i][j] == *e) d.inv[names[i]] = names[j];
    }
  }
  return validate_groupoid(d);
}

inline GroupoidPtr cyclic_group(std::size_t n, const std::string& gen = "g") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(i == 0 ? "e" : (i == 1 ? gen : gen + "^" + std::to_string(i)));
  std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mul[i][j] = (i + j) % n;
  return group_from_table(names, mul);
}

inline GroupoidPtr direct_product(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.object_count() != 1 || b.object_count() != 1)
    throw Error(ErrorKind::BadDescription, "direct product needs two groups");
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::string> names;
  for (Mor i = 0; i < n; ++i)
    for (Mor j = 0; j < m; ++j) names.push_back(a.name(i) + "." + b.name(j));
  std::vector<std::vector<std::size_t>> mul(n * m, std::vector<std::size_t>(n * m));
  for (Mor i = 0; i < n; ++i)
    for (Mor j = 0; j < m; ++j)
      for (Mor k = 0; k < n; ++k)
        for (Mor l = 0; l < m; ++l)
          mul[i * m + j][k * m + l] = a.compose(i, k) * m + b.compose(j, l);
  return group_from_table(names, mul);
}

// S3 as permutations of {0,1,2}.
inline GroupoidPtr symmetric_group_3() {
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                           {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  std::vector<std::string> names = {"e", "r", "r^2", "s", "s*r", "s*r^2"};
  std::vector<std::vector<std::size_t>> mul(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[i][perms[j][k]];
      mul[i][j] = static_cast<std::size_t>(
          std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return group_from_table(names, mul);
}

// Gamma_H^m: morphisms (h,i,j) : j -> i with (g,i,j)(h,j,k) = (gh,i,k).
inline GroupoidPtr gamma_groupoid(const FiniteGroupoid& H, std::size_t m,
                                  std::size_t i0 = 1) {
  if (H.object_count() != 1)
    throw Error(ErrorKind::BadDescription, "Gamma construction needs a group");
  if (m < 1 || i0 < 1 || i0 > m)
    throw Error(ErrorKind::BadIndex, "index out of range", std::to_string(i0));
  const Mor e = H.objects()[0];
  auto nm = [&](Mor g, std::size_t i, std::size_t j) {
    return "(" + H.name(g) + "," + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  GroupoidDescription d;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      for (Mor g = 0; g < H.size(); ++g) d.morphisms.push_back(nm(g, i, j));
  for (std::size_t i = 1; i <= m; ++i) d.objects.push_back(nm(e, i, i));
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      for (Mor g = 0; g < H.size(); ++g) {
        std::string n = nm(g, i, j);
        d.src[n] = nm(e, j, j);
        d.tgt[n] = nm(e, i, i);
        d.inv[n] = nm(H.inv(g), j, i);
        for (std::size_t k = 1; k <= m; ++k)
          for (Mor h = 0; h < H.size(); ++h)
            d.compose.push_back({n, nm(h, j, k), nm(H.compose(g, h), i, k)});
      }
  return validate_groupoid(d);
}

}  // namespace galg
