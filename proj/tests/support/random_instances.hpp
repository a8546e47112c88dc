#pragma once

// Seeded random instances for the fuzz tier. An instance is described by
// a small recipe (a group, a number of objects, orbits of ring components
// under the group, a kept subset of components, ...) so that a failing
// case can be shrunk by simplifying the recipe one step at a time.

#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "galg/galg.hpp"
#include "galg/verify.hpp"

namespace galg::fuzz {

struct FieldKind {
  const char* name;
  int p, k;  // k == 0: Z/p as a ring
  std::size_t size;
};

inline const std::vector<FieldKind>& field_kinds() {
  static const std::vector<FieldKind> f = {
      {"Z2", 2, 0, 2}, {"Z3", 3, 0, 3}, {"Z4", 4, 0, 4}, {"GF4", 2, 2, 4}, {"Z5", 5, 0, 5}, {"GF9", 3, 2, 9}};
  return f;
}

inline RingComponent make_component(std::size_t kind) {
  const FieldKind& f = field_kinds()[kind];
  return f.k == 0 ? RingComponent::zmod(f.p) : RingComponent::gf(f.p, f.k);
}

struct GroupInfo {
  std::string name;
  GroupoidPtr group;
  std::vector<std::vector<Mor>> subgroups;  // each sorted, identity included
  std::vector<std::vector<int>> characters; // homomorphisms to Z/2
};

inline GroupInfo describe_group(std::string name, GroupoidPtr H) {
  GroupInfo info{std::move(name), H, {}, {}};
  const std::size_t n = H->size();
  const Mor e = H->objects()[0];
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> e & 1u)) continue;
    bool closed = true;
    for (Mor a = 0; a < n && closed; ++a)
      for (Mor b = 0; b < n && closed; ++b)
        if ((mask >> a & 1u) && (mask >> b & 1u) && !(mask >> H->compose(a, b) & 1u)) closed = false;
    if (!closed) continue;
    std::vector<Mor> s;
    for (Mor a = 0; a < n; ++a)
      if (mask >> a & 1u) s.push_back(a);
    info.subgroups.push_back(std::move(s));
  }
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> chi(n);
    for (Mor a = 0; a < n; ++a) chi[a] = mask >> a & 1u;
    bool hom = true;
    for (Mor a = 0; a < n && hom; ++a)
      for (Mor b = 0; b < n && hom; ++b) hom = chi[H->compose(a, b)] == (chi[a] ^ chi[b]);
    if (hom) info.characters.push_back(std::move(chi));
  }
  return info;
}

inline const std::vector<GroupInfo>& groups() {
  static const std::vector<GroupInfo> g = [] {
    std::vector<GroupInfo> out;
    out.push_back(describe_group("Z1", cyclic_group(1)));
    out.push_back(describe_group("Z2", cyclic_group(2)));
    out.push_back(describe_group("Z3", cyclic_group(3)));
    out.push_back(describe_group("Z4", cyclic_group(4)));
    out.push_back(describe_group("Z2xZ2", direct_product(*cyclic_group(2), *cyclic_group(2, "h"))));
    out.push_back(describe_group("S3", symmetric_group_3()));
    return out;
  }();
  return g;
}

struct Orbit {
  std::size_t subgroup = 0;  // stabilizer, by index into GroupInfo::subgroups
  std::size_t field = 0;     // by index into field_kinds()
};

struct Recipe {
  std::size_t group = 0;
  std::size_t objects = 1;
  std::vector<Orbit> orbits;
  std::vector<bool> keep;         // per component of the orbit ring C
  std::size_t character = 0;      // Frobenius twist along a character of the group
  std::vector<bool> twist;        // per object: Frobenius on the transversal copy
  bool narrow = false;            // transversal maps defined on part of I_x only
  std::vector<bool> narrow_mask;  // per kept component
  bool from_action = false;       // restrict the global action instead of building a datum
  std::vector<bool> action_mask;  // per component of C^m
  bool globalize = false;

  std::string describe() const {
    std::ostringstream os;
    auto bits = [&](const std::vector<bool>& v) {
      std::string s;
      for (bool b : v) s += b ? '1' : '0';
      return s;
    };
    os << groups()[group].name << " m=" << objects << " orbits=[";
    for (std::size_t i = 0; i < orbits.size(); ++i)
      os << (i ? "," : "") << field_kinds()[orbits[i].field].name << "/K"
         << groups()[group].subgroups[orbits[i].subgroup].size();
    os << "] keep=" << bits(keep) << " chi=" << character << " twist=" << bits(twist);
    if (narrow) os << " narrow=" << bits(narrow_mask);
    if (from_action) os << " action=" << bits(action_mask);
    if (globalize) os << " globalized";
    return os.str();
  }
};

// The components of C: per orbit, one per left coset of the stabilizer.
struct OrbitRing {
  std::vector<std::size_t> field;           // per component
  std::vector<std::vector<std::size_t>> move;  // move[h][c]: component h.c
};

inline OrbitRing orbit_ring(const Recipe& r) {
  const GroupInfo& gi = groups()[r.group];
  const FiniteGroupoid& H = *gi.group;
  OrbitRing out;
  out.move.assign(H.size(), {});
  for (const Orbit& o : r.orbits) {
    const auto& K = gi.subgroups[o.subgroup];
    std::vector<std::vector<Mor>> cosets;
    std::vector<std::size_t> coset_of(H.size(), 0);
    for (Mor a = 0; a < H.size(); ++a) {
      std::vector<Mor> c;
      for (Mor k : K) c.push_back(H.compose(a, k));
      std::sort(c.begin(), c.end());
      auto it = std::find(cosets.begin(), cosets.end(), c);
      coset_of[a] = static_cast<std::size_t>(it - cosets.begin());
      if (it == cosets.end()) cosets.push_back(c);
    }
    const std::size_t base = out.field.size();
    for (std::size_t c = 0; c < cosets.size(); ++c) out.field.push_back(o.field);
    for (Mor h = 0; h < H.size(); ++h)
      for (std::size_t c = 0; c < cosets.size(); ++c)
        out.move[h].push_back(base + coset_of[H.compose(h, cosets[c].front())]);
  }
  return out;
}

inline std::size_t ring_size(const OrbitRing& c, const std::vector<bool>* keep = nullptr) {
  std::size_t s = 1;
  for (std::size_t i = 0; i < c.field.size(); ++i)
    if (!keep || (*keep)[i]) s *= field_kinds()[c.field[i]].size;
  return s;
}

inline std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Table of a map between component-product rings carrying component
// `from` of A to component `to` of B (with matching component types).
struct CrossMove {
  std::size_t from, to;
  bool frobenius = false;
};

inline std::vector<Elem> cross_table(const FiniteRing& A, const FiniteRing& B,
                                     const std::vector<CrossMove>& moves) {
  std::vector<Elem> t(A.size(), kNone);
  std::vector<FiniteRing::Index> d(B.component_count());
  for (Elem e = 0; e < A.size(); ++e) {
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = B.component(j).zero();
    bool inside = true;
    for (std::size_t i = 0; i < A.component_count() && inside; ++i) {
      auto v = A.digit(e, i);
      if (v == A.component(i).zero()) continue;
      inside = false;
      for (const CrossMove& m : moves)
        if (m.from == i) {
          d[m.to] = m.frobenius ? B.component(m.to).frobenius(v) : v;
          inside = true;
        }
    }
    if (inside) t[e] = B.compose(d);
  }
  return t;
}

inline Ideal component_ideal(const RingPtr& A, const std::vector<std::size_t>& comps) {
  return instances::components(A, comps);
}

inline RingPtr blocks_ring(const OrbitRing& c, const std::vector<std::size_t>& comps, std::size_t m,
                           const Caps& caps) {
  std::vector<RingComponent> rc;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j : comps) rc.push_back(make_component(c.field[j]));
  return FiniteRing::make(std::move(rc), caps);
}

// Builds the instance described by a recipe.
inline Instance build(const Recipe& r, const std::string& name, const Caps& caps) {
  const GroupInfo& gi = groups()[r.group];
  const FiniteGroupoid& H = *gi.group;
  const std::vector<int>& chi = gi.characters[r.character];
  GroupoidPtr G = gamma_groupoid(H, r.objects, 1);
  const std::size_t m = r.objects;
  OrbitRing C = orbit_ring(r);
  const std::size_t nc = C.field.size();
  auto frob = [&](Mor h) { return chi[h] != 0; };
  auto index = [&](Mor h, std::size_t i, std::size_t j) { return (i * m + j) * H.size() + h; };

  if (r.from_action) {
    std::vector<std::size_t> all(nc);
    for (std::size_t j = 0; j < nc; ++j) all[j] = j;
    RingPtr B = blocks_ring(C, all, m, caps);
    std::vector<Ideal> ideals(G->size());
    std::vector<std::vector<Elem>> maps(G->size());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (Mor h = 0; h < H.size(); ++h) {
          std::vector<CrossMove> moves;
          std::vector<std::size_t> block;
          for (std::size_t c = 0; c < nc; ++c) {
            moves.push_back({j * nc + c, i * nc + C.move[h][c], frob(h)});
            block.push_back(i * nc + c);
          }
          ideals[index(h, i, j)] = component_ideal(B, block);
          maps[index(h, i, j)] = cross_table(*B, *B, moves);
        }
    PartialGroupoidAction global = validate_partial_action(G, B, ideals, maps);
    std::vector<std::size_t> chosen;
    for (std::size_t c = 0; c < r.action_mask.size(); ++c)
      if (r.action_mask[c]) chosen.push_back(c);
    PartialGroupoidAction alpha = restrict_action(global, component_ideal(B, chosen));
    return instance_from_action(name, alpha, make_transversal(*G, G->objects()[0]));
  }

  std::vector<std::size_t> S;  // kept components of C
  std::vector<std::ptrdiff_t> pos(nc, -1);
  for (std::size_t c = 0; c < nc; ++c)
    if (r.keep[c]) {
      pos[c] = static_cast<std::ptrdiff_t>(S.size());
      S.push_back(c);
    }
  const std::size_t ns = S.size();
  RingPtr A = blocks_ring(C, S, m, caps);
  auto comp = [&](std::size_t block, std::size_t s) { return block * ns + s; };

  DatumParts p;
  p.groupoid = G;
  p.ring = A;
  p.tau = make_transversal(*G, G->objects()[0]);
  IsotropyGroup iso = isotropy_group(*G, p.tau.base);
  std::vector<std::size_t> dom_s;
  for (std::size_t s = 0; s < ns; ++s)
    if (!r.narrow || r.narrow_mask[s]) dom_s.push_back(s);
  std::vector<std::size_t> every(ns);
  std::iota(every.begin(), every.end(), 0);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> block, dom, rng;
    std::vector<CrossMove> moves;
    for (std::size_t s = 0; s < ns; ++s) block.push_back(comp(i, s));
    const std::vector<std::size_t>& use = i == 0 ? every : dom_s;
    for (std::size_t s : use) {
      dom.push_back(comp(0, s));
      rng.push_back(comp(i, s));
      moves.push_back({comp(0, s), comp(i, s), i > 0 && r.twist[i]});
    }
    p.objects.push_back(component_ideal(A, block));
    p.tau_domain.push_back(component_ideal(A, dom));
    p.tau_range.push_back(component_ideal(A, rng));
    p.tau_maps.push_back(cross_table(*A, *A, moves));
  }
  for (std::size_t l = 0; l < iso.size(); ++l) {
    const Mor h = iso.parent[l];  // (h,1,1) sits at index h
    std::vector<std::size_t> target;
    std::vector<CrossMove> moves;
    for (std::size_t s = 0; s < ns; ++s) {
      const std::ptrdiff_t hs = pos[C.move[h][S[s]]];
      if (hs < 0) continue;
      target.push_back(comp(0, static_cast<std::size_t>(hs)));
      moves.push_back({comp(0, s), comp(0, static_cast<std::size_t>(hs)), frob(h)});
    }
    p.group_ideals.push_back(component_ideal(A, target));
    p.group_maps.push_back(cross_table(*A, *A, moves));
  }
  Datum d = validate_datum(p);
  if (!r.globalize) return instance_from_datum(name, d);

  // Ambient: the orbits that meet the kept components, one block per object.
  std::vector<bool> reach(nc, false);
  for (std::size_t s : S)
    for (Mor h = 0; h < H.size(); ++h) reach[C.move[h][s]] = true;
  std::vector<std::size_t> T;
  std::vector<std::ptrdiff_t> tpos(nc, -1);
  for (std::size_t c = 0; c < nc; ++c)
    if (reach[c]) {
      tpos[c] = static_cast<std::ptrdiff_t>(T.size());
      T.push_back(c);
    }
  const std::size_t nt = T.size();
  RingPtr B = blocks_ring(C, T, m, caps);
  auto bcomp = [&](std::size_t block, std::size_t c) {
    return block * nt + static_cast<std::size_t>(tpos[c]);
  };
  std::vector<CrossMove> emb;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t s = 0; s < ns; ++s) emb.push_back({comp(i, s), bcomp(i, S[s])});
  std::vector<Ideal> J;
  std::vector<std::vector<Elem>> tau_ext, group_ext;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> block;
    std::vector<CrossMove> moves;
    for (std::size_t c : T) {
      block.push_back(bcomp(i, c));
      moves.push_back({bcomp(0, c), bcomp(i, c), i > 0 && r.twist[i]});
    }
    J.push_back(component_ideal(B, block));
    tau_ext.push_back(cross_table(*B, *B, moves));
  }
  for (std::size_t l = 0; l < iso.size(); ++l) {
    const Mor h = iso.parent[l];
    std::vector<CrossMove> moves;
    for (std::size_t c : T) moves.push_back({bcomp(0, c), bcomp(0, C.move[h][c]), frob(h)});
    group_ext.push_back(cross_table(*B, *B, moves));
  }
  GlobalizableDatum gd =
      make_globalizable_datum(d, B, cross_table(*A, *B, emb), J, tau_ext, group_ext);
  return instance_from_datum(name, d, gd);
}

// Repairs sizes and degenerate choices after a mutation, so every recipe
// built by `random_recipe` or `simplifications` describes a valid instance.
inline Recipe normalize(Recipe r) {
  const GroupInfo& gi = groups()[r.group];
  if (r.orbits.empty()) r.orbits.push_back({gi.subgroups.size() - 1, 0});
  for (auto& o : r.orbits) o.subgroup = std::min(o.subgroup, gi.subgroups.size() - 1);
  r.character = std::min(r.character, gi.characters.size() - 1);
  const std::size_t nc = orbit_ring(r).field.size();
  r.keep.resize(nc, true);
  if (std::none_of(r.keep.begin(), r.keep.end(), [](bool b) { return b; })) r.keep[0] = true;
  r.twist.resize(r.objects, false);
  r.twist[0] = false;
  const std::size_t ns = static_cast<std::size_t>(std::count(r.keep.begin(), r.keep.end(), true));
  r.narrow_mask.resize(ns, true);
  const std::size_t nn = static_cast<std::size_t>(std::count(r.narrow_mask.begin(), r.narrow_mask.end(), true));
  if (r.objects < 2 || nn == 0 || nn == ns) r.narrow = false;
  if (!r.narrow) r.narrow_mask.assign(ns, true);
  r.action_mask.resize(nc * r.objects, true);
  if (!r.from_action) r.action_mask.assign(nc * r.objects, true);
  if (r.from_action || r.narrow) r.globalize = false;
  return r;
}

inline bool fits(const Recipe& r) {
  const GroupInfo& gi = groups()[r.group];
  if (gi.group->size() * r.objects * r.objects > 12) return false;
  return power(ring_size(orbit_ring(r)), r.objects) <= 256;
}

inline Recipe random_recipe(std::mt19937_64& rng) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
  Recipe r;
  r.group = pick(groups().size());
  const std::size_t order = groups()[r.group].group->size();
  std::vector<std::size_t> ms;
  for (std::size_t m = 1; order * m * m <= 12; ++m) ms.push_back(m);
  r.objects = ms[pick(ms.size())];
  const GroupInfo& gi = groups()[r.group];
  const std::size_t norbits = 1 + pick(3);
  for (std::size_t k = 0; k < norbits; ++k) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      Recipe trial = r;
      trial.orbits.push_back({pick(gi.subgroups.size()), pick(field_kinds().size())});
      if (fits(trial)) {
        r = trial;
        break;
      }
    }
  }
  if (r.orbits.empty()) r.orbits.push_back({gi.subgroups.size() - 1, 0});
  const std::size_t nc = orbit_ring(r).field.size();
  r.keep.resize(nc);
  for (std::size_t c = 0; c < nc; ++c) r.keep[c] = coin(0.7);
  r.character = pick(gi.characters.size());
  r.twist.resize(r.objects);
  for (std::size_t i = 1; i < r.objects; ++i) r.twist[i] = coin(0.5);
  r.from_action = coin(0.25);
  r.action_mask.resize(nc * r.objects);
  for (std::size_t c = 0; c < r.action_mask.size(); ++c) r.action_mask[c] = coin(0.6);
  r.narrow = !r.from_action && coin(0.2);
  r.narrow_mask.resize(nc);
  for (std::size_t c = 0; c < nc; ++c) r.narrow_mask[c] = coin(0.5);
  r.globalize = coin(0.5);
  return normalize(r);
}

// One-step simplifications, simplest first.
inline std::vector<Recipe> simplifications(const Recipe& r) {
  std::vector<Recipe> out;
  auto push = [&](Recipe c) {
    c = normalize(std::move(c));
    if (fits(c)) out.push_back(std::move(c));
  };
  if (r.group != 0) {
    Recipe c = r;
    c.group = 0;
    for (auto& o : c.orbits) o.subgroup = 0;
    c.character = 0;
    c.keep.clear();
    push(c);
  }
  if (r.objects > 1) {
    Recipe c = r;
    c.objects -= 1;
    push(c);
  }
  for (std::size_t k = 0; r.orbits.size() > 1 && k < r.orbits.size(); ++k) {
    Recipe c = r;
    c.orbits.erase(c.orbits.begin() + static_cast<std::ptrdiff_t>(k));
    c.keep.clear();
    push(c);
  }
  for (std::size_t k = 0; k < r.orbits.size(); ++k) {
    if (r.orbits[k].field != 0) {
      Recipe c = r;
      c.orbits[k].field = 0;
      push(c);
    }
    const std::size_t whole = groups()[r.group].subgroups.size() - 1;
    if (r.orbits[k].subgroup != whole) {
      Recipe c = r;
      c.orbits[k].subgroup = whole;
      c.keep.clear();
      push(c);
    }
  }
  auto toggle = [&](auto member, bool value) {
    if (r.*member != value) {
      Recipe c = r;
      c.*member = value;
      push(c);
    }
  };
  toggle(&Recipe::from_action, false);
  toggle(&Recipe::narrow, false);
  toggle(&Recipe::globalize, false);
  if (r.character != 0) {
    Recipe c = r;
    c.character = 0;
    push(c);
  }
  for (std::size_t i = 0; i < r.twist.size(); ++i)
    if (r.twist[i]) {
      Recipe c = r;
      c.twist[i] = false;
      push(c);
    }
  for (std::size_t i = 0; i < r.keep.size(); ++i)
    if (!r.keep[i]) {
      Recipe c = r;
      c.keep[i] = true;
      push(c);
    }
  for (std::size_t i = 0; i < r.action_mask.size(); ++i)
    if (!r.action_mask[i]) {
      Recipe c = r;
      c.action_mask[i] = true;
      push(c);
    }
  return out;
}

// Greedy shrinking: take the first simplification that still fails.
inline Recipe shrink(Recipe r, const std::function<bool(const Recipe&)>& fails) {
  for (bool progress = true; progress;) {
    progress = false;
    for (const Recipe& c : simplifications(r))
      if (fails(c)) {
        r = c;
        progress = true;
        break;
      }
  }
  return r;
}

inline Caps fuzz_caps() {
  Caps c = default_caps();
  c.tensor_generators = std::max<std::size_t>(c.tensor_generators, 16384);
  return c;
}

struct FuzzFailure {
  std::size_t index = 0;
  Recipe original, minimal;
  std::string check, reason;
};

// The first failing check of a recipe, or nothing when it passes.
inline std::optional<std::pair<std::string, std::string>> first_failure(const Recipe& r,
                                                                        const Caps& caps) {
  try {
    Instance inst = build(r, "fuzz", caps);
    if (!is_connected(*inst.groupoid) || inst.groupoid->size() > 12 || inst.ring->size() > 256)
      return std::pair<std::string, std::string>{"generator", "instance outside the fuzz bounds"};
    VerifyOptions opt;
    opt.caps = caps;
    VerificationReport rep = verify_instance(inst, opt);
    for (const auto& e : rep.entries)
      if (e.outcome.status == Status::Fail)
        return std::pair<std::string, std::string>{e.id, e.outcome.reason + " " + e.outcome.witness};
  } catch (const std::exception& e) {
    return std::pair<std::string, std::string>{"build", e.what()};
  }
  return std::nullopt;
}

struct FuzzSummary {
  std::size_t instances = 0, standing = 0, globalized = 0, from_action = 0, checks_passed = 0;
  std::vector<FuzzFailure> failures;
};

inline FuzzSummary run_fuzz(std::size_t count, std::uint64_t seed, const Caps& caps = fuzz_caps()) {
  FuzzSummary sum;
  for (std::size_t k = 0; k < count; ++k) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + k);
    Recipe r = random_recipe(rng);
    ++sum.instances;
    sum.globalized += r.globalize;
    sum.from_action += r.from_action;
    auto fail = first_failure(r, caps);
    if (!fail) {
      Instance inst = build(r, "fuzz", caps);
      VerifyOptions opt;
      opt.caps = caps;
      auto rep = verify_instance(inst, opt);
      for (const auto& e : rep.entries) sum.checks_passed += e.outcome.status == Status::Pass;
      if (const Entry* s = rep.find("frobenius"); s && s->outcome.status == Status::Pass) ++sum.standing;
      continue;
    }
    const std::string check = fail->first;
    Recipe minimal = shrink(r, [&](const Recipe& c) {
      auto f = first_failure(c, caps);
      return f && f->first == check;
    });
    sum.failures.push_back({k, r, minimal, check, first_failure(minimal, caps)->second});
  }
  return sum;
}

}  // namespace galg::fuzz
