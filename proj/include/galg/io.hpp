#pragma once

// JSON descriptions of groupoids, rings, ideals, maps, actions, data,
// globalizable data and skew-ring elements. Elements and morphisms are
// always addressed by name. A bundle field holding a string is a path,
// resolved against the bundle's directory.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "galg/globalization.hpp"
#include "galg/skewring.hpp"

namespace galg::io {

using nlohmann::json;

// Unreadable, empty or syntactically invalid input. Distinct from Error,
// which reports well-formed input that fails validation.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw IoError(path.string() + " is empty");
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::BadDescription, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadDescription, std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace detail

// ---- groupoids

inline GroupoidDescription groupoid_description(const json& j) {
  GroupoidDescription d;
  d.morphisms = detail::get<std::vector<std::string>>(j, "morphisms");
  d.objects = detail::get<std::vector<std::string>>(j, "objects");
  d.src = detail::get<std::map<std::string, std::string>>(j, "src");
  d.tgt = detail::get<std::map<std::string, std::string>>(j, "tgt");
  d.inv = detail::get<std::map<std::string, std::string>>(j, "inv");
  for (const auto& row : detail::get<std::vector<std::vector<std::string>>>(j, "compose")) {
    if (row.size() != 3)
      throw Error(ErrorKind::BadDescription, "compose rows are [g, h, gh]");
    d.compose.push_back({row[0], row[1], row[2]});
  }
  return d;
}

inline json to_json(const GroupoidDescription& d) {
  json c = json::array();
  for (const auto& r : d.compose) c.push_back({r[0], r[1], r[2]});
  return {{"morphisms", d.morphisms}, {"objects", d.objects}, {"src", d.src},
          {"tgt", d.tgt},             {"inv", d.inv},         {"compose", c}};
}

inline GroupoidPtr read_groupoid(const json& j, const Caps& caps = default_caps()) {
  return validate_groupoid(groupoid_description(j), caps);
}

// ---- rings

inline std::vector<RingComponent> ring_components(const json& j, const Caps& caps) {
  const std::string kind = detail::get<std::string>(j, "kind");
  if (kind == "zmod") return {RingComponent::zmod(detail::get<int>(j, "n"), caps)};
  if (kind == "gf")
    return {RingComponent::gf(detail::get<int>(j, "p"), detail::get<int>(j, "k"), caps)};
  if (kind == "table")
    return {RingComponent::table(detail::get<std::vector<std::string>>(j, "elements"),
                                 detail::get<std::vector<std::vector<std::size_t>>>(j, "add"),
                                 detail::get<std::vector<std::vector<std::size_t>>>(j, "mul"), caps)};
  if (kind == "product") {
    std::vector<RingComponent> out;
    for (const json& f : detail::field(j, "factors")) {
      auto part = ring_components(f, caps);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw Error(ErrorKind::BadDescription, "unknown ring kind \"" + kind + "\"");
}

inline RingPtr read_ring(const json& j, const Caps& caps = default_caps()) {
  return FiniteRing::make(ring_components(j, caps), caps);
}

inline json to_json(const RingComponent& c) {
  switch (c.kind()) {
    case RingComponent::Kind::zmod: return {{"kind", "zmod"}, {"n", c.size()}};
    case RingComponent::Kind::gf: return {{"kind", "gf"}, {"p", c.prime()}, {"k", c.degree()}};
    case RingComponent::Kind::table: break;
  }
  std::vector<std::vector<std::size_t>> add(c.size(), std::vector<std::size_t>(c.size()));
  auto mul = add;
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) {
      add[a][b] = c.add(static_cast<RingComponent::Index>(a), static_cast<RingComponent::Index>(b));
      mul[a][b] = c.mul(static_cast<RingComponent::Index>(a), static_cast<RingComponent::Index>(b));
    }
  return {{"kind", "table"}, {"elements", c.names()}, {"add", add}, {"mul", mul}};
}

inline json to_json(const FiniteRing& A) {
  if (A.component_count() == 1) return to_json(A.component(0));
  json f = json::array();
  for (const auto& c : A.components()) f.push_back(to_json(c));
  return {{"kind", "product"}, {"factors", f}};
}

// ---- ideals and maps

// {"idempotent": e} for A e, {"elements": [...]} for an explicit list, or
// {"generators": [...]} for the ideal they generate.
inline Ideal read_ideal(const RingPtr& A, const json& j) {
  if (j.contains("idempotent"))
    return unital_ideal(A, A->parse(detail::get<std::string>(j, "idempotent")));
  auto names = [&](const char* key) {
    std::vector<Elem> v;
    for (const auto& n : detail::get<std::vector<std::string>>(j, key)) v.push_back(A->parse(n));
    return v;
  };
  if (j.contains("elements")) return Ideal::from_elements(A, names("elements"));
  if (j.contains("generators")) return ideal_closure(A, names("generators"));
  throw Error(ErrorKind::BadDescription, "an ideal needs idempotent, elements or generators");
}

inline json to_json(const Ideal& I) {
  const FiniteRing& A = *I.ring();
  if (auto e = I.identity(); e && unital_ideal(I.ring(), *e) == I)
    return {{"idempotent", A.name(*e)}};
  std::vector<std::string> v;
  for (Elem a : I.elements()) v.push_back(A.name(a));
  return {{"elements", v}};
}

// A table {"a": "f(a)", ...} between rings A and B, as a raw dense table.
inline std::vector<Elem> read_table(const RingPtr& A, const RingPtr& B, const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::BadDescription, "a map table is an object");
  std::vector<Elem> t(A->size(), kNone);
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw Error(ErrorKind::BadDescription, "map values are element names", k);
    t[A->parse(k)] = B->parse(v.get<std::string>());
  }
  return t;
}

inline json table_to_json(const RingMap& f) {
  const FiniteRing& A = *f.domain().ring();
  const FiniteRing& B = *f.codomain().ring();
  json j = json::object();
  for (Elem a : f.domain().elements()) j[A.name(a)] = B.name(f(a));
  return j;
}

// ---- transversals, actions and data

inline Transversal read_transversal(const FiniteGroupoid& G, const json& j) {
  const Mor base = G.object_index(detail::get<std::string>(j, "base"));
  std::map<Mor, Mor> picks;
  if (j.contains("pick"))
    for (const auto& [y, g] : detail::get<std::map<std::string, std::string>>(j, "pick"))
      picks[G.object_index(y)] = G.index(g);
  return make_transversal(G, base, picks);
}

inline json to_json(const FiniteGroupoid& G, const Transversal& t) {
  json pick = json::object();
  for (std::size_t i = 0; i < t.pick.size(); ++i)
    pick[G.name(G.objects()[i])] = G.name(t.pick[i]);
  return {{"base", G.name(t.base)}, {"pick", pick}};
}

// Per-morphism ideals and tables keyed by morphism name.
inline PartialGroupoidAction read_action(const GroupoidPtr& G, const RingPtr& A, const json& j) {
  const json& ideals = detail::field(j, "ideals");
  const json& maps = detail::field(j, "maps");
  std::vector<Ideal> I(G->size());
  std::vector<std::vector<Elem>> T(G->size());
  for (Mor g = 0; g < G->size(); ++g) {
    const std::string& n = G->name(g);
    if (!ideals.contains(n) || !maps.contains(n))
      throw Error(ErrorKind::BadDescription, "action entry missing", n);
    I[g] = read_ideal(A, ideals.at(n));
    T[g] = read_table(A, A, maps.at(n));
  }
  return validate_partial_action(G, A, std::move(I), T);
}

inline json to_json(const PartialGroupoidAction& a) {
  const FiniteGroupoid& G = *a.groupoid();
  json ideals = json::object(), maps = json::object();
  for (Mor g = 0; g < G.size(); ++g) {
    ideals[G.name(g)] = to_json(a.ideal(g));
    maps[G.name(g)] = table_to_json(a.map(g));
  }
  return {{"ideals", ideals}, {"maps", maps}};
}

inline Datum read_datum(const GroupoidPtr& G, const RingPtr& A, const Transversal& tau,
                        const json& j) {
  DatumParts p;
  p.groupoid = G;
  p.ring = A;
  p.tau = tau;
  auto per_object = [&](const char* key, auto&& read) {
    const json& part = detail::field(j, key);
    using T = decltype(read(part));
    std::vector<T> out;
    for (Mor y : G->objects()) {
      if (!part.contains(G->name(y)))
        throw Error(ErrorKind::BadDescription, std::string(key) + " entry missing", G->name(y));
      out.push_back(read(part.at(G->name(y))));
    }
    return out;
  };
  auto ideal = [&](const json& v) { return read_ideal(A, v); };
  auto table = [&](const json& v) { return read_table(A, A, v); };
  p.objects = per_object("objects", ideal);
  p.tau_domain = per_object("tau_domain", ideal);
  p.tau_range = per_object("tau_range", ideal);
  p.tau_maps = per_object("tau_maps", table);
  const json& group = detail::field(j, "group");
  IsotropyGroup iso = isotropy_group(*G, tau.base);
  for (Mor h : iso.parent) {
    const std::string& n = G->name(h);
    if (!detail::field(group, "ideals").contains(n) || !detail::field(group, "maps").contains(n))
      throw Error(ErrorKind::BadDescription, "group entry missing", n);
    p.group_ideals.push_back(read_ideal(A, group.at("ideals").at(n)));
    p.group_maps.push_back(read_table(A, A, group.at("maps").at(n)));
  }
  return validate_datum(p);
}

inline json to_json(const Datum& d) {
  const FiniteGroupoid& G = *d.groupoid;
  json objects = json::object(), dom = json::object(), ran = json::object(), maps = json::object();
  for (std::size_t i = 0; i < G.object_count(); ++i) {
    const std::string& y = G.name(G.objects()[i]);
    objects[y] = to_json(d.objects[i]);
    dom[y] = to_json(d.tau_domain[i]);
    ran[y] = to_json(d.tau_range[i]);
    maps[y] = table_to_json(d.tau_maps[i]);
  }
  json gi = json::object(), gm = json::object();
  for (Mor i = 0; i < d.iso.size(); ++i) {
    const std::string& h = G.name(d.iso.parent[i]);
    gi[h] = to_json(d.group.ideal(i));
    gm[h] = table_to_json(d.group.map(i));
  }
  return {{"objects", objects},
          {"tau_domain", dom},
          {"tau_range", ran},
          {"tau_maps", maps},
          {"group", {{"ideals", gi}, {"maps", gm}}}};
}

inline GlobalizableDatum read_globalizable_datum(const Datum& base, const json& j,
                                                 const Caps& caps = default_caps()) {
  const FiniteGroupoid& G = *base.groupoid;
  RingPtr B = read_ring(detail::field(j, "ambient"), caps);
  std::vector<Elem> embedding = read_table(base.ring, B, detail::field(j, "embedding"));
  std::vector<Ideal> J;
  std::vector<std::vector<Elem>> tau_ext, group_ext;
  for (Mor y : G.objects()) {
    J.push_back(read_ideal(B, detail::field(detail::field(j, "J"), G.name(y).c_str())));
    tau_ext.push_back(
        read_table(B, B, detail::field(detail::field(j, "tau_ext"), G.name(y).c_str())));
  }
  for (Mor h : base.iso.parent)
    group_ext.push_back(
        read_table(B, B, detail::field(detail::field(j, "group_ext"), G.name(h).c_str())));
  return make_globalizable_datum(base, B, embedding, J, tau_ext, group_ext);
}

inline json to_json(const GlobalizableDatum& gd) {
  const FiniteGroupoid& G = *gd.base.groupoid;
  json J = json::object(), te = json::object(), ge = json::object();
  for (std::size_t i = 0; i < G.object_count(); ++i) {
    J[G.name(G.objects()[i])] = to_json(gd.J[i]);
    te[G.name(G.objects()[i])] = table_to_json(gd.tau_ext[i]);
  }
  for (Mor i = 0; i < gd.base.iso.size(); ++i)
    ge[G.name(gd.base.iso.parent[i])] = table_to_json(gd.group_ext[i]);
  return {{"ambient", to_json(*gd.ambient)},
          {"embedding", table_to_json(gd.embedding)},
          {"J", J},
          {"tau_ext", te},
          {"group_ext", ge}};
}

// ---- skew-ring elements: {"terms": [{"g": name, "coeff": element}, ...]}

inline json to_json(const BaseSkewRing& S, const BaseSkewElement& r) {
  const FiniteRing& A = *S.coefficients().ring();
  json terms = json::array();
  for (Mor g = 0; g < S.groupoid().size(); ++g) {
    Elem c = S.coefficient(r, g);
    if (c != A.zero()) terms.push_back({{"g", S.groupoid().name(g)}, {"coeff", A.name(c)}});
  }
  return {{"terms", terms}};
}

inline BaseSkewElement read_skew_element(const BaseSkewRing& S, const json& j) {
  const FiniteRing& A = *S.coefficients().ring();
  auto r = S.zero();
  for (const json& t : detail::field(j, "terms")) {
    Mor g = S.groupoid().index(detail::get<std::string>(t, "g"));
    r = S.add(r, S.term(g, A.parse(detail::get<std::string>(t, "coeff"))));
  }
  return r;
}

// ---- bundles

// Options recorded with an instance.
struct BundleOptions {
  std::optional<std::size_t> cap;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
};

struct Bundle {
  std::string name;
  GroupoidPtr groupoid;
  RingPtr ring;
  std::optional<Transversal> tau;
  std::optional<PartialGroupoidAction> action;  // given directly, or lifted
  std::optional<Datum> datum;                   // given directly, or extracted
  std::optional<GlobalizableDatum> globalization;
  BundleOptions options;
};

namespace detail {

// A field that is either inline JSON or a path to a JSON file.
inline json resolve(const json& bundle, const char* key, const std::filesystem::path& dir) {
  const json& v = field(bundle, key);
  if (v.is_string()) return read_json_file(dir / v.get<std::string>());
  return v;
}

}  // namespace detail

// Reads and validates a bundle. An action bundle gets its datum extracted
// and a datum bundle gets its action lifted, both along the transversal.
inline Bundle read_bundle(const json& j, const std::filesystem::path& dir,
                          const Caps& caps = default_caps()) {
  Bundle b;
  b.name = j.value("name", std::string("unnamed"));
  if (j.contains("options")) {
    const json& o = j.at("options");
    if (o.contains("cap")) b.options.cap = o.at("cap").get<std::size_t>();
    if (o.contains("seed")) b.options.seed = o.at("seed").get<std::uint64_t>();
    if (o.contains("jobs")) b.options.jobs = o.at("jobs").get<std::size_t>();
  }
  b.groupoid = read_groupoid(detail::resolve(j, "groupoid", dir), caps);
  b.ring = read_ring(detail::resolve(j, "ring", dir), caps);
  if (j.contains("transversal"))
    b.tau = read_transversal(*b.groupoid, detail::resolve(j, "transversal", dir));
  else if (is_connected(*b.groupoid))
    b.tau = make_transversal(*b.groupoid, b.groupoid->objects().front());
  if (j.contains("action")) {
    b.action = read_action(b.groupoid, b.ring, detail::resolve(j, "action", dir));
    if (b.tau) b.datum = extract_datum(*b.action, *b.tau);
  } else if (j.contains("datum")) {
    if (!b.tau) throw Error(ErrorKind::NotConnected, "a datum needs a connected groupoid");
    b.datum = read_datum(b.groupoid, b.ring, *b.tau, detail::resolve(j, "datum", dir));
    b.action = lift_datum(*b.datum);
  }
  if (j.contains("globalization")) {
    if (!b.datum) throw Error(ErrorKind::BadDescription, "globalization needs a datum");
    b.globalization = read_globalizable_datum(*b.datum, detail::resolve(j, "globalization", dir), caps);
  }
  return b;
}

inline Bundle read_bundle_file(const std::filesystem::path& path, const Caps& caps = default_caps()) {
  return read_bundle(read_json_file(path), path.parent_path(), caps);
}

// Inline bundle JSON for a datum (and optionally its globalization).
inline json bundle_json(const std::string& name, const Datum& d,
                        const GlobalizableDatum* gd = nullptr) {
  json j = {{"name", name},
            {"groupoid", to_json(d.groupoid->description())},
            {"ring", to_json(*d.ring)},
            {"transversal", to_json(*d.groupoid, d.tau)},
            {"datum", to_json(d)}};
  if (gd) j["globalization"] = to_json(*gd);
  return j;
}

inline json bundle_json(const std::string& name, const PartialGroupoidAction& a,
                        const Transversal& tau) {
  return {{"name", name},
          {"groupoid", to_json(a.groupoid()->description())},
          {"ring", to_json(*a.ring())},
          {"transversal", to_json(*a.groupoid(), tau)},
          {"action", to_json(a)}};
}

}  // namespace galg::io
