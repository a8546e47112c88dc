#pragma once

// The theorem registry: every structural claim of the theory as a named
// check over one instance. Checks that need the running hypotheses are
// skipped with the reason when an instance does not satisfy them.

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "galg/globalization.hpp"
#include "galg/morita.hpp"

namespace galg {

struct Instance {
  std::string name;
  GroupoidPtr groupoid;
  RingPtr ring;
  std::optional<Transversal> tau;
  std::optional<PartialGroupoidAction> action;
  std::optional<Datum> datum;
  std::optional<GlobalizableDatum> globalization;
};

inline Instance instance_from_datum(std::string name, const Datum& d,
                                    std::optional<GlobalizableDatum> gd = std::nullopt) {
  return Instance{std::move(name), d.groupoid, d.ring, d.tau, lift_datum(d), d, std::move(gd)};
}

inline Instance instance_from_action(std::string name, const PartialGroupoidAction& a,
                                     std::optional<Transversal> tau) {
  std::optional<Datum> d;
  if (tau) d = extract_datum(a, *tau);
  return Instance{std::move(name), a.groupoid(), a.ring(), tau, a, std::move(d), std::nullopt};
}

enum class Status { Pass, Fail, Skipped };

constexpr std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "unknown";
}

struct Outcome {
  Status status = Status::Pass;
  std::string reason;   // skip reason or failing part
  std::string witness;
  nlohmann::json details = nlohmann::json::object();

  static Outcome pass(nlohmann::json d = nlohmann::json::object()) {
    return {Status::Pass, {}, {}, std::move(d)};
  }
  static Outcome fail(std::string reason, std::string witness = {}) {
    return {Status::Fail, std::move(reason), std::move(witness), nlohmann::json::object()};
  }
  static Outcome skip(std::string reason) { return {Status::Skipped, std::move(reason), {}, {}}; }
  static Outcome from(const CheckResult& c) { return c.ok ? pass() : fail(c.tag, c.witness); }
};

// Shared, read-only facts about an instance, computed once before the
// checks run.
struct Context {
  const Instance& inst;
  Caps caps;
  std::optional<std::string> standing_reason;  // why the running hypotheses fail
  std::optional<StandingInstance> standing;
  bool tau_global = false;
  bool unital = false;

  Context(const Instance& i, const Caps& c) : inst(i), caps(c) {
    if (inst.action) unital = inst.action->is_unital();
    if (inst.action && inst.tau) tau_global = is_tau_global(*inst.action, *inst.tau);
    if (!inst.datum) {
      standing_reason = "NoDatum";
      return;
    }
    standing_reason = standing_violation(*inst.datum);
    if (!standing_reason) standing = standing_assumptions(*inst.datum);
  }
};

struct Theorem {
  std::string id;
  std::string summary;
  std::function<Outcome(const Context&)> run;
};

namespace checks {

// Source, target, inverse and composition identities, re-checked directly
// on the validated tables.
inline CheckResult groupoid_identities(const FiniteGroupoid& G) {
  for (Mor g = 0; g < G.size(); ++g) {
    const Mor s = G.src(g), t = G.tgt(g), gi = G.inv(g);
    if (G.compose(gi, g) != s || G.tgt(gi) != s || G.compose(g, gi) != t || G.inv(gi) != g)
      return CheckResult::fail("inverse", G.name(g));
    if (G.compose(t, g) != g || G.compose(g, s) != g) return CheckResult::fail("units", G.name(g));
    if (G.is_object(g) && (s != g || t != g || G.compose(g, g) != g))
      return CheckResult::fail("objects", G.name(g));
  }
  for (Mor g = 0; g < G.size(); ++g)
    for (Mor h = 0; h < G.size(); ++h) {
      if (G.src(g) != G.tgt(h)) continue;
      const Mor gh = G.compose(g, h);
      if (G.src(gh) != G.src(h) || G.tgt(gh) != G.tgt(g))
        return CheckResult::fail("source-target", G.name(g) + "," + G.name(h));
      for (Mor k = 0; k < G.size(); ++k)
        if (G.src(h) == G.tgt(k) && G.compose(gh, k) != G.compose(g, G.compose(h, k)))
          return CheckResult::fail("associativity", G.name(g) + "," + G.name(h) + "," + G.name(k));
    }
  return CheckResult::pass();
}

inline CheckResult component_partition(const FiniteGroupoid& G) {
  auto comps = connected_components(G);
  std::size_t total = 0, objects = 0;
  for (const auto& c : comps) {
    if (!is_connected(*c)) return CheckResult::fail("connected", c->name(c->objects().front()));
    total += c->size();
    objects += c->object_count();
    for (Mor g = 0; g < c->size(); ++g)
      if (!G.find(c->name(g))) return CheckResult::fail("foreign morphism", c->name(g));
  }
  if (total != G.size() || objects != G.object_count())
    return CheckResult::fail("partition", std::to_string(total) + " of " + std::to_string(G.size()));
  return CheckResult::pass();
}

inline CheckResult pi_epimorphism(const FiniteGroupoid& G, const Transversal& tau) {
  const Mor x = tau.base;
  for (Mor g = 0; g < G.size(); ++g) {
    Mor p = project_pi(G, tau, g);
    if (G.src(p) != x || G.tgt(p) != x) return CheckResult::fail("codomain", G.name(g));
    if (G.src(g) == x && G.tgt(g) == x && p != g) return CheckResult::fail("fixes G(x)", G.name(g));
  }
  for (Mor t : tau.pick)
    if (project_pi(G, tau, t) != x) return CheckResult::fail("kills transversal", G.name(t));
  for (Mor g = 0; g < G.size(); ++g)
    for (Mor h = 0; h < G.size(); ++h)
      if (G.src(g) == G.tgt(h) &&
          project_pi(G, tau, G.compose(g, h)) !=
              G.compose(project_pi(G, tau, g), project_pi(G, tau, h)))
        return CheckResult::fail("multiplicative", G.name(g) + "," + G.name(h));
  return CheckResult::pass();
}

// All transversals at `base`, in lexicographic order of choices, up to `limit`.
inline std::vector<Transversal> transversals_at(const FiniteGroupoid& G, Mor base,
                                                std::size_t limit) {
  std::vector<std::vector<Mor>> options;
  for (Mor y : G.objects()) options.push_back(y == base ? std::vector<Mor>{base} : G.hom(base, y));
  std::vector<Transversal> out;
  std::vector<std::size_t> idx(options.size(), 0);
  for (;;) {
    std::map<Mor, Mor> choice;
    for (std::size_t i = 0; i < options.size(); ++i)
      if (G.objects()[i] != base) choice[G.objects()[i]] = options[i][idx[i]];
    out.push_back(make_transversal(G, base, choice));
    if (out.size() >= limit) break;
    std::size_t p = 0;
    while (p < idx.size() && ++idx[p] == options[p].size()) idx[p++] = 0;
    if (p == idx.size()) break;
  }
  return out;
}

// (x, tau) -> (z, lambda) -> (x, tau) returns the datum with its group
// part conjugated by lambda_x tau_z, the identity when G(x) is abelian.
inline CheckResult rebase_round_trips(const Datum& d, std::size_t limit, std::size_t* count) {
  const FiniteGroupoid& G = *d.groupoid;
  std::size_t n = 0;
  for (Mor z : G.objects())
    for (const Transversal& lambda : transversals_at(G, z, limit)) {
      Datum there = rebase_datum(d, lambda);
      Datum back = rebase_datum(there, d.tau);
      Mor twist = rebase_round_trip_twist(G, d.tau, lambda);
      if (!datum_eq(back, conjugate_group_part(d, twist)))
        return CheckResult::fail("round trip", G.name(z) + " via " + G.name(lambda.at(G, d.tau.base)));
      ++n;
    }
  if (count) *count = n;
  return CheckResult::pass();
}

inline CheckResult alpha_star_global(const PartialGroupoidAction& alpha, const Transversal& tau) {
  AlphaStar star = alpha_star(alpha, tau);
  const FiniteGroupoid& P = *star.pair;
  const std::size_t k = star.objects;
  for (std::size_t y = 0; y < k; ++y)
    if (!star.action.map(star.pair_index(y, y)).is_identity())
      return CheckResult::fail("identity", P.name(star.pair_index(y, y)));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t y = 0; y < k; ++y)
      for (std::size_t z = 0; z < k; ++z) {
        const RingMap& yz = star.action.map(star.pair_index(y, z));
        const RingMap& ry = star.action.map(star.pair_index(r, y));
        if (!(compose(yz, ry) == star.action.map(star.pair_index(r, z))))
          return CheckResult::fail("composition", P.name(star.pair_index(y, z)) + "," +
                                                      P.name(star.pair_index(r, y)));
      }
  return CheckResult::pass();
}

// B_g = gamma~_{tau_t(g)}(I_{g_x}) = B_{t(g)} cap beta~_g(B_{s(g)}) inside the ambient ring.
inline CheckResult globalization_domains(const GlobalizableDatum& gd, const Globalization& glob) {
  const Datum& d = gd.base;
  PartialGroupoidAction beta = lift_datum(d);
  const FiniteGroupoid& G = *d.groupoid;
  const RingPtr& B = gd.ambient;
  for (Mor g = 0; g < G.size(); ++g) {
    const std::size_t tp = G.object_pos(G.tgt(g));
    std::vector<Elem> via_pi;
    for (Elem a : embed_elements(gd.embedding, d.group_ideal(project_pi(G, d.tau, g))))
      via_pi.push_back(gd.tau_ext[tp](a));
    std::vector<Elem> moved;
    for (Elem a : embed_elements(gd.embedding, beta.ideal(G.src(g))))
      moved.push_back(glob.global.apply(g, a));
    Ideal lhs(B, embed_elements(gd.embedding, beta.ideal(g)));
    Ideal rhs = intersect(Ideal(B, embed_elements(gd.embedding, beta.ideal(G.tgt(g)))),
                          Ideal(B, std::move(moved)));
    if (!(lhs == Ideal(B, std::move(via_pi))) || !(lhs == rhs))
      return CheckResult::fail("domain", G.name(g));
  }
  return CheckResult::pass();
}

}  // namespace checks

inline Outcome needs_standing(const Context& c) {
  return Outcome::skip(c.standing_reason ? *c.standing_reason : "StandingAssumptionsFail");
}

// The registry, in a fixed order. Ids are stable across releases.
inline const std::vector<Theorem>& registry() {
  static const std::vector<Theorem> reg = {
      {"groupoid-axioms", "source, target, identities, inverses and associativity",
       [](const Context& c) {
         validate_groupoid(c.inst.groupoid->description(), c.caps);
         return Outcome::from(checks::groupoid_identities(*c.inst.groupoid));
       }},
      {"connected-components", "components partition the groupoid into connected pieces",
       [](const Context& c) { return Outcome::from(checks::component_partition(*c.inst.groupoid)); }},
      {"pi-epimorphism", "g -> tau_t(g)^-1 g tau_s(g) is an epimorphism onto G(x)",
       [](const Context& c) {
         if (!c.inst.tau) return Outcome::skip("NotConnected");
         return Outcome::from(checks::pi_epimorphism(*c.inst.groupoid, *c.inst.tau));
       }},
      {"partial-action-axioms", "the action satisfies the identity and extension axioms",
       [](const Context& c) {
         if (!c.inst.action) return Outcome::skip("NoAction");
         const auto& a = *c.inst.action;
         validate_partial_action(a.groupoid(), a.ring(), a.ideals(), a.maps());
         return Outcome::pass({{"global", a.is_global()}, {"unital", a.is_unital()}});
       }},
      {"transversal-independence", "data move between bases and transversals and back",
       [](const Context& c) {
         if (!c.inst.datum) return Outcome::skip("NoDatum");
         std::size_t n = 0;
         auto r = checks::rebase_round_trips(*c.inst.datum, 16, &n);
         if (!r.ok) return Outcome::from(r);
         return Outcome::pass({{"round_trips", n}});
       }},
      {"lift-is-action", "a lifted datum is a partial action and extracts back to the datum",
       [](const Context& c) {
         if (!c.inst.datum) return Outcome::skip("NoDatum");
         PartialGroupoidAction beta = lift_datum(*c.inst.datum);
         if (!datum_eq(extract_datum(beta, c.inst.datum->tau), *c.inst.datum))
           return Outcome::fail("extract after lift");
         return Outcome::pass();
       }},
      {"lift-extract-order", "lift(extract(alpha)) <= alpha, with equality on the criterion",
       [](const Context& c) {
         if (!c.inst.action || !c.inst.tau) return Outcome::skip("NoAction");
         const auto& a = *c.inst.action;
         PartialGroupoidAction back = lift_datum(extract_datum(a, *c.inst.tau));
         if (!action_leq(back, a)) return Outcome::fail("order");
         bool eq = action_eq(back, a);
         if (eq != lift_extract_criterion(a, *c.inst.tau)) return Outcome::fail("criterion");
         if (c.tau_global && !eq) return Outcome::fail("tau-global actions are lifts");
         return Outcome::pass({{"equal", eq}});
       }},
      {"tau-global-lift", "a lift is tau(x)-global exactly when the datum's ideals match",
       [](const Context& c) {
         if (!c.inst.datum) return Outcome::skip("NoDatum");
         const Datum& d = *c.inst.datum;
         bool expect = true;
         for (std::size_t i = 0; i < d.objects.size(); ++i)
           expect = expect && d.tau_domain[i] == d.base_ideal() && d.tau_range[i] == d.objects[i];
         if (is_tau_global(lift_datum(d), d.tau) != expect) return Outcome::fail("criterion");
         return Outcome::pass({{"tau_global", expect}});
       }},
      {"globalizable-criterion", "globalizable exactly when every ideal is unital",
       [](const Context& c) {
         nlohmann::json det;
         if (c.inst.datum) {
           auto r = lifted_globalizable_check(*c.inst.datum);
           det["lifted"] = r.value;
           det["cross_checked"] = r.cross_checked;
         }
         if (c.inst.action) {
           try {
             auto r = is_globalizable(*c.inst.action);
             det["globalizable"] = r.globalizable;
             if (r.failing) det["witness"] = c.inst.groupoid->name(*r.failing);
           } catch (const Error& e) {
             if (e.kind() != ErrorKind::ObjectIdealNotUnital) throw;
             det["globalizable"] = "ObjectIdealNotUnital";
           }
         }
         if (det.is_null()) return Outcome::skip("NoAction");
         return Outcome::pass(det);
       }},
      {"globalization-construction", "the datum's globalization yields a global action globalizing the lift",
       [](const Context& c) {
         if (!c.inst.globalization) return Outcome::skip("NoGlobalization");
         const auto& gd = *c.inst.globalization;
         auto v = validate_globalizable_datum(gd);
         if (!v.ok) return Outcome::fail("datum (" + v.tag + ")", v.witness);
         Globalization glob = build_global_action(gd);
         auto rep = verify_globalization(lift_datum(gd.base), glob);
         if (!rep.ok) return Outcome::fail("axiom (" + rep.axiom + ")", rep.witness);
         auto dom = checks::globalization_domains(gd, glob);
         if (!dom.ok) return Outcome::from(dom);
         return Outcome::pass();
       }},
      {"skew-ring-associative", "the skew groupoid ring is associative with identity",
       [](const Context& c) {
         if (!c.inst.action) return Outcome::skip("NoAction");
         if (!c.unital) return Outcome::skip("NotUnitalAction");
         auto rep = verify_skew_ring(skew_ring(*c.inst.action), c.caps);
         if (!rep.ok) return Outcome::fail(rep.failing, rep.witness);
         return Outcome::pass({{"checked", rep.checked}, {"sampled", rep.sampled}});
       }},
      {"alpha-star-global", "the pair-groupoid action built along the transversal is global",
       [](const Context& c) {
         if (!c.inst.action || !c.inst.tau) return Outcome::skip("NoAction");
         if (!c.tau_global) return Outcome::skip("NotTauGlobal");
         return Outcome::from(checks::alpha_star_global(*c.inst.action, *c.inst.tau));
       }},
      {"theta-partial-action", "theta is a unital partial action of G(x) on the pair-groupoid skew ring",
       [](const Context& c) {
         if (!c.inst.action || !c.inst.tau) return Outcome::skip("NoAction");
         if (!c.tau_global) return Outcome::skip("NotTauGlobal");
         if (!c.unital) return Outcome::skip("NotUnitalAction");
         auto v = verify_theta(theta_data(*c.inst.action, *c.inst.tau), *c.inst.action);
         if (!v.ok) return Outcome::fail(v.step, v.witness);
         return Outcome::pass();
       }},
      {"skew-iterated-isomorphism", "A *G is isomorphic to (A * G0^2) * G(x)",
       [](const Context& c) {
         if (!c.inst.action || !c.inst.tau) return Outcome::skip("NoAction");
         if (!c.tau_global) return Outcome::skip("NotTauGlobal");
         if (!c.unital) return Outcome::skip("NotUnitalAction");
         auto rep = phi_iso(*c.inst.action, *c.inst.tau);
         if (!rep.ok()) return Outcome::fail(rep.failing, rep.witness);
         return Outcome::pass({{"generators", rep.generator_count}, {"pairs", rep.pairs_checked}});
       }},
      {"invariants-via-datum", "invariants are the translates of group-level invariants",
       [](const Context& c) {
         if (!c.standing) return needs_standing(c);
         return Outcome::from(check_invariants_prop(*c.standing));
       }},
      {"trace-transport", "t(gamma_z(b)) = sum_y gamma_y(t_x(b))",
       [](const Context& c) {
         if (!c.standing) return needs_standing(c);
         return Outcome::from(check_trace_transport(*c.standing));
       }},
      {"trace-sums", "the transport identity on sums across objects",
       [](const Context& c) {
         if (!c.standing) return needs_standing(c);
         return Outcome::from(check_trace_corollary(*c.standing));
       }},
      {"trace-surjectivity", "the trace is onto the invariants iff the group-level trace is",
       [](const Context& c) {
         if (!c.standing) return needs_standing(c);
         auto t = trace_surjectivity(*c.standing);
         auto inv = invariant_subring(c.standing->groupoid_level);
         return Outcome::pass({{"invariants_rank", inv.presentation.invariant_factors().size()},
                               {"invariants_order", inv.elements.size()},
                               {"trace_surjective", t.full},
                               {"group_trace_surjective", t.group_part}});
       }},
      {"morita-skew-context", "the group-level skew ring is a full corner of the groupoid skew ring",
       [](const Context& c) {
         if (!c.standing) return needs_standing(c);
         auto r = skew_skew_context(*c.standing);
         if (!r.ok) return Outcome::fail(r.part, r.witness);
         return Outcome::pass();
       }},
      {"gamma-surjectivity", "pairing surjectivity agrees between groupoid and group level",
       [](const Context& c) {
         if (!c.standing) return needs_standing(c);
         auto g = gamma_surjectivity(*c.standing);
         if (!g.balanced) return Outcome::fail("balanced");
         return Outcome::pass({{"gamma", g.gamma},
                               {"gamma_prime", g.gamma_prime},
                               {"group_gamma", g.group_gamma},
                               {"group_gamma_prime", g.group_gamma_prime}});
       }},
      {"strictness-equivalence", "Galois with onto trace, at either level, iff the contexts are strict",
       [](const Context& c) {
         if (!c.standing) return needs_standing(c);
         auto r = strictness_report(*c.standing, 2, c.caps);
         nlohmann::json det = {{"galois", r.galois},
                               {"trace_onto", r.trace_onto},
                               {"group_galois", r.group_galois},
                               {"group_trace_onto", r.group_trace_onto},
                               {"conditions", {r.condition[0], r.condition[1], r.condition[2], r.condition[3]}},
                               {"strict", r.strict},
                               {"fg_projective_assumed", r.fg_projective_assumed},
                               {"search_found", r.search_found},
                               {"search_complete", r.search_complete}};
         if (!r.search_found)
           det["search_note"] = "no generator-supported solution of rank <= r_max";
         return Outcome::pass(det);
       }},
      {"separability", "a trace-one central element exists at groupoid level iff at group level",
       [](const Context& c) {
         if (!c.standing) return needs_standing(c);
         auto r = separability_element(*c.standing);
         if (!r.witnesses_verified) return Outcome::fail("witness");
         if (!r.transported) return Outcome::fail("transport");
         nlohmann::json w = nullptr;
         if (r.groupoid_witness) w = c.inst.ring->name(*r.groupoid_witness);
         return Outcome::pass({{"separable", r.groupoid_witness.has_value()},
                               {"separability_witness", w},
                               {"semisimple_implied", r.groupoid_witness.has_value()}});
       }},
      {"frobenius", "sum_g 1_g d_g (x) 1_g^-1 d_g^-1 with the object counit is a Frobenius system",
       [](const Context& c) {
         if (!c.standing) return needs_standing(c);
         auto r = frobenius_witness(c.standing->groupoid_level, c.caps);
         if (!r.central) return Outcome::fail("central", r.witness);
         if (!r.counit_identity) return Outcome::fail("counit identity");
         if (!r.counit_bimodule) return Outcome::fail("counit bimodule");
         return Outcome::pass({{"tensor_generators", r.tensor_generators},
                               {"tensor_invariant_factors", r.tensor_invariant_factors.size()}});
       }},
  };
  return reg;
}

inline std::vector<std::string> registry_ids() {
  std::vector<std::string> ids;
  for (const auto& t : registry()) ids.push_back(t.id);
  return ids;
}

struct Entry {
  std::string id;
  Outcome outcome;
  double millis = 0;
};

struct VerificationReport {
  std::string instance;
  std::vector<Entry> entries;
  bool inconsistent = false;   // some check raised InconsistentEquivalence
  bool any_fail() const {
    for (const auto& e : entries)
      if (e.outcome.status == Status::Fail) return true;
    return false;
  }
  const Entry* find(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id) return &e;
    return nullptr;
  }
};

struct VerifyOptions {
  std::vector<std::string> theorems;  // empty: all; others report skipped
  std::size_t jobs = 1;
  Caps caps = default_caps();
};

inline Outcome run_guarded(const Theorem& t, const Context& c, bool& inconsistent) {
  try {
    return t.run(c);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InconsistentEquivalence) inconsistent = true;
    return Outcome::fail(std::string(to_string(e.kind())) + ": " + e.message(), e.witness());
  }
}

// Runs the registry on one instance; independent checks may run on
// `jobs` threads, and the report keeps registry order.
inline VerificationReport verify_instance(const Instance& inst, const VerifyOptions& opt = {}) {
  VerificationReport rep;
  rep.instance = inst.name;
  Context ctx(inst, opt.caps);
  const auto& reg = registry();
  rep.entries.resize(reg.size());
  std::vector<char> flags(reg.size(), 0);
  auto selected = [&](const std::string& id) {
    if (opt.theorems.empty()) return true;
    return std::find(opt.theorems.begin(), opt.theorems.end(), id) != opt.theorems.end();
  };
  auto work = [&](std::size_t i) {
    rep.entries[i].id = reg[i].id;
    if (!selected(reg[i].id)) {
      rep.entries[i].outcome = Outcome::skip("NotSelected");
      return;
    }
    auto t0 = std::chrono::steady_clock::now();
    bool inc = false;
    rep.entries[i].outcome = run_guarded(reg[i], ctx, inc);
    flags[i] = inc;
    rep.entries[i].millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, reg.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < reg.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < reg.size();) work(i);
      });
    for (auto& t : pool) t.join();
  }
  for (char f : flags) rep.inconsistent = rep.inconsistent || f;
  return rep;
}

// Report JSON. Timing is omitted unless asked for, so reports are
// reproducible byte for byte.
inline nlohmann::json to_json(const VerificationReport& r, bool timing = false) {
  nlohmann::json entries = nlohmann::json::array();
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const auto& e : r.entries) {
    nlohmann::json j = {{"id", e.id}, {"status", to_string(e.outcome.status)}};
    if (!e.outcome.reason.empty()) j["reason"] = e.outcome.reason;
    if (!e.outcome.witness.empty()) j["witness"] = e.outcome.witness;
    if (!e.outcome.details.empty()) j["details"] = e.outcome.details;
    if (timing) j["millis"] = e.millis;
    entries.push_back(std::move(j));
    (e.outcome.status == Status::Pass ? pass : e.outcome.status == Status::Fail ? fail : skipped)++;
  }
  nlohmann::json out = {{"instance", r.instance},
                        {"entries", entries},
                        {"summary", {{"pass", pass}, {"fail", fail}, {"skipped", skipped}}}};
  // the combined Morita/Galois summary, when those checks ran
  const Entry* s = r.find("strictness-equivalence");
  const Entry* sep = r.find("separability");
  const Entry* fr = r.find("frobenius");
  if (s && sep && fr && s->outcome.status == Status::Pass && sep->outcome.status == Status::Pass) {
    out["morita"] = {{"galois", s->outcome.details["galois"]},
                     {"trace_onto", s->outcome.details["trace_onto"]},
                     {"strict", s->outcome.details["strict"]},
                     {"separable", sep->outcome.details["separable"]},
                     {"separability_witness", sep->outcome.details["separability_witness"]},
                     {"frobenius_verified", fr->outcome.status == Status::Pass},
                     {"equivalences_consistent", !r.inconsistent}};
  }
  return out;
}

}  // namespace galg
