// galg: validate, lift, globalize and verify instance bundles.
//
// Exit codes: 0 success, 1 unreadable input, 2 validation or verification
// failure, 3 internal inconsistency between two routes of a check.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "galg/galg.hpp"

namespace {

using galg::io::json;
namespace fs = std::filesystem;

enum Exit : int { kOk = 0, kIo = 1, kInvalid = 2, kInconsistent = 3 };

void emit(const json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << '\n';
  else
    galg::io::write_json_file(out, j);
}

galg::Caps caps_from(const galg::io::BundleOptions& o, std::optional<std::size_t> cap,
                     std::optional<std::uint64_t> seed) {
  galg::Caps c = galg::default_caps();
  if (auto v = cap ? cap : o.cap) c.apply_override(*v);
  if (auto v = seed ? seed : o.seed) c.seed = *v;
  return c;
}

json validation_report(const galg::io::Bundle& b) {
  const auto& G = *b.groupoid;
  json r = {{"instance", b.name},
            {"groupoid",
             {{"morphisms", G.size()},
              {"objects", G.object_count()},
              {"connected", galg::is_connected(G)}}},
            {"ring", {{"size", b.ring->size()}, {"components", b.ring->component_count()}}}};
  if (b.action)
    r["action"] = {{"valid", true},
                   {"global", b.action->is_global()},
                   {"unital", b.action->is_unital()},
                   {"tau_global", b.tau && galg::is_tau_global(*b.action, *b.tau)}};
  if (b.datum) {
    auto why = galg::standing_violation(*b.datum);
    r["datum"] = {{"valid", true}, {"standing", why ? *why : std::string("ok")}};
  }
  if (b.globalization) {
    auto v = galg::validate_globalizable_datum(*b.globalization);
    r["globalization"] = {{"valid", v.ok}};
    if (!v.ok) r["globalization"]["failing"] = v.tag + ": " + v.witness;
  }
  return r;
}

int cmd_validate(const std::string& path, const std::string& out) {
  auto b = galg::io::read_bundle_file(path);
  json r = validation_report(b);
  emit(r, out);
  if (b.globalization && !r["globalization"]["valid"].get<bool>()) return kInvalid;
  return kOk;
}

int cmd_lift(const std::string& path, const std::string& tau_path, const std::string& out) {
  json j = galg::io::read_json_file(path);
  if (!tau_path.empty()) j["transversal"] = galg::io::read_json_file(tau_path);
  auto b = galg::io::read_bundle(j, fs::path(path).parent_path());
  if (!b.datum) throw galg::Error(galg::ErrorKind::BadDescription, "lift needs a datum");
  const galg::Datum& d = *b.datum;
  galg::PartialGroupoidAction beta = galg::lift_datum(d);
  galg::PartialGroupoidAction back = galg::lift_datum(galg::extract_datum(beta, d.tau));
  json r = {{"instance", b.name},
            {"action", galg::io::to_json(beta)},
            {"report",
             {{"extract_round_trip", galg::datum_eq(galg::extract_datum(beta, d.tau), d)},
              {"lift_extract_equal", galg::action_eq(back, beta)},
              {"tau_global", galg::is_tau_global(beta, d.tau)},
              {"global", beta.is_global()},
              {"unital", beta.is_unital()}}}};
  emit(r, out);
  return r["report"]["extract_round_trip"].get<bool>() ? kOk : kInvalid;
}

int cmd_globalize(const std::string& path, const std::string& out) {
  auto b = galg::io::read_bundle_file(path);
  if (!b.globalization)
    throw galg::Error(galg::ErrorKind::BadDescription, "globalize needs a globalization field");
  auto v = galg::validate_globalizable_datum(*b.globalization);
  if (!v.ok)
    throw galg::Error::tagged(galg::ErrorKind::ConditionFails, v.tag,
                              "not a globalizable datum", v.witness);
  galg::Globalization glob = galg::build_global_action(*b.globalization);
  auto rep = galg::verify_globalization(*b.action, glob);
  json r = {{"instance", b.name},
            {"global_action", galg::io::to_json(glob.global)},
            {"axioms", {{"ok", rep.ok}}}};
  if (!rep.ok) r["axioms"]["failing"] = rep.axiom + ": " + rep.witness;
  emit(r, out);
  return rep.ok ? kOk : kInvalid;
}

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> ids;
  std::stringstream in(s);
  for (std::string id; std::getline(in, id, ',');)
    if (!id.empty()) ids.push_back(id);
  return ids;
}

struct VerifyArgs {
  std::string bundle, out, theorems;
  std::optional<std::size_t> cap, jobs;
  std::optional<std::uint64_t> seed;
  bool timing = false;
};

int cmd_verify(const VerifyArgs& a) {
  galg::Caps caps = caps_from({}, a.cap, a.seed);
  auto b = galg::io::read_bundle_file(a.bundle, caps);
  caps = caps_from(b.options, a.cap, a.seed);
  galg::VerifyOptions opt;
  opt.caps = caps;
  opt.jobs = a.jobs ? *a.jobs : b.options.jobs.value_or(1);
  opt.theorems = split_ids(a.theorems);
  const auto known = galg::registry_ids();
  for (const auto& id : opt.theorems)
    if (std::find(known.begin(), known.end(), id) == known.end())
      throw galg::Error(galg::ErrorKind::BadDescription, "unknown theorem id", id);
  galg::Instance inst{b.name, b.groupoid, b.ring, b.tau, b.action, b.datum, b.globalization};
  galg::VerificationReport rep = galg::verify_instance(inst, opt);
  json r = galg::to_json(rep, a.timing);
  emit(r, a.out);
  if (!a.out.empty()) {
    const auto& s = r["summary"];
    std::cout << rep.instance << ": " << s["pass"] << " pass, " << s["fail"] << " fail, "
              << s["skipped"] << " skipped\n";
  }
  if (rep.inconsistent) return kInconsistent;
  return rep.any_fail() ? kInvalid : kOk;
}

// Writes every bundled instance as a self-contained bundle file.
int cmd_export(const std::string& dir) {
  fs::create_directories(dir);
  for (const auto& n : galg::instances::all_data()) {
    const galg::GlobalizableDatum* gd = n.globalization ? &*n.globalization : nullptr;
    galg::io::write_json_file(fs::path(dir) / (n.name + ".json"),
                              galg::io::bundle_json(n.name, n.datum, gd));
  }
  auto alpha = galg::instances::square_tau_global_action();
  galg::io::write_json_file(
      fs::path(dir) / "square-tau-global-action.json",
      galg::io::bundle_json("square-tau-global-action", alpha,
                            galg::instances::square_transversal(*alpha.groupoid())));
  // The same action along a transversal for which it is not tau(x)-global.
  galg::io::write_json_file(
      fs::path(dir) / "square-action-m-transversal.json",
      galg::io::bundle_json("square-action-m-transversal", alpha,
                            galg::instances::square_transversal(*alpha.groupoid(), "x", "m")));
  auto pair = galg::instances::pair_swap_action();
  galg::io::write_json_file(
      fs::path(dir) / "pair-gf3-action.json",
      galg::io::bundle_json("pair-gf3-action", pair,
                            galg::make_transversal(*pair.groupoid(), pair.groupoid()->objects()[0])));
  return kOk;
}

int report_error(const std::string& what, int code) {
  std::cerr << "galg: " << what << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial groupoid actions on finite rings"};
  app.require_subcommand(1);
  std::string out;

  std::string path;
  auto* validate = app.add_subcommand("validate", "validate a bundle");
  validate->add_option("bundle", path, "bundle file")->required();
  validate->add_option("--out", out, "write the report here");

  std::string tau;
  auto* lift = app.add_subcommand("lift", "lift a datum to a partial action");
  lift->add_option("datum", path, "bundle holding a datum")->required();
  lift->add_option("--tau", tau, "transversal file");
  lift->add_option("--out", out, "write the action and report here");

  auto* globalize = app.add_subcommand("globalize", "build the global action of a globalizable datum");
  globalize->add_option("gdatum", path, "bundle holding a datum and its globalization")->required();
  globalize->add_option("--out", out, "write the global action here");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the theorem registry on a bundle");
  verify->add_option("bundle", va.bundle, "bundle file")->required();
  verify->add_option("--theorems", va.theorems, "comma-separated theorem ids");
  verify->add_option("--seed", va.seed, "seed for sampled checks");
  verify->add_option("--cap", va.cap, "ring and tensor size cap");
  verify->add_option("--jobs", va.jobs, "parallel checks");
  verify->add_option("--out", va.out, "write the report here");
  verify->add_flag("--timing", va.timing, "include per-check timing");

  auto* list = app.add_subcommand("list", "print the theorem registry");

  std::string dir;
  auto* exporter = app.add_subcommand("export", "write the bundled instances");
  exporter->add_option("dir", dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(path, out);
    if (*lift) return cmd_lift(path, tau, out);
    if (*globalize) return cmd_globalize(path, out);
    if (*verify) return cmd_verify(va);
    if (*exporter) return cmd_export(dir);
    if (*list) {
      for (const auto& t : galg::registry()) std::cout << t.id << "  " << t.summary << '\n';
      return kOk;
    }
  } catch (const galg::io::IoError& e) {
    return report_error(e.what(), kIo);
  } catch (const galg::Error& e) {
    return report_error(e.what(), e.kind() == galg::ErrorKind::InconsistentEquivalence ? kInconsistent
                                                                                      : kInvalid);
  } catch (const json::exception& e) {
    return report_error(e.what(), kInvalid);
  } catch (const fs::filesystem_error& e) {
    return report_error(e.what(), kIo);
  }
  return kOk;
}
