#include <catch_amalgamated.hpp>

#include "support/random_instances.hpp"

using namespace galg;
using namespace galg::fuzz;

namespace {

std::vector<Recipe> recipes(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Recipe> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_recipe(rng));
  return out;
}

}  // namespace

TEST_CASE("generated recipes stay inside the bounds and build") {
  for (const Recipe& r : recipes(150, 3)) {
    INFO(r.describe());
    CHECK(fits(r));
    Instance inst = build(r, "fuzz", fuzz_caps());
    CHECK(is_connected(*inst.groupoid));
    CHECK(inst.groupoid->size() <= 12);
    CHECK(inst.ring->size() <= 256);
    CHECK(inst.action.has_value());
    CHECK(inst.datum.has_value());
    CHECK(inst.globalization.has_value() == r.globalize);
  }
}

TEST_CASE("generation is reproducible from the seed") {
  auto a = recipes(20, 8), b = recipes(20, 8);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].describe() == b[k].describe());
}

TEST_CASE("simplifications are valid recipes") {
  for (const Recipe& r : recipes(40, 4))
    for (const Recipe& c : simplifications(r)) {
      INFO(r.describe() << " -> " << c.describe());
      CHECK(fits(c));
      CHECK(c.describe() == normalize(c).describe());
      CHECK_NOTHROW(build(c, "fuzz", fuzz_caps()));
    }
}

TEST_CASE("shrinking reaches a minimal failing recipe") {
  // An artificial failure: any recipe with two or more objects.
  auto fails = [](const Recipe& r) { return r.objects >= 2; };
  std::size_t shrunk = 0;
  for (const Recipe& r : recipes(60, 5)) {
    if (!fails(r)) continue;
    INFO(r.describe());
    Recipe m = shrink(r, fails);
    CHECK(fails(m));
    CHECK(m.objects == 2);
    CHECK(m.group == 0);
    CHECK(m.orbits.size() == 1);
    CHECK(m.orbits[0].field == 0);
    CHECK_FALSE(m.from_action);
    CHECK_FALSE(m.globalize);
    for (const Recipe& c : simplifications(m)) CHECK_FALSE(fails(c));
    ++shrunk;
  }
  CHECK(shrunk > 0);
}

TEST_CASE("a short fuzz run finds no failures") {
  FuzzSummary s = run_fuzz(12, 2026);
  for (const auto& f : s.failures) FAIL_CHECK(f.check << ": " << f.reason << " at " << f.minimal.describe());
  CHECK(s.failures.empty());
  CHECK(s.instances == 12);
  CHECK(s.checks_passed > 0);
}
