#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace galg;

namespace {

GroupoidDescription corrupt(GroupoidDescription d, const std::string& g, const std::string& h,
                            const std::string& value) {
  for (auto& c : d.compose)
    if (c[0] == g && c[1] == h) c[2] = value;
  return d;
}

ErrorKind kind_of(const GroupoidDescription& d) {
  try {
    validate_groupoid(d);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("description was accepted");
  return ErrorKind::BadDescription;
}

}  // namespace

TEST_CASE("square groupoid has two objects and the expected projection") {
  auto G = instances::square_groupoid();
  CHECK(G->size() == 8);
  CHECK(G->object_count() == 2);
  CHECK(oracle::groupoid_axioms(G->description()));
  Transversal tau = instances::square_transversal(*G);
  auto pi = [&](const char* n) { return G->name(project_pi(*G, tau, G->index(n))); };
  for (const char* n : {"g", "h", "m", "m^-1"}) CHECK(pi(n) == "g");
  for (const char* n : {"l", "l^-1", "x", "y"}) CHECK(pi(n) == "x");
  CHECK(G->name(G->compose(G->index("l"), G->index("g"))) == "m");
  CHECK(G->name(G->compose(G->index("h"), G->index("l"))) == "m");
  CHECK(G->name(G->inv(G->index("m"))) == "m^-1");
}

TEST_CASE("Gamma construction over Z2 with two objects") {
  auto G = gamma_groupoid(*cyclic_group(2), 2, 1);
  CHECK(G->size() == 8);
  CHECK(G->object_count() == 2);
  CHECK(is_connected(*G));
  CHECK(oracle::groupoid_axioms(G->description()));
  const Mor a = G->index("(g,1,2)"), b = G->index("(g,2,1)");
  CHECK(G->name(G->compose(a, b)) == "(e,1,1)");
  CHECK(G->name(G->inv(a)) == "(g,2,1)");
  auto iso = isotropy_group(*G, G->objects()[0]);
  CHECK(iso.size() == 2);
}

TEST_CASE("validation pinpoints each broken axiom") {
  auto d = instances::square_groupoid()->description();
  auto conflicting = d;
  conflicting.compose.push_back({"l", "g", "l"});
  CHECK(kind_of(conflicting) == ErrorKind::BadDescription);
  CHECK(kind_of(corrupt(d, "l", "g", "l")) == ErrorKind::NonAssociative);
  CHECK(kind_of(corrupt(d, "l", "g", "y")) == ErrorKind::BadSourceTarget);
  auto no_entry = d;
  no_entry.compose.erase(std::remove_if(no_entry.compose.begin(), no_entry.compose.end(),
                                        [](const auto& c) { return c[0] == "l" && c[1] == "g"; }),
                         no_entry.compose.end());
  CHECK(kind_of(no_entry) == ErrorKind::MissingComposition);
  auto bad_inv = d;
  bad_inv.inv["g"] = "x";
  CHECK(kind_of(bad_inv) == ErrorKind::MissingInverse);
  auto bad_unit = corrupt(d, "x", "g", "x");
  bad_unit = corrupt(bad_unit, "g", "x", "x");
  CHECK(kind_of(bad_unit) == ErrorKind::MissingIdentity);
  auto empty = GroupoidDescription{};
  CHECK(kind_of(empty) == ErrorKind::EmptyObjectSet);
  try {
    validate_groupoid(corrupt(d, "l", "g", "y"));
  } catch (const Error& e) {
    CHECK(e.witness() == "l * g = y");
  }
}

TEST_CASE("a non-associative table is rejected") {
  // Z/3 with the product of (1, 1) redirected to 0 keeps identities and inverses unique
  std::vector<std::string> names = {"e", "a", "b"};
  GroupoidDescription d;
  d.morphisms = names;
  d.objects = {"e"};
  for (const auto& n : names) d.src[n] = d.tgt[n] = "e";
  d.inv = {{"e", "e"}, {"a", "b"}, {"b", "a"}};
  std::vector<std::vector<int>> mul = {{0, 1, 2}, {1, 1, 0}, {2, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d.compose.push_back({names[i], names[j], names[mul[i][j]]});
  CHECK_FALSE(oracle::groupoid_axioms(d));
  CHECK(kind_of(d) == ErrorKind::NonAssociative);
}

TEST_CASE("connected components partition a disjoint union") {
  auto U = disjoint_union(*instances::square_groupoid(), *pair_groupoid({"1", "2", "3"}));
  CHECK_FALSE(is_connected(*U));
  auto comps = connected_components(*U);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0]->size() == 8);
  CHECK(comps[1]->size() == 9);
  CHECK(comps[0]->object_count() + comps[1]->object_count() == U->object_count());
  CHECK_THROWS_AS(make_transversal(*U, U->objects()[0]), Error);
}

TEST_CASE("transversals reject choices that do not leave the base") {
  auto G = instances::square_groupoid();
  const Mor x = G->index("x"), y = G->index("y");
  CHECK_THROWS_AS(make_transversal(*G, x, {{y, G->index("l^-1")}}), Error);
  CHECK_THROWS_AS(make_transversal(*G, x, {{x, G->index("g")}}), Error);
  CHECK_THROWS_AS(make_transversal(*G, G->index("g")), Error);
  auto t = make_transversal(*G, x, {{y, G->index("m")}});
  CHECK(t.at(*G, y) == G->index("m"));
}

TEST_CASE("pair groupoid naming and arithmetic") {
  auto P = pair_groupoid({"a", "b"});
  CHECK(P->size() == 4);
  const Mor ab = P->index("(a,b)");
  CHECK(P->name(P->src(ab)) == "(a,a)");
  CHECK(P->name(P->tgt(ab)) == "(b,b)");
  CHECK(P->name(P->compose(P->index("(b,a)"), ab)) == "(a,a)");
}

TEST_CASE("property: the projection is an epimorphism onto the isotropy group") {
  for (const auto& gi : fuzz::groups())
    for (std::size_t m = 1; gi.group->size() * m * m <= 12; ++m) {
      auto G = gamma_groupoid(*gi.group, m, 1);
      REQUIRE(oracle::groupoid_axioms(G->description()));
      for (Mor x : G->objects())
        for (const Transversal& tau : checks::transversals_at(*G, x, 32)) {
          std::set<Mor> image;
          for (Mor g = 0; g < G->size(); ++g) {
            Mor p = project_pi(*G, tau, g);
            REQUIRE(G->src(p) == x);
            REQUIRE(G->tgt(p) == x);
            image.insert(p);
            for (Mor h = 0; h < G->size(); ++h)
              if (G->composable(g, h))
                REQUIRE(project_pi(*G, tau, G->compose(g, h)) ==
                        G->compose(p, project_pi(*G, tau, h)));
          }
          CHECK(image.size() == gi.group->size());
        }
    }
}

TEST_CASE("cap on morphism count") {
  Caps c;
  c.groupoid_morphisms = 4;
  CHECK_THROWS_AS(validate_groupoid(instances::square_groupoid()->description(), c), Error);
}
