#include <gtest/gtest.h>

#include "dgc/derived.hpp"
#include "dgc/fixtures.hpp"
#include "dgc/workspace.hpp"
#include "support/generators.hpp"

using namespace dgc;
using nlohmann::json;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

bool same_data(const Bimodule& x, const Bimodule& y) {
  return same_structure(*x.left_cat(), *y.left_cat()) && same_structure(*x.right_cat(), *y.right_cat()) && x.comps() == y.comps() &&
         x.data().left == y.data().left && x.data().right == y.data().right;
}

Workspace reload(const Workspace& w) { return parse_workspace(json::parse(to_json(w).dump())); }

std::string location_of(const json& j) {
  try {
    parse_workspace(j);
  } catch (const WorkspaceError& e) {
    return e.location;
  }
  return "<accepted>";
}

json q2_workspace() {
  return json::parse(R"({
    "field": "q",
    "categories": [{"name": "Q2", "objects": ["a", "b"],
                    "morphisms": [{"label": "1_a", "source": "a", "target": "a", "degree": 0},
                                  {"label": "f", "source": "a", "target": "b", "degree": 0},
                                  {"label": "1_b", "source": "b", "target": "b", "degree": 0}]}],
    "modules": [{"name": "diag", "construct": "diagonal", "category": "Q2"},
                {"name": "Sb", "left": null, "right": "Q2", "components": [{"at": ["b", "*"], "degrees": [0]}]}]
  })");
}

}  // namespace

TEST(Workspace, ExplicitQ2MatchesTheFixture) {
  Workspace w = parse_workspace(q2_workspace());
  EXPECT_TRUE(same_structure(*w.category("Q2"), *fixtures::q2(Q)));
  EXPECT_TRUE(same_data(w.module("diag"), diagonal(fixtures::q2(Q))));
  EXPECT_EQ(w.module("Sb").comp(1, 0).dim(), 1);
  EXPECT_EQ(w.module("Sb").comp(0, 0).dim(), 0);
}

TEST(Workspace, FieldOverride) {
  Workspace w = parse_workspace(q2_workspace(), F2);
  EXPECT_EQ(w.field, F2);
  EXPECT_EQ(w.category("Q2")->field(), F2);
}

TEST(Workspace, FixturesAndConstructionsLoad) {
  json j = json::parse(R"({
    "field": "fp:3",
    "categories": [{"name": "Q2", "fixture": "q2"}, {"name": "B", "fixture": "point", "object": "b"},
                   {"name": "D", "fixture": "dual_numbers"}, {"name": "Dop", "construct": "opposite", "of": "D"},
                   {"name": "QD", "construct": "tensor", "first": "Q2", "second": "D"}],
    "functors": [{"name": "G", "fixture": "collapse", "source": "Q2", "target": "B"},
                 {"name": "GG", "construct": "compose", "outer": "G", "inner": "G"}],
    "modules": [{"name": "hG", "construct": "h_lower", "functor": "G"},
                {"name": "ha", "construct": "representable_right", "category": "Q2", "object": "a"},
                {"name": "hb", "construct": "representable_right", "category": "Q2", "object": "b"},
                {"name": "sum", "construct": "direct_sum", "parts": ["ha", "hb"]},
                {"name": "c", "construct": "cone_identity", "module": "hb"},
                {"name": "Lha", "construct": "dual", "module": "ha", "side": "L"},
                {"name": "s", "construct": "shift", "module": "ha", "n": 2},
                {"name": "dd", "construct": "diagonal", "category": "QD"}]
  })");
  EXPECT_EQ(location_of(j), "functors/1 (GG)");  // G∘G is ill-typed
  j["functors"].erase(1);
  Workspace w = parse_workspace(j);
  EXPECT_EQ(w.field, Field::prime(3));
  EXPECT_EQ(w.category_names.size(), 5u);
  EXPECT_EQ(w.module("sum").comp(0, 0).dim(), 2);
  EXPECT_EQ(w.module("sum").comp(1, 0).dim(), 1);
  EXPECT_EQ(w.module("s").comp(0, 0).degrees(), std::vector<int>{-2});
  EXPECT_EQ(w.module("hG").name(), "hG");
}

TEST(Workspace, RoundTripIsStructurallyIdentical) {
  testgen::Rng rng(0x51de);
  for (Field F : {Q, F2}) {
    for (int trial = 0; trial < 25; ++trial) {
      CatPtr C = testgen::random_category(F, rng, 3);
      Workspace w;
      w.field = F;
      w.add("C", C);
      w.add("T", testgen::random_bimodule(C, rng, 8));
      w.add("X", testgen::random_right_module(C, rng, 6));
      w.add("M", testgen::random_left_module(C, rng, 6));
      w.add("id", DgFunctor::identity(C));
      Workspace back = reload(w);
      ASSERT_TRUE(same_structure(*back.category("C"), *C)) << trial;
      for (const char* m : {"T", "X", "M"}) EXPECT_TRUE(same_data(back.module(m), w.module(m))) << trial << " " << m;
      EXPECT_EQ(back.functor("id").maps(), w.functor("id").maps());
      EXPECT_EQ(to_json(back).dump(), to_json(w).dump());
    }
  }
}

TEST(Workspace, HomotopyPairRoundTrips) {
  Workspace w;
  w.add("H", fixtures::homotopy_pair(Q));
  w.add("diag", diagonal(w.category("H")));
  Workspace back = reload(w);
  EXPECT_TRUE(same_structure(*back.category("H"), *w.category("H")));
  EXPECT_TRUE(same_data(back.module("diag"), w.module("diag")));
}

TEST(Workspace, MalformedInputNamesTheLocation) {
  json j = q2_workspace();
  j["categories"][0]["morphisms"][1]["target"] = "c";
  EXPECT_EQ(location_of(j), "categories/0 (Q2)/morphisms/1/target");

  j = q2_workspace();
  j["modules"][1]["components"][0]["degrees"] = json::array({1, 0});
  EXPECT_EQ(location_of(j), "modules/1 (Sb)/components/0/degrees");

  j = q2_workspace();
  j["categories"][0]["morphisms"][1]["degree"] = 1;
  j["categories"][0]["differential"] = json::array({json::array({"f", "f", "1"})});
  EXPECT_EQ(location_of(j), "categories/0 (Q2)/differential");

  j = q2_workspace();
  j["modules"][1]["right_action"] = json::array({{{"at", {"a", "b", "*"}}, {"morphism", "f"}, {"matrix", {{"1", "2"}}}}});
  EXPECT_EQ(location_of(j), "modules/1 (Sb)/right_action/0/matrix");

  j = q2_workspace();
  j["modules"][0]["category"] = "Q3";
  EXPECT_EQ(location_of(j), "modules/0 (diag)");

  j = q2_workspace();
  j["field"] = "fp:4";
  EXPECT_EQ(location_of(j), "field");
}

TEST(Workspace, ValidatorFailuresAreReportedAtTheEntry) {
  // f acts from degree 1 to degree 0.
  json j = q2_workspace();
  j["modules"].push_back(json::parse(R"({"name": "bad", "left": null, "right": "Q2",
      "components": [{"at": ["a", "*"], "degrees": [0]}, {"at": ["b", "*"], "degrees": [1]}],
      "right_action": [{"at": ["a", "b", "*"], "morphism": "f", "matrix": [["1"]]}]})"));
  const std::string loc = location_of(j);
  EXPECT_EQ(loc, "modules/2 (bad)");
}

TEST(Workspace, SchemaIsJson) {
  json s = json::parse(workspace_schema());
  EXPECT_TRUE(s.contains("$defs"));
  EXPECT_TRUE(s["$defs"].contains("module"));
}
