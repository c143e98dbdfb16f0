#include <gtest/gtest.h>

#include "bim/error.hpp"
#include "bim/groupoid.hpp"

using namespace bim;

namespace {

ArrowId arrow(const FiniteGroupoid& g, const char* name) {
  auto a = g.find_arrow(name);
  EXPECT_TRUE(a.has_value()) << name;
  return *a;
}

}  // namespace

TEST(Groupoid, PairShapes) {
  auto g = pair_groupoid(2);
  EXPECT_EQ(g.object_count(), 2u);
  EXPECT_EQ(g.arrow_count(), 4u);
  int ids = 0;
  for (ArrowId a = 0; a < g.arrow_count(); ++a) ids += g.is_identity(a);
  EXPECT_EQ(ids, 2);
}

TEST(Groupoid, GroupShapes) {
  auto g = parse_groupoid_spec("group:Z2");
  EXPECT_EQ(g.object_count(), 1u);
  EXPECT_EQ(g.arrow_count(), 2u);
  auto s3 = parse_groupoid_spec("group:S3");
  EXPECT_EQ(s3.arrow_count(), 6u);
}

TEST(Groupoid, DisjointUnion) {
  auto g = parse_groupoid_spec("disjoint_union(pair:2, pair:3)");
  EXPECT_EQ(g.object_count(), 5u);
  EXPECT_EQ(g.arrow_count(), 13u);
  auto nested = parse_groupoid_spec("disjoint_union(group:Z2, disjoint_union(pair:1, pair:2))");
  EXPECT_EQ(nested.object_count(), 4u);
  EXPECT_EQ(nested.arrow_count(), 7u);
}

TEST(Groupoid, JsonRoundTrip) {
  auto g = parse_groupoid_spec("disjoint_union(pair:2, group:Z3)");
  auto j = to_json(g);
  auto h = parse_groupoid_spec(j.dump());
  EXPECT_EQ(h.arrow_count(), g.arrow_count());
  ASSERT_TRUE(find_isomorphism(g, h).has_value());
}

TEST(Groupoid, RejectsBrokenTables) {
  // Z2 table with g*g = g.
  const char* bad = R"({"objects": ["*"],
    "arrows": [{"id": "1", "dom": "*", "cod": "*"}, {"id": "g", "dom": "*", "cod": "*"}],
    "compose": [["1", "1", "1"], ["1", "g", "g"], ["g", "1", "g"], ["g", "g", "g"]],
    "inverse": [["1", "1"], ["g", "g"]]})";
  EXPECT_THROW(parse_groupoid_spec(bad), ValidationError);
  EXPECT_THROW(parse_groupoid_spec("pair:x"), ParseError);
  EXPECT_THROW(parse_groupoid_spec("group:Q8x"), ParseError);
}

TEST(Groupoid, BisectionProducts) {
  auto g = pair_groupoid(2);
  auto a12 = arrow(g, "1->2"), a21 = arrow(g, "2->1"), a11 = arrow(g, "1->1"), a22 = arrow(g, "2->2");
  EXPECT_EQ(bisection_product(g, Bisection{a12}, Bisection{a21}), Bisection{a22});
  EXPECT_EQ(bisection_product(g, Bisection{a12}, Bisection{a12}), Bisection{});
  Bisection swap{a12, a21};
  EXPECT_EQ(bisection_product(g, swap, swap), (Bisection{a11, a22}));
}

TEST(Groupoid, LocalBisectionCounts) {
  const std::size_t expected[] = {2, 7, 34, 209};
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(all_local_bisections(pair_groupoid(n)).size(), expected[n - 1]);
  EXPECT_EQ(all_local_bisections(named_group("Z2")).size(), 3u);
  EXPECT_FALSE(is_local_bisection(named_group("Z2"), std::vector<ArrowId>{0, 1}));
}

TEST(Groupoid, Properties) {
  auto p3 = groupoid_properties(pair_groupoid(3));
  EXPECT_TRUE(p3.principal);
  EXPECT_TRUE(p3.effective);
  EXPECT_TRUE(p3.minimal);
  EXPECT_EQ(p3.orbits.size(), 1u);

  auto z2 = groupoid_properties(named_group("Z2"));
  EXPECT_FALSE(z2.principal);
  EXPECT_FALSE(z2.effective);
  EXPECT_TRUE(z2.minimal);

  auto du = groupoid_properties(parse_groupoid_spec("disjoint_union(pair:2,pair:2)"));
  EXPECT_FALSE(du.minimal);
  EXPECT_FALSE(du.connected);
  EXPECT_EQ(du.orbits.size(), 2u);
}

TEST(Groupoid, IsomorphismSearch) {
  auto a = parse_groupoid_spec("disjoint_union(pair:2, group:Z2)");
  auto b = parse_groupoid_spec("disjoint_union(group:Z2, pair:2)");
  auto iso = find_isomorphism(a, b);
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(is_isomorphism(a, b, *iso));
  EXPECT_FALSE(find_isomorphism(named_group("Z4"), named_group("V4")).has_value());
  EXPECT_FALSE(find_isomorphism(pair_groupoid(2), named_group("Z4")).has_value());
}

TEST(Groupoid, DotExport) {
  auto dot = to_dot(pair_groupoid(2), "P2");
  EXPECT_NE(dot.find("digraph \"P2\""), std::string::npos);
  EXPECT_NE(dot.find("dashed"), std::string::npos);
}

// A·A⁻¹·A = A for every local bisection in the corpus; singletons are the atoms.
TEST(GroupoidProperty, RegularityAndAtoms) {
  for (const char* spec : {"pair:3", "group:S3", "disjoint_union(pair:2,group:Z3)", "group:V4"}) {
    auto g = parse_groupoid_spec(spec);
    auto all = all_local_bisections(g);
    for (const auto& a : all) {
      auto inv = bisection_inverse(g, a);
      EXPECT_EQ(bisection_product(g, bisection_product(g, a, inv), a), a) << spec;
      bool minimal = !a.empty();
      for (const auto& b : all)
        if (!b.empty() && b != a && b.subset_of(a)) minimal = false;
      EXPECT_EQ(minimal, a.size() == 1) << spec;
    }
    auto props = groupoid_properties(g);
    EXPECT_EQ(props.minimal, props.orbits.size() == 1) << spec;
  }
}
