#include <gtest/gtest.h>

#include <random>

#include "bim/error.hpp"
#include "bim/finite_monoid.hpp"

using namespace bim;

namespace {

struct Fixture {
  FinBIM s;
  explicit Fixture(const char* spec) : s(kb_monoid(parse_groupoid_spec(spec))) {}
  Bisection operator()(const char* text) const { return s.parse(text); }
};

// Largest idempotent below s, by brute force over all idempotents.
Bisection phi_oracle(const FinBIM& m, const Bisection& s) {
  Bisection best;
  for (const auto& e : m.idempotents())
    if (e.subset_of(s) && e.size() >= best.size()) best = e;
  return best;
}

}  // namespace

TEST(FinBIM, Cardinalities) {
  EXPECT_EQ(kb_monoid(pair_groupoid(2)).size(), 7u);
  auto i3 = kb_monoid(pair_groupoid(3));
  EXPECT_EQ(i3.size(), 34u);
  EXPECT_EQ(i3.units().size(), 6u);
  EXPECT_EQ(i3.idempotents().size(), 8u);
  EXPECT_EQ(i3.idempotent_atoms().size(), 3u);
  EXPECT_EQ(i3.atoms().size(), 9u);
  Fixture z2("group:Z2");
  EXPECT_EQ(z2.s.size(), 3u);
  EXPECT_TRUE(z2.s.contains(z2("{1}")));
  EXPECT_TRUE(z2.s.contains(z2("{g}")));
}

TEST(FinBIM, InverseAndDomains) {
  Fixture i3("pair:3");
  EXPECT_EQ(i3.s.inverse(i3("{1->2}")), i3("{2->1}"));
  auto s = i3("{1->2, 3->3}");
  EXPECT_EQ(dom(i3.s, s), i3("{1->1, 3->3}"));
  EXPECT_EQ(ran(i3.s, s), i3("{2->2, 3->3}"));
  for (const auto& a : i3.s.elements()) EXPECT_EQ(i3.s.multiply(i3.s.multiply(a, i3.s.inverse(a)), a), a);
}

TEST(FinBIM, FormatAndParse) {
  Fixture i3("pair:3");
  EXPECT_EQ(i3.s.format(i3("{3->3, 1->2}")), "{1->2, 3->3}");
  EXPECT_EQ(i3.s.format(i3("{}")), "{}");
  EXPECT_EQ(i3(R"(["1->2"])"), i3("{1->2}"));
  EXPECT_THROW(i3("{1->2, 1->3}"), ParseError);
  EXPECT_THROW(i3("{1->7}"), ParseError);
  EXPECT_THROW(i3("1->2"), ParseError);
}

TEST(FinBIM, Relations) {
  Fixture i3("pair:3");
  EXPECT_TRUE(relations(i3.s, i3("{1->2}"), i3("{1->2, 3->3}")).leq);
  auto r = relations(i3.s, i3("{1->2}"), i3("{2->1}"));
  EXPECT_TRUE(r.orthogonal);
  EXPECT_FALSE(r.leq);
  Fixture z2("group:Z2");
  EXPECT_TRUE(relations(z2.s, z2("{1}"), z2("{g}")).mu_related);
}

TEST(FinBIM, MeetAndJoin) {
  Fixture i3("pair:3");
  EXPECT_EQ(checked_meet(i3.s, i3("{1->2, 3->3}"), i3("{1->2, 3->1}")), i3("{1->2}"));
  EXPECT_EQ(join(i3.s, i3("{1->1}"), i3("{2->2}")), i3("{1->1, 2->2}"));
  try {
    join(i3.s, i3("{1->2}"), i3("{1->3}"));
    FAIL() << "join of incompatible elements";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("{3->2}"), std::string::npos) << e.what();
  }
}

TEST(FinBIM, FixpointAndSupport) {
  Fixture i3("pair:3");
  auto fs = fixpoint_and_support(i3.s, i3("{1->1, 2->3}"));
  EXPECT_EQ(fs.phi, i3("{1->1}"));
  EXPECT_EQ(fs.sigma, i3("{2->2}"));
  EXPECT_EQ(fs.moving_part, i3("{2->3}"));
  auto t = fixpoint_and_support(i3.s, i3("{1->2, 2->1, 3->3}"));
  EXPECT_EQ(t.phi, i3("{3->3}"));
  EXPECT_EQ(t.sigma, i3("{1->1, 2->2}"));
  auto e = i3("{1->1, 3->3}");
  auto ie = fixpoint_and_support(i3.s, e);
  EXPECT_EQ(ie.phi, e);
  EXPECT_EQ(ie.sigma, i3.s.zero());
}

TEST(FinBIM, Classify) {
  Fixture i2("pair:2");
  EXPECT_TRUE(classify(i2.s, i2("{1->2}")).is_infinitesimal);
  EXPECT_TRUE(classify(i2.s, i2("{1->2}")).is_atom);
  auto one = classify(i2.s, i2.s.one());
  EXPECT_TRUE(one.is_unit);
  EXPECT_TRUE(one.is_idempotent);
  auto swap = classify(i2.s, i2("{1->2, 2->1}"));
  EXPECT_TRUE(swap.is_unit);
  EXPECT_FALSE(swap.is_infinitesimal);
  EXPECT_FALSE(classify(i2.s, i2.s.zero()).is_infinitesimal);
}

TEST(FinBIM, UnitFromInfinitesimal) {
  Fixture i2("pair:2");
  EXPECT_EQ(unit_from_infinitesimal(i2.s, i2("{1->2}")), i2("{1->2, 2->1}"));
  Fixture i3("pair:3");
  EXPECT_EQ(unit_from_infinitesimal(i3.s, i3("{1->3}")), i3("{1->3, 2->2, 3->1}"));
  EXPECT_THROW(unit_from_infinitesimal(i3.s, i3.s.zero()), PreconditionError);
}

TEST(FinBIM, OrthogonalRefinement) {
  Fixture i3("pair:3");
  std::vector<Bisection> parts{i3("{1->1, 2->2}"), i3("{2->2, 3->3}")};
  auto out = orthogonal_refinement(i3.s, std::span<const Bisection>(parts));
  std::sort(out.begin(), out.end());
  std::vector<Bisection> expected{i3("{1->1}"), i3("{2->2}"), i3("{3->3}")};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(out, expected);

  std::vector<Bisection> single{i3("{1->2}")};
  EXPECT_EQ(orthogonal_refinement(i3.s, std::span<const Bisection>(single)), single);
  std::vector<Bisection> twice{i3("{1->1}"), i3("{1->1}")};
  EXPECT_EQ(orthogonal_refinement(i3.s, std::span<const Bisection>(twice)), std::vector<Bisection>{i3("{1->1}")});
  std::vector<Bisection> clash{i3("{1->2}"), i3("{1->3}")};
  EXPECT_THROW(orthogonal_refinement(i3.s, std::span<const Bisection>(clash)), PreconditionError);
}

TEST(FinBIM, BasicDecompose) {
  Fixture i3("pair:3");
  auto r = basic_decompose(i3.s, i3("{1->2, 2->1, 3->3}"));
  ASSERT_TRUE(std::holds_alternative<BasicDecomposition>(r));
  auto& d = std::get<BasicDecomposition>(r);
  EXPECT_EQ(d.idempotent, i3("{3->3}"));
  std::vector<Bisection> expected{i3("{1->2}"), i3("{2->1}")};
  auto got = d.infinitesimals;
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(got, expected);

  auto e = i3("{1->1, 2->2}");
  auto re = basic_decompose(i3.s, e);
  ASSERT_TRUE(std::holds_alternative<BasicDecomposition>(re));
  EXPECT_EQ(std::get<BasicDecomposition>(re).idempotent, e);
  EXPECT_TRUE(std::get<BasicDecomposition>(re).infinitesimals.empty());

  Fixture z2("group:Z2");
  auto rz = basic_decompose(z2.s, z2("{g}"));
  ASSERT_TRUE(std::holds_alternative<BasicFailure>(rz));
  EXPECT_EQ(std::get<BasicFailure>(rz).witness, z2("{g}"));
}

TEST(FinBIM, GreenAndPencils) {
  Fixture i3("pair:3");
  auto g = green_on_idempotents(i3.s, i3("{1->1, 2->2}"), i3("{3->3}"));
  EXPECT_FALSE(g.d_related);
  EXPECT_FALSE(g.j_related);
  ASSERT_TRUE(g.preceq.has_value());
  EXPECT_TRUE(pencil_valid(i3.s, *g.preceq));
  EXPECT_EQ(g.preceq->elements, (std::vector<Bisection>{i3("{1->3}"), i3("{2->3}")}));
  EXPECT_TRUE(g.equiv);

  auto e = i3("{2->2}");
  auto same = green_on_idempotents(i3.s, e, e);
  EXPECT_TRUE(same.d_related);
  EXPECT_TRUE(same.equiv);

  Fixture du("disjoint_union(pair:2,pair:2)");
  auto cross = green_on_idempotents(du.s, du("{1->1}"), du("{3->3}"));
  EXPECT_FALSE(cross.preceq.has_value());
  EXPECT_FALSE(cross.equiv);
  EXPECT_THROW(green_on_idempotents(i3.s, i3("{1->2}"), e), PreconditionError);
}

TEST(FinBIM, Substructures) {
  Fixture i3("pair:3");
  EXPECT_EQ(substructures(i3.s).units.size(), 6u);
  auto local = substructures(i3.s, i3("{1->1, 2->2}"));
  ASSERT_TRUE(local.local_monoid.has_value());
  EXPECT_EQ(local.local_monoid->size(), 7u);
  Fixture z2("group:Z2");
  auto u = substructures(z2.s).units;
  EXPECT_EQ(u, (std::vector<Bisection>{z2("{1}"), z2("{g}")}));
}

TEST(FinBIM, CarrierValidation) {
  auto g = std::make_shared<const FiniteGroupoid>(pair_groupoid(2));
  auto full = FinBIM::full(g);
  std::vector<Bisection> idem(full.idempotents().begin(), full.idempotents().end());
  auto e = FinBIM::with_carrier(g, idem);
  EXPECT_EQ(e.size(), 4u);
  EXPECT_EQ(e.units().size(), 1u);

  auto f = full_subgroupoid(*g, std::vector<ObjectId>{0});
  (void)f;
  auto missing_inverse = idem;
  missing_inverse.push_back(full.parse("{1->2}"));
  try {
    FinBIM::with_carrier(g, missing_inverse);
    FAIL();
  } catch (const ValidationError& err) {
    EXPECT_NE(std::string(err.what()).find("inverse"), std::string::npos) << err.what();
  }
  auto no_complement = std::vector<Bisection>{Bisection{}, full.one(), full.parse("{1->1}")};
  EXPECT_THROW(FinBIM::with_carrier(g, no_complement), ValidationError);
}

// The atom-based closure check agrees with the pairwise oracle on random carriers.
TEST(FinBIMProperty, CarrierValidationMatchesOracle) {
  auto g = std::make_shared<const FiniteGroupoid>(pair_groupoid(3));
  auto full = FinBIM::full(g);
  std::mt19937_64 rng(42);
  int accepted = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Bisection> carrier{Bisection{}, full.one()};
    std::uniform_int_distribution<std::size_t> pick(0, full.size() - 1);
    const int extra = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < extra; ++i) carrier.push_back(full.elements()[pick(rng)]);
    // Often close under inverse and complements so that deeper checks run.
    if (trial % 2 == 0) {
      auto copy = carrier;
      for (const auto& a : copy) {
        carrier.push_back(full.inverse(a));
        carrier.push_back(full.complement(dom(full, a)));
        carrier.push_back(dom(full, a));
      }
    }
    const bool oracle_ok = !brute_force_closure_failure(*g, carrier).has_value();
    bool validated = true;
    try {
      FinBIM::with_carrier(g, carrier);
    } catch (const ValidationError&) {
      validated = false;
    }
    EXPECT_EQ(validated, oracle_ok) << "trial " << trial;
    accepted += validated;
  }
  EXPECT_GT(accepted, 0);
}

TEST(FinBIMProperty, MeetCoherenceAndPhi) {
  for (const char* spec : {"pair:2", "pair:3", "group:Z3", "disjoint_union(pair:2,group:Z2)"}) {
    Fixture f(spec);
    const auto& s = f.s;
    for (const auto& a : s.elements()) {
      EXPECT_EQ(s.phi(a), phi_oracle(s, a)) << spec;
      EXPECT_EQ(s.phi(a), checked_meet(s, a, s.one()));
      EXPECT_TRUE(leq(s, s.phi(a), dom(s, a)));
      EXPECT_TRUE(leq(s, s.phi(a), ran(s, a)));
      for (const auto& b : s.elements()) {
        auto m = checked_meet(s, a, b);
        EXPECT_TRUE(leq(s, m, a));
        EXPECT_TRUE(leq(s, m, b));
        if (compatible(s, a, b)) {
          auto j = join(s, a, b);
          EXPECT_EQ(dom(s, j), s.join_unchecked(dom(s, a), dom(s, b)));
          if (is_zero(s, s.multiply(dom(s, a), dom(s, b))))
            EXPECT_TRUE(is_zero(s, s.multiply(ran(s, a), ran(s, b))));
          EXPECT_EQ(s.phi(j), s.join_unchecked(s.phi(a), s.phi(b)));
        }
      }
    }
  }
}

TEST(FinBIMProperty, UnitLaws) {
  Fixture f("pair:3");
  const auto& s = f.s;
  for (const auto& g : s.units()) {
    for (const auto& e : s.idempotents()) EXPECT_EQ(s.phi(s.multiply(g, e)), s.multiply(s.phi(g), e));
    for (const auto& h : s.units()) {
      auto conj = s.multiply(s.multiply(g, h), s.inverse(g));
      EXPECT_EQ(sigma(s, conj), s.multiply(s.multiply(g, sigma(s, h)), s.inverse(g)));
      if (is_zero(s, s.multiply(sigma(s, g), sigma(s, h)))) EXPECT_EQ(s.multiply(g, h), s.multiply(h, g));
    }
  }
  for (const auto& a : s.elements()) {
    auto fs = fixpoint_and_support(s, a);
    EXPECT_TRUE(orthogonal(s, fs.fixed_part, fs.moving_part));
    EXPECT_EQ(join(s, fs.fixed_part, fs.moving_part), a);
    EXPECT_TRUE(is_zero(s, s.phi(fs.moving_part)));
    if (classify(s, a).is_infinitesimal) {
      auto u = unit_from_infinitesimal(s, a);
      EXPECT_TRUE(is_unit(s, u));
      EXPECT_EQ(s.multiply(u, u), s.one());
      EXPECT_NE(u, s.one());
      EXPECT_TRUE(leq(s, a, u));
    }
  }
}

TEST(FinBIMProperty, MuIsACongruenceSeparatingIdempotents) {
  for (const char* spec : {"pair:2", "group:Z2", "group:Z3", "disjoint_union(pair:1,group:Z2)"}) {
    Fixture f(spec);
    const auto& s = f.s;
    const auto els = s.elements();
    for (const auto& a : els)
      for (const auto& b : els) {
        if (!mu_related(s, a, b)) continue;
        if (is_idempotent(s, a) && is_idempotent(s, b)) EXPECT_EQ(a, b) << spec;
        EXPECT_TRUE(mu_related(s, s.inverse(a), s.inverse(b)));
        for (const auto& c : els) {
          EXPECT_TRUE(mu_related(s, s.multiply(a, c), s.multiply(b, c))) << spec;
          EXPECT_TRUE(mu_related(s, s.multiply(c, a), s.multiply(c, b))) << spec;
        }
      }
  }
  Fixture i3("pair:3");
  for (const auto& a : i3.s.elements())
    for (const auto& b : i3.s.elements()) EXPECT_EQ(mu_related(i3.s, a, b), a == b);
}
