#include <gtest/gtest.h>

#include <variant>

#include "bim/cuntz.hpp"
#include "bim/cuntz_witness.hpp"
#include "bim/error.hpp"
#include "bim/random.hpp"

using namespace bim;

namespace {

const CuntzMonoid C2(2);
const CuntzMonoid C3(3);

CuntzElement el(const CuntzMonoid& m, const char* text) { return m.parse_element(text); }
ClopenSet cl(const CuntzMonoid& m, const char* text) { return m.parse_clopen(text); }

// Test-side evaluation straight from a rule list: the rule whose domain word
// prefixes w, if any.
std::optional<Word> apply_rules(const std::vector<Rule>& rules, const Word& w) {
  for (const auto& r : rules)
    if (w.compare(0, r.from.size(), r.from) == 0 && w.size() >= r.from.size()) return r.to + w.substr(r.from.size());
  return std::nullopt;
}

std::optional<Word> apply(const CuntzMonoid& m, const CuntzElement& s, const Word& w) {
  auto out = m.evaluate(s, w);
  EXPECT_NE(out.kind, EvalOutcome::Kind::needs_longer_input) << m.format(s) << " on " << w;
  if (out.kind == EvalOutcome::Kind::mapped) return out.image;
  return std::nullopt;
}

Word random_word(const CuntzMonoid& m, Rng& rng, std::size_t len) {
  std::uniform_int_distribution<unsigned> letter(0, m.alphabet() - 1);
  Word w;
  for (std::size_t i = 0; i < len; ++i) w += static_cast<char>('0' + letter(rng));
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// Examples

TEST(Cuntz, Canonicalize) {
  EXPECT_EQ(C2.canonicalize({{"0", "0"}, {"1", "1"}}), C2.one());
  EXPECT_EQ(C2.format(C2.canonicalize({{"", "0"}})), "e->0");
  EXPECT_EQ(C2.format(C2.canonicalize({{"00", "10"}, {"01", "11"}})), "0->1");
  EXPECT_THROW(C2.canonicalize({{"0", "1"}, {"01", "0"}}), ValidationError);
  EXPECT_THROW(C2.canonicalize({{"2", "1"}}), Error);
  EXPECT_THROW(CuntzMonoid(2, 4).canonicalize({{"00000", "1"}}), DepthCapError);
}

TEST(Cuntz, Evaluate) {
  const auto p = el(C2, "e->0");
  EXPECT_EQ(C2.evaluate(p, "11").image, "011");
  EXPECT_EQ(C2.evaluate(el(C2, "0->10"), "1").kind, EvalOutcome::Kind::undefined);
  EXPECT_EQ(C2.evaluate(el(C2, "10->0"), "1").kind, EvalOutcome::Kind::needs_longer_input);
}

TEST(Cuntz, PolycyclicRelations) {
  const auto p = el(C2, "e->0"), q = el(C2, "e->1");
  EXPECT_EQ(C2.format(C2.multiply(p, q)), "e->01");
  EXPECT_EQ(C2.multiply(C2.inverse(p), p), C2.one());
  EXPECT_EQ(C2.multiply(C2.inverse(q), q), C2.one());
  EXPECT_EQ(C2.multiply(C2.multiply(p, C2.inverse(p)), C2.multiply(q, C2.inverse(q))), C2.zero());
}

TEST(Cuntz, FixpointsAndBasic) {
  const auto s = el(C2, "0->0, 10->11, 11->10");
  EXPECT_EQ(C2.format(C2.as_clopen(C2.phi(s))), "{0}");
  EXPECT_EQ(C2.format(C2.as_clopen(sigma(C2, s))), "{1}");
  auto r = basic_decompose(C2, s);
  ASSERT_TRUE(std::holds_alternative<CuntzBasicDecomposition>(r));
  const auto& d = std::get<CuntzBasicDecomposition>(r);
  EXPECT_EQ(C2.format(d.idempotent), "{0}");
  ASSERT_EQ(d.infinitesimals.size(), 2u);
  EXPECT_EQ(C2.format(d.infinitesimals[0]), "10->11");
  EXPECT_EQ(C2.format(d.infinitesimals[1]), "11->10");

  auto f = basic_decompose(C2, el(C2, "0->00, 10->01, 11->1"));
  ASSERT_TRUE(std::holds_alternative<CuntzBasicFailure>(f));
  const auto& w = std::get<CuntzBasicFailure>(f).witnesses;
  EXPECT_TRUE(std::any_of(w.begin(), w.end(), [](const Rule& r) { return r.from == "11" && r.to == "1"; }));
}

TEST(Cuntz, ClopenOps) {
  EXPECT_EQ(C2.format(C2.clopen_complement(cl(C2, "{0}"))), "{1}");
  EXPECT_EQ(C2.format(C2.clopen_meet(cl(C2, "{0}"), cl(C2, "{00, 01}"))), "{0}");
  EXPECT_EQ(C2.format(C2.clopen_complement(cl(C2, "{01}"))), "{00, 1}");
  EXPECT_TRUE(C2.clopen_complement(C2.clopen_one()).empty());
  EXPECT_TRUE(C2.clopen_leq(cl(C2, "{010}"), cl(C2, "{01}")));
  EXPECT_EQ(cl(C2, "{0, 1}"), C2.clopen_one());
}

TEST(Cuntz, ClopenIso) {
  EXPECT_EQ(C2.format(clopen_iso(C2, cl(C2, "{0}"), cl(C2, "{1}"))), "0->1");
  EXPECT_EQ(clopen_iso(C2, cl(C2, "{0}"), cl(C2, "{10, 11}")), C2.canonicalize({{"00", "10"}, {"01", "11"}}));
  EXPECT_THROW(clopen_iso(C2, C2.clopen({}), cl(C2, "{1}")), PreconditionError);
  try {
    clopen_iso(C3, cl(C3, "{0}"), cl(C3, "{0, 1}"));
    FAIL() << "expected a congruence error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("mod 2"), std::string::npos) << e.what();
  }
  const auto s = clopen_iso(C3, cl(C3, "{0}"), cl(C3, "{10, 11, 2}"));
  EXPECT_EQ(C3.domain(s), cl(C3, "{0}"));
  EXPECT_EQ(C3.range(s), cl(C3, "{10, 11, 2}"));
}

TEST(Cuntz, Transporter) {
  EXPECT_EQ(C2.format(transporter(C2, cl(C2, "{1}"), cl(C2, "{0}"))), "1->00");
  EXPECT_EQ(transporter(C2, cl(C2, "{0, 1}"), cl(C2, "{0}")), C2.canonicalize({{"0", "000"}, {"1", "001"}}));
  const auto x = transporter(C2, C2.clopen_one(), cl(C2, "{11}"));
  EXPECT_EQ(C2.domain(x), C2.clopen_one());
  EXPECT_TRUE(C2.clopen_leq(C2.range(x), cl(C2, "{11}")));
  EXPECT_THROW(transporter(C2, cl(C2, "{}"), cl(C2, "{0}")), PreconditionError);
}

TEST(Cuntz, InfinitesimalIn) {
  EXPECT_EQ(C2.format(infinitesimal_in(C2, C2.clopen_one())), "0->1");
  EXPECT_EQ(C2.format(infinitesimal_in(C2, cl(C2, "{0}"))), "00->01");
  EXPECT_THROW(infinitesimal_in(C2, cl(C2, "{}")), PreconditionError);
}

TEST(Cuntz, ProperlyInfinite) {
  auto [x, y] = properly_infinite_witness(C2, C2.clopen_one());
  EXPECT_EQ(x, el(C2, "e->0"));
  EXPECT_EQ(y, el(C2, "e->1"));
  auto [x1, y1] = properly_infinite_witness(C2, cl(C2, "{1}"));
  EXPECT_EQ(C2.format(x1), "1->10");
  EXPECT_EQ(C2.format(y1), "1->11");
  auto [x2, y2] = properly_infinite_witness(C2, cl(C2, "{0, 1}"));
  EXPECT_EQ(x2, x);
  EXPECT_EQ(y2, y);
}

TEST(Cuntz, ConradeUnit) {
  const auto g = conrade_unit(C2, cl(C2, "{0}"), cl(C2, "{11}"));
  EXPECT_EQ(g, C2.canonicalize({{"0", "110"}, {"110", "0"}, {"10", "10"}, {"111", "111"}}));
  auto cert = certify(C2, "conrade-unit", {"{0}", "{1}"});
  EXPECT_TRUE(cert["verified"].get<bool>()) << cert.dump();
  EXPECT_THROW(conrade_unit(C2, C2.clopen_one(), cl(C2, "{0}")), PreconditionError);
  EXPECT_THROW(conrade_unit(C2, cl(C2, "{0}"), cl(C2, "{}")), PreconditionError);
  // f <= e takes the composite branch.
  const auto h = conrade_unit(C2, cl(C2, "{0}"), cl(C2, "{01}"));
  EXPECT_TRUE(is_unit(C2, h));
  EXPECT_TRUE(C2.clopen_leq(C2.as_clopen(C2.multiply(C2.multiply(h, C2.identity(cl(C2, "{0}"))), C2.inverse(h))),
                            cl(C2, "{01}")));
}

TEST(Cuntz, PiecewiseUnits) {
  const auto p = el(C2, "e->0");
  auto pieces = piecewise_unit_decomposition(C2, p);
  ASSERT_EQ(pieces.size(), 2u);
  EXPECT_EQ(C2.format(pieces[0].piece), "0->00");
  EXPECT_EQ(C2.format(pieces[1].piece), "1->01");
  for (const auto& pu : pieces) {
    EXPECT_TRUE(is_unit(C2, pu.unit));
    EXPECT_TRUE(leq(C2, pu.piece, pu.unit));
  }
  EXPECT_EQ(join(C2, pieces[0].piece, pieces[1].piece), p);

  const auto swap = el(C2, "0->1, 1->0");
  auto single = piecewise_unit_decomposition(C2, swap);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].unit, swap);

  const auto a = el(C2, "0->10");
  auto one = piecewise_unit_decomposition(C2, a);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].unit, unit_from_infinitesimal(C2, a));
}

TEST(Cuntz, OrthogonalPencil) {
  auto p = orthogonal_pencil(C2, cl(C2, "{0, 1}"), cl(C2, "{0}"));
  ASSERT_EQ(p.elements.size(), 2u);
  EXPECT_EQ(C2.format(p.elements[0]), "0->000");
  EXPECT_EQ(C2.format(p.elements[1]), "1->001");
  EXPECT_TRUE(pencil_valid(C2, p));
  auto q = orthogonal_pencil(C2, cl(C2, "{0}"), C2.clopen_one());
  ASSERT_EQ(q.elements.size(), 1u);
  EXPECT_EQ(C2.format(q.elements[0]), "0->0");
  auto r = orthogonal_pencil(C2, C2.clopen_one(), cl(C2, "{11}"));
  ASSERT_EQ(r.elements.size(), 2u);
  EXPECT_TRUE(pencil_valid(C2, r));
  EXPECT_TRUE(orthogonal(C2, r.elements[0], r.elements[1]));
}

TEST(Cuntz, ZeroSimpleWitness) {
  const auto w = zero_simple_witness(C2, cl(C2, "{0, 10}"), cl(C2, "{111}"));
  EXPECT_EQ(C2.domain(w), cl(C2, "{0, 10}"));
  EXPECT_TRUE(C2.clopen_leq(C2.range(w), cl(C2, "{111}")));
}

TEST(Cuntz, MovedPoints) {
  auto swap = moved_point_check(C2, el(C2, "0->1, 1->0"), 4);
  EXPECT_TRUE(swap.ok());
  EXPECT_EQ(swap.sigma, C2.clopen_one());
  EXPECT_EQ(swap.moved.size(), 2u);

  auto id = moved_point_check(C2, C2.one(), 4);
  EXPECT_TRUE(id.ok());
  EXPECT_TRUE(id.sigma.empty());
  EXPECT_TRUE(id.moved.empty());

  auto g = moved_point_check(C2, el(C2, "0->00, 10->01, 11->1"), 4);
  EXPECT_TRUE(g.ok());
  EXPECT_EQ(g.sigma, C2.clopen_one());
  bool saw = false;
  for (const auto& mp : g.moved)
    if (mp.rule.from == "11") {
      saw = true;
      EXPECT_EQ(format_point(mp.point), "110(0)^inf");
      EXPECT_FALSE(points_equal(mp.point, mp.image));
    }
  EXPECT_TRUE(saw);
  EXPECT_THROW(moved_point_check(C2, el(C2, "e->0"), 4), PreconditionError);
  EXPECT_THROW(moved_point_check(C2, C2.one(), 100), PreconditionError);
}

TEST(Cuntz, Parsing) {
  EXPECT_EQ(el(C2, "[(0,00),(10,01),(11,1)]"), el(C2, "0->00, 10->01, 11->1"));
  EXPECT_EQ(el(C2, R"(["0->1", "1->0"])"), el(C2, "0->1, 1->0"));
  EXPECT_EQ(el(C2, "zero"), C2.zero());
  EXPECT_EQ(cl(C2, "{e}"), C2.clopen_one());
  EXPECT_TRUE(cl(C2, "{}").empty());
  EXPECT_THROW(el(C2, "0->1,"), ParseError);
  EXPECT_THROW(el(C2, "0-1"), ParseError);
  const auto s = el(C2, "0->00, 10->01, 11->1");
  EXPECT_EQ(C2.parse_element(C2.to_json(s).dump()), s);
  EXPECT_EQ(C2.parse_clopen(C2.to_json(cl(C2, "{0, 110}")).dump()), cl(C2, "{0, 110}"));
}

TEST(Cuntz, Certificates) {
  for (const auto& [op, inputs] : std::vector<std::pair<std::string, std::vector<std::string>>>{
           {"clopen-iso", {"{0}", "{10, 11}"}},
           {"transporter", {"{1}", "{0}"}},
           {"infinitesimal-in", {"{0}"}},
           {"properly-infinite", {"{1}"}},
           {"conrade-unit", {"{0}", "{11}"}},
           {"piecewise-units", {"e->0"}},
           {"orthogonal-pencil", {"e", "{11}"}},
           {"zero-simple-witness", {"{0, 10}", "{111}"}},
           {"moved-points", {"0->00, 10->01, 11->1", "4"}},
       }) {
    auto cert = certify(C2, op, inputs);
    EXPECT_TRUE(cert["verified"].get<bool>()) << cert.dump();
    auto reloaded = nlohmann::json::parse(cert.dump());
    auto check = verify_certificate(reloaded);
    EXPECT_TRUE(check.ok) << op << ": " << check.reason;
  }
  auto cert = certify(C2, "conrade-unit", {"{0}", "{11}"});
  cert["output"]["element"] = "0->1, 1->0";
  auto bad = verify_certificate(cert);
  EXPECT_FALSE(bad.ok);
  EXPECT_NE(bad.reason.find("g e g^-1 <= f"), std::string::npos) << bad.reason;
  EXPECT_THROW(certify(C2, "nope", {}), PreconditionError);
  EXPECT_THROW(certify(C2, "transporter", {"{0}"}), PreconditionError);
}

// ---------------------------------------------------------------------------
// Properties

TEST(CuntzProperty, CanonicalFormIsSound) {
  Rng rng(42);
  for (const CuntzMonoid* m : {&C2, &C3}) {
    for (int trial = 0; trial < 500; ++trial) {
      const auto rules = random_rules(*m, rng, 5);
      const auto s = m->canonicalize(rules);
      EXPECT_EQ(m->canonicalize(s.rules()), s);
      for (int probe = 0; probe < 50; ++probe) {
        const auto w = random_word(*m, rng, 8);
        ASSERT_EQ(apply(*m, s, w), apply_rules(rules, w)) << m->format(s) << " on " << w;
      }
    }
  }
}

TEST(CuntzProperty, AlgebraMatchesEvaluation) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_element(C2, rng, 4), b = random_element(C2, rng, 4);
    const auto ab = C2.multiply(a, b), inv = C2.inverse(a), m = meet(C2, a, b);
    for (int probe = 0; probe < 30; ++probe) {
      const auto w = random_word(C2, rng, 14);
      const auto bw = apply(C2, b, w);
      EXPECT_EQ(apply(C2, ab, w), bw ? apply(C2, a, *bw) : std::nullopt);
      if (auto aw = apply(C2, a, w)) EXPECT_EQ(apply(C2, inv, *aw), w);
      const auto aw = apply(C2, a, w);
      EXPECT_EQ(apply(C2, m, w), aw && bw && *aw == *bw ? aw : std::nullopt)
          << C2.format(a) << " ∧ " << C2.format(b) << " on " << w;
    }
  }
}

TEST(CuntzProperty, InverseMonoidLaws) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_element(C2, rng, 5), b = random_element(C2, rng, 5);
    const auto ai = C2.inverse(a);
    EXPECT_EQ(C2.multiply(C2.multiply(a, ai), a), a);
    EXPECT_EQ(C2.multiply(C2.multiply(ai, a), ai), ai);
    EXPECT_EQ(C2.inverse(C2.multiply(a, b)), C2.multiply(C2.inverse(b), ai));
    const auto e = dom(C2, a), f = ran(C2, b);
    EXPECT_EQ(C2.multiply(e, f), C2.multiply(f, e));
    EXPECT_EQ(C2.as_clopen(e), C2.domain(a));
    EXPECT_EQ(C2.as_clopen(f), C2.range(b));
  }
}

TEST(CuntzProperty, FixpointLaws) {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_element(C2, rng, 6);
    EXPECT_EQ(C2.phi(s), meet(C2, s, C2.one()));
    const auto fs = fixpoint_and_support(C2, s);
    EXPECT_TRUE(orthogonal(C2, fs.fixed_part, fs.moving_part));
    EXPECT_EQ(join(C2, fs.fixed_part, fs.moving_part), s);
    EXPECT_TRUE(is_zero(C2, C2.phi(fs.moving_part)));

    const auto g = random_unit(C2, rng, 4);
    const auto e = C2.identity(random_clopen(C2, rng, 4));
    EXPECT_EQ(C2.phi(C2.multiply(g, e)), C2.multiply(C2.phi(g), e));

    const auto family = random_compatible_family(C2, rng, 4, 3);
    CuntzElement lhs = C2.zero(), rhs = C2.zero();
    for (const auto& x : family) {
      lhs = join(C2, lhs, x);
      rhs = join(C2, rhs, C2.phi(x));
    }
    EXPECT_EQ(C2.phi(lhs), rhs);
  }
}

TEST(CuntzProperty, MeetIsGreatestLowerBound) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_element(C2, rng, 4), b = random_element(C2, rng, 4);
    const auto m = meet(C2, a, b);
    EXPECT_EQ(meet(C2, a, a), a);
    EXPECT_TRUE(leq(C2, m, a));
    EXPECT_TRUE(leq(C2, m, b));
    for (int i = 0; i < 200; ++i) {
      const auto c = C2.multiply(i % 2 ? a : b, C2.identity(random_clopen(C2, rng, 5)));
      if (leq(C2, c, a) && leq(C2, c, b)) EXPECT_TRUE(leq(C2, c, m));
    }
  }
}

TEST(CuntzProperty, InfinitesimalTestsAgree) {
  Rng rng(19);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = random_element(C2, rng, 5);
    const bool by_square = !s.empty() && C2.multiply(s, s).empty();
    const bool by_clopens = !s.empty() && C2.clopen_meet(C2.domain(s), C2.range(s)).empty();
    EXPECT_EQ(by_square, by_clopens);
    EXPECT_EQ(classify(C2, s).is_infinitesimal, by_square);
  }
}

TEST(CuntzProperty, UnitClosure) {
  Rng rng(23);
  for (const CuntzMonoid* m : {&C2, &C3}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto g = random_unit(*m, rng, 4), h = random_unit(*m, rng, 4);
      EXPECT_TRUE(is_unit(*m, g));
      EXPECT_TRUE(is_unit(*m, m->multiply(g, h)));
      EXPECT_TRUE(is_unit(*m, m->inverse(g)));
      EXPECT_EQ(m->multiply(g, m->inverse(g)), m->one());
      EXPECT_TRUE(classify(*m, g).is_unit);
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_element(C2, rng, 5);
    if (!is_infinitesimal(C2, s)) continue;
    const auto u = unit_from_infinitesimal(C2, s);
    EXPECT_TRUE(is_unit(C2, u));
    EXPECT_EQ(C2.multiply(u, u), C2.one());
    EXPECT_NE(u, C2.one());
    EXPECT_TRUE(leq(C2, s, u));
  }
}

TEST(CuntzProperty, SupportsAndCommutators) {
  Rng rng(29);
  auto shift_into = [](const CuntzElement& g, char letter) {
    std::vector<Rule> rules;
    for (const auto& r : g.rules()) rules.push_back({letter + r.from, letter + r.to});
    rules.push_back({std::string(1, letter == '0' ? '1' : '0'), std::string(1, letter == '0' ? '1' : '0')});
    return C2.canonicalize(std::move(rules));
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_unit(C2, rng, 4), h = random_unit(C2, rng, 4);
    EXPECT_EQ(sigma(C2, C2.multiply(C2.multiply(g, h), C2.inverse(g))),
              C2.multiply(C2.multiply(g, sigma(C2, h)), C2.inverse(g)));
    const auto k = random_unit(C2, rng, 3);
    const auto x = C2.multiply(C2.multiply(k, shift_into(g, '0')), C2.inverse(k));
    const auto y = C2.multiply(C2.multiply(k, shift_into(h, '1')), C2.inverse(k));
    ASSERT_TRUE(is_zero(C2, C2.multiply(sigma(C2, x), sigma(C2, y))));
    EXPECT_EQ(C2.multiply(x, y), C2.multiply(y, x));
  }
}

TEST(CuntzProperty, OrthogonalRefinement) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto family = random_compatible_family(C2, rng, 4, 4);
    const auto out = orthogonal_refinement<CuntzMonoid>(C2, family);
    CuntzElement a = C2.zero(), b = C2.zero();
    for (const auto& x : family) a = join(C2, a, x);
    for (const auto& x : out) b = join(C2, b, x);
    EXPECT_EQ(a, b);
    for (std::size_t i = 0; i < out.size(); ++i) {
      EXPECT_TRUE(std::any_of(family.begin(), family.end(), [&](const auto& x) { return leq(C2, out[i], x); }));
      for (std::size_t j = i + 1; j < out.size(); ++j) EXPECT_TRUE(orthogonal(C2, out[i], out[j]));
    }
  }
}

TEST(CuntzProperty, WitnessPostconditions) {
  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const auto e = C2.format(random_clopen(C2, rng, 4, true));
    const auto f = C2.format(random_clopen(C2, rng, 4, true));
    std::vector<std::pair<std::string, std::vector<std::string>>> calls = {
        {"transporter", {e, f}}, {"orthogonal-pencil", {e, f}}, {"properly-infinite", {e}},
        {"infinitesimal-in", {e}}, {"zero-simple-witness", {e, f}}};
    if (C2.parse_clopen(e) != C2.clopen_one()) calls.push_back({"conrade-unit", {e, f}});
    const auto s = random_element(C2, rng, 4);
    if (!s.empty()) calls.push_back({"piecewise-units", {C2.format(s)}});
    calls.push_back({"moved-points", {C2.format(random_unit(C2, rng, 4)), "4"}});
    for (const auto& [op, inputs] : calls) {
      const auto cert = certify(C2, op, inputs);
      ASSERT_TRUE(cert["verified"].get<bool>()) << cert.dump();
      const auto check = verify_certificate(nlohmann::json::parse(cert.dump()));
      ASSERT_TRUE(check.ok) << op << ": " << check.reason;
    }
  }
}

TEST(CuntzProperty, BasicFailsExactlyOnComparableRules) {
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_element(C2, rng, 4);
    const bool comparable_rule = std::any_of(s.rules().begin(), s.rules().end(), [](const Rule& r) {
      return r.from != r.to && comparable(r.from, r.to);
    });
    auto r = basic_decompose(C2, s);
    EXPECT_EQ(std::holds_alternative<CuntzBasicFailure>(r), comparable_rule) << C2.format(s);
    if (auto* d = std::get_if<CuntzBasicDecomposition>(&r)) {
      CuntzElement acc = C2.identity(d->idempotent);
      for (const auto& a : d->infinitesimals) {
        EXPECT_TRUE(is_infinitesimal(C2, a));
        acc = join(C2, acc, a);
      }
      EXPECT_EQ(acc, s);
    }
  }
}

TEST(CuntzProperty, BoundedFundamental) {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_element(C2, rng, 3);
    const auto c = non_central_cylinder(C2, s);
    EXPECT_EQ(c.has_value(), !is_idempotent(C2, s));
    if (c) {
      const auto e = C2.identity(*c);
      EXPECT_NE(C2.multiply(s, e), C2.multiply(e, s));
    }
  }
}
