// Acceptance runner: one line per criterion.
//
//   acceptance                      run all criteria
//   acceptance --criterion 5        run one
//   acceptance --expect-fail 8      exit 0 iff exactly the listed criteria fail

#include <functional>
#include <iostream>
#include <set>
#include <variant>

#include "CLI11.hpp"
#include "bim/checkers.hpp"
#include "bim/cuntz_witness.hpp"
#include "bim/duality.hpp"
#include "bim/verify.hpp"

using namespace bim;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
  void require(const PropertyCount& p) {
    require(p.pass(), p.name + ": " + std::to_string(p.failed) + "/" + std::to_string(p.checked) + " failed, first " +
                          p.first_failure);
  }
};

FinBIM kb(const std::string& spec) { return kb_monoid(parse_groupoid_spec(spec)); }

std::size_t oracle_kb_size(std::size_t n) {
  // Σ_k C(n,k)^2 k!
  std::size_t total = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    std::size_t c = 1, f = 1;
    for (std::size_t i = 1; i <= k; ++i) {
      c = c * (n - k + i) / i;
      f *= i;
    }
    total += c * c * f;
  }
  return total;
}

Outcome c1() {
  Outcome o;
  const std::size_t expected[] = {2, 7, 34, 209};
  std::size_t fact = 1;
  for (std::size_t n = 1; n <= 4; ++n) {
    fact *= n;
    const auto s = kb("pair:" + std::to_string(n));
    o.require(s.size() == expected[n - 1] && s.size() == oracle_kb_size(n),
              "|KB(pair:" + std::to_string(n) + ")| = " + std::to_string(s.size()));
    o.require(s.units().size() == fact, "|units| of I_" + std::to_string(n) + " = " + std::to_string(s.units().size()));
  }
  return o;
}

Outcome c2() {
  Outcome o;
  const auto p = meet_coherence(kb("pair:3"));
  o.require(p);
  o.require(p.checked == 34 * 34, "checked " + std::to_string(p.checked) + " pairs");
  return o;
}

Outcome c3() {
  Outcome o;
  const auto i3 = kb("pair:3");
  o.require(fixpoint_laws(i3));
  PropertyCount joins;
  joins.name = "phi of compatible joins on I_3";
  for (const auto& a : i3.elements())
    for (const auto& b : i3.elements())
      if (compatible(i3, a, b))
        joins.record(i3.phi(join(i3, a, b)) == join(i3, i3.phi(a), i3.phi(b)), i3.format(a) + ", " + i3.format(b));
  o.require(joins);
  Rng rng(42);
  const auto c = fixpoint_laws(CuntzMonoid(2), rng, 1000, 6);
  o.require(c);
  o.require(c.checked == 4000, "C_2 cases " + std::to_string(c.checked));
  return o;
}

Outcome c4() {
  Outcome o;
  Rng rng(42);
  o.require(refinement_laws(kb("pair:3"), rng, 500));
  o.require(refinement_laws(CuntzMonoid(2), rng, 500));
  return o;
}

Outcome c5() {
  Outcome o;
  for (const char* spec : {"pair:2", "pair:3"}) {
    const auto p = classify_monoid(kb(spec));
    o.require(p.fundamental && p.factorizable && p.basic && p.zero_simplifying && !p.zero_simple &&
                  !p.congruence_free,
              std::string(spec) + " profile");
  }
  o.require(!classify_monoid(kb("group:Z2")).fundamental, "kb(group:Z2) fundamental");
  const auto du = classify_monoid(kb("disjoint_union(pair:2,pair:3)"));
  o.require(du.fundamental && !du.zero_simplifying, "kb(pair:2 ⊔ pair:3) profile");
  return o;
}

Outcome c6() {
  Outcome o;
  for (const char* spec : {"pair:1", "pair:2", "pair:3", "pair:4", "group:Z2", "group:Z3",
                           "disjoint_union(pair:2,pair:2)"}) {
    const auto r = roundtrip(kb(spec));
    o.require(r.ok, std::string(spec) + ": " + r.violation);
  }
  std::vector<std::string> groupoids = corpus_specs();
  groupoids.push_back("pair:4");
  for (const auto& spec : groupoids) {
    const auto r = roundtrip_g(parse_groupoid_spec(spec));
    o.require(r.ok, spec + ": " + r.violation);
  }
  return o;
}

Outcome c7() {
  Outcome o;
  std::vector<std::string> corpus = corpus_specs();
  corpus.push_back("pair:4");
  for (const auto& spec : corpus) {
    const auto s = kb(spec);
    const auto t = theorem_one_check(s);
    o.require(t.fundamental_iff_effective(), spec + ": fundamental vs effective");
    o.require(t.zero_simplifying_iff_minimal(), spec + ": 0-simplifying vs minimal");
    const auto c = ideal_correspondence(s);
    o.require(c.vee_ideals.size() == (std::size_t{1} << c.orbit_count), spec + ": ideal count");
    o.require(c.oracle_agrees && c.order_iso, spec + ": ideal order isomorphism");
  }
  return o;
}

Outcome c8() {
  Outcome o;
  const std::vector<std::vector<const char*>> subgroups = {
      {}, {"(1 2)"}, {"(1 3)"}, {"(2 3)"}, {"(1 2 3)"}, {"(1 2)", "(1 2 3)"}};
  for (const auto& gens : subgroups) {
    std::vector<Permutation> perms;
    std::string name = "<";
    for (auto t : gens) {
      perms.push_back(parse_permutation(t, 3));
      name += t;
    }
    name += ">";
    const auto group = generate_group(3, perms);
    const auto s = monoid_from_group(3, perms);
    std::vector<Bisection> carrier(s.elements().begin(), s.elements().end());
    o.require(!brute_force_closure_failure(s.groupoid(), carrier).has_value(), name + " carrier not closed");
    const auto p = classify_monoid(s);
    o.require(p.fundamental, name + " not fundamental");
    std::vector<Bisection> expected;
    for (const auto& g : group) expected.push_back(permutation_bisection(s.groupoid(), g));
    std::sort(expected.begin(), expected.end());
    std::vector<Bisection> units(s.units().begin(), s.units().end());
    std::sort(units.begin(), units.end());
    o.require(units == expected, name + ": units have " + std::to_string(units.size()) + " elements, the subgroup " +
                                     std::to_string(expected.size()));
    std::vector<bool> reached(3, false);
    for (const auto& g : group) reached[g[0]] = true;
    const bool transitive = reached[0] && reached[1] && reached[2];
    o.require(p.zero_simplifying == transitive, name + " 0-simplifying vs transitive");
  }
  const auto i2 = monoid_from_group(2, {parse_permutation("(1 2)", 2)});
  const auto full = kb("pair:2");
  o.require(i2.size() == full.size(), "<(1 2)> on 2 points gives " + std::to_string(i2.size()) + " elements");
  return o;
}

Outcome c9() {
  Outcome o;
  for (const char* spec : {"pair:2", "pair:3"}) {
    const auto r = armature_check(kb(spec));
    o.require(r.pass(), std::string(spec) + ": " + to_json(r).dump());
  }
  Rng rng(42);
  o.require(armature_bounded(CuntzMonoid(2), rng, 200, 4));
  return o;
}

Outcome c10() {
  Outcome o;
  const CuntzMonoid m(2);
  const auto p = m.parse_element("e->0"), q = m.parse_element("e->1");
  o.require(m.multiply(m.inverse(p), p) == m.one(), "p^-1 p");
  o.require(m.multiply(m.inverse(q), q) == m.one(), "q^-1 q");
  o.require(m.multiply(m.multiply(p, m.inverse(p)), m.multiply(q, m.inverse(q))) == m.zero(), "p p^-1 q q^-1");
  Rng rng(42);
  o.require(unit_closure(m, rng, 500));
  o.require(involutions(m, rng, 500));
  return o;
}

Outcome c11() {
  Outcome o;
  const CuntzMonoid m(2);
  Rng rng(42);
  for (const char* op : {"transporter", "orthogonal-pencil", "properly-infinite", "conrade-unit", "piecewise-units",
                         "zero-simple-witness"})
    o.require(witness_certificates(m, rng, op, 200));
  return o;
}

Outcome c12() {
  Outcome o;
  const auto i3 = kb("pair:3");
  for (const auto& a : i3.elements())
    o.require(std::holds_alternative<BasicDecomposition>(basic_decompose(i3, a)), "I_3 at " + i3.format(a));
  const auto z2 = kb("group:Z2");
  const auto r = basic_decompose(z2, z2.parse("{g}"));
  o.require(std::holds_alternative<BasicFailure>(r) &&
                !std::get<BasicFailure>(r).witness.empty(),
            "kb(group:Z2) {g} decomposed");
  const CuntzMonoid c2(2);
  const auto rc = basic_decompose(c2, c2.parse_element("0->00, 10->01, 11->1"));
  o.require(std::holds_alternative<CuntzBasicFailure>(rc), "C_2 element decomposed");
  if (const auto* f = std::get_if<CuntzBasicFailure>(&rc))
    o.require(std::any_of(f->witnesses.begin(), f->witnesses.end(),
                          [](const Rule& x) { return x.from == "11" && x.to == "1"; }),
              "witness (11,1) missing");
  for (const auto& spec : corpus_specs()) {
    const auto s = kb(spec);
    bool all_basic = true;
    for (const auto& a : s.elements()) all_basic = all_basic && std::holds_alternative<BasicDecomposition>(basic_decompose(s, a));
    o.require(all_basic == groupoid_properties(*groupoid_of(s).groupoid).principal, spec + ": basic vs principal");
  }
  return o;
}

Outcome c13() {
  Outcome o;
  Rng rng(42);
  const auto i3 = commutator_laws(kb("pair:3"), rng, 300);
  o.require(i3);
  o.require(i3.checked == 600, "I_3 cases " + std::to_string(i3.checked));
  const auto c2 = commutator_laws(CuntzMonoid(2), rng, 300);
  o.require(c2);
  o.require(moved_points(CuntzMonoid(2), rng, 100, 4));
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"cardinalities of KB(pair:n) and their unit groups", c1},
      {"meet coherence on I_3", c2},
      {"fixed-point and support laws on I_3 and C_2", c3},
      {"orthogonal refinement in both engines", c4},
      {"class profiles", c5},
      {"duality round trips", c6},
      {"groupoid dictionary and vee-ideal count", c7},
      {"monoids from subgroups of S_3", c8},
      {"armature axioms", c9},
      {"Cuntz relations, unit closure, involutions", c10},
      {"constructive witnesses in C_2", c11},
      {"basic and principal boundary", c12},
      {"commutators, supports and moved points", c13},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only, expect_fail;
  app.add_option("--criterion", only, "Run only these criteria")->check(CLI::Range(1, 13));
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail")->check(CLI::Range(1, 13));
  CLI11_PARSE(app, argc, argv);

  std::set<int> failed;
  for (int i = 1; i <= static_cast<int>(criteria().size()); ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), i) == only.end()) continue;
    const auto& c = criteria()[i - 1];
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i << ": " << c.title;
    if (!o.pass) std::cout << " (" << o.detail << ")";
    std::cout << std::endl;
    if (!o.pass) failed.insert(i);
  }
  std::set<int> expected;
  for (int i : expect_fail)
    if (only.empty() || std::find(only.begin(), only.end(), i) != only.end()) expected.insert(i);
  return failed == expected ? 0 : 1;
}
