#include "bim/verify.hpp"

#include <algorithm>
#include <future>
#include <map>

#include "bim/checkers.hpp"
#include "bim/cuntz_witness.hpp"
#include "bim/duality.hpp"
#include "bim/error.hpp"
#include "bim/munn.hpp"

namespace bim {

void PropertyCount::record(bool ok, const std::string& what) {
  ++checked;
  if (ok) return;
  if (failed == 0) first_failure = what;
  ++failed;
}

bool SuiteReport::pass() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyCount& p) { return p.pass(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"order-calculus", "duality", "classes", "armature", "cuntz", "all"};
  return names;
}

const std::vector<std::string>& corpus_specs() {
  static const std::vector<std::string> specs = {
      "pair:1",   "pair:2",   "pair:3",
      "group:Z2", "group:Z3", "group:S3",
      "group:V4", "disjoint_union(pair:2,pair:2)", "disjoint_union(pair:2,pair:3)",
      "disjoint_union(pair:1,group:Z2)", "disjoint_union(pair:2,group:Z3)"};
  return specs;
}

namespace {

// Runs `body` and records any exception as a failure of `p`.
template <class F>
PropertyCount guarded(std::string name, F&& body) {
  PropertyCount p;
  p.name = std::move(name);
  try {
    body(p);
  } catch (const std::exception& e) {
    p.record(false, std::string("exception: ") + e.what());
  }
  return p;
}

FinBIM kb(const std::string& spec) { return kb_monoid(parse_groupoid_spec(spec)); }

std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

}  // namespace

// ---------------------------------------------------------------------------
// Finite engine

PropertyCount meet_coherence(const FinBIM& s) {
  return guarded("meet coherence", [&](PropertyCount& p) {
    for (const auto& a : s.elements())
      for (const auto& b : s.elements())
        p.record(s.intersection(a, b) == meet(s, a, b), s.format(a) + " ∧ " + s.format(b));
  });
}

PropertyCount fixpoint_laws(const FinBIM& s) {
  return guarded("fixpoint laws", [&](PropertyCount& p) {
    for (const auto& a : s.elements()) {
      const auto fs = fixpoint_and_support(s, a);
      p.record(s.phi(a) == meet(s, a, s.one()), "phi(s) = s ∧ 1 at " + s.format(a));
      p.record(orthogonal(s, fs.fixed_part, fs.moving_part) && join(s, fs.fixed_part, fs.moving_part) == a &&
                   is_zero(s, s.phi(fs.moving_part)),
               "s = phi(s) ∨ s sigma(s) at " + s.format(a));
    }
    for (const auto& g : s.units())
      for (const auto& e : s.idempotents())
        p.record(s.phi(s.multiply(g, e)) == s.multiply(s.phi(g), e), "phi(ge) at " + s.format(g) + ", " + s.format(e));
  });
}

PropertyCount phi_of_joins(const FinBIM& s, Rng& rng, std::size_t families) {
  return guarded("phi of compatible joins", [&](PropertyCount& p) {
    for (std::size_t i = 0; i < families; ++i) {
      const auto fam = random_compatible_family(s, rng, 1 + below(rng, 4));
      Bisection lhs, rhs;
      for (const auto& x : fam) {
        lhs = join(s, lhs, x);
        rhs = join(s, rhs, s.phi(x));
      }
      p.record(s.phi(lhs) == rhs, "family joining to " + s.format(lhs));
    }
  });
}

namespace {

template <class M>
void check_refinement(const M& m, PropertyCount& p, const std::vector<element_t<M>>& fam) {
  const auto out = orthogonal_refinement<M>(m, fam);
  element_t<M> a = m.zero(), b = m.zero();
  for (const auto& x : fam) a = join(m, a, x);
  bool ok = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    b = join(m, b, out[i]);
    ok = ok && std::any_of(fam.begin(), fam.end(), [&](const auto& x) { return leq(m, out[i], x); });
    for (std::size_t j = i + 1; j < out.size(); ++j) ok = ok && orthogonal(m, out[i], out[j]);
  }
  p.record(ok && a == b, "family joining to " + m.format(a));
}

}  // namespace

PropertyCount refinement_laws(const FinBIM& s, Rng& rng, std::size_t families) {
  return guarded("orthogonal refinement", [&](PropertyCount& p) {
    for (std::size_t i = 0; i < families; ++i) check_refinement(s, p, random_compatible_family(s, rng, 1 + below(rng, 4)));
  });
}

PropertyCount commutator_laws(const FinBIM& s, Rng& rng, std::size_t pairs) {
  return guarded("support conjugation and commutators", [&](PropertyCount& p) {
    for (std::size_t i = 0; i < pairs; ++i) {
      const auto& g = random_unit(s, rng);
      const auto& h = random_unit(s, rng);
      const auto gi = s.inverse(g);
      p.record(sigma(s, s.multiply(s.multiply(g, h), gi)) == s.multiply(s.multiply(g, sigma(s, h)), gi),
               "sigma(ghg^-1) at " + s.format(g) + ", " + s.format(h));
      std::vector<Bisection> partners;
      for (const auto& k : s.units())
        if (is_zero(s, s.multiply(sigma(s, g), sigma(s, k)))) partners.push_back(k);
      const auto& k = partners[below(rng, partners.size())];
      p.record(s.multiply(g, k) == s.multiply(k, g), "[g,h] = 1 at " + s.format(g) + ", " + s.format(k));
    }
  });
}

// ---------------------------------------------------------------------------
// Cuntz engine

namespace {

std::optional<Word> apply_rules(const std::vector<Rule>& rules, const Word& w) {
  for (const auto& r : rules)
    if (is_prefix(r.from, w)) return r.to + w.substr(r.from.size());
  return std::nullopt;
}

std::optional<Word> apply(const CuntzMonoid& m, const CuntzElement& s, const Word& w) {
  const auto out = m.evaluate(s, w);
  if (out.kind == EvalOutcome::Kind::needs_longer_input) throw Error("probe word too short: " + w);
  if (out.kind == EvalOutcome::Kind::mapped) return out.image;
  return std::nullopt;
}

Word random_word(const CuntzMonoid& m, Rng& rng, std::size_t len) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) w += static_cast<char>('0' + below(rng, m.alphabet()));
  return w;
}

// g placed in the cylinder `inside`, the identity elsewhere.
CuntzElement localise(const CuntzMonoid& m, const CuntzElement& g, const Word& inside) {
  std::vector<Rule> rules;
  for (const auto& r : g.rules()) rules.push_back({inside + r.from, inside + r.to});
  const auto rest = m.clopen_complement(m.clopen({inside}));
  for (const auto& w : rest.words()) rules.push_back({w, w});
  return m.canonicalize(std::move(rules));
}

}  // namespace

PropertyCount canonical_soundness(const CuntzMonoid& m, Rng& rng, std::size_t lists, std::size_t probes,
                                  std::size_t depth) {
  return guarded("canonical form soundness (n=" + std::to_string(m.alphabet()) + ")", [&](PropertyCount& p) {
    for (std::size_t i = 0; i < lists; ++i) {
      const auto rules = random_rules(m, rng, depth);
      const auto s = m.canonicalize(rules);
      bool ok = m.canonicalize(s.rules()) == s;
      for (std::size_t k = 0; k < probes && ok; ++k) {
        const auto w = random_word(m, rng, depth + 3);
        ok = apply(m, s, w) == apply_rules(rules, w);
      }
      p.record(ok, m.format(s));
    }
  });
}

PropertyCount inverse_laws(const CuntzMonoid& m, Rng& rng, std::size_t count, std::size_t depth) {
  return guarded("inverse monoid laws", [&](PropertyCount& p) {
    for (std::size_t i = 0; i < count; ++i) {
      const auto a = random_element(m, rng, depth), b = random_element(m, rng, depth);
      const auto ai = m.inverse(a);
      const auto e = dom(m, a), f = ran(m, b);
      p.record(m.multiply(m.multiply(a, ai), a) == a && m.multiply(m.multiply(ai, a), ai) == ai &&
                   m.inverse(m.multiply(a, b)) == m.multiply(m.inverse(b), ai) &&
                   m.multiply(e, f) == m.multiply(f, e),
               m.format(a) + ", " + m.format(b));
    }
  });
}

PropertyCount fixpoint_laws(const CuntzMonoid& m, Rng& rng, std::size_t count, std::size_t depth) {
  return guarded("fixpoint laws", [&](PropertyCount& p) {
    for (std::size_t i = 0; i < count; ++i) {
      const auto s = random_element(m, rng, depth);
      const auto fs = fixpoint_and_support(m, s);
      p.record(m.phi(s) == meet(m, s, m.one()), "phi(s) = s ∧ 1 at " + m.format(s));
      p.record(orthogonal(m, fs.fixed_part, fs.moving_part) && join(m, fs.fixed_part, fs.moving_part) == s &&
                   is_zero(m, m.phi(fs.moving_part)),
               "s = phi(s) ∨ s sigma(s) at " + m.format(s));
      const auto g = random_unit(m, rng, std::min<std::size_t>(depth, 4));
      const auto e = m.identity(random_clopen(m, rng, depth));
      p.record(m.phi(m.multiply(g, e)) == m.multiply(m.phi(g), e), "phi(ge) at " + m.format(g) + ", " + m.format(e));
      const auto fam = random_compatible_family(m, rng, std::min<std::size_t>(depth, 4), 1 + below(rng, 4));
      CuntzElement lhs, rhs;
      for (const auto& x : fam) {
        lhs = join(m, lhs, x);
        rhs = join(m, rhs, m.phi(x));
      }
      p.record(m.phi(lhs) == rhs, "phi of the join " + m.format(lhs));
    }
  });
}

PropertyCount refinement_laws(const CuntzMonoid& m, Rng& rng, std::size_t families) {
  return guarded("orthogonal refinement", [&](PropertyCount& p) {
    for (std::size_t i = 0; i < families; ++i)
      check_refinement(m, p, random_compatible_family(m, rng, 4, 1 + below(rng, 4)));
  });
}

PropertyCount commutator_laws(const CuntzMonoid& m, Rng& rng, std::size_t pairs) {
  return guarded("support conjugation and commutators", [&](PropertyCount& p) {
    for (std::size_t i = 0; i < pairs; ++i) {
      const auto g = random_unit(m, rng, 4), h = random_unit(m, rng, 4);
      const auto gi = m.inverse(g);
      p.record(sigma(m, m.multiply(m.multiply(g, h), gi)) == m.multiply(m.multiply(g, sigma(m, h)), gi),
               "sigma(ghg^-1) at " + m.format(g) + ", " + m.format(h));
      const auto k = random_unit(m, rng, 3);
      const auto x = m.multiply(m.multiply(k, localise(m, g, "0")), m.inverse(k));
      const auto y = m.multiply(m.multiply(k, localise(m, h, "1")), m.inverse(k));
      p.record(is_zero(m, m.multiply(sigma(m, x), sigma(m, y))) && m.multiply(x, y) == m.multiply(y, x),
               "[g,h] = 1 at " + m.format(x) + ", " + m.format(y));
    }
  });
}

PropertyCount unit_closure(const CuntzMonoid& m, Rng& rng, std::size_t pairs) {
  return guarded("unit closure", [&](PropertyCount& p) {
    for (std::size_t i = 0; i < pairs; ++i) {
      const auto g = random_unit(m, rng, 4), h = random_unit(m, rng, 4);
      p.record(is_unit(m, g) && is_unit(m, h) && is_unit(m, m.multiply(g, h)) && is_unit(m, m.inverse(g)) &&
                   m.multiply(g, m.inverse(g)) == m.one(),
               m.format(g) + ", " + m.format(h));
    }
  });
}

PropertyCount involutions(const CuntzMonoid& m, Rng& rng, std::size_t count) {
  return guarded("unit from infinitesimal", [&](PropertyCount& p) {
    while (p.checked < count) {
      auto a = random_element(m, rng, 5);
      if (!is_infinitesimal(m, a)) {
        // Cut a down to an infinitesimal piece: one rule with disjoint ends.
        const auto it = std::find_if(a.rules().begin(), a.rules().end(),
                                     [](const Rule& r) { return !comparable(r.from, r.to); });
        if (it == a.rules().end()) continue;
        a = m.canonicalize({*it});
      }
      const auto u = unit_from_infinitesimal(m, a);
      p.record(is_unit(m, u) && m.multiply(u, u) == m.one() && u != m.one() && leq(m, a, u), m.format(a));
    }
  });
}

PropertyCount infinitesimal_agreement(const CuntzMonoid& m, Rng& rng, std::size_t count) {
  return guarded("infinitesimal tests agree", [&](PropertyCount& p) {
    for (std::size_t i = 0; i < count; ++i) {
      const auto s = random_element(m, rng, 5);
      const bool by_square = !s.empty() && m.multiply(s, s).empty();
      const bool by_clopens = !s.empty() && m.clopen_meet(m.domain(s), m.range(s)).empty();
      p.record(by_square == by_clopens && classify(m, s).is_infinitesimal == by_square, m.format(s));
    }
  });
}

PropertyCount witness_certificates(const CuntzMonoid& m, Rng& rng, const std::string& op, std::size_t pairs) {
  return guarded(op + " certificates", [&](PropertyCount& p) {
    for (std::size_t i = 0; i < pairs; ++i) {
      std::vector<std::string> inputs;
      if (op == "piecewise-units") {
        CuntzElement s;
        while (s.empty()) s = random_element(m, rng, 4);
        inputs = {m.format(s)};
      } else if (op == "moved-points") {
        inputs = {m.format(random_unit(m, rng, 4)), "4"};
      } else {
        const std::size_t depth = op == "zero-simple-witness" ? 3 : 4;
        ClopenSet e = random_clopen(m, rng, depth, true);
        while (op == "conrade-unit" && e == m.clopen_one()) e = random_clopen(m, rng, depth, true);
        const ClopenSet f = random_clopen(m, rng, depth, true);
        inputs = {m.format(e)};
        if (op != "properly-infinite" && op != "infinitesimal-in") inputs.push_back(m.format(f));
      }
      const auto cert = certify(m, op, inputs);
      const auto check = verify_certificate(nlohmann::json::parse(cert.dump()));
      p.record(cert.at("verified").get<bool>() && check.ok, check.ok ? cert.dump() : check.reason);
    }
  });
}

PropertyCount moved_points(const CuntzMonoid& m, Rng& rng, std::size_t units, std::size_t depth) {
  return guarded("moved point check", [&](PropertyCount& p) {
    for (std::size_t i = 0; i < units; ++i) {
      const auto g = random_unit(m, rng, depth);
      p.record(moved_point_check(m, g, depth).ok(), m.format(g));
    }
  });
}

PropertyCount armature_bounded(const CuntzMonoid& m, Rng& rng, std::size_t units, std::size_t depth) {
  return guarded("armature axioms (bounded)", [&](PropertyCount& p) {
    std::vector<CuntzElement> gs;
    for (std::size_t i = 0; i < units; ++i) gs.push_back(random_unit(m, rng, depth));
    const auto cyl = cylinders_up_to(m, depth);
    const auto r = armature_check(m, gs, cyl);
    for (const auto* ax : {&r.o1, &r.o2, &r.o3, &r.o4, &r.o5}) {
      p.checked += ax->checked - 1;
      p.record(ax->pass, ax->counterexample);
    }
  });
}

// ---------------------------------------------------------------------------
// Suites

namespace {

std::vector<PropertyCount> order_calculus(std::uint64_t seed) {
  Rng rng(seed);
  const auto i3 = kb("pair:3");
  const CuntzMonoid c2(2), c3(3);
  std::vector<PropertyCount> out;
  auto add = [&](std::string prefix, PropertyCount p) {
    p.name = prefix + ": " + p.name;
    out.push_back(std::move(p));
  };
  add("I_3", meet_coherence(i3));
  add("I_3", fixpoint_laws(i3));
  add("I_3", phi_of_joins(i3, rng, 200));
  add("I_3", refinement_laws(i3, rng, 200));
  add("I_3", commutator_laws(i3, rng, 100));
  add("C_2", canonical_soundness(c2, rng, 200, 20, 5));
  add("C_3", canonical_soundness(c3, rng, 200, 20, 5));
  add("C_2", inverse_laws(c2, rng, 200, 5));
  add("C_2", fixpoint_laws(c2, rng, 200, 6));
  add("C_2", refinement_laws(c2, rng, 200));
  add("C_2", commutator_laws(c2, rng, 100));
  return out;
}

std::vector<PropertyCount> duality(std::uint64_t) {
  std::vector<PropertyCount> out;
  out.push_back(guarded("S ≅ KB(G(S)) round trips", [](PropertyCount& p) {
    for (const char* spec : {"pair:1", "pair:2", "pair:3", "pair:4", "group:Z2", "group:Z3",
                             "disjoint_union(pair:2,pair:2)"}) {
      const auto r = roundtrip(kb(spec));
      p.record(r.ok, std::string(spec) + ": " + r.violation);
    }
  }));
  out.push_back(guarded("G ≅ G(KB(G)) round trips", [](PropertyCount& p) {
    for (const auto& spec : corpus_specs()) {
      const auto r = roundtrip_g(parse_groupoid_spec(spec));
      p.record(r.ok, spec + ": " + r.violation);
    }
  }));
  out.push_back(guarded("vee-ideals match invariant opens", [](PropertyCount& p) {
    for (const auto& spec : corpus_specs()) {
      const auto c = ideal_correspondence(kb(spec));
      p.record(c.vee_ideals.size() == (std::size_t{1} << c.orbit_count) && c.oracle_agrees && c.order_iso, spec);
    }
  }));
  out.push_back(guarded("groupoid dictionary", [](PropertyCount& p) {
    for (const auto& spec : corpus_specs()) {
      const auto t = theorem_one_check(kb(spec));
      p.record(t.fundamental_iff_effective() && t.zero_simplifying_iff_minimal(), spec);
    }
  }));
  out.push_back(guarded("prime filters are ultrafilters", [](PropertyCount& p) {
    for (const auto& spec : corpus_specs()) {
      const auto s = kb(spec);
      for (const auto& a : s.elements())
        if (!is_zero(s, a)) p.record(is_ultrafilter(s, a) == is_prime_filter(s, a), spec + " at " + s.format(a));
    }
  }));
  return out;
}

bool transitive(std::size_t n, const std::vector<Permutation>& group) {
  std::vector<bool> seen(n, false);
  for (const auto& g : group) seen[g[0]] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Permutations preserving every orbit of the group: the units of (G↓)∨.
std::vector<Permutation> orbit_preserving(std::size_t n, const std::vector<Permutation>& group) {
  std::vector<Permutation> out;
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  do {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      ok = std::any_of(group.begin(), group.end(), [&](const Permutation& g) { return g[x] == p[x]; });
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<PropertyCount> classes(std::uint64_t) {
  std::vector<PropertyCount> out;
  out.push_back(guarded("class profiles", [](PropertyCount& p) {
    for (const char* spec : {"pair:2", "pair:3"}) {
      const auto c = classify_monoid(kb(spec));
      p.record(c.fundamental && c.factorizable && c.basic && c.zero_simplifying && !c.zero_simple &&
                   !c.congruence_free,
               spec);
    }
    p.record(!classify_monoid(kb("group:Z2")).fundamental, "group:Z2");
    const auto du = classify_monoid(kb("disjoint_union(pair:2,pair:3)"));
    p.record(du.fundamental && !du.zero_simplifying, "disjoint_union(pair:2,pair:3)");
  }));
  out.push_back(guarded("corpus cross-checks", [](PropertyCount& p) {
    for (const auto& spec : corpus_specs()) {
      const auto s = kb(spec);
      const auto c = classify_monoid(s);
      const auto g = groupoid_of(s);
      p.record(c.piecewise_factorizable == c.piecewise_by_closure, spec + ": piecewise tests disagree");
      p.record(c.basic == groupoid_properties(*g.groupoid).principal, spec + ": basic vs principal");
      if (c.fundamental && c.zero_simplifying)
        p.record(spec.rfind("pair:", 0) == 0, spec + ": fundamental and 0-simplifying but not I_n");
      if (!c.fundamental) continue;
      for (const auto& u : s.units()) {
        std::vector<Bisection> fixed, below_phi;
        for (const auto& e : s.idempotent_atoms()) {
          if (s.multiply(s.multiply(u, e), s.inverse(u)) == e) fixed.push_back(e);
          if (leq(s, e, s.phi(u))) below_phi.push_back(e);
        }
        p.record(fixed == below_phi, spec + ": fixed atoms of " + s.format(u));
      }
    }
  }));
  out.push_back(guarded("monoids from subgroups of S_3", [](PropertyCount& p) {
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
      const auto c = classify_monoid(s);
      p.record(c.fundamental, name + " fundamental");
      p.record(c.zero_simplifying == transitive(3, group), name + " 0-simplifying vs transitive");
      std::vector<Bisection> expected;
      for (const auto& q : orbit_preserving(3, group)) expected.push_back(permutation_bisection(s.groupoid(), q));
      std::sort(expected.begin(), expected.end());
      std::vector<Bisection> units(s.units().begin(), s.units().end());
      std::sort(units.begin(), units.end());
      p.record(units == expected, name + " units are the orbit-preserving permutations");
    }
    p.record(monoid_from_group(2, {parse_permutation("(1 2)", 2)}).size() == 7, "<(1 2)> on 2 points");
  }));
  out.push_back(guarded("Munn representation", [](PropertyCount& p) {
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto r = munn_monoid(k);
      p.record(r.monoid.elements().size() == r.target.size(), "atoms = " + std::to_string(k));
    }
  }));
  return out;
}

std::vector<PropertyCount> armature(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PropertyCount> out;
  for (const char* spec : {"pair:2", "pair:3"})
    out.push_back(guarded(std::string(spec) + ": armature axioms", [&](PropertyCount& p) {
      const auto r = armature_check(kb(spec));
      for (const auto* ax : {&r.o1, &r.o2, &r.o3, &r.o4, &r.o5}) {
        p.checked += ax->checked - 1;
        p.record(ax->pass, ax->counterexample);
      }
    }));
  auto c = armature_bounded(CuntzMonoid(2), rng, 100, 4);
  c.name = "C_2: " + c.name;
  out.push_back(std::move(c));
  return out;
}

std::vector<PropertyCount> cuntz(std::uint64_t seed) {
  Rng rng(seed);
  const CuntzMonoid c2(2), c3(3);
  std::vector<PropertyCount> out;
  out.push_back(guarded("polycyclic relations", [&](PropertyCount& p) {
    const auto pp = c2.parse_element("e->0"), q = c2.parse_element("e->1");
    p.record(c2.multiply(c2.inverse(pp), pp) == c2.one(), "p^-1 p = 1");
    p.record(c2.multiply(c2.inverse(q), q) == c2.one(), "q^-1 q = 1");
    p.record(is_zero(c2, c2.multiply(ran(c2, pp), ran(c2, q))), "p p^-1 q q^-1 = 0");
  }));
  out.push_back(unit_closure(c2, rng, 200));
  out.push_back(unit_closure(c3, rng, 100));
  out.back().name += " (n=3)";
  out.push_back(involutions(c2, rng, 100));
  out.push_back(infinitesimal_agreement(c2, rng, 200));
  for (const auto& op : witness_operations())
    if (op != "moved-points") out.push_back(witness_certificates(c2, rng, op, 50));
  out.push_back(moved_points(c2, rng, 50, 4));
  out.push_back(guarded("basic decomposition boundary", [&](PropertyCount& p) {
    const auto r = basic_decompose(c2, c2.parse_element("0->00, 10->01, 11->1"));
    p.record(std::holds_alternative<CuntzBasicFailure>(r), "isotropy witness expected");
    for (int i = 0; i < 100; ++i) {
      const auto s = random_element(c2, rng, 4);
      const bool comparable_rule = std::any_of(s.rules().begin(), s.rules().end(), [](const Rule& x) {
        return x.from != x.to && comparable(x.from, x.to);
      });
      p.record(std::holds_alternative<CuntzBasicFailure>(basic_decompose(c2, s)) == comparable_rule, c2.format(s));
    }
  }));
  out.push_back(guarded("bounded fundamental", [&](PropertyCount& p) {
    for (int i = 0; i < 100; ++i) {
      const auto s = random_element(c2, rng, 3);
      p.record(non_central_cylinder(c2, s).has_value() != is_idempotent(c2, s), c2.format(s));
    }
  }));
  return out;
}

using SuiteFn = std::vector<PropertyCount> (*)(std::uint64_t);

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> table = {{"order-calculus", order_calculus},
                                                       {"duality", duality},
                                                       {"classes", classes},
                                                       {"armature", armature},
                                                       {"cuntz", cuntz}};
  return table;
}

}  // namespace

SuiteReport run_suite(const std::string& suite, std::uint64_t seed) {
  SuiteReport r;
  r.suite = suite;
  r.seed = seed;
  if (suite == "all") {
    // Suites run concurrently; results are assembled in a fixed order.
    std::vector<std::pair<std::string, std::future<std::vector<PropertyCount>>>> jobs;
    for (const auto& name : suite_names())
      if (name != "all") jobs.emplace_back(name, std::async(std::launch::async, suites().at(name), seed));
    for (auto& [name, job] : jobs)
      for (auto& p : job.get()) {
        p.name = name + "/" + p.name;
        r.properties.push_back(std::move(p));
      }
    return r;
  }
  const auto it = suites().find(suite);
  if (it == suites().end()) throw PreconditionError("unknown suite '" + suite + "'");
  r.properties = it->second(seed);
  return r;
}

nlohmann::ordered_json to_json(const SuiteReport& r) {
  nlohmann::ordered_json props = nlohmann::ordered_json::array();
  for (const auto& p : r.properties) {
    nlohmann::ordered_json j{{"name", p.name}, {"checked", p.checked}, {"failed", p.failed}, {"pass", p.pass()}};
    if (p.failed) j["first_failure"] = p.first_failure;
    props.push_back(std::move(j));
  }
  return {{"suite", r.suite}, {"seed", r.seed}, {"pass", r.pass()}, {"properties", props}};
}

}  // namespace bim
