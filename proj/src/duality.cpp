#include "bim/duality.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bim/checkers.hpp"
#include "bim/error.hpp"

namespace bim {

DualGroupoid groupoid_of(const FinBIM& s) {
  DualGroupoid out;
  out.objects.assign(s.idempotent_atoms().begin(), s.idempotent_atoms().end());
  out.arrows.assign(s.atoms().begin(), s.atoms().end());
  std::map<Bisection, ObjectId> obj;
  std::map<Bisection, ArrowId> arr;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < out.objects.size(); ++i) {
    obj.emplace(out.objects[i], static_cast<ObjectId>(i));
    labels.push_back(s.format(out.objects[i]));
  }
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < out.arrows.size(); ++i) {
    const auto& a = out.arrows[i];
    arr.emplace(a, static_cast<ArrowId>(i));
    auto d = obj.find(dom(s, a)), r = obj.find(ran(s, a));
    if (d == obj.end() || r == obj.end()) throw Error("atom " + s.format(a) + " has a non-atomic domain or range");
    arrows.push_back({d->second, r->second, s.format(a)});
  }
  std::vector<std::array<ArrowId, 3>> compose;
  for (std::size_t i = 0; i < out.arrows.size(); ++i)
    for (std::size_t j = 0; j < out.arrows.size(); ++j) {
      const auto& a = out.arrows[i];
      const auto& b = out.arrows[j];
      if (dom(s, a) != ran(s, b)) continue;
      const auto ab = s.multiply(a, b);
      auto it = arr.find(ab);
      if (it == arr.end())
        throw Error("product " + s.format(a) + " * " + s.format(b) + " = " + s.format(ab) + " is not an atom");
      compose.push_back({static_cast<ArrowId>(i), static_cast<ArrowId>(j), it->second});
    }
  std::vector<std::pair<ArrowId, ArrowId>> inverse;
  for (std::size_t i = 0; i < out.arrows.size(); ++i)
    inverse.emplace_back(static_cast<ArrowId>(i), arr.at(s.inverse(out.arrows[i])));
  out.groupoid = std::make_shared<const FiniteGroupoid>(std::move(labels), std::move(arrows), compose, inverse);
  return out;
}

Bisection v_set(const FinBIM& s, const DualGroupoid& g, const Bisection& a) {
  std::vector<ArrowId> ids;
  for (std::size_t i = 0; i < g.arrows.size(); ++i)
    if (leq(s, g.arrows[i], a)) ids.push_back(static_cast<ArrowId>(i));
  return Bisection(std::move(ids));
}

IsoReport roundtrip(const FinBIM& s) {
  IsoReport r;
  r.elements = s.size();
  auto fail = [&](std::string why) {
    r.ok = false;
    r.violation = std::move(why);
    return r;
  };
  const auto g = groupoid_of(s);
  const auto kb = FinBIM::full(g.groupoid);
  std::vector<Bisection> image;
  std::map<Bisection, std::size_t> back;
  for (std::size_t i = 0; i < s.size(); ++i) {
    image.push_back(v_set(s, g, s.elements()[i]));
    ++r.checks;
    if (!kb.contains(image.back())) return fail("image of " + s.format(s.elements()[i]) + " is not a local bisection");
    if (!back.emplace(image.back(), i).second)
      return fail("not injective: " + s.format(s.elements()[i]) + " and " + s.format(s.elements()[back[image.back()]]));
  }
  if (back.size() != kb.size())
    return fail("not surjective: " + std::to_string(back.size()) + " images, KB(G(S)) has " +
                std::to_string(kb.size()) + " elements");
  auto img = [&](const Bisection& a) { return image[s.index_of(a)]; };
  if (img(s.zero()) != kb.zero()) return fail("0 not preserved");
  if (img(s.one()) != kb.one()) return fail("1 not preserved");
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& a = s.elements()[i];
    ++r.checks;
    if (img(s.inverse(a)) != kb.inverse(image[i])) return fail("inverse of " + s.format(a));
    for (std::size_t j = 0; j < s.size(); ++j) {
      const auto& b = s.elements()[j];
      r.checks += 3;
      if (img(s.multiply(a, b)) != kb.multiply(image[i], image[j]))
        return fail("product " + s.format(a) + " * " + s.format(b));
      if (img(meet(s, a, b)) != kb.intersection(image[i], image[j]))
        return fail("meet " + s.format(a) + " ∧ " + s.format(b));
      if (compatible(s, a, b) && img(s.join_unchecked(a, b)) != set_union(image[i], image[j]))
        return fail("join " + s.format(a) + " ∨ " + s.format(b));
    }
  }
  r.ok = true;
  return r;
}

IsoReport roundtrip_g(const FiniteGroupoid& g) {
  IsoReport r;
  auto kb = kb_monoid(g);
  auto dual = groupoid_of(kb);
  r.elements = g.arrow_count();
  GroupoidIsomorphism iso;
  iso.objects.assign(g.object_count(), 0);
  iso.arrows.assign(g.arrow_count(), 0);
  std::map<Bisection, ArrowId> arrow_of;
  for (std::size_t i = 0; i < dual.arrows.size(); ++i) arrow_of.emplace(dual.arrows[i], static_cast<ArrowId>(i));
  std::map<Bisection, ObjectId> object_of;
  for (std::size_t i = 0; i < dual.objects.size(); ++i) object_of.emplace(dual.objects[i], static_cast<ObjectId>(i));
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    auto it = arrow_of.find(Bisection{a});
    if (it == arrow_of.end()) {
      r.violation = "arrow " + g.arrow(a).label + " is not an atom of KB(G)";
      return r;
    }
    iso.arrows[a] = it->second;
  }
  for (ObjectId x = 0; x < g.object_count(); ++x) iso.objects[x] = object_of.at(Bisection{g.identity(x)});
  r.checks = g.arrow_count() * g.arrow_count();
  if (!is_isomorphism(g, *dual.groupoid, iso)) {
    r.violation = "arrow to singleton map is not a functor onto G(KB(G))";
    return r;
  }
  if (!find_isomorphism(g, *dual.groupoid)) {
    r.violation = "independent isomorphism search found nothing";
    return r;
  }
  r.ok = true;
  return r;
}

nlohmann::ordered_json to_json(const IsoReport& r) {
  nlohmann::ordered_json j{{"ok", r.ok}, {"elements", r.elements}, {"checks", r.checks}};
  if (!r.ok) j["violation"] = r.violation;
  return j;
}

// ---------------------------------------------------------------------------

namespace {

// Elements whose domain lies below the join of the given idempotent atoms.
std::vector<Bisection> ideal_over(const FinBIM& s, const std::set<Bisection>& atoms) {
  std::vector<Bisection> out;
  for (const auto& x : s.elements()) {
    bool inside = true;
    for (const auto& e : s.idempotent_atoms())
      if (leq(s, e, dom(s, x)) && !atoms.count(e)) inside = false;
    if (inside) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_vee_ideal(const FinBIM& s, const std::vector<Bisection>& elements) {
  std::set<Bisection> in(elements.begin(), elements.end());
  if (!in.count(s.zero())) return false;
  for (const auto& a : elements) {
    for (const auto& x : s.elements()) {
      if (!in.count(s.multiply(x, a)) || !in.count(s.multiply(a, x))) return false;
      if (leq(s, x, a) && !in.count(x)) return false;
    }
    for (const auto& b : elements)
      if (compatible(s, a, b) && !in.count(s.join_unchecked(a, b))) return false;
  }
  return true;
}

}  // namespace

IdealCorrespondence ideal_correspondence(const FinBIM& s) {
  IdealCorrespondence out;
  const auto dual = groupoid_of(s);
  const auto props = groupoid_properties(*dual.groupoid);
  out.orbit_count = props.orbits.size();
  const std::size_t k = props.orbits.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<ObjectId> objects;
    std::set<Bisection> atoms;
    for (std::size_t o = 0; o < k; ++o)
      if (mask & (std::size_t{1} << o))
        for (ObjectId x : props.orbits[o]) {
          objects.push_back(x);
          atoms.insert(dual.objects[x]);
        }
    std::sort(objects.begin(), objects.end());
    out.invariant_opens.push_back(objects);
    out.vee_ideals.push_back({{atoms.begin(), atoms.end()}, ideal_over(s, atoms)});
  }

  // Oracle: every set of idempotent atoms, keeping those whose ideal passes
  // the ∨-ideal closure test.
  std::set<std::vector<Bisection>> by_oracle;
  const auto e_atoms = s.idempotent_atoms();
  if (e_atoms.size() > 20) throw PreconditionError("too many idempotent atoms for the ideal oracle");
  for (std::size_t mask = 0; mask < (std::size_t{1} << e_atoms.size()); ++mask) {
    std::set<Bisection> atoms;
    for (std::size_t i = 0; i < e_atoms.size(); ++i)
      if (mask & (std::size_t{1} << i)) atoms.insert(e_atoms[i]);
    auto elements = ideal_over(s, atoms);
    if (is_vee_ideal(s, elements)) by_oracle.insert(elements);
  }
  std::set<std::vector<Bisection>> by_orbits;
  for (const auto& v : out.vee_ideals) by_orbits.insert(v.elements);
  out.oracle_agrees = by_oracle == by_orbits && by_orbits.size() == out.vee_ideals.size();

  out.order_iso = true;
  for (std::size_t i = 0; i < out.vee_ideals.size(); ++i)
    for (std::size_t j = 0; j < out.vee_ideals.size(); ++j) {
      const auto& a = out.vee_ideals[i].elements;
      const auto& b = out.vee_ideals[j].elements;
      const bool ideals = std::includes(b.begin(), b.end(), a.begin(), a.end());
      const auto& x = out.invariant_opens[i];
      const auto& y = out.invariant_opens[j];
      const bool opens = std::includes(y.begin(), y.end(), x.begin(), x.end());
      if (ideals != opens) out.order_iso = false;
    }
  return out;
}

TheoremOneReport theorem_one_check(const FinBIM& s) {
  TheoremOneReport r;
  const auto profile = classify_monoid(s);
  r.fundamental = profile.fundamental;
  r.zero_simplifying = profile.zero_simplifying;
  const auto props = groupoid_properties(*groupoid_of(s).groupoid);
  r.effective = props.effective;
  r.minimal = props.minimal;
  return r;
}

nlohmann::ordered_json to_json(const TheoremOneReport& r) {
  return {{"fundamental", r.fundamental},
          {"effective", r.effective},
          {"fundamental_iff_effective", r.fundamental_iff_effective()},
          {"zero_simplifying", r.zero_simplifying},
          {"minimal", r.minimal},
          {"zero_simplifying_iff_minimal", r.zero_simplifying_iff_minimal()}};
}

bool is_ultrafilter(const FinBIM& s, const Bisection& a) {
  if (is_zero(s, a)) throw PreconditionError("the zero element generates no proper filter");
  for (const auto& b : s.elements())
    if (!is_zero(s, b) && b != a && leq(s, b, a)) return false;
  return true;
}

bool is_prime_filter(const FinBIM& s, const Bisection& a) {
  if (is_zero(s, a)) throw PreconditionError("the zero element generates no proper filter");
  for (const auto& b : s.elements())
    for (const auto& c : s.elements()) {
      if (!compatible(s, b, c)) continue;
      if (leq(s, a, s.join_unchecked(b, c)) && !leq(s, a, b) && !leq(s, a, c)) return false;
    }
  return true;
}

nlohmann::ordered_json dualize_report(const FinBIM& s) {
  nlohmann::ordered_json j;
  const auto dual = groupoid_of(s);
  j["groupoid"] = to_json(*dual.groupoid);
  j["properties"] = to_json(*dual.groupoid, groupoid_properties(*dual.groupoid));
  j["roundtrip"] = to_json(roundtrip(s));
  const auto ideals = ideal_correspondence(s);
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < ideals.vee_ideals.size(); ++i) {
    nlohmann::ordered_json objs = nlohmann::ordered_json::array();
    for (auto x : ideals.invariant_opens[i]) objs.push_back(dual.groupoid->object_label(x));
    list.push_back({{"objects", objs}, {"size", ideals.vee_ideals[i].elements.size()}});
  }
  j["vee_ideals"] = {{"count", ideals.vee_ideals.size()},
                     {"orbits", ideals.orbit_count},
                     {"oracle_agrees", ideals.oracle_agrees},
                     {"order_iso", ideals.order_iso},
                     {"ideals", list}};
  j["dictionary"] = to_json(theorem_one_check(s));
  std::size_t ultra = 0, prime = 0, agree = 0, filters = 0;
  for (const auto& a : s.elements()) {
    if (is_zero(s, a)) continue;
    ++filters;
    const bool u = is_ultrafilter(s, a), p = is_prime_filter(s, a);
    ultra += u;
    prime += p;
    agree += u == p;
  }
  j["filters"] = {{"filters", filters}, {"ultra", ultra}, {"prime", prime}, {"prime_iff_ultra", agree == filters}};
  return j;
}

}  // namespace bim
