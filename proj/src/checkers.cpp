#include "bim/checkers.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

#include "bim/error.hpp"

namespace bim {

namespace {

std::optional<IdempotentPair> zero_simple_failure(const FinBIM& s) {
  std::vector<Bisection> nonzero;
  for (const auto& e : s.idempotents())
    if (!e.empty()) nonzero.push_back(e);
  std::stable_sort(nonzero.begin(), nonzero.end(),
                   [](const Bisection& a, const Bisection& b) { return a.size() > b.size(); });
  for (const auto& e : nonzero)
    for (auto it = nonzero.rbegin(); it != nonzero.rend(); ++it) {
      const auto& f = *it;
      bool found = false;
      for (const auto& x : s.elements())
        if (dom(s, x) == e && leq(s, ran(s, x), f)) {
          found = true;
          break;
        }
      if (!found) return IdempotentPair{e, f};
    }
  return std::nullopt;
}

}  // namespace

std::optional<Bisection> centralizer_witness(const FinBIM& s) {
  for (const auto& a : s.elements()) {
    if (is_idempotent(s, a)) continue;
    bool central = true;
    for (const auto& e : s.idempotents())
      if (s.multiply(a, e) != s.multiply(e, a)) {
        central = false;
        break;
      }
    if (central) return a;
  }
  return std::nullopt;
}

std::vector<Bisection> units_down_join_closure(const FinBIM& s) {
  std::set<Bisection> closed;
  for (const auto& a : s.elements())
    for (const auto& u : s.units())
      if (leq(s, a, u)) {
        closed.insert(a);
        break;
      }
  std::deque<Bisection> work(closed.begin(), closed.end());
  while (!work.empty()) {
    auto a = work.front();
    work.pop_front();
    std::vector<Bisection> fresh;
    for (const auto& b : closed)
      if (compatible(s, a, b)) {
        auto j = s.join_unchecked(a, b);
        if (!closed.count(j)) fresh.push_back(j);
      }
    for (auto& j : fresh)
      if (closed.insert(j).second) work.push_back(j);
  }
  return {closed.begin(), closed.end()};
}

std::optional<ProperlyInfiniteWitness> properly_infinite(const FinBIM& s, const Bisection& e) {
  if (!is_idempotent(s, e)) throw PreconditionError("properly_infinite needs an idempotent, got " + s.format(e));
  if (e.empty()) throw PreconditionError("properly_infinite needs a nonzero idempotent");
  std::vector<Bisection> from_e;
  for (const auto& x : s.elements())
    if (dom(s, x) == e && leq(s, ran(s, x), e)) from_e.push_back(x);
  for (const auto& x : from_e)
    for (const auto& y : from_e)
      if (is_zero(s, s.multiply(ran(s, x), ran(s, y)))) return ProperlyInfiniteWitness{x, y};
  return std::nullopt;
}

MonoidProfile classify_monoid(const FinBIM& s) {
  MonoidProfile p;
  p.fundamental_witness = centralizer_witness(s);
  p.fundamental = !p.fundamental_witness;

  p.factorizable = true;
  for (const auto& a : s.elements()) {
    bool below_unit = false;
    for (const auto& u : s.units())
      if (leq(s, a, u)) {
        below_unit = true;
        break;
      }
    if (!below_unit) {
      p.factorizable = false;
      p.factorizable_witness = a;
      break;
    }
  }

  p.piecewise_factorizable = true;
  for (const auto& a : s.atoms()) {
    bool below_unit = false;
    for (const auto& u : s.units())
      if (leq(s, a, u)) {
        below_unit = true;
        break;
      }
    if (!below_unit) {
      p.piecewise_factorizable = false;
      p.piecewise_witness = a;
      break;
    }
  }
  p.piecewise_by_closure = units_down_join_closure(s).size() == s.size();
  if (p.piecewise_by_closure != p.piecewise_factorizable)
    throw Error("piecewise factorizability: atom test and (U↓)∨ closure disagree");

  p.basic = true;
  for (const auto& a : s.elements()) {
    auto r = basic_decompose(s, a);
    if (auto* f = std::get_if<BasicFailure>(&r)) {
      p.basic = false;
      p.basic_witness = f->witness;
      break;
    }
  }

  p.zero_simple_witness = zero_simple_failure(s);
  p.zero_simple = !p.zero_simple_witness;

  p.zero_simplifying = true;
  for (const auto& e : s.idempotents()) {
    if (e.empty() || !p.zero_simplifying) continue;
    for (const auto& f : s.idempotents()) {
      if (f.empty()) continue;
      if (!find_pencil(s, e, f)) {
        p.zero_simplifying = false;
        p.zero_simplifying_witness = IdempotentPair{e, f};
        break;
      }
    }
  }

  p.purely_infinite = true;
  for (const auto& e : s.idempotents()) {
    if (e.empty()) continue;
    if (!properly_infinite(s, e)) {
      p.purely_infinite = false;
      p.purely_infinite_witness = e;
      break;
    }
  }
  p.congruence_free = p.fundamental && p.zero_simple;
  return p;
}

nlohmann::ordered_json to_json(const FinBIM& s, const MonoidProfile& p) {
  nlohmann::ordered_json j;
  auto pair_json = [&](const std::optional<IdempotentPair>& w) -> nlohmann::ordered_json {
    if (!w) return nullptr;
    return {{"e", s.format(w->first)}, {"f", s.format(w->second)}};
  };
  auto elem_json = [&](const std::optional<Bisection>& w) -> nlohmann::ordered_json {
    if (!w) return nullptr;
    return s.format(*w);
  };
  j["size"] = s.size();
  j["idempotents"] = s.idempotents().size();
  j["units"] = s.units().size();
  j["atoms"] = s.atoms().size();
  j["fundamental"] = p.fundamental;
  j["factorizable"] = p.factorizable;
  j["piecewise_factorizable"] = p.piecewise_factorizable;
  j["basic"] = p.basic;
  j["zero_simple"] = p.zero_simple;
  j["zero_simplifying"] = p.zero_simplifying;
  j["purely_infinite"] = p.purely_infinite;
  j["congruence_free"] = p.congruence_free;
  j["zero_disjunctive"] = p.zero_disjunctive;
  j["witnesses"] = {
      {"fundamental", elem_json(p.fundamental_witness)},
      {"factorizable", elem_json(p.factorizable_witness)},
      {"piecewise_factorizable", elem_json(p.piecewise_witness)},
      {"basic", elem_json(p.basic_witness)},
      {"zero_simple", pair_json(p.zero_simple_witness)},
      {"zero_simplifying", pair_json(p.zero_simplifying_witness)},
      {"purely_infinite", elem_json(p.purely_infinite_witness)},
  };
  return j;
}

// ---------------------------------------------------------------------------

ArmatureReport armature_check(const FinBIM& s) {
  if (auto w = centralizer_witness(s))
    throw PreconditionError("armature_check needs a fundamental monoid; " + s.format(*w) +
                            " centralises the idempotents");
  ArmatureReport r;
  const auto units = s.units();
  const auto idem = s.idempotents();
  r.units = units.size();
  r.idempotents = idem.size();
  auto fail = [](AxiomResult& a, std::string why) {
    if (a.pass) a.counterexample = std::move(why);
    a.pass = false;
  };
  auto act = [&](const Bisection& g, const Bisection& e) { return s.multiply(s.multiply(g, e), s.inverse(g)); };

  ++r.o1.checked;
  if (s.phi(s.one()) != s.one()) fail(r.o1, "phi(1) = " + s.format(s.phi(s.one())));
  for (const auto& g : units) {
    ++r.o2.checked;
    if (s.phi(s.inverse(g)) != s.phi(g)) fail(r.o2, "g = " + s.format(g));
    for (const auto& h : units) {
      ++r.o3.checked;
      if (!leq(s, s.multiply(s.phi(g), s.phi(h)), s.phi(s.multiply(g, h))))
        fail(r.o3, "g = " + s.format(g) + ", h = " + s.format(h));
    }
    for (const auto& e : idem) {
      ++r.o4.checked;
      if (!leq(s, s.multiply(s.phi(g), e), act(g, e))) fail(r.o4, "g = " + s.format(g) + ", e = " + s.format(e));
      ++r.o5.checked;
      bool fixes = true;
      for (const auto& f : idem)
        if (leq(s, f, e) && act(g, f) != f) {
          fixes = false;
          break;
        }
      if (fixes != leq(s, e, s.phi(g))) fail(r.o5, "g = " + s.format(g) + ", e = " + s.format(e));
    }
  }
  return r;
}

nlohmann::ordered_json to_json(const ArmatureReport& r) {
  nlohmann::ordered_json j;
  j["units"] = r.units;
  j["idempotents"] = r.idempotents;
  auto ax = [](const AxiomResult& a) {
    nlohmann::ordered_json o{{"pass", a.pass}, {"checked", a.checked}};
    if (!a.pass) o["counterexample"] = a.counterexample;
    return o;
  };
  j["O1"] = ax(r.o1);
  j["O2"] = ax(r.o2);
  j["O3"] = ax(r.o3);
  j["O4"] = ax(r.o4);
  j["O5"] = ax(r.o5);
  j["pass"] = r.pass();
  return j;
}

// ---------------------------------------------------------------------------
// Permutations

Permutation parse_permutation(std::string_view text_in, std::size_t n) {
  std::string text(text_in);
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  auto point = [&](const std::string& tok) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw ParseError("bad point '" + tok + "' in permutation '" + text + "'");
    const auto v = std::stoul(tok);
    if (v < 1 || v > n) throw ParseError("point " + tok + " out of range 1.." + std::to_string(n));
    return static_cast<std::size_t>(v - 1);
  };
  auto split_points = [&](std::string body) {
    for (auto& c : body)
      if (c == ',') c = ' ';
    std::istringstream ss(body);
    std::vector<std::size_t> pts;
    std::string tok;
    while (ss >> tok) pts.push_back(point(tok));
    return pts;
  };
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return p;
  if (text[first] == '(') {
    std::vector<bool> seen(n, false);
    std::size_t pos = first;
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        continue;
      }
      if (text[pos] != '(') throw ParseError("expected '(' in permutation '" + text + "'");
      const auto close = text.find(')', pos);
      if (close == std::string::npos) throw ParseError("unclosed cycle in '" + text + "'");
      auto cycle = split_points(text.substr(pos + 1, close - pos - 1));
      for (auto x : cycle) {
        if (seen[x]) throw ParseError("point " + std::to_string(x + 1) + " repeated in '" + text + "'");
        seen[x] = true;
      }
      for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
      pos = close + 1;
    }
    return p;
  }
  std::string body = text.substr(first);
  if (body.front() == '[') {
    if (body.back() != ']') throw ParseError("unclosed image list '" + text + "'");
    body = body.substr(1, body.size() - 2);
  }
  auto images = split_points(body);
  if (images.size() != n)
    throw ParseError("image list '" + text + "' has " + std::to_string(images.size()) + " entries, expected " +
                     std::to_string(n));
  std::vector<bool> hit(n, false);
  for (auto y : images) {
    if (hit[y]) throw ParseError("'" + text + "' is not a permutation");
    hit[y] = true;
  }
  return images;
}

std::string format_permutation(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    std::size_t x = i;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += " ";
      first = false;
      out += std::to_string(x + 1);
      x = p[x];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::vector<Permutation> generate_group(std::size_t n, const std::vector<Permutation>& generators) {
  Permutation id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  for (const auto& g : generators)
    if (g.size() != n) throw PreconditionError("generator " + format_permutation(g) + " has the wrong degree");
  std::set<Permutation> group{id};
  std::deque<Permutation> work{id};
  while (!work.empty()) {
    auto a = work.front();
    work.pop_front();
    for (const auto& g : generators) {
      Permutation c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = g[a[i]];
      if (group.insert(c).second) work.push_back(c);
    }
  }
  return {group.begin(), group.end()};
}

Bisection permutation_bisection(const FiniteGroupoid& pair, const Permutation& p) {
  std::vector<ArrowId> arrows;
  for (std::size_t i = 0; i < p.size(); ++i)
    arrows.push_back(pair.arrows_between(static_cast<ObjectId>(i), static_cast<ObjectId>(p[i])).front());
  return Bisection(std::move(arrows));
}

FinBIM monoid_from_group(std::size_t n, const std::vector<Permutation>& generators) {
  if (n == 0 || n > 6) throw PreconditionError("monoid_from_group supports 1..6 points, got " + std::to_string(n));
  const auto group = generate_group(n, generators);
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& g : group)
    for (std::size_t i = 0; i < n; ++i) reach[i][g[i]] = true;
  auto pair = std::make_shared<const FiniteGroupoid>(pair_groupoid(n));
  std::vector<Bisection> carrier;
  for (auto& b : all_local_bisections(*pair)) {
    bool ok = true;
    for (ArrowId a : b.arrows())
      if (!reach[pair->dom(a)][pair->cod(a)]) ok = false;
    if (ok) carrier.push_back(std::move(b));
  }
  return FinBIM::with_carrier(pair, std::move(carrier));
}

}  // namespace bim
