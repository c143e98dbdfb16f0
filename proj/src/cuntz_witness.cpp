#include "bim/cuntz_witness.hpp"

#include <algorithm>
#include <functional>

#include "bim/error.hpp"

namespace bim {

namespace {

Word child(const Word& w, unsigned a) { return w + static_cast<char>('0' + a); }

void require_nonzero(const CuntzMonoid& m, const ClopenSet& e, const char* what) {
  if (e.empty()) throw PreconditionError(std::string(what) + " needs a nonzero clopen, got " + m.format(e));
}

// Prefix code under `target` with at least k words, refined by splitting the
// last word; sorted.
std::vector<Word> code_under(const CuntzMonoid& m, const Word& target, std::size_t k) {
  std::vector<Word> code{target};
  while (code.size() < k) {
    const Word last = code.back();
    code.pop_back();
    for (unsigned a = 0; a < m.alphabet(); ++a) code.push_back(child(last, a));
  }
  return code;
}

}  // namespace

CuntzElement clopen_iso(const CuntzMonoid& m, const ClopenSet& e, const ClopenSet& f) {
  require_nonzero(m, e, "clopen_iso");
  require_nonzero(m, f, "clopen_iso");
  const std::size_t r = m.alphabet() - 1;
  if (e.size() % r != f.size() % r)
    throw PreconditionError("clopen_iso: |e| = " + std::to_string(e.size()) + " ≡ " + std::to_string(e.size() % r) +
                            " but |f| = " + std::to_string(f.size()) + " ≡ " + std::to_string(f.size() % r) +
                            " (mod " + std::to_string(r) + ")");
  std::vector<Word> a = e.words(), b = f.words();
  auto grow = [&](std::vector<Word>& v, std::size_t size) {
    while (v.size() < size) {
      const Word last = v.back();
      v.pop_back();
      for (unsigned x = 0; x < m.alphabet(); ++x) v.push_back(child(last, x));
    }
  };
  grow(a, b.size());
  grow(b, a.size());
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < a.size(); ++i) rules.push_back({a[i], b[i]});
  return m.canonicalize(std::move(rules));
}

CuntzElement place_into(const CuntzMonoid& m, const ClopenSet& e, const Word& target) {
  const auto code = code_under(m, target, e.size());
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < e.size(); ++i) rules.push_back({e.words()[i], code[i]});
  return m.canonicalize(std::move(rules));
}

CuntzElement transporter(const CuntzMonoid& m, const ClopenSet& e, const ClopenSet& f) {
  require_nonzero(m, e, "transporter");
  require_nonzero(m, f, "transporter");
  return place_into(m, e, child(f.words().front(), 0));
}

CuntzElement infinitesimal_in(const CuntzMonoid& m, const ClopenSet& e) {
  require_nonzero(m, e, "infinitesimal_in");
  const Word& w = e.words().front();
  return m.canonicalize({Rule{child(w, 0), child(w, 1)}});
}

std::pair<CuntzElement, CuntzElement> properly_infinite_witness(const CuntzMonoid& m, const ClopenSet& e) {
  require_nonzero(m, e, "properly_infinite_witness");
  const Word& w = e.words().front();
  return {place_into(m, e, child(w, 0)), place_into(m, e, child(w, 1))};
}

CuntzElement conrade_unit(const CuntzMonoid& m, const ClopenSet& e, const ClopenSet& f) {
  if (e == m.clopen_one()) throw PreconditionError("conrade_unit needs e ≠ 1");
  require_nonzero(m, f, "conrade_unit");
  if (e.empty()) return m.one();
  const auto not_e = m.clopen_complement(e);
  const auto target = m.clopen_meet(f, not_e);
  if (!target.empty()) return unit_from_infinitesimal(m, transporter(m, e, target));
  // f <= e: move e into ē, then ē into f.
  return m.multiply(conrade_unit(m, not_e, f), conrade_unit(m, e, not_e));
}

std::vector<PieceUnit> piecewise_unit_decomposition(const CuntzMonoid& m, const CuntzElement& s) {
  if (s.empty()) throw PreconditionError("piecewise_unit_decomposition needs a nonzero element");
  if (is_unit(m, s)) return {{s, s}};
  std::vector<Rule> rules;
  for (const auto& r : s.rules()) {
    if (r.from.empty() || r.to.empty())
      for (unsigned a = 0; a < m.alphabet(); ++a) rules.push_back({child(r.from, a), child(r.to, a)});
    else
      rules.push_back(r);
  }
  std::vector<PieceUnit> out;
  for (const auto& r : rules) {
    const auto piece = m.canonicalize({r});
    CuntzElement unit;
    if (r.from == r.to)
      unit = m.one();
    else if (!comparable(r.from, r.to))
      unit = unit_from_infinitesimal(m, piece);
    else
      unit = join(m, piece,
                  clopen_iso(m, m.clopen_complement(m.clopen({r.from})), m.clopen_complement(m.clopen({r.to}))));
    out.push_back({piece, unit});
  }
  return out;
}

Pencil<CuntzElement> orthogonal_pencil(const CuntzMonoid& m, const ClopenSet& e, const ClopenSet& f) {
  require_nonzero(m, e, "orthogonal_pencil");
  require_nonzero(m, f, "orthogonal_pencil");
  std::vector<Word> cyl = e.words();
  if (cyl.size() == 1 && cyl.front().empty()) {
    cyl.clear();
    for (unsigned a = 0; a < m.alphabet(); ++a) cyl.push_back(child("", a));
  }
  const auto code = code_under(m, child(f.words().front(), 0), cyl.size());
  Pencil<CuntzElement> p{{}, m.identity(e), m.identity(f)};
  for (std::size_t i = 0; i < cyl.size(); ++i) p.elements.push_back(m.canonicalize({Rule{cyl[i], code[i]}}));
  return p;
}

CuntzElement zero_simple_witness(const CuntzMonoid& m, const ClopenSet& e, const ClopenSet& f) {
  const auto pencil = orthogonal_pencil(m, e, f);
  const auto [a, b] = properly_infinite_witness(m, f);
  CuntzElement v = a;
  CuntzElement w = m.zero();
  for (const auto& wi : pencil.elements) {
    w = join(m, w, m.multiply(v, wi));
    v = m.multiply(b, v);
  }
  return w;
}

// ---------------------------------------------------------------------------

MovedPointReport moved_point_check(const CuntzMonoid& m, const CuntzElement& g, std::size_t depth) {
  if (!is_unit(m, g)) throw PreconditionError("moved_point_check needs a unit, got " + m.format(g));
  if (depth > m.depth_cap()) throw PreconditionError("depth exceeds the depth cap");
  MovedPointReport r;
  r.sigma = m.as_clopen(sigma(m, g));
  for (const auto& rule : g.rules())
    if (rule.from != rule.to && !m.clopen_leq(m.clopen({rule.from}), r.sigma)) r.rules_inside_sigma = false;

  auto flip = [](char c) { return c == '0' ? '1' : '0'; };
  std::vector<bool> hit(r.sigma.size(), false);
  for (const auto& rule : g.rules()) {
    if (rule.from == rule.to) continue;
    Point p;
    if (is_prefix(rule.from, rule.to))  // (u, uw): avoid u·w^∞
      p = {rule.from + flip(rule.to[rule.from.size()]), "0"};
    else if (is_prefix(rule.to, rule.from))  // (uw, u): avoid uw·w^∞
      p = {rule.from + flip(rule.from[rule.to.size()]), "0"};
    else
      p = {rule.from, "0"};
    Word cyl;
    bool inside = false;
    for (std::size_t i = 0; i < r.sigma.size(); ++i)
      if (is_prefix(r.sigma.words()[i], rule.from)) {
        cyl = r.sigma.words()[i];
        hit[i] = inside = true;
      }
    auto image = m.evaluate(g, p);
    if (!inside || !image || points_equal(*image, p)) r.all_moved = false;
    r.moved.push_back({cyl, rule, p, image.value_or(Point{})});
  }
  for (bool h : hit) r.all_moved = r.all_moved && h;

  const auto fixed = m.as_clopen(m.phi(g));
  for (const auto& c : fixed.words()) {
    std::vector<Word> tails{Word{}};
    for (std::size_t i = 0; i < tails.size() && tails.size() < 32; ++i)
      if (c.size() + tails[i].size() < depth)
        for (unsigned a = 0; a < m.alphabet(); ++a) tails.push_back(child(tails[i], a));
    for (const auto& t : tails)
      for (const char* period : {"0", "1", "01"}) {
        Point p{c + t, period};
        auto image = m.evaluate(g, p);
        ++r.fixed_samples;
        if (!image || !points_equal(*image, p)) r.fixed_ok = false;
      }
  }
  return r;
}

nlohmann::ordered_json to_json(const CuntzMonoid& m, const MovedPointReport& r) {
  nlohmann::ordered_json moved = nlohmann::ordered_json::array();
  for (const auto& mp : r.moved)
    moved.push_back({{"cylinder", format_word(mp.cylinder)},
                     {"rule", format_word(mp.rule.from) + "->" + format_word(mp.rule.to)},
                     {"point", format_point(mp.point)},
                     {"image", format_point(mp.image)}});
  return {{"sigma", m.format(r.sigma)},
          {"rules_inside_sigma", r.rules_inside_sigma},
          {"moved", moved},
          {"all_moved", r.all_moved},
          {"fixed_samples", r.fixed_samples},
          {"fixed_ok", r.fixed_ok},
          {"ok", r.ok()}};
}

ArmatureReport armature_check(const CuntzMonoid& m, std::span<const CuntzElement> units,
                              std::span<const ClopenSet> idempotents) {
  ArmatureReport r;
  r.units = units.size();
  r.idempotents = idempotents.size();
  auto fail = [](AxiomResult& a, std::string why) {
    if (a.pass) a.counterexample = std::move(why);
    a.pass = false;
  };
  auto act = [&](const CuntzElement& g, const ClopenSet& e) {
    return m.as_clopen(m.multiply(m.multiply(g, m.identity(e)), m.inverse(g)));
  };
  auto longest = [](const std::vector<Word>& ws) {
    std::size_t l = 0;
    for (const auto& w : ws) l = std::max(l, w.size());
    return l;
  };
  ++r.o1.checked;
  if (m.phi(m.one()) != m.one()) fail(r.o1, "phi(1) = " + m.format(m.phi(m.one())));
  for (std::size_t i = 0; i < units.size(); ++i) {
    const auto& g = units[i];
    if (!is_unit(m, g)) throw PreconditionError(m.format(g) + " is not a unit");
    const auto fg = m.as_clopen(m.phi(g));
    ++r.o2.checked;
    if (m.phi(m.inverse(g)) != m.phi(g)) fail(r.o2, "g = " + m.format(g));
    const auto& h = units[(i + 1) % units.size()];
    ++r.o3.checked;
    if (!m.clopen_leq(m.clopen_meet(fg, m.as_clopen(m.phi(h))), m.as_clopen(m.phi(m.multiply(g, h)))))
      fail(r.o3, "g = " + m.format(g) + ", h = " + m.format(h));
    std::size_t gdepth = 0;
    for (const auto& rule : g.rules()) gdepth = std::max({gdepth, rule.from.size(), rule.to.size()});
    for (const auto& e : idempotents) {
      ++r.o4.checked;
      if (!m.clopen_leq(m.clopen_meet(fg, e), act(g, e)))
        fail(r.o4, "g = " + m.format(g) + ", e = " + m.format(e));
      ++r.o5.checked;
      bool fixes = true;
      const std::size_t depth = std::max(gdepth, longest(e.words())) + 1;
      std::vector<Word> below = e.words();
      for (std::size_t k = 0; k < below.size() && fixes; ++k) {
        const auto c = m.clopen({below[k]});
        if (act(g, c) != c) fixes = false;
        if (below[k].size() < depth)
          for (unsigned a = 0; a < m.alphabet(); ++a) below.push_back(child(below[k], a));
      }
      if (fixes != m.clopen_leq(e, fg)) fail(r.o5, "g = " + m.format(g) + ", e = " + m.format(e));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

using Checks = std::vector<std::pair<std::string, bool>>;

struct OpSpec {
  std::string name;
  std::vector<char> kinds;  // 'c' clopen, 's' element, 'd' depth
  std::function<nlohmann::ordered_json(const CuntzMonoid&, const std::vector<std::string>&)> run;
  std::function<Checks(const CuntzMonoid&, const std::vector<std::string>&, const nlohmann::json&)> check;
};

CuntzElement el(const CuntzMonoid& m, const nlohmann::json& j) { return m.parse_element(j.get<std::string>()); }

bool pairwise_orthogonal(const CuntzMonoid& m, const std::vector<ClopenSet>& sets) {
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (!m.clopen_meet(sets[i], sets[j]).empty()) return false;
  return true;
}

const std::vector<OpSpec>& ops() {
  static const std::vector<OpSpec> table = {
      {"clopen-iso", {'c', 'c'},
       [](const CuntzMonoid& m, const std::vector<std::string>& in) {
         return nlohmann::ordered_json{
             {"element", m.format(clopen_iso(m, m.parse_clopen(in[0]), m.parse_clopen(in[1])))}};
       },
       [](const CuntzMonoid& m, const std::vector<std::string>& in, const nlohmann::json& out) {
         const auto s = el(m, out.at("element"));
         return Checks{{"d(s) = e", m.domain(s) == m.parse_clopen(in[0])},
                       {"r(s) = f", m.range(s) == m.parse_clopen(in[1])}};
       }},
      {"transporter", {'c', 'c'},
       [](const CuntzMonoid& m, const std::vector<std::string>& in) {
         return nlohmann::ordered_json{
             {"element", m.format(transporter(m, m.parse_clopen(in[0]), m.parse_clopen(in[1])))}};
       },
       [](const CuntzMonoid& m, const std::vector<std::string>& in, const nlohmann::json& out) {
         const auto x = el(m, out.at("element"));
         const auto e = m.parse_clopen(in[0]), f = m.parse_clopen(in[1]);
         return Checks{{"d(x) = e", m.domain(x) == e},
                       {"r(x) <= f", m.clopen_leq(m.range(x), f)},
                       {"r(x) inside the first cylinder of f", m.clopen_leq(m.range(x), m.clopen({f.words().front()}))}};
       }},
      {"infinitesimal-in", {'c'},
       [](const CuntzMonoid& m, const std::vector<std::string>& in) {
         return nlohmann::ordered_json{{"element", m.format(infinitesimal_in(m, m.parse_clopen(in[0])))}};
       },
       [](const CuntzMonoid& m, const std::vector<std::string>& in, const nlohmann::json& out) {
         const auto a = el(m, out.at("element"));
         const auto e = m.parse_clopen(in[0]);
         return Checks{{"a ≠ 0", !a.empty()},
                       {"a^2 = 0", m.multiply(a, a).empty()},
                       {"d(a) <= e", m.clopen_leq(m.domain(a), e)},
                       {"r(a) <= e", m.clopen_leq(m.range(a), e)},
                       {"d(a) ⊥ r(a)", m.clopen_meet(m.domain(a), m.range(a)).empty()}};
       }},
      {"properly-infinite", {'c'},
       [](const CuntzMonoid& m, const std::vector<std::string>& in) {
         const auto [x, y] = properly_infinite_witness(m, m.parse_clopen(in[0]));
         return nlohmann::ordered_json{{"x", m.format(x)}, {"y", m.format(y)}};
       },
       [](const CuntzMonoid& m, const std::vector<std::string>& in, const nlohmann::json& out) {
         const auto x = el(m, out.at("x")), y = el(m, out.at("y"));
         const auto e = m.parse_clopen(in[0]);
         return Checks{{"d(x) = e", m.domain(x) == e},
                       {"d(y) = e", m.domain(y) == e},
                       {"r(x) ⊥ r(y)", m.clopen_meet(m.range(x), m.range(y)).empty()},
                       {"r(x) ∨ r(y) <= e", m.clopen_leq(m.clopen_join(m.range(x), m.range(y)), e)}};
       }},
      {"conrade-unit", {'c', 'c'},
       [](const CuntzMonoid& m, const std::vector<std::string>& in) {
         return nlohmann::ordered_json{
             {"element", m.format(conrade_unit(m, m.parse_clopen(in[0]), m.parse_clopen(in[1])))}};
       },
       [](const CuntzMonoid& m, const std::vector<std::string>& in, const nlohmann::json& out) {
         const auto g = el(m, out.at("element"));
         const auto e = m.identity(m.parse_clopen(in[0]));
         const auto conj = m.multiply(m.multiply(g, e), m.inverse(g));
         return Checks{{"g is a unit", is_unit(m, g)},
                       {"g e g^-1 <= f", m.clopen_leq(m.as_clopen(conj), m.parse_clopen(in[1]))}};
       }},
      {"piecewise-units", {'s'},
       [](const CuntzMonoid& m, const std::vector<std::string>& in) {
         nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
         for (const auto& pu : piecewise_unit_decomposition(m, m.parse_element(in[0])))
           pieces.push_back({{"piece", m.format(pu.piece)}, {"unit", m.format(pu.unit)}});
         return nlohmann::ordered_json{{"pieces", pieces}};
       },
       [](const CuntzMonoid& m, const std::vector<std::string>& in, const nlohmann::json& out) {
         const auto s = m.parse_element(in[0]);
         std::vector<CuntzElement> pieces;
         bool below = true, units = true;
         for (const auto& pu : out.at("pieces")) {
           pieces.push_back(el(m, pu.at("piece")));
           const auto u = el(m, pu.at("unit"));
           units = units && is_unit(m, u);
           below = below && leq(m, pieces.back(), u);
         }
         bool compat = true;
         for (std::size_t i = 0; i < pieces.size(); ++i)
           for (std::size_t j = i + 1; j < pieces.size(); ++j) compat = compat && compatible(m, pieces[i], pieces[j]);
         bool recomposes = false;
         if (compat) {
           CuntzElement acc;
           for (const auto& p : pieces) acc = m.join_unchecked(acc, p);
           recomposes = acc == s;
         }
         return Checks{{"pieces pairwise compatible", compat},
                       {"join of pieces = s", recomposes},
                       {"each unit is a unit", units},
                       {"each piece <= its unit", below}};
       }},
      {"orthogonal-pencil", {'c', 'c'},
       [](const CuntzMonoid& m, const std::vector<std::string>& in) {
         nlohmann::ordered_json els = nlohmann::ordered_json::array();
         for (const auto& x : orthogonal_pencil(m, m.parse_clopen(in[0]), m.parse_clopen(in[1])).elements)
           els.push_back(m.format(x));
         return nlohmann::ordered_json{{"elements", els}};
       },
       [](const CuntzMonoid& m, const std::vector<std::string>& in, const nlohmann::json& out) {
         const auto e = m.parse_clopen(in[0]), f = m.parse_clopen(in[1]);
         Pencil<CuntzElement> p{{}, m.identity(e), m.identity(f)};
         std::vector<ClopenSet> doms, rans;
         for (const auto& x : out.at("elements")) {
           p.elements.push_back(el(m, x));
           doms.push_back(m.domain(p.elements.back()));
           rans.push_back(m.range(p.elements.back()));
         }
         return Checks{{"pencil from e to f", pencil_valid(m, p)},
                       {"domains pairwise orthogonal", pairwise_orthogonal(m, doms)},
                       {"ranges pairwise disjoint", pairwise_orthogonal(m, rans)}};
       }},
      {"zero-simple-witness", {'c', 'c'},
       [](const CuntzMonoid& m, const std::vector<std::string>& in) {
         return nlohmann::ordered_json{
             {"element", m.format(zero_simple_witness(m, m.parse_clopen(in[0]), m.parse_clopen(in[1])))}};
       },
       [](const CuntzMonoid& m, const std::vector<std::string>& in, const nlohmann::json& out) {
         const auto w = el(m, out.at("element"));
         return Checks{{"d(w) = e", m.domain(w) == m.parse_clopen(in[0])},
                       {"r(w) <= f", m.clopen_leq(m.range(w), m.parse_clopen(in[1]))}};
       }},
      {"moved-points", {'s', 'd'},
       [](const CuntzMonoid& m, const std::vector<std::string>& in) {
         return to_json(m, moved_point_check(m, m.parse_element(in[0]), std::stoul(in[1])));
       },
       [](const CuntzMonoid& m, const std::vector<std::string>& in, const nlohmann::json& out) {
         // Recheck the recorded points directly.
         const auto g = m.parse_element(in[0]);
         const auto sig = m.as_clopen(sigma(m, g));
         bool moved = out.at("sigma").get<std::string>() == m.format(sig);
         std::size_t covered = 0, expected = 0;
         for (const auto& rule : g.rules()) expected += rule.from != rule.to;
         for (const auto& mp : out.at("moved")) {
           const auto text = mp.at("point").get<std::string>();
           const auto open = text.find('(');
           Point p{parse_word(text.substr(0, open), m.alphabet()),
                   text.substr(open + 1, text.find(')') - open - 1)};
           const auto image = m.evaluate(g, p);
           const auto cyl = parse_word(mp.at("cylinder").get<std::string>(), m.alphabet());
           moved = moved && image && !points_equal(*image, p) && is_prefix(cyl, p.prefix) &&
                   m.clopen_leq(m.clopen({cyl}), sig);
           ++covered;
         }
         return Checks{{"recorded points are moved", moved && covered == expected},
                       {"rules inside sigma", out.at("rules_inside_sigma").get<bool>()},
                       {"phi fixed on samples", out.at("fixed_ok").get<bool>()}};
       }},
  };
  return table;
}

const OpSpec& find_op(std::string_view op) {
  for (const auto& o : ops())
    if (o.name == op) return o;
  throw PreconditionError("unknown witness operation '" + std::string(op) + "'");
}

}  // namespace

const std::vector<std::string>& witness_operations() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& o : ops()) v.push_back(o.name);
    return v;
  }();
  return names;
}

nlohmann::ordered_json certify(const CuntzMonoid& m, std::string_view op, const std::vector<std::string>& inputs) {
  const auto& spec = find_op(op);
  if (inputs.size() != spec.kinds.size())
    throw PreconditionError(spec.name + " takes " + std::to_string(spec.kinds.size()) + " inputs, got " +
                            std::to_string(inputs.size()));
  // Normalise inputs to canonical text.
  std::vector<std::string> canon;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    switch (spec.kinds[i]) {
      case 'c': canon.push_back(m.format(m.parse_clopen(inputs[i]))); break;
      case 's': canon.push_back(m.format(m.parse_element(inputs[i]))); break;
      default: canon.push_back(std::to_string(std::stoul(inputs[i])));
    }
  }
  nlohmann::ordered_json cert;
  cert["op"] = spec.name;
  cert["n"] = m.alphabet();
  cert["depth_cap"] = m.depth_cap();
  cert["inputs"] = canon;
  cert["output"] = spec.run(m, canon);
  nlohmann::ordered_json checks = nlohmann::ordered_json::object();
  bool all = true;
  for (const auto& [name, ok] : spec.check(m, canon, cert["output"])) {
    checks[name] = ok;
    all = all && ok;
  }
  cert["checks"] = checks;
  cert["verified"] = all;
  return cert;
}

CertificateCheck verify_certificate(const nlohmann::json& cert) {
  try {
    const CuntzMonoid m(cert.at("n").get<unsigned>(), cert.value("depth_cap", std::size_t{32}));
    const auto& spec = find_op(cert.at("op").get<std::string>());
    const auto inputs = cert.at("inputs").get<std::vector<std::string>>();
    for (const auto& [name, ok] : spec.check(m, inputs, cert.at("output")))
      if (!ok) return {false, "postcondition fails: " + name};
    if (nlohmann::json(spec.run(m, inputs)) != cert.at("output")) return {false, "rerun gives a different output"};
    if (!cert.value("verified", false)) return {false, "certificate is not marked verified"};
    return {true, {}};
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
}

}  // namespace bim
