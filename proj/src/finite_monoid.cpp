#include "bim/finite_monoid.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "bim/error.hpp"

namespace bim {

namespace {

bool by_size_then_lex(const Bisection& x, const Bisection& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

Bisection identities_of(const FiniteGroupoid& g) {
  std::vector<ArrowId> ids;
  for (ObjectId x = 0; x < g.object_count(); ++x) ids.push_back(g.identity(x));
  return Bisection(std::move(ids));
}

bool all_identities(const FiniteGroupoid& g, const Bisection& a) {
  return std::all_of(a.arrows().begin(), a.arrows().end(), [&](ArrowId x) { return g.is_identity(x); });
}

Bisection domain_of(const FiniteGroupoid& g, const Bisection& a) {
  std::vector<ArrowId> ids;
  for (ArrowId x : a.arrows()) ids.push_back(g.identity(g.dom(x)));
  return Bisection(std::move(ids));
}

std::string fmt(const FiniteGroupoid& g, const Bisection& a) {
  std::string out = "{";
  bool first = true;
  for (ArrowId x : a.arrows()) {
    if (!first) out += ", ";
    first = false;
    out += g.arrow_name(x);
  }
  return out + "}";
}

bool compatible_sets(const FiniteGroupoid& g, const Bisection& a, const Bisection& b) {
  const auto u = set_union(a, b);
  return is_local_bisection(g, u.arrows());
}

}  // namespace

FinBIM::FinBIM(GroupoidPtr g, std::vector<Bisection> carrier, bool full)
    : groupoid_(std::move(g)), full_(full), carrier_(std::move(carrier)) {
  std::sort(carrier_.begin(), carrier_.end(), by_size_then_lex);
  carrier_.erase(std::unique(carrier_.begin(), carrier_.end()), carrier_.end());
  one_ = identities_of(*groupoid_);
  build_caches();
}

void FinBIM::build_caches() {
  index_.clear();
  for (std::size_t i = 0; i < carrier_.size(); ++i) index_.emplace(carrier_[i], i);
  idempotents_.clear();
  units_.clear();
  for (const auto& a : carrier_) {
    if (all_identities(*groupoid_, a)) idempotents_.push_back(a);
    if (a.size() == one_.size() && domain_of(*groupoid_, a) == one_ &&
        domain_of(*groupoid_, bisection_inverse(*groupoid_, a)) == one_)
      units_.push_back(a);
  }
  idempotent_atoms_.clear();
  for (const auto& e : idempotents_) {
    if (e.empty()) continue;
    bool minimal = true;
    for (const auto& f : idempotents_)
      if (!f.empty() && f != e && f.subset_of(e)) {
        minimal = false;
        break;
      }
    if (minimal) idempotent_atoms_.push_back(e);
  }
  // Atoms are the elements whose domain is an idempotent atom (validated carriers
  // are atomic; see with_carrier).
  atoms_.clear();
  std::set<Bisection> atom_domains(idempotent_atoms_.begin(), idempotent_atoms_.end());
  for (const auto& a : carrier_)
    if (!a.empty() && atom_domains.count(domain_of(*groupoid_, a))) atoms_.push_back(a);
}

FinBIM FinBIM::full(GroupoidPtr g) {
  auto all = all_local_bisections(*g);
  return FinBIM(std::move(g), std::move(all), true);
}

FinBIM FinBIM::full(const FiniteGroupoid& g) { return full(std::make_shared<const FiniteGroupoid>(g)); }

std::optional<std::string> brute_force_closure_failure(const FiniteGroupoid& g, std::span<const Bisection> carrier) {
  std::set<Bisection> c(carrier.begin(), carrier.end());
  const auto one = identities_of(g);
  if (!c.count(Bisection{})) return "zero: {} missing";
  if (!c.count(one)) return "one: " + fmt(g, one) + " missing";
  for (const auto& a : c) {
    if (!is_local_bisection(g, a.arrows())) return "entry " + fmt(g, a) + " is not a local bisection";
    const auto inv = bisection_inverse(g, a);
    if (!c.count(inv)) return "inverse: " + fmt(g, a) + " -> " + fmt(g, inv);
    if (all_identities(g, a)) {
      const auto comp = set_difference(one, a);
      if (!c.count(comp)) return "complement: " + fmt(g, a) + " -> " + fmt(g, comp);
    }
    for (const auto& b : c) {
      const auto p = bisection_product(g, a, b);
      if (!c.count(p)) return "product: " + fmt(g, a) + " * " + fmt(g, b) + " = " + fmt(g, p);
      const auto m = set_intersection(a, b);
      if (!c.count(m)) return "meet: " + fmt(g, a) + " ∧ " + fmt(g, b) + " = " + fmt(g, m);
      if (compatible_sets(g, a, b)) {
        const auto j = set_union(a, b);
        if (!c.count(j)) return "join: " + fmt(g, a) + " ∨ " + fmt(g, b) + " = " + fmt(g, j);
      }
    }
  }
  return std::nullopt;
}

FinBIM FinBIM::with_carrier(GroupoidPtr g, std::vector<Bisection> carrier) {
  const auto& G = *g;
  for (const auto& a : carrier)
    if (!is_local_bisection(G, a.arrows()))
      throw ValidationError("carrier entry " + fmt(G, a) + " is not a local bisection");
  std::set<Bisection> c(carrier.begin(), carrier.end());
  const auto one = identities_of(G);
  auto fail = [&](const std::string& what) { throw ValidationError("carrier not closed under " + what); };
  if (!c.count(Bisection{})) fail("zero: {} missing");
  if (!c.count(one)) fail("one: " + fmt(G, one) + " missing");

  // Closure is checked on atoms: a carrier that is closed under inverses,
  // complements and joins-with-atoms, whose elements are joins of atoms, and
  // whose atoms are closed under products and meets, is closed under all
  // products, meets and compatible joins (products and meets distribute over
  // the atom decompositions).
  std::vector<Bisection> idem;
  for (const auto& a : c) {
    const auto inv = bisection_inverse(G, a);
    if (!c.count(inv)) fail("inverse: " + fmt(G, a) + " -> " + fmt(G, inv));
    if (all_identities(G, a)) {
      idem.push_back(a);
      const auto comp = set_difference(one, a);
      if (!c.count(comp)) fail("complement: " + fmt(G, a) + " -> " + fmt(G, comp));
    }
  }
  std::set<Bisection> idem_atoms;
  for (const auto& e : idem) {
    if (e.empty()) continue;
    bool minimal = true;
    for (const auto& f : idem)
      if (!f.empty() && f != e && f.subset_of(e)) minimal = false;
    if (minimal) idem_atoms.insert(e);
  }
  std::vector<Bisection> atoms;
  for (const auto& a : c)
    if (!a.empty() && idem_atoms.count(domain_of(G, a))) atoms.push_back(a);

  for (const auto& s : c) {
    Bisection covered;
    for (const auto& a : atoms)
      if (a.subset_of(s)) covered = set_union(covered, a);
    if (covered != s) {
      if (auto why = brute_force_closure_failure(G, std::vector<Bisection>(c.begin(), c.end())))
        fail(*why);
      throw ValidationError("carrier element " + fmt(G, s) + " is not a join of atoms");
    }
  }
  for (const auto& s : c)
    for (const auto& a : atoms) {
      if (a.subset_of(s) || !compatible_sets(G, s, a)) continue;
      const auto j = set_union(s, a);
      if (!c.count(j)) fail("join: " + fmt(G, s) + " ∨ " + fmt(G, a) + " = " + fmt(G, j));
    }
  for (const auto& a : atoms)
    for (const auto& b : atoms) {
      const auto p = bisection_product(G, a, b);
      if (!c.count(p)) fail("product: " + fmt(G, a) + " * " + fmt(G, b) + " = " + fmt(G, p));
      const auto m = set_intersection(a, b);
      if (!c.count(m)) fail("meet: " + fmt(G, a) + " ∧ " + fmt(G, b) + " = " + fmt(G, m));
    }
  return FinBIM(std::move(g), std::vector<Bisection>(c.begin(), c.end()), false);
}

std::size_t FinBIM::index_of(const Bisection& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) throw PreconditionError(format(a) + " is not an element of this monoid");
  return it->second;
}

void FinBIM::require_member(const Bisection& a, const char* op) const {
  if (!full_ && !contains(a))
    throw Error(std::string("carrier violation in ") + op + ": " + format(a) + " is not in the carrier");
}

Bisection FinBIM::multiply(const Bisection& a, const Bisection& b) const {
  auto p = bisection_product(*groupoid_, a, b);
  require_member(p, "multiply");
  return p;
}

Bisection FinBIM::inverse(const Bisection& a) const {
  auto p = bisection_inverse(*groupoid_, a);
  require_member(p, "inverse");
  return p;
}

Bisection FinBIM::phi(const Bisection& s) const { return set_intersection(s, one_); }

Bisection FinBIM::complement(const Bisection& e) const {
  if (!all_identities(*groupoid_, e)) throw PreconditionError("complement of non-idempotent " + format(e));
  return set_difference(one_, e);
}

Bisection FinBIM::join_unchecked(const Bisection& a, const Bisection& b) const {
  auto j = set_union(a, b);
  if (!is_local_bisection(*groupoid_, j.arrows()))
    throw PreconditionError("union of " + format(a) + " and " + format(b) + " is not a local bisection");
  return j;
}

Bisection FinBIM::intersection(const Bisection& a, const Bisection& b) const { return set_intersection(a, b); }

std::string FinBIM::format(const Bisection& a) const { return fmt(*groupoid_, a); }

nlohmann::ordered_json FinBIM::to_json(const Bisection& a) const {
  auto j = nlohmann::ordered_json::array();
  for (ArrowId x : a.arrows()) j.push_back(groupoid_->arrow(x).label);
  return j;
}

Bisection FinBIM::parse(std::string_view text_in) const {
  std::string text(text_in);
  const auto& g = *groupoid_;
  std::vector<std::string> tokens;
  auto b = text.find_first_not_of(" \t\n");
  if (b == std::string::npos) throw ParseError("empty element");
  if (text[b] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad element JSON: ") + e.what());
    }
    for (const auto& v : j) tokens.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  } else {
    auto e = text.find_last_not_of(" \t\n");
    std::string body = text.substr(b, e - b + 1);
    if (body == "0" || body == "∅") body = "{}";
    if (body.front() != '{' || body.back() != '}') throw ParseError("element must be written {a->b, ...}: " + body);
    body = body.substr(1, body.size() - 2);
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto tb = tok.find_first_not_of(" \t\n");
      if (tb == std::string::npos) continue;
      auto te = tok.find_last_not_of(" \t\n");
      tokens.push_back(tok.substr(tb, te - tb + 1));
    }
  }
  std::vector<ArrowId> arrows;
  for (const auto& tok : tokens) {
    if (auto a = g.find_arrow(tok)) {
      arrows.push_back(*a);
      continue;
    }
    auto arrow_pos = tok.find("->");
    if (arrow_pos == std::string::npos) throw ParseError("unknown arrow '" + tok + "'");
    auto strip = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    const auto x = g.find_object(strip(tok.substr(0, arrow_pos)));
    const auto y = g.find_object(strip(tok.substr(arrow_pos + 2)));
    if (!x || !y) throw ParseError("unknown object in '" + tok + "'");
    auto between = g.arrows_between(*x, *y);
    if (between.size() != 1) throw ParseError("'" + tok + "' does not name a unique arrow");
    arrows.push_back(between.front());
  }
  Bisection out(arrows);
  if (out.size() != arrows.size()) throw ParseError("repeated arrow in element '" + text + "'");
  if (!is_local_bisection(g, out.arrows())) throw ParseError(format(out) + " is not a local bisection");
  if (!contains(out)) throw ParseError(format(out) + " is not in the carrier");
  return out;
}

FinBIM kb_monoid(const FiniteGroupoid& g) { return FinBIM::full(g); }

FinBIM kb_monoid(const FiniteGroupoid& g, std::vector<Bisection> carrier) {
  return FinBIM::with_carrier(std::make_shared<const FiniteGroupoid>(g), std::move(carrier));
}

// ---------------------------------------------------------------------------

bool mu_related(const FinBIM& s, const Bisection& a, const Bisection& b) {
  for (const auto& e : s.idempotents())
    if (s.multiply(s.multiply(a, e), s.inverse(a)) != s.multiply(s.multiply(b, e), s.inverse(b))) return false;
  return true;
}

Relations relations(const FinBIM& s, const Bisection& a, const Bisection& b) {
  Relations r;
  r.leq = a.subset_of(b);
  if (r.leq != leq(s, a, b)) throw Error("order tests disagree on " + s.format(a) + ", " + s.format(b));
  r.compatible = compatible(s, a, b);
  r.orthogonal = orthogonal(s, a, b);
  r.mu_related = mu_related(s, a, b);
  return r;
}

Bisection checked_meet(const FinBIM& s, const Bisection& a, const Bisection& b) {
  auto by_sets = s.intersection(a, b);
  auto by_phi = meet(s, a, b);
  if (by_sets != by_phi)
    throw Error("meet disagreement on " + s.format(a) + ", " + s.format(b) + ": " + s.format(by_sets) + " vs " +
                s.format(by_phi));
  return by_sets;
}

Classification classify(const FinBIM& s, const Bisection& a) {
  Classification c;
  c.is_idempotent = is_idempotent(s, a);
  c.is_infinitesimal = is_infinitesimal(s, a);
  c.is_unit = is_unit(s, a);
  if (s.is_full())
    c.is_atom = a.size() == 1;
  else
    c.is_atom = std::find(s.atoms().begin(), s.atoms().end(), a) != s.atoms().end();
  return c;
}

BasicResult basic_decompose(const FinBIM& s, const Bisection& a) {
  BasicDecomposition out;
  for (const auto& e : s.idempotent_atoms()) {
    const auto piece = s.multiply(a, e);
    if (piece.empty()) continue;
    if (is_idempotent(s, piece))
      out.idempotent = s.join_unchecked(out.idempotent, piece);
    else if (is_zero(s, s.multiply(piece, piece)))
      out.infinitesimals.push_back(piece);
    else
      return BasicFailure{piece};
  }
  return out;
}

std::optional<Pencil<Bisection>> find_pencil(const FinBIM& s, const Bisection& e, const Bisection& f) {
  if (!is_idempotent(s, e) || !is_idempotent(s, f)) throw PreconditionError("pencils join idempotents");
  Pencil<Bisection> p{{}, e, f};
  if (e.empty()) {
    p.elements.push_back(s.zero());
    return p;
  }
  for (const auto& atom : s.idempotent_atoms()) {
    if (!atom.subset_of(e)) continue;
    const Bisection* chosen = nullptr;
    for (const auto& x : s.elements())
      if (dom(s, x) == atom && ran(s, x).subset_of(f)) {
        chosen = &x;
        break;
      }
    if (!chosen) return std::nullopt;
    p.elements.push_back(*chosen);
  }
  return p;
}

std::vector<Bisection> principal_ideal(const FinBIM& s, const Bisection& a) {
  std::set<Bisection> right;
  for (const auto& y : s.elements()) right.insert(s.multiply(a, y));
  std::set<Bisection> both;
  for (const auto& x : s.elements())
    for (const auto& r : right) both.insert(s.multiply(x, r));
  return {both.begin(), both.end()};
}

GreenResult green_on_idempotents(const FinBIM& s, const Bisection& e, const Bisection& f) {
  if (!is_idempotent(s, e) || !is_idempotent(s, f))
    throw PreconditionError("green_on_idempotents needs idempotents, got " + s.format(e) + ", " + s.format(f));
  GreenResult g;
  for (const auto& x : s.elements())
    if (dom(s, x) == e && ran(s, x) == f) {
      g.d_related = true;
      break;
    }
  g.j_related = principal_ideal(s, e) == principal_ideal(s, f);
  g.preceq = find_pencil(s, e, f);
  g.equiv = g.preceq.has_value() && find_pencil(s, f, e).has_value();
  return g;
}

Substructures substructures(const FinBIM& s, const std::optional<Bisection>& e) {
  Substructures out;
  out.units.assign(s.units().begin(), s.units().end());
  if (!e) return out;
  if (!is_idempotent(s, *e) || e->empty()) throw PreconditionError("local monoid needs a nonzero idempotent");
  const auto& g = s.groupoid();
  std::vector<ObjectId> objects;
  for (ArrowId x : e->arrows()) objects.push_back(g.dom(x));
  std::vector<ArrowId> map;
  auto sub = std::make_shared<const FiniteGroupoid>(full_subgroupoid(g, objects, &map));
  if (s.is_full()) {
    out.local_monoid = FinBIM::full(sub);
    return out;
  }
  std::vector<Bisection> carrier;
  for (const auto& x : s.elements()) {
    const auto local = s.multiply(s.multiply(*e, x), *e);
    if (local != x) continue;
    std::vector<ArrowId> arrows;
    for (ArrowId a : x.arrows()) arrows.push_back(map[a]);
    carrier.emplace_back(std::move(arrows));
  }
  out.local_monoid = FinBIM::with_carrier(sub, std::move(carrier));
  return out;
}

}  // namespace bim
