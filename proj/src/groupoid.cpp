#include "bim/groupoid.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "bim/error.hpp"

namespace bim {

namespace {

std::string arrow_str(const std::vector<Arrow>& arrows, ArrowId a) {
  return "'" + arrows[a].label + "'";
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool is_number(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> object_labels, std::vector<Arrow> arrows,
                               const std::vector<std::array<ArrowId, 3>>& compose_triples,
                               const std::vector<std::pair<ArrowId, ArrowId>>& inverse_pairs)
    : object_labels_(std::move(object_labels)), arrows_(std::move(arrows)) {
  const std::size_t n_obj = object_labels_.size();
  const std::size_t n_arr = arrows_.size();
  if (n_obj == 0) throw ValidationError("groupoid has no objects");
  {
    std::set<std::string> seen;
    for (const auto& l : object_labels_)
      if (!seen.insert(l).second) throw ValidationError("duplicate object label '" + l + "'");
    seen.clear();
    for (const auto& a : arrows_)
      if (!seen.insert(a.label).second) throw ValidationError("duplicate arrow label '" + a.label + "'");
  }
  for (ArrowId a = 0; a < n_arr; ++a)
    if (arrows_[a].dom >= n_obj || arrows_[a].cod >= n_obj)
      throw ValidationError("arrow " + arrow_str(arrows_, a) + " has an unknown endpoint");

  compose_.assign(n_arr * n_arr, -1);
  for (const auto& [a, b, c] : compose_triples) {
    if (a >= n_arr || b >= n_arr || c >= n_arr) throw ValidationError("composition entry names an unknown arrow");
    if (arrows_[a].dom != arrows_[b].cod)
      throw ValidationError("composition " + arrow_str(arrows_, a) + "*" + arrow_str(arrows_, b) +
                            " given but dom(a) != cod(b)");
    if (arrows_[c].dom != arrows_[b].dom || arrows_[c].cod != arrows_[a].cod)
      throw ValidationError("composition " + arrow_str(arrows_, a) + "*" + arrow_str(arrows_, b) + "=" +
                            arrow_str(arrows_, c) + " has the wrong endpoints");
    auto& slot = compose_[a * n_arr + b];
    if (slot >= 0 && slot != static_cast<std::int32_t>(c))
      throw ValidationError("composition " + arrow_str(arrows_, a) + "*" + arrow_str(arrows_, b) +
                            " defined twice");
    slot = static_cast<std::int32_t>(c);
  }
  for (ArrowId a = 0; a < n_arr; ++a)
    for (ArrowId b = 0; b < n_arr; ++b)
      if (arrows_[a].dom == arrows_[b].cod && compose_[a * n_arr + b] < 0)
        throw ValidationError("composition " + arrow_str(arrows_, a) + "*" + arrow_str(arrows_, b) +
                              " is missing");

  identity_.assign(n_obj, 0);
  for (ObjectId x = 0; x < n_obj; ++x) {
    std::optional<ArrowId> found;
    for (ArrowId a = 0; a < n_arr; ++a) {
      if (arrows_[a].dom != x || arrows_[a].cod != x) continue;
      if (compose_[a * n_arr + a] == static_cast<std::int32_t>(a)) {
        if (found) throw ValidationError("object '" + object_labels_[x] + "' has two idempotent loops");
        found = a;
      }
    }
    if (!found) throw ValidationError("object '" + object_labels_[x] + "' has no identity arrow");
    identity_[x] = *found;
  }
  for (ArrowId a = 0; a < n_arr; ++a) {
    const auto ld = compose_[a * n_arr + identity_[arrows_[a].dom]];
    const auto rc = compose_[identity_[arrows_[a].cod] * n_arr + a];
    if (ld != static_cast<std::int32_t>(a) || rc != static_cast<std::int32_t>(a))
      throw ValidationError("identity law fails at arrow " + arrow_str(arrows_, a));
  }

  for (ArrowId a = 0; a < n_arr; ++a)
    for (ArrowId b = 0; b < n_arr; ++b) {
      if (arrows_[a].dom != arrows_[b].cod) continue;
      const auto ab = static_cast<ArrowId>(compose_[a * n_arr + b]);
      for (ArrowId c = 0; c < n_arr; ++c) {
        if (arrows_[b].dom != arrows_[c].cod) continue;
        const auto bc = static_cast<ArrowId>(compose_[b * n_arr + c]);
        if (compose_[ab * n_arr + c] != compose_[a * n_arr + bc])
          throw ValidationError("associativity fails on (" + arrows_[a].label + ", " + arrows_[b].label + ", " +
                                arrows_[c].label + ")");
      }
    }

  constexpr ArrowId unset = ~ArrowId{0};
  inverse_.assign(n_arr, unset);
  for (const auto& [a, b] : inverse_pairs) {
    if (a >= n_arr || b >= n_arr) throw ValidationError("inverse entry names an unknown arrow");
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      if (inverse_[x] != unset && inverse_[x] != y)
        throw ValidationError("arrow " + arrow_str(arrows_, x) + " has two inverses");
      inverse_[x] = y;
    }
  }
  for (ArrowId a = 0; a < n_arr; ++a) {
    const ArrowId b = inverse_[a];
    if (b == unset) throw ValidationError("arrow " + arrow_str(arrows_, a) + " has no inverse");
    if (arrows_[b].dom != arrows_[a].cod || arrows_[b].cod != arrows_[a].dom)
      throw ValidationError("inverse of " + arrow_str(arrows_, a) + " has the wrong endpoints");
    if (compose_[b * n_arr + a] != static_cast<std::int32_t>(identity_[arrows_[a].dom]) ||
        compose_[a * n_arr + b] != static_cast<std::int32_t>(identity_[arrows_[a].cod]))
      throw ValidationError("inverse law fails for (" + arrows_[a].label + ", " + arrows_[b].label + ")");
  }
}

std::optional<ArrowId> FiniteGroupoid::compose(ArrowId a, ArrowId b) const {
  const auto c = compose_[a * arrows_.size() + b];
  if (c < 0) return std::nullopt;
  return static_cast<ArrowId>(c);
}

std::optional<ObjectId> FiniteGroupoid::find_object(std::string_view label) const {
  for (ObjectId x = 0; x < object_labels_.size(); ++x)
    if (object_labels_[x] == label) return x;
  return std::nullopt;
}

std::optional<ArrowId> FiniteGroupoid::find_arrow(std::string_view label) const {
  for (ArrowId a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].label == label) return a;
  return std::nullopt;
}

std::vector<ArrowId> FiniteGroupoid::arrows_between(ObjectId dom, ObjectId cod) const {
  std::vector<ArrowId> out;
  for (ArrowId a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].dom == dom && arrows_[a].cod == cod) out.push_back(a);
  return out;
}

std::string FiniteGroupoid::arrow_name(ArrowId a) const {
  const auto& ar = arrows_.at(a);
  if (arrows_between(ar.dom, ar.cod).size() == 1) return object_labels_[ar.dom] + "->" + object_labels_[ar.cod];
  return ar.label;
}

// ---------------------------------------------------------------------------

FiniteGroupoid pair_groupoid(std::size_t n) {
  if (n == 0) throw ParseError("pair groupoid needs at least one object");
  std::vector<std::string> objects;
  for (std::size_t i = 1; i <= n; ++i) objects.push_back(std::to_string(i));
  std::vector<Arrow> arrows;
  auto id = [n](std::size_t dom, std::size_t cod) { return static_cast<ArrowId>(dom * n + cod); };
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t c = 0; c < n; ++c)
      arrows.push_back({static_cast<ObjectId>(d), static_cast<ObjectId>(c), objects[d] + "->" + objects[c]});
  std::vector<std::array<ArrowId, 3>> compose;
  std::vector<std::pair<ArrowId, ArrowId>> inverse;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      inverse.emplace_back(id(x, y), id(y, x));
      // (y -> z) after (x -> y)
      for (std::size_t z = 0; z < n; ++z) compose.push_back({id(y, z), id(x, y), id(x, z)});
    }
  return FiniteGroupoid(std::move(objects), std::move(arrows), compose, inverse);
}

FiniteGroupoid group_groupoid(const std::vector<std::vector<std::size_t>>& table, std::vector<std::string> labels) {
  const std::size_t k = table.size();
  if (k == 0) throw ParseError("empty group table");
  for (const auto& row : table) {
    if (row.size() != k) throw ParseError("group table is not square");
    for (auto v : row)
      if (v >= k) throw ValidationError("group table entry " + std::to_string(v) + " out of range");
  }
  if (labels.empty())
    for (std::size_t i = 0; i < k; ++i) labels.push_back(std::to_string(i));
  if (labels.size() != k) throw ParseError("group label count does not match table");
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < k; ++i) arrows.push_back({0, 0, labels[i]});
  std::vector<std::array<ArrowId, 3>> compose;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      compose.push_back({static_cast<ArrowId>(i), static_cast<ArrowId>(j), static_cast<ArrowId>(table[i][j])});
  // Inverses are read off the table; the constructor re-checks them.
  std::optional<std::size_t> unit;
  for (std::size_t i = 0; i < k && !unit; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < k; ++j) ok = ok && table[i][j] == j && table[j][i] == j;
    if (ok) unit = i;
  }
  if (!unit) throw ValidationError("group table has no identity element");
  std::vector<std::pair<ArrowId, ArrowId>> inverse;
  for (std::size_t i = 0; i < k; ++i) {
    std::optional<std::size_t> inv;
    for (std::size_t j = 0; j < k; ++j)
      if (table[i][j] == *unit && table[j][i] == *unit) inv = j;
    if (!inv) throw ValidationError("group element '" + labels[i] + "' has no inverse");
    inverse.emplace_back(static_cast<ArrowId>(i), static_cast<ArrowId>(*inv));
  }
  return FiniteGroupoid({"*"}, std::move(arrows), compose, inverse);
}

FiniteGroupoid named_group(std::string_view name) {
  const std::string s = trim(name);
  if (!s.empty() && s.front() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad group table: ") + e.what());
    }
    return group_groupoid(j.get<std::vector<std::vector<std::size_t>>>());
  }
  if (s.size() >= 2 && s[0] == 'Z' && is_number(s.substr(1))) {
    const std::size_t k = std::stoul(s.substr(1));
    if (k == 0) throw ParseError("Z0 is not a group");
    std::vector<std::vector<std::size_t>> table(k, std::vector<std::size_t>(k));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) table[i][j] = (i + j) % k;
      labels.push_back(i == 0 ? "1" : i == 1 ? "g" : "g" + std::to_string(i));
    }
    return group_groupoid(table, labels);
  }
  if (s == "V4") {
    std::vector<std::vector<std::size_t>> table(4, std::vector<std::size_t>(4));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) table[i][j] = i ^ j;
    return group_groupoid(table, {"1", "a", "b", "ab"});
  }
  if (s == "S3") {
    // one-line images of {0,1,2}; composition (p*q)(x) = p(q(x))
    const std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                                                   {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    const std::vector<std::string> labels = {"1", "(12)", "(23)", "(13)", "(123)", "(132)"};
    std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        std::array<int, 3> c{};
        for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
        table[i][j] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
      }
    return group_groupoid(table, labels);
  }
  throw ParseError("unknown group '" + s + "' (expected Z<k>, S3, V4 or a Cayley table)");
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& left, const FiniteGroupoid& right) {
  std::vector<std::string> objects;
  std::set<std::string> used;
  for (ObjectId x = 0; x < left.object_count(); ++x) {
    objects.push_back(left.object_label(x));
    used.insert(objects.back());
  }
  const auto offset = static_cast<ObjectId>(left.object_count());
  std::vector<std::string> right_objects;
  for (ObjectId x = 0; x < right.object_count(); ++x) {
    std::string l = right.object_label(x);
    if (is_number(l)) l = std::to_string(std::stoul(l) + offset);
    while (used.count(l)) l += "'";
    used.insert(l);
    right_objects.push_back(l);
    objects.push_back(l);
  }

  std::vector<Arrow> arrows;
  std::set<std::string> labels;
  for (ArrowId a = 0; a < left.arrow_count(); ++a) {
    arrows.push_back(left.arrow(a));
    labels.insert(arrows.back().label);
  }
  const auto shift = static_cast<ArrowId>(left.arrow_count());
  for (ArrowId a = 0; a < right.arrow_count(); ++a) {
    const auto& ar = right.arrow(a);
    std::string l = ar.label;
    if (l == right.object_label(ar.dom) + "->" + right.object_label(ar.cod))
      l = right_objects[ar.dom] + "->" + right_objects[ar.cod];
    while (labels.count(l)) l += "'";
    labels.insert(l);
    arrows.push_back({ar.dom + offset, ar.cod + offset, l});
  }

  std::vector<std::array<ArrowId, 3>> compose;
  std::vector<std::pair<ArrowId, ArrowId>> inverse;
  for (ArrowId a = 0; a < left.arrow_count(); ++a) {
    inverse.emplace_back(a, left.inverse(a));
    for (ArrowId b = 0; b < left.arrow_count(); ++b)
      if (auto c = left.compose(a, b)) compose.push_back({a, b, *c});
  }
  for (ArrowId a = 0; a < right.arrow_count(); ++a) {
    inverse.emplace_back(a + shift, right.inverse(a) + shift);
    for (ArrowId b = 0; b < right.arrow_count(); ++b)
      if (auto c = right.compose(a, b)) compose.push_back({a + shift, b + shift, *c + shift});
  }
  return FiniteGroupoid(std::move(objects), std::move(arrows), compose, inverse);
}

FiniteGroupoid full_subgroupoid(const FiniteGroupoid& g, std::span<const ObjectId> objects,
                                std::vector<ArrowId>* arrow_map) {
  constexpr ObjectId dropped = ~ObjectId{0};
  std::vector<ObjectId> new_obj(g.object_count(), dropped);
  std::vector<std::string> labels;
  for (ObjectId x : objects) {
    if (x >= g.object_count()) throw PreconditionError("full_subgroupoid: unknown object");
    if (new_obj[x] != dropped) continue;
    new_obj[x] = static_cast<ObjectId>(labels.size());
    labels.push_back(g.object_label(x));
  }
  std::vector<ArrowId> map(g.arrow_count(), dropped);
  std::vector<Arrow> arrows;
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    if (new_obj[g.dom(a)] == dropped || new_obj[g.cod(a)] == dropped) continue;
    map[a] = static_cast<ArrowId>(arrows.size());
    arrows.push_back({new_obj[g.dom(a)], new_obj[g.cod(a)], g.arrow(a).label});
  }
  std::vector<std::array<ArrowId, 3>> compose;
  std::vector<std::pair<ArrowId, ArrowId>> inverse;
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    if (map[a] == dropped) continue;
    inverse.emplace_back(map[a], map[g.inverse(a)]);
    for (ArrowId b = 0; b < g.arrow_count(); ++b)
      if (map[b] != dropped)
        if (auto c = g.compose(a, b)) compose.push_back({map[a], map[b], map[*c]});
  }
  if (arrow_map) *arrow_map = map;
  return FiniteGroupoid(std::move(labels), std::move(arrows), compose, inverse);
}

FiniteGroupoid parse_groupoid_spec(std::string_view spec_in) {
  const std::string spec = trim(spec_in);
  if (spec.empty()) throw ParseError("empty groupoid spec");
  if (spec.front() == '{') {
    try {
      return groupoid_from_json(nlohmann::json::parse(spec));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad groupoid JSON: ") + e.what());
    }
  }
  if (spec.rfind("pair:", 0) == 0) {
    const std::string n = trim(spec.substr(5));
    if (!is_number(n)) throw ParseError("bad object count in '" + spec + "'");
    return pair_groupoid(std::stoul(n));
  }
  if (spec.rfind("group:", 0) == 0) return named_group(spec.substr(6));
  if (spec.rfind("disjoint_union(", 0) == 0 && spec.back() == ')') {
    const std::string inner = spec.substr(15, spec.size() - 16);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      const char c = inner[i];
      if (c == '(' || c == '[' || c == '{') ++depth;
      if (c == ')' || c == ']' || c == '}') --depth;
      if (c == ',' && depth == 0)
        return disjoint_union(parse_groupoid_spec(inner.substr(0, i)), parse_groupoid_spec(inner.substr(i + 1)));
    }
    throw ParseError("disjoint_union needs two arguments: '" + spec + "'");
  }
  throw ParseError("unrecognised groupoid spec '" + spec + "'");
}

// ---------------------------------------------------------------------------
// JSON and DOT

nlohmann::ordered_json to_json(const FiniteGroupoid& g) {
  nlohmann::ordered_json j;
  j["objects"] = nlohmann::ordered_json::array();
  for (ObjectId x = 0; x < g.object_count(); ++x) j["objects"].push_back(g.object_label(x));
  j["arrows"] = nlohmann::ordered_json::array();
  for (ArrowId a = 0; a < g.arrow_count(); ++a)
    j["arrows"].push_back({{"id", g.arrow(a).label},
                           {"dom", g.object_label(g.dom(a))},
                           {"cod", g.object_label(g.cod(a))}});
  j["compose"] = nlohmann::ordered_json::array();
  for (ArrowId a = 0; a < g.arrow_count(); ++a)
    for (ArrowId b = 0; b < g.arrow_count(); ++b)
      if (auto c = g.compose(a, b)) j["compose"].push_back({g.arrow(a).label, g.arrow(b).label, g.arrow(*c).label});
  j["inverse"] = nlohmann::ordered_json::array();
  for (ArrowId a = 0; a < g.arrow_count(); ++a) j["inverse"].push_back({g.arrow(a).label, g.arrow(g.inverse(a)).label});
  return j;
}

namespace {

std::string scalar_label(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError("expected a string or integer id, got " + v.dump());
}

}  // namespace

FiniteGroupoid groupoid_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("objects") || !j.contains("arrows"))
    throw ParseError("groupoid JSON needs 'objects' and 'arrows'");
  std::vector<std::string> objects;
  std::map<std::string, ObjectId> obj_index;
  for (const auto& o : j.at("objects")) {
    objects.push_back(scalar_label(o));
    obj_index[objects.back()] = static_cast<ObjectId>(objects.size() - 1);
  }
  std::vector<Arrow> arrows;
  std::map<std::string, ArrowId> arr_index;
  auto object_of = [&](const nlohmann::json& v) {
    auto it = obj_index.find(scalar_label(v));
    if (it == obj_index.end()) throw ParseError("unknown object " + v.dump());
    return it->second;
  };
  for (const auto& a : j.at("arrows")) {
    if (!a.contains("id") || !a.contains("dom") || !a.contains("cod"))
      throw ParseError("arrow record needs id, dom and cod: " + a.dump());
    arrows.push_back({object_of(a.at("dom")), object_of(a.at("cod")), scalar_label(a.at("id"))});
    arr_index[arrows.back().label] = static_cast<ArrowId>(arrows.size() - 1);
  }
  auto arrow_of = [&](const nlohmann::json& v) {
    auto it = arr_index.find(scalar_label(v));
    if (it == arr_index.end()) throw ParseError("unknown arrow " + v.dump());
    return it->second;
  };
  std::vector<std::array<ArrowId, 3>> compose;
  if (j.contains("compose"))
    for (const auto& t : j.at("compose")) {
      if (!t.is_array() || t.size() != 3) throw ParseError("compose entries are [a,b,c] triples");
      compose.push_back({arrow_of(t[0]), arrow_of(t[1]), arrow_of(t[2])});
    }
  std::vector<std::pair<ArrowId, ArrowId>> inverse;
  if (j.contains("inverse"))
    for (const auto& p : j.at("inverse")) {
      if (!p.is_array() || p.size() != 2) throw ParseError("inverse entries are [a,a'] pairs");
      inverse.emplace_back(arrow_of(p[0]), arrow_of(p[1]));
    }
  return FiniteGroupoid(std::move(objects), std::move(arrows), compose, inverse);
}

std::string to_dot(const FiniteGroupoid& g, std::string_view name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (ObjectId x = 0; x < g.object_count(); ++x) os << "  \"" << g.object_label(x) << "\";\n";
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    os << "  \"" << g.object_label(g.dom(a)) << "\" -> \"" << g.object_label(g.cod(a)) << "\" [label=\""
       << g.arrow(a).label << "\"";
    if (g.is_identity(a)) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Bisections

Bisection::Bisection(std::vector<ArrowId> arrows) : arrows_(std::move(arrows)) {
  std::sort(arrows_.begin(), arrows_.end());
  arrows_.erase(std::unique(arrows_.begin(), arrows_.end()), arrows_.end());
}

Bisection::Bisection(std::initializer_list<ArrowId> arrows) : Bisection(std::vector<ArrowId>(arrows)) {}

bool Bisection::contains(ArrowId a) const { return std::binary_search(arrows_.begin(), arrows_.end(), a); }

bool Bisection::subset_of(const Bisection& other) const {
  return std::includes(other.arrows_.begin(), other.arrows_.end(), arrows_.begin(), arrows_.end());
}

bool is_local_bisection(const FiniteGroupoid& g, std::span<const ArrowId> arrows) {
  std::vector<bool> dom(g.object_count()), cod(g.object_count());
  for (ArrowId a : arrows) {
    if (a >= g.arrow_count()) return false;
    if (dom[g.dom(a)] || cod[g.cod(a)]) return false;
    dom[g.dom(a)] = cod[g.cod(a)] = true;
  }
  return true;
}

Bisection bisection_product(const FiniteGroupoid& g, const Bisection& a, const Bisection& b) {
  std::vector<ArrowId> out;
  for (ArrowId y : b.arrows())
    for (ArrowId x : a.arrows())
      if (auto c = g.compose(x, y)) out.push_back(*c);
  return Bisection(std::move(out));
}

Bisection bisection_inverse(const FiniteGroupoid& g, const Bisection& a) {
  std::vector<ArrowId> out;
  out.reserve(a.size());
  for (ArrowId x : a.arrows()) out.push_back(g.inverse(x));
  return Bisection(std::move(out));
}

Bisection set_intersection(const Bisection& a, const Bisection& b) {
  std::vector<ArrowId> out;
  std::set_intersection(a.arrows().begin(), a.arrows().end(), b.arrows().begin(), b.arrows().end(),
                        std::back_inserter(out));
  return Bisection(std::move(out));
}

Bisection set_union(const Bisection& a, const Bisection& b) {
  std::vector<ArrowId> out;
  std::set_union(a.arrows().begin(), a.arrows().end(), b.arrows().begin(), b.arrows().end(), std::back_inserter(out));
  return Bisection(std::move(out));
}

Bisection set_difference(const Bisection& a, const Bisection& b) {
  std::vector<ArrowId> out;
  std::set_difference(a.arrows().begin(), a.arrows().end(), b.arrows().begin(), b.arrows().end(),
                      std::back_inserter(out));
  return Bisection(std::move(out));
}

std::vector<Bisection> all_local_bisections(const FiniteGroupoid& g) {
  std::vector<Bisection> out;
  std::vector<ArrowId> current;
  std::vector<bool> dom_used(g.object_count()), cod_used(g.object_count());
  std::function<void(ArrowId)> rec = [&](ArrowId next) {
    out.emplace_back(current);
    for (ArrowId a = next; a < g.arrow_count(); ++a) {
      if (dom_used[g.dom(a)] || cod_used[g.cod(a)]) continue;
      dom_used[g.dom(a)] = cod_used[g.cod(a)] = true;
      current.push_back(a);
      rec(a + 1);
      current.pop_back();
      dom_used[g.dom(a)] = cod_used[g.cod(a)] = false;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const Bisection& x, const Bisection& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Orbits

GroupoidProperties groupoid_properties(const FiniteGroupoid& g) {
  std::vector<ObjectId> parent(g.object_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<ObjectId(ObjectId)> find = [&](ObjectId x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    const auto r1 = find(g.dom(a)), r2 = find(g.cod(a));
    if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
  }
  GroupoidProperties p;
  std::map<ObjectId, std::size_t> orbit_of_root;
  for (ObjectId x = 0; x < g.object_count(); ++x) {
    const auto r = find(x);
    auto [it, fresh] = orbit_of_root.try_emplace(r, p.orbits.size());
    if (fresh) p.orbits.emplace_back();
    p.orbits[it->second].push_back(x);
  }
  p.principal = true;
  for (ArrowId a = 0; a < g.arrow_count(); ++a)
    if (g.dom(a) == g.cod(a)) {
      p.isotropy.push_back(a);
      if (!g.is_identity(a)) p.principal = false;
    }
  p.effective = p.principal;
  p.connected = p.orbits.size() == 1;
  p.minimal = p.connected;
  return p;
}

nlohmann::ordered_json to_json(const FiniteGroupoid& g, const GroupoidProperties& p) {
  nlohmann::ordered_json j;
  j["orbits"] = nlohmann::ordered_json::array();
  for (const auto& orbit : p.orbits) {
    auto o = nlohmann::ordered_json::array();
    for (auto x : orbit) o.push_back(g.object_label(x));
    j["orbits"].push_back(o);
  }
  j["isotropy"] = nlohmann::ordered_json::array();
  for (auto a : p.isotropy) j["isotropy"].push_back(g.arrow(a).label);
  j["principal"] = p.principal;
  j["effective"] = p.effective;
  j["minimal"] = p.minimal;
  j["connected"] = p.connected;
  return j;
}

// ---------------------------------------------------------------------------
// Isomorphism

bool is_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h, const GroupoidIsomorphism& iso) {
  if (g.object_count() != h.object_count() || g.arrow_count() != h.arrow_count()) return false;
  if (iso.objects.size() != g.object_count() || iso.arrows.size() != g.arrow_count()) return false;
  std::vector<bool> hit_obj(h.object_count()), hit_arr(h.arrow_count());
  for (auto x : iso.objects) {
    if (x >= h.object_count() || hit_obj[x]) return false;
    hit_obj[x] = true;
  }
  for (auto a : iso.arrows) {
    if (a >= h.arrow_count() || hit_arr[a]) return false;
    hit_arr[a] = true;
  }
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    const auto fa = iso.arrows[a];
    if (h.dom(fa) != iso.objects[g.dom(a)] || h.cod(fa) != iso.objects[g.cod(a)]) return false;
    if (iso.arrows[g.inverse(a)] != h.inverse(fa)) return false;
    for (ArrowId b = 0; b < g.arrow_count(); ++b) {
      auto c = g.compose(a, b);
      if (!c) continue;
      auto hc = h.compose(fa, iso.arrows[b]);
      if (!hc || *hc != iso.arrows[*c]) return false;
    }
  }
  return true;
}

namespace {

// Order of a loop arrow in its local group.
std::size_t loop_order(const FiniteGroupoid& g, ArrowId a) {
  std::size_t k = 1;
  ArrowId p = a;
  while (!g.is_identity(p)) {
    p = *g.compose(a, p);
    ++k;
  }
  return k;
}

std::vector<std::size_t> object_signature(const FiniteGroupoid& g, const GroupoidProperties& props, ObjectId x) {
  std::vector<std::size_t> sig;
  for (const auto& orbit : props.orbits)
    if (std::find(orbit.begin(), orbit.end(), x) != orbit.end()) sig.push_back(orbit.size());
  std::vector<std::size_t> orders;
  for (ArrowId a : g.arrows_between(x, x)) orders.push_back(loop_order(g, a));
  std::sort(orders.begin(), orders.end());
  sig.push_back(orders.size());
  sig.insert(sig.end(), orders.begin(), orders.end());
  return sig;
}

}  // namespace

std::optional<GroupoidIsomorphism> find_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  if (g.object_count() != h.object_count() || g.arrow_count() != h.arrow_count()) return std::nullopt;
  const auto pg = groupoid_properties(g);
  const auto ph = groupoid_properties(h);
  std::vector<std::vector<std::size_t>> sig_g, sig_h;
  for (ObjectId x = 0; x < g.object_count(); ++x) sig_g.push_back(object_signature(g, pg, x));
  for (ObjectId x = 0; x < h.object_count(); ++x) sig_h.push_back(object_signature(h, ph, x));

  GroupoidIsomorphism iso;
  iso.objects.assign(g.object_count(), 0);
  iso.arrows.assign(g.arrow_count(), 0);
  std::vector<bool> used_obj(h.object_count()), used_arr(h.arrow_count()), assigned(g.arrow_count());

  // Arrows are assigned identities first, then in id order.
  std::vector<ArrowId> order;
  for (ArrowId a = 0; a < g.arrow_count(); ++a)
    if (g.is_identity(a)) order.push_back(a);
  for (ArrowId a = 0; a < g.arrow_count(); ++a)
    if (!g.is_identity(a)) order.push_back(a);

  auto consistent = [&](ArrowId a) {
    const ArrowId fa = iso.arrows[a];
    if (g.is_identity(a) != h.is_identity(fa)) return false;
    if (assigned[g.inverse(a)] && iso.arrows[g.inverse(a)] != h.inverse(fa)) return false;
    for (ArrowId b = 0; b < g.arrow_count(); ++b) {
      if (!assigned[b]) continue;
      for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        auto c = g.compose(x, y);
        if (!c || !assigned[*c]) continue;
        auto hc = h.compose(iso.arrows[x], iso.arrows[y]);
        if (!hc || *hc != iso.arrows[*c]) return false;
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> assign_arrow = [&](std::size_t i) -> bool {
    if (i == order.size()) return true;
    const ArrowId a = order[i];
    for (ArrowId b : h.arrows_between(iso.objects[g.dom(a)], iso.objects[g.cod(a)])) {
      if (used_arr[b]) continue;
      iso.arrows[a] = b;
      used_arr[b] = true;
      assigned[a] = true;
      if (consistent(a) && assign_arrow(i + 1)) return true;
      used_arr[b] = false;
      assigned[a] = false;
    }
    return false;
  };

  std::function<bool(ObjectId)> assign_object = [&](ObjectId x) -> bool {
    if (x == g.object_count()) return assign_arrow(0);
    for (ObjectId y = 0; y < h.object_count(); ++y) {
      if (used_obj[y] || sig_g[x] != sig_h[y]) continue;
      // objects connected in g must land in connected objects of h
      bool ok = true;
      for (ObjectId z = 0; z < x && ok; ++z)
        ok = g.arrows_between(z, x).empty() == h.arrows_between(iso.objects[z], y).empty();
      if (!ok) continue;
      iso.objects[x] = y;
      used_obj[y] = true;
      if (assign_object(x + 1)) return true;
      used_obj[y] = false;
    }
    return false;
  };

  if (!assign_object(0)) return std::nullopt;
  return iso;
}

}  // namespace bim
