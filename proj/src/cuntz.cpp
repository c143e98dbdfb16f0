#include "bim/cuntz.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "bim/error.hpp"

namespace bim {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_top(const std::string& body, char sep) {
  std::vector<std::string> out;
  if (trim(body).empty()) return out;
  std::string cur;
  int depth = 0;
  for (char c : body) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  for (const auto& item : out)
    if (item.empty()) throw ParseError("empty item in '" + body + "'");
  return out;
}

std::size_t max_word_length(const CuntzElement& s) {
  std::size_t m = 0;
  for (const auto& r : s.rules()) m = std::max({m, r.from.size(), r.to.size()});
  return m;
}

// Sorted words; any prefix relation shows up between neighbours.
std::optional<std::pair<Word, Word>> prefix_clash(std::vector<Word> words) {
  std::sort(words.begin(), words.end());
  for (std::size_t i = 1; i < words.size(); ++i)
    if (is_prefix(words[i - 1], words[i])) return std::make_pair(words[i - 1], words[i]);
  return std::nullopt;
}

}  // namespace

std::string format_word(const Word& w) { return w.empty() ? "e" : w; }

Word parse_word(std::string_view text_in, unsigned n) {
  const auto text = trim(text_in);
  if (text.empty() || text == "e" || text == "ε") return {};
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c)) || static_cast<unsigned>(c - '0') >= n)
      throw ParseError("bad letter '" + std::string(1, c) + "' in word '" + text + "' (alphabet 0.." +
                       std::to_string(n - 1) + ")");
  return text;
}

CuntzMonoid::CuntzMonoid(unsigned n, std::size_t depth_cap) : n_(n), depth_cap_(depth_cap) {
  if (n < 2 || n > 10) throw PreconditionError("alphabet size must be 2..10, got " + std::to_string(n));
  if (depth_cap == 0) throw PreconditionError("depth cap must be positive");
}

void CuntzMonoid::check_word(const Word& w) const {
  for (char c : w)
    if (c < '0' || static_cast<unsigned>(c - '0') >= n_)
      throw ValidationError("word '" + w + "' uses a letter outside 0.." + std::to_string(n_ - 1));
  if (w.size() > depth_cap_)
    throw DepthCapError("word " + w + " exceeds the depth cap of " + std::to_string(depth_cap_));
}

std::vector<Word> CuntzMonoid::split(const Word& w) const {
  std::vector<Word> out;
  for (unsigned a = 0; a < n_; ++a) out.push_back(w + static_cast<char>('0' + a));
  return out;
}

CuntzElement CuntzMonoid::canonicalize(std::vector<Rule> rules) const {
  std::vector<Word> from, to;
  for (const auto& r : rules) {
    from.push_back(r.from);
    to.push_back(r.to);
  }
  if (auto c = prefix_clash(from))
    throw ValidationError("domain words " + format_word(c->first) + " and " + format_word(c->second) + " overlap");
  if (auto c = prefix_clash(to))
    throw ValidationError("range words " + format_word(c->first) + " and " + format_word(c->second) + " overlap");
  std::map<Word, Word> map;
  for (auto& r : rules) map.emplace(std::move(r.from), std::move(r.to));
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = map.begin(); it != map.end(); ++it) {
      const Word& x = it->first;
      const Word& y = it->second;
      if (x.empty() || y.empty() || x.back() != '0' || y.back() != '0') continue;
      const Word u = x.substr(0, x.size() - 1), v = y.substr(0, y.size() - 1);
      bool family = true;
      for (unsigned a = 1; a < n_ && family; ++a) {
        auto jt = map.find(u + static_cast<char>('0' + a));
        family = jt != map.end() && jt->second == v + static_cast<char>('0' + a);
      }
      if (!family) continue;
      for (unsigned a = 0; a < n_; ++a) map.erase(u + static_cast<char>('0' + a));
      map.emplace(u, v);
      changed = true;
      break;
    }
  }
  std::vector<Rule> out;
  for (auto& [x, y] : map) {
    check_word(x);
    check_word(y);
    out.push_back({x, y});
  }
  return CuntzElement(std::move(out));
}

ClopenSet CuntzMonoid::clopen(std::vector<Word> words) const {
  for (const auto& w : words)
    for (char c : w)
      if (c < '0' || static_cast<unsigned>(c - '0') >= n_)
        throw ValidationError("word '" + w + "' uses a letter outside 0.." + std::to_string(n_ - 1));
  std::sort(words.begin(), words.end());
  std::set<Word> kept;
  const Word* last = nullptr;
  for (const auto& w : words) {
    if (last && is_prefix(*last, w)) continue;
    last = &*kept.insert(w).first;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& w : kept) {
      if (w.empty() || w.back() != '0') continue;
      const Word u = w.substr(0, w.size() - 1);
      bool family = true;
      for (unsigned a = 1; a < n_ && family; ++a) family = kept.count(u + static_cast<char>('0' + a)) != 0;
      if (!family) continue;
      for (unsigned a = 0; a < n_; ++a) kept.erase(u + static_cast<char>('0' + a));
      kept.insert(u);
      changed = true;
      break;
    }
  }
  std::vector<Word> out(kept.begin(), kept.end());
  for (const auto& w : out) check_word(w);
  return ClopenSet(std::move(out));
}

CuntzElement CuntzMonoid::one() const { return CuntzElement({Rule{"", ""}}); }

CuntzElement CuntzMonoid::multiply(const CuntzElement& a, const CuntzElement& b) const {
  std::vector<Rule> out;
  for (const auto& rb : b.rules())
    for (const auto& ra : a.rules()) {
      if (is_prefix(ra.from, rb.to))
        out.push_back({rb.from, ra.to + rb.to.substr(ra.from.size())});
      else if (is_prefix(rb.to, ra.from))
        out.push_back({rb.from + ra.from.substr(rb.to.size()), ra.to});
    }
  return canonicalize(std::move(out));
}

CuntzElement CuntzMonoid::inverse(const CuntzElement& a) const {
  std::vector<Rule> out;
  for (const auto& r : a.rules()) out.push_back({r.to, r.from});
  return canonicalize(std::move(out));
}

CuntzElement CuntzMonoid::phi(const CuntzElement& a) const {
  std::vector<Rule> out;
  for (const auto& r : a.rules())
    if (r.from == r.to) out.push_back(r);
  return canonicalize(std::move(out));
}

CuntzElement CuntzMonoid::complement(const CuntzElement& e) const {
  return identity(clopen_complement(as_clopen(e)));
}

CuntzElement CuntzMonoid::join_unchecked(const CuntzElement& a, const CuntzElement& b) const {
  auto rest = multiply(a, identity(clopen_complement(domain(b))));
  std::vector<Rule> rules = rest.rules();
  rules.insert(rules.end(), b.rules().begin(), b.rules().end());
  try {
    return canonicalize(std::move(rules));
  } catch (const ValidationError& e) {
    throw PreconditionError("join of " + format(a) + " and " + format(b) + " is not a partial bijection: " + e.what());
  }
}

std::string CuntzMonoid::format(const CuntzElement& a) const {
  if (a.empty()) return "zero";
  std::string out;
  for (const auto& r : a.rules()) {
    if (!out.empty()) out += ", ";
    out += format_word(r.from) + "->" + format_word(r.to);
  }
  return out;
}

CuntzElement CuntzMonoid::identity(const ClopenSet& e) const {
  std::vector<Rule> rules;
  for (const auto& w : e.words()) rules.push_back({w, w});
  return CuntzElement(std::move(rules));
}

ClopenSet CuntzMonoid::domain(const CuntzElement& a) const {
  std::vector<Word> w;
  for (const auto& r : a.rules()) w.push_back(r.from);
  return clopen(std::move(w));
}

ClopenSet CuntzMonoid::range(const CuntzElement& a) const {
  std::vector<Word> w;
  for (const auto& r : a.rules()) w.push_back(r.to);
  return clopen(std::move(w));
}

ClopenSet CuntzMonoid::as_clopen(const CuntzElement& a) const {
  std::vector<Word> w;
  for (const auto& r : a.rules()) {
    if (r.from != r.to) throw PreconditionError(format(a) + " is not an idempotent");
    w.push_back(r.from);
  }
  return clopen(std::move(w));
}

ClopenSet CuntzMonoid::clopen_meet(const ClopenSet& e, const ClopenSet& f) const {
  std::vector<Word> out;
  for (const auto& u : e.words())
    for (const auto& v : f.words()) {
      if (is_prefix(u, v))
        out.push_back(v);
      else if (is_prefix(v, u))
        out.push_back(u);
    }
  return clopen(std::move(out));
}

ClopenSet CuntzMonoid::clopen_join(const ClopenSet& e, const ClopenSet& f) const {
  std::vector<Word> out = e.words();
  out.insert(out.end(), f.words().begin(), f.words().end());
  return clopen(std::move(out));
}

void CuntzMonoid::complement_into(const std::vector<Word>& words, const Word& at, std::vector<Word>& out) const {
  bool below = false;
  for (const auto& w : words) {
    if (is_prefix(w, at)) return;
    if (is_prefix(at, w)) below = true;
  }
  if (!below) {
    out.push_back(at);
    return;
  }
  for (const auto& child : split(at)) complement_into(words, child, out);
}

ClopenSet CuntzMonoid::clopen_complement(const ClopenSet& e) const {
  std::vector<Word> out;
  complement_into(e.words(), Word{}, out);
  return clopen(std::move(out));
}

bool CuntzMonoid::clopen_leq(const ClopenSet& e, const ClopenSet& f) const { return clopen_meet(e, f) == e; }

std::string CuntzMonoid::format(const ClopenSet& e) const {
  std::string out = "{";
  for (std::size_t i = 0; i < e.words().size(); ++i) {
    if (i) out += ", ";
    out += format_word(e.words()[i]);
  }
  return out + "}";
}

EvalOutcome CuntzMonoid::evaluate(const CuntzElement& s, const Word& w) const {
  for (const auto& r : s.rules())
    if (is_prefix(r.from, w)) return {EvalOutcome::Kind::mapped, r.to + w.substr(r.from.size())};
  for (const auto& r : s.rules())
    if (is_prefix(w, r.from)) return {EvalOutcome::Kind::needs_longer_input, {}};
  return {EvalOutcome::Kind::undefined, {}};
}

std::optional<Point> CuntzMonoid::evaluate(const CuntzElement& s, const Point& p) const {
  if (p.period.empty()) throw PreconditionError("a point needs a nonempty period");
  Point q = p;
  const std::size_t need = max_word_length(s);
  while (q.prefix.size() < need) {
    q.prefix += q.period.front();
    std::rotate(q.period.begin(), q.period.begin() + 1, q.period.end());
  }
  for (const auto& r : s.rules())
    if (is_prefix(r.from, q.prefix)) return Point{r.to + q.prefix.substr(r.from.size()), q.period};
  return std::nullopt;
}

bool points_equal(const Point& a, const Point& b) {
  auto letter = [](const Point& p, std::size_t i) {
    return i < p.prefix.size() ? p.prefix[i] : p.period[(i - p.prefix.size()) % p.period.size()];
  };
  const std::size_t len = std::max(a.prefix.size(), b.prefix.size()) + a.period.size() * b.period.size();
  for (std::size_t i = 0; i < len; ++i)
    if (letter(a, i) != letter(b, i)) return false;
  return true;
}

std::string format_point(const Point& p) { return p.prefix + "(" + p.period + ")^inf"; }

CuntzElement CuntzMonoid::parse_element(std::string_view text_in) const {
  const auto text = trim(text_in);
  if (text.empty() || text == "zero") return zero();
  std::vector<Rule> rules;
  auto rule_from = [&](const std::string& a, const std::string& b) { rules.push_back({parse_word(a, n_), parse_word(b, n_)}); };
  if ((text.front() == '[' || text.front() == '{') && text.find('(') == std::string::npos) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad element JSON: ") + e.what());
    }
    if (j.is_object()) {
      if (j.contains("n") && j.at("n").get<unsigned>() != n_)
        throw ParseError("element JSON is over alphabet " + j.at("n").dump() + ", expected " + std::to_string(n_));
      j = j.value("rules", nlohmann::json::array());
    }
    for (const auto& r : j) {
      if (r.is_string()) {
        const auto item = r.get<std::string>();
        const auto arrow = item.find("->");
        if (arrow == std::string::npos) throw ParseError("rule '" + item + "' must be written u->v");
        rule_from(trim(item.substr(0, arrow)), trim(item.substr(arrow + 2)));
        continue;
      }
      if (!r.is_array() || r.size() != 2) throw ParseError("rules are [from, to] pairs: " + r.dump());
      rule_from(r[0].get<std::string>(), r[1].get<std::string>());
    }
    return canonicalize(std::move(rules));
  }
  std::string body = text;
  if (body.front() == '[') {
    if (body.back() != ']') throw ParseError("unclosed rule list '" + text + "'");
    body = body.substr(1, body.size() - 2);
  }
  for (const auto& item : split_top(body, ',')) {
    if (item.front() == '(') {
      if (item.back() != ')') throw ParseError("unclosed rule '" + item + "'");
      auto parts = split_top(item.substr(1, item.size() - 2), ',');
      if (parts.size() != 2) throw ParseError("rule '" + item + "' needs two words");
      rule_from(parts[0], parts[1]);
      continue;
    }
    const auto arrow = item.find("->");
    if (arrow == std::string::npos) throw ParseError("rule '" + item + "' must be written u->v");
    rule_from(item.substr(0, arrow), item.substr(arrow + 2));
  }
  return canonicalize(std::move(rules));
}

ClopenSet CuntzMonoid::parse_clopen(std::string_view text_in) const {
  const auto text = trim(text_in);
  std::vector<Word> words;
  if (text.empty()) throw ParseError("empty clopen set; write {} for 0");
  if (text.front() == '[' || (text.front() == '{' && text.find(':') != std::string::npos)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad clopen JSON: ") + e.what());
    }
    if (j.is_object()) j = j.value("words", nlohmann::json::array());
    for (const auto& w : j) words.push_back(parse_word(w.get<std::string>(), n_));
    return clopen(std::move(words));
  }
  std::string body = text;
  if (body.front() == '{') {
    if (body.back() != '}') throw ParseError("unclosed clopen set '" + text + "'");
    body = body.substr(1, body.size() - 2);
  }
  for (const auto& item : split_top(body, ',')) words.push_back(parse_word(item, n_));
  return clopen(std::move(words));
}

nlohmann::ordered_json CuntzMonoid::to_json(const CuntzElement& a) const {
  nlohmann::ordered_json rules = nlohmann::ordered_json::array();
  for (const auto& r : a.rules()) rules.push_back({format_word(r.from), format_word(r.to)});
  return {{"n", n_}, {"rules", rules}};
}

nlohmann::ordered_json CuntzMonoid::to_json(const ClopenSet& e) const {
  nlohmann::ordered_json words = nlohmann::ordered_json::array();
  for (const auto& w : e.words()) words.push_back(format_word(w));
  return {{"n", n_}, {"words", words}};
}

// ---------------------------------------------------------------------------

std::vector<ClopenSet> cylinders_up_to(const CuntzMonoid& m, std::size_t depth) {
  std::size_t count = 1, level = 1;
  for (std::size_t d = 1; d <= depth; ++d) {
    level *= m.alphabet();
    count += level;
    if (count > 200000) throw PreconditionError("too many cylinders at depth " + std::to_string(depth));
  }
  std::vector<ClopenSet> out{ClopenSet{}};
  std::vector<Word> frontier{Word{}};
  for (std::size_t d = 0; d <= depth; ++d) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      out.push_back(m.clopen({w}));
      if (d < depth)
        for (unsigned a = 0; a < m.alphabet(); ++a) next.push_back(w + static_cast<char>('0' + a));
    }
    frontier = std::move(next);
  }
  return out;
}

bool mu_related_bounded(const CuntzMonoid& m, const CuntzElement& a, const CuntzElement& b, std::size_t depth) {
  const auto ai = m.inverse(a), bi = m.inverse(b);
  for (const auto& c : cylinders_up_to(m, depth)) {
    const auto e = m.identity(c);
    if (m.multiply(m.multiply(a, e), ai) != m.multiply(m.multiply(b, e), bi)) return false;
  }
  return true;
}

CuntzRelations relations(const CuntzMonoid& m, const CuntzElement& a, const CuntzElement& b,
                         std::optional<std::size_t> mu_depth) {
  CuntzRelations r;
  r.leq = leq(m, a, b);
  r.compatible = compatible(m, a, b);
  r.orthogonal = orthogonal(m, a, b);
  r.mu_depth = mu_depth.value_or(std::max(max_word_length(a), max_word_length(b)) + 1);
  r.mu_related = mu_related_bounded(m, a, b, r.mu_depth);
  return r;
}

std::optional<ClopenSet> non_central_cylinder(const CuntzMonoid& m, const CuntzElement& s) {
  if (is_idempotent(m, s)) return std::nullopt;
  for (const auto& c : cylinders_up_to(m, max_word_length(s) + 1)) {
    const auto e = m.identity(c);
    if (m.multiply(s, e) != m.multiply(e, s)) return c;
  }
  throw Error(m.format(s) + " commutes with every cylinder idempotent up to depth " +
              std::to_string(max_word_length(s) + 1));
}

Classification classify(const CuntzMonoid& m, const CuntzElement& a) {
  Classification c;
  c.is_idempotent = is_idempotent(m, a);
  c.is_infinitesimal = is_infinitesimal(m, a);
  c.is_unit = is_unit(m, a);
  c.is_atom = false;  // C_n has no atoms
  return c;
}

CuntzBasicResult basic_decompose(const CuntzMonoid& m, const CuntzElement& s) {
  CuntzBasicDecomposition ok;
  CuntzBasicFailure bad;
  std::vector<Word> fixed;
  for (const auto& r : s.rules()) {
    if (r.from == r.to)
      fixed.push_back(r.from);
    else if (comparable(r.from, r.to))
      bad.witnesses.push_back(r);
    else
      ok.infinitesimals.push_back(m.canonicalize({r}));
  }
  if (!bad.witnesses.empty()) return bad;
  ok.idempotent = m.clopen(std::move(fixed));
  return ok;
}

}  // namespace bim
