#include "bim/random.hpp"

#include <algorithm>

#include "bim/calculus.hpp"

namespace bim {

namespace {

std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

template <class T>
std::vector<T> random_subset(Rng& rng, const std::vector<T>& v, std::size_t k) {
  std::vector<T> copy = v;
  std::shuffle(copy.begin(), copy.end(), rng);
  copy.resize(k);
  return copy;
}

}  // namespace

std::vector<Word> random_prefix_code(const CuntzMonoid& m, Rng& rng, std::size_t max_depth, std::size_t splits) {
  std::vector<Word> code{Word{}};
  for (std::size_t s = 0; s < splits; ++s) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < code.size(); ++i)
      if (code[i].size() < max_depth) open.push_back(i);
    if (open.empty()) break;
    const std::size_t i = open[below(rng, open.size())];
    const Word w = code[i];
    code.erase(code.begin() + static_cast<std::ptrdiff_t>(i));
    for (unsigned a = 0; a < m.alphabet(); ++a) code.push_back(w + static_cast<char>('0' + a));
  }
  std::sort(code.begin(), code.end());
  return code;
}

std::vector<Rule> random_rules(const CuntzMonoid& m, Rng& rng, std::size_t max_depth) {
  const auto a = random_prefix_code(m, rng, max_depth, below(rng, 2 * max_depth + 1));
  const auto b = random_prefix_code(m, rng, max_depth, below(rng, 2 * max_depth + 1));
  const std::size_t k = below(rng, std::min(a.size(), b.size()) + 1);
  const auto from = random_subset(rng, a, k), to = random_subset(rng, b, k);
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < k; ++i) rules.push_back({from[i], to[i]});
  return rules;
}

CuntzElement random_element(const CuntzMonoid& m, Rng& rng, std::size_t max_depth) {
  return m.canonicalize(random_rules(m, rng, max_depth));
}

CuntzElement random_unit(const CuntzMonoid& m, Rng& rng, std::size_t max_depth) {
  for (;;) {
    const std::size_t splits = below(rng, 2 * max_depth + 1);
    const auto a = random_prefix_code(m, rng, max_depth, splits);
    auto b = random_prefix_code(m, rng, max_depth, splits);
    if (a.size() != b.size()) continue;
    std::shuffle(b.begin(), b.end(), rng);
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < a.size(); ++i) rules.push_back({a[i], b[i]});
    return m.canonicalize(std::move(rules));
  }
}

ClopenSet random_clopen(const CuntzMonoid& m, Rng& rng, std::size_t max_depth, bool nonzero) {
  const auto code = random_prefix_code(m, rng, max_depth, below(rng, 2 * max_depth + 1));
  const std::size_t k = nonzero ? 1 + below(rng, code.size()) : below(rng, code.size() + 1);
  return m.clopen(random_subset(rng, code, k));
}

std::vector<CuntzElement> random_compatible_family(const CuntzMonoid& m, Rng& rng, std::size_t max_depth,
                                                   std::size_t count) {
  const auto s = random_element(m, rng, max_depth);
  std::vector<CuntzElement> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(m.multiply(s, m.identity(random_clopen(m, rng, max_depth + 1))));
  return out;
}

const Bisection& random_element(const FinBIM& s, Rng& rng) { return s.elements()[below(rng, s.size())]; }
const Bisection& random_unit(const FinBIM& s, Rng& rng) { return s.units()[below(rng, s.units().size())]; }
const Bisection& random_idempotent(const FinBIM& s, Rng& rng) {
  return s.idempotents()[below(rng, s.idempotents().size())];
}

std::vector<Bisection> random_compatible_family(const FinBIM& s, Rng& rng, std::size_t count) {
  const auto& a = random_element(s, rng);
  std::vector<Bisection> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(s.multiply(a, random_idempotent(s, rng)));
  return out;
}

}  // namespace bim
