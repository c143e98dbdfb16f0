#include "bim/munn.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "bim/error.hpp"

namespace bim {

namespace {

bool below(std::uint32_t x, std::uint32_t y) { return (x & ~y) == 0; }

// All order-isomorphisms x↓ -> y↓, by backtracking over the ideal in
// increasing rank.
void isos_between(std::uint32_t e, std::uint32_t f, std::uint32_t table_size, std::vector<MunnElement>& out) {
  std::vector<std::uint32_t> source, target;
  for (std::uint32_t x = 0; x < table_size; ++x) {
    if (below(x, e)) source.push_back(x);
    if (below(x, f)) target.push_back(x);
  }
  if (source.size() != target.size()) return;
  std::stable_sort(source.begin(), source.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  MunnElement cur{e, f, std::vector<std::uint32_t>(table_size, MunnElement::kUndefined)};
  std::vector<bool> used(table_size, false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == source.size()) {
      out.push_back(cur);
      return;
    }
    const auto x = source[i];
    for (auto y : target) {
      if (used[y] || std::popcount(y) != std::popcount(x)) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        const auto px = source[k], py = cur.image[px];
        ok = below(px, x) == below(py, y) && below(x, px) == below(y, py);
      }
      if (!ok) continue;
      cur.image[x] = y;
      used[y] = true;
      self(self, i + 1);
      used[y] = false;
      cur.image[x] = MunnElement::kUndefined;
    }
  };
  rec(rec, 0);
}

}  // namespace

MunnMonoid::MunnMonoid(std::size_t atoms) : atoms_(atoms) {
  if (atoms == 0 || atoms > 5) throw PreconditionError("Munn monoid needs 1..5 atoms, got " + std::to_string(atoms));
  full_ = (1u << atoms) - 1;
  const std::uint32_t table = 1u << atoms;
  for (std::uint32_t e = 0; e < table; ++e)
    for (std::uint32_t f = 0; f < table; ++f) isos_between(e, f, table, elements_);
  std::sort(elements_.begin(), elements_.end());
}

MunnElement MunnMonoid::identity_on(std::uint32_t e) const {
  MunnElement m{e, e, std::vector<std::uint32_t>(full_ + 1, MunnElement::kUndefined)};
  for (std::uint32_t x = 0; x <= full_; ++x)
    if (below(x, e)) m.image[x] = x;
  return m;
}

MunnElement MunnMonoid::zero() const { return identity_on(0); }
MunnElement MunnMonoid::one() const { return identity_on(full_); }

MunnElement MunnMonoid::multiply(const MunnElement& a, const MunnElement& b) const {
  // (ab)(x) = a(b(x)) on the preimage under b of ran(b) ∧ dom(a).
  const auto mid = b.ran & a.dom;
  std::uint32_t dom = MunnElement::kUndefined;
  for (std::uint32_t x = 0; x <= full_; ++x)
    if (b.image[x] == mid) dom = x;
  MunnElement out{dom, a.image[mid], std::vector<std::uint32_t>(full_ + 1, MunnElement::kUndefined)};
  for (std::uint32_t x = 0; x <= full_; ++x)
    if (below(x, dom)) out.image[x] = a.image[b.image[x]];
  return out;
}

MunnElement MunnMonoid::inverse(const MunnElement& a) const {
  MunnElement out{a.ran, a.dom, std::vector<std::uint32_t>(full_ + 1, MunnElement::kUndefined)};
  for (std::uint32_t x = 0; x <= full_; ++x)
    if (a.image[x] != MunnElement::kUndefined) out.image[a.image[x]] = x;
  return out;
}

MunnElement MunnMonoid::phi(const MunnElement& a) const {
  std::uint32_t best = 0;
  for (std::uint32_t x = 0; x <= full_; ++x) {
    if (!below(x, a.dom) || std::popcount(x) < std::popcount(best)) continue;
    bool fixed = true;
    for (std::uint32_t y = 0; y <= x && fixed; ++y)
      if (below(y, x) && a.image[y] != y) fixed = false;
    if (fixed) best = x;
  }
  return identity_on(best);
}

MunnElement MunnMonoid::complement(const MunnElement& e) const {
  if (e.dom != e.ran || identity_on(e.dom) != e) throw PreconditionError("complement of non-idempotent " + format(e));
  return identity_on(full_ & ~e.dom);
}

MunnElement MunnMonoid::join_unchecked(const MunnElement& a, const MunnElement& b) const {
  const auto dom = a.dom | b.dom;
  MunnElement out{dom, a.ran | b.ran, std::vector<std::uint32_t>(full_ + 1, MunnElement::kUndefined)};
  for (std::uint32_t x = 0; x <= full_; ++x) {
    if (!below(x, dom)) continue;
    const auto ya = a.image[x & a.dom], yb = b.image[x & b.dom];
    if (a.image[x & a.dom & b.dom] != b.image[x & a.dom & b.dom])
      throw PreconditionError("join of incompatible Munn elements " + format(a) + " and " + format(b));
    out.image[x] = ya | yb;
  }
  return out;
}

std::string MunnMonoid::format(const MunnElement& a) const {
  std::string s = "[";
  bool first = true;
  for (std::size_t i = 0; i < atoms_; ++i) {
    const std::uint32_t atom = 1u << i;
    if (!below(atom, a.dom)) continue;
    if (!first) s += ", ";
    first = false;
    s += std::to_string(i + 1) + "->" + std::to_string(std::countr_zero(a.image[atom]) + 1);
  }
  return s + "]";
}

MunnResult munn_monoid(std::size_t atoms) {
  MunnMonoid t(atoms);
  FinBIM target = kb_monoid(pair_groupoid(atoms));
  const auto& g = target.groupoid();
  auto to_bisection = [&](const MunnElement& a) {
    std::vector<ArrowId> arrows;
    for (std::size_t i = 0; i < atoms; ++i) {
      const std::uint32_t atom = 1u << i;
      if (!below(atom, a.dom)) continue;
      const auto j = static_cast<ObjectId>(std::countr_zero(a.image[atom]));
      arrows.push_back(g.arrows_between(static_cast<ObjectId>(i), j).front());
    }
    return Bisection(std::move(arrows));
  };
  std::vector<Bisection> images;
  std::map<MunnElement, std::size_t> index;
  std::map<Bisection, std::size_t> back;
  for (std::size_t i = 0; i < t.size(); ++i) {
    images.push_back(to_bisection(t.elements()[i]));
    index.emplace(t.elements()[i], i);
    if (!back.emplace(images.back(), i).second) throw Error("Munn isomorphism is not injective");
  }
  if (back.size() != target.size()) throw Error("Munn isomorphism is not surjective");
  if (images[index.at(t.one())] != target.one() || images[index.at(t.zero())] != target.zero())
    throw Error("Munn isomorphism does not preserve 0 and 1");
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& a = t.elements()[i];
    if (to_bisection(t.inverse(a)) != target.inverse(images[i])) throw Error("Munn isomorphism fails on inverse");
    for (std::size_t j = 0; j < t.size(); ++j) {
      const auto& b = t.elements()[j];
      const auto prod = t.multiply(a, b);
      if (!index.count(prod)) throw Error("Munn product leaves T_E: " + t.format(a) + " * " + t.format(b));
      if (to_bisection(prod) != target.multiply(images[i], images[j]))
        throw Error("Munn isomorphism fails on product " + t.format(a) + " * " + t.format(b));
    }
  }
  return {std::move(t), std::move(target), std::move(images)};
}

}  // namespace bim
