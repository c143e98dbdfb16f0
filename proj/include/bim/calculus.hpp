#pragma once

// Order, meet/join and fixed-point calculus shared by the finite engine and
// the Cuntz engine. Everything here is written against the small interface in
// `BooleanInverseMonoid`; engines supply multiplication, inversion, the
// fixed-point operator, complementation of idempotents and compatible joins.

#include <concepts>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bim/error.hpp"

namespace bim {

template <class M>
concept BooleanInverseMonoid = requires(const M& m, const typename M::element_type& a) {
  typename M::element_type;
  { m.zero() } -> std::convertible_to<typename M::element_type>;
  { m.one() } -> std::convertible_to<typename M::element_type>;
  { m.multiply(a, a) } -> std::convertible_to<typename M::element_type>;
  { m.inverse(a) } -> std::convertible_to<typename M::element_type>;
  { m.phi(a) } -> std::convertible_to<typename M::element_type>;
  { m.complement(a) } -> std::convertible_to<typename M::element_type>;
  { m.join_unchecked(a, a) } -> std::convertible_to<typename M::element_type>;
  { m.format(a) } -> std::convertible_to<std::string>;
  { a == a } -> std::convertible_to<bool>;
};

template <BooleanInverseMonoid M>
using element_t = typename M::element_type;

template <BooleanInverseMonoid M>
element_t<M> dom(const M& m, const element_t<M>& a) {
  return m.multiply(m.inverse(a), a);
}

template <BooleanInverseMonoid M>
element_t<M> ran(const M& m, const element_t<M>& a) {
  return m.multiply(a, m.inverse(a));
}

template <BooleanInverseMonoid M>
bool is_zero(const M& m, const element_t<M>& a) {
  return a == m.zero();
}

template <BooleanInverseMonoid M>
bool is_idempotent(const M& m, const element_t<M>& a) {
  return m.multiply(a, a) == a;
}

/// Natural partial order: a <= b iff a = b d(a).
template <BooleanInverseMonoid M>
bool leq(const M& m, const element_t<M>& a, const element_t<M>& b) {
  return m.multiply(b, dom(m, a)) == a;
}

template <BooleanInverseMonoid M>
bool compatible(const M& m, const element_t<M>& a, const element_t<M>& b) {
  return is_idempotent(m, m.multiply(a, m.inverse(b))) && is_idempotent(m, m.multiply(m.inverse(a), b));
}

template <BooleanInverseMonoid M>
bool orthogonal(const M& m, const element_t<M>& a, const element_t<M>& b) {
  return is_zero(m, m.multiply(a, m.inverse(b))) && is_zero(m, m.multiply(m.inverse(a), b));
}

/// a ∧ b = φ(ab⁻¹) b.
template <BooleanInverseMonoid M>
element_t<M> meet(const M& m, const element_t<M>& a, const element_t<M>& b) {
  return m.multiply(m.phi(m.multiply(a, m.inverse(b))), b);
}

template <BooleanInverseMonoid M>
element_t<M> join(const M& m, const element_t<M>& a, const element_t<M>& b) {
  if (!compatible(m, a, b)) {
    auto w1 = m.multiply(a, m.inverse(b));
    auto w = is_idempotent(m, w1) ? m.multiply(m.inverse(a), b) : w1;
    throw PreconditionError("join of incompatible elements " + m.format(a) + " and " + m.format(b) +
                            ": " + m.format(w) + " is not idempotent");
  }
  return m.join_unchecked(a, b);
}

template <BooleanInverseMonoid M>
element_t<M> join_all(const M& m, std::span<const element_t<M>> parts) {
  element_t<M> acc = m.zero();
  for (const auto& p : parts) acc = join(m, acc, p);
  return acc;
}

/// σ(s) = complement(φ(s)) · d(s).
template <BooleanInverseMonoid M>
element_t<M> sigma(const M& m, const element_t<M>& s) {
  return m.multiply(m.complement(m.phi(s)), dom(m, s));
}

template <class E>
struct FixpointSupport {
  E phi;
  E sigma;
  E fixed_part;   // φ(s)
  E moving_part;  // s·σ(s)
};

template <BooleanInverseMonoid M>
FixpointSupport<element_t<M>> fixpoint_and_support(const M& m, const element_t<M>& s) {
  auto f = m.phi(s);
  auto sg = sigma(m, s);
  return {f, sg, f, m.multiply(s, sg)};
}

struct Classification {
  bool is_idempotent = false;
  bool is_infinitesimal = false;
  bool is_unit = false;
  bool is_atom = false;
};

/// Infinitesimal: nonzero with square zero; cross-checked against d(a) ⊥ r(a).
template <BooleanInverseMonoid M>
bool is_infinitesimal(const M& m, const element_t<M>& a) {
  if (is_zero(m, a)) return false;
  const bool square_zero = is_zero(m, m.multiply(a, a));
  const bool disjoint = is_zero(m, m.multiply(dom(m, a), ran(m, a)));
  if (square_zero != disjoint) throw Error("infinitesimal tests disagree on " + m.format(a));
  return square_zero;
}

template <BooleanInverseMonoid M>
bool is_unit(const M& m, const element_t<M>& a) {
  return dom(m, a) == m.one() && ran(m, a) == m.one();
}

/// u = a ∨ a⁻¹ ∨ complement(d(a) ∨ r(a)), an involution above the infinitesimal a.
template <BooleanInverseMonoid M>
element_t<M> unit_from_infinitesimal(const M& m, const element_t<M>& a) {
  if (!is_infinitesimal(m, a)) throw PreconditionError(m.format(a) + " is not an infinitesimal");
  const auto rest = m.complement(m.join_unchecked(dom(m, a), ran(m, a)));
  return join(m, join(m, a, m.inverse(a)), rest);
}

/// Replaces a compatible family by a pairwise-orthogonal one with the same
/// join, each output part lying below some input part. Zero parts are dropped.
template <BooleanInverseMonoid M>
std::vector<element_t<M>> orthogonal_refinement(const M& m, std::span<const element_t<M>> parts) {
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (!compatible(m, parts[i], parts[j]))
        throw PreconditionError("orthogonal_refinement: " + m.format(parts[i]) + " and " + m.format(parts[j]) +
                                " are not compatible");
  std::vector<element_t<M>> out;
  element_t<M> total = m.zero();
  for (const auto& s : parts) {
    const auto ds = dom(m, s);
    const auto not_ds = m.complement(ds);
    std::vector<element_t<M>> next;
    for (const auto& t : out) {
      auto outside = m.multiply(t, not_ds);
      auto inside = m.multiply(t, ds);
      if (!is_zero(m, outside)) next.push_back(outside);
      if (!is_zero(m, inside)) next.push_back(inside);
    }
    auto fresh = m.multiply(s, m.complement(dom(m, total)));
    if (!is_zero(m, fresh)) next.push_back(fresh);
    total = m.join_unchecked(total, s);
    out = std::move(next);
  }
  return out;
}

/// Pencil from `source` to `target`: source = ⋁ d(x_i) and every r(x_i) <= target.
template <class E>
struct Pencil {
  std::vector<E> elements;
  E source;
  E target;
};

template <BooleanInverseMonoid M>
bool pencil_valid(const M& m, const Pencil<element_t<M>>& p) {
  if (p.elements.empty()) return false;
  element_t<M> acc = m.zero();
  for (const auto& x : p.elements) {
    if (!leq(m, ran(m, x), p.target)) return false;
    acc = m.join_unchecked(acc, dom(m, x));
  }
  return acc == p.source;
}

}  // namespace bim
