#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bim/calculus.hpp"
#include "bim/finite_monoid.hpp"

namespace bim {

/// An order-isomorphism between principal ideals of the Boolean algebra of
/// subsets of an n-atom set. Idempotents are bitmasks; `image[x]` is defined
/// for x below `dom` and is `kUndefined` elsewhere.
struct MunnElement {
  static constexpr std::uint32_t kUndefined = 0xffffffffu;
  std::uint32_t dom = 0;
  std::uint32_t ran = 0;
  std::vector<std::uint32_t> image;

  friend bool operator==(const MunnElement&, const MunnElement&) = default;
  friend auto operator<=>(const MunnElement&, const MunnElement&) = default;
};

/// The Munn monoid T_E of the Boolean algebra with `atoms` atoms (at most 5).
class MunnMonoid {
 public:
  using element_type = MunnElement;

  explicit MunnMonoid(std::size_t atoms);

  std::size_t atom_count() const { return atoms_; }
  const std::vector<MunnElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  MunnElement zero() const;
  MunnElement one() const;
  /// Idempotent 1_{e↓}.
  MunnElement identity_on(std::uint32_t e) const;
  MunnElement multiply(const MunnElement& a, const MunnElement& b) const;
  MunnElement inverse(const MunnElement& a) const;
  MunnElement phi(const MunnElement& a) const;
  MunnElement complement(const MunnElement& e) const;
  MunnElement join_unchecked(const MunnElement& a, const MunnElement& b) const;
  std::string format(const MunnElement& a) const;

 private:
  std::size_t atoms_;
  std::uint32_t full_;
  std::vector<MunnElement> elements_;
};

static_assert(BooleanInverseMonoid<MunnMonoid>);

struct MunnResult {
  MunnMonoid monoid;
  FinBIM target;                  // kb_monoid(pair:n)
  std::vector<Bisection> iso_to;  // image of monoid.elements()[i]
};

/// Builds T_E and verifies that the atom action is an isomorphism onto
/// kb_monoid(pair:n); throws `Error` naming the first law that fails.
MunnResult munn_monoid(std::size_t atoms);

}  // namespace bim
