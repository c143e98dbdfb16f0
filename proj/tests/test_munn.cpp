#include <gtest/gtest.h>

#include "bim/error.hpp"
#include "bim/munn.hpp"

using namespace bim;

TEST(Munn, Sizes) {
  EXPECT_EQ(munn_monoid(1).monoid.size(), 2u);
  EXPECT_EQ(munn_monoid(2).monoid.size(), 7u);
  auto r3 = munn_monoid(3);
  EXPECT_EQ(r3.monoid.size(), 34u);
  std::size_t units = 0;
  for (const auto& a : r3.monoid.elements()) units += is_unit(r3.monoid, a);
  EXPECT_EQ(units, 6u);
  EXPECT_THROW(MunnMonoid(6), PreconditionError);
  EXPECT_THROW(MunnMonoid(0), PreconditionError);
}

TEST(Munn, IsomorphismCoversTarget) {
  auto r = munn_monoid(3);
  ASSERT_EQ(r.iso_to.size(), r.target.size());
  for (std::size_t i = 0; i < r.iso_to.size(); ++i) {
    const auto& a = r.monoid.elements()[i];
    EXPECT_EQ(r.target.format(r.iso_to[i]).size() > 0, true);
    EXPECT_EQ(is_idempotent(r.monoid, a), is_idempotent(r.target, r.iso_to[i]));
  }
}

// T_E is Boolean: φ, joins and complements behave as in I_n.
TEST(MunnProperty, BooleanCalculus) {
  auto r = munn_monoid(3);
  const auto& t = r.monoid;
  const auto& els = t.elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    const auto& a = els[i];
    auto fs = fixpoint_and_support(t, a);
    EXPECT_EQ(join(t, fs.fixed_part, fs.moving_part), a);
    for (std::size_t j = 0; j < els.size(); ++j) {
      const auto& b = els[j];
      EXPECT_EQ(compatible(t, a, b), compatible(r.target, r.iso_to[i], r.iso_to[j]));
      if (compatible(t, a, b)) {
        auto u = join(t, a, b);
        EXPECT_TRUE(leq(t, a, u));
        EXPECT_TRUE(leq(t, b, u));
      }
    }
  }
}
