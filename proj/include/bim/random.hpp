#pragma once

// Seeded generators for property tests and verification suites.

#include <cstdint>
#include <random>
#include <vector>

#include "bim/cuntz.hpp"
#include "bim/finite_monoid.hpp"

namespace bim {

using Rng = std::mt19937_64;

/// Complete prefix code made by `splits` random leaf splits, no word longer
/// than `max_depth` (fewer splits when the depth runs out).
std::vector<Word> random_prefix_code(const CuntzMonoid& m, Rng& rng, std::size_t max_depth, std::size_t splits);

/// Raw (uncanonicalised) rule list: a partial bijection between subsets of
/// two random prefix codes.
std::vector<Rule> random_rules(const CuntzMonoid& m, Rng& rng, std::size_t max_depth);

CuntzElement random_element(const CuntzMonoid& m, Rng& rng, std::size_t max_depth);
CuntzElement random_unit(const CuntzMonoid& m, Rng& rng, std::size_t max_depth);
ClopenSet random_clopen(const CuntzMonoid& m, Rng& rng, std::size_t max_depth, bool nonzero = false);

/// Restrictions of one random element to random clopens; pairwise compatible.
std::vector<CuntzElement> random_compatible_family(const CuntzMonoid& m, Rng& rng, std::size_t max_depth,
                                                   std::size_t count);

const Bisection& random_element(const FinBIM& s, Rng& rng);
const Bisection& random_unit(const FinBIM& s, Rng& rng);
const Bisection& random_idempotent(const FinBIM& s, Rng& rng);
std::vector<Bisection> random_compatible_family(const FinBIM& s, Rng& rng, std::size_t count);

}  // namespace bim
