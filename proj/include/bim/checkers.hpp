#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bim/finite_monoid.hpp"
#include "json.hpp"

namespace bim {

using IdempotentPair = std::pair<Bisection, Bisection>;

struct MonoidProfile {
  bool fundamental = false;
  bool factorizable = false;
  bool piecewise_factorizable = false;
  /// (U↓)∨ = S, computed by join saturation; must agree with the atom test.
  bool piecewise_by_closure = false;
  bool basic = false;
  bool zero_simple = false;
  bool zero_simplifying = false;
  bool purely_infinite = false;
  bool congruence_free = false;
  bool zero_disjunctive = true;

  std::optional<Bisection> fundamental_witness;     // centralises E, not idempotent
  std::optional<Bisection> factorizable_witness;    // below no unit
  std::optional<Bisection> piecewise_witness;       // atom below no unit
  std::optional<Bisection> basic_witness;           // piece with nontrivial isotropy
  std::optional<IdempotentPair> zero_simple_witness;       // no i with e D i <= f
  std::optional<IdempotentPair> zero_simplifying_witness;  // e and f not ≡
  std::optional<Bisection> purely_infinite_witness;        // not properly infinite
};

MonoidProfile classify_monoid(const FinBIM& s);

nlohmann::ordered_json to_json(const FinBIM& s, const MonoidProfile& p);

/// First non-idempotent element commuting with every idempotent, if any.
std::optional<Bisection> centralizer_witness(const FinBIM& s);

/// (U↓)∨: the compatible-join closure of the elements below units.
std::vector<Bisection> units_down_join_closure(const FinBIM& s);

struct ProperlyInfiniteWitness {
  Bisection x;
  Bisection y;
};

/// Exhaustive search for x, y with d(x) = d(y) = e, r(x) ⊥ r(y), r(x) ∨ r(y) <= e.
std::optional<ProperlyInfiniteWitness> properly_infinite(const FinBIM& s, const Bisection& e);

struct AxiomResult {
  bool pass = true;
  std::size_t checked = 0;
  std::string counterexample;
};

struct ArmatureReport {
  AxiomResult o1, o2, o3, o4, o5;
  std::size_t units = 0;
  std::size_t idempotents = 0;
  bool pass() const { return o1.pass && o2.pass && o3.pass && o4.pass && o5.pass; }
};

/// O1–O5 for (U(S), E(S), φ), exhaustively; `PreconditionError` if S is not fundamental.
ArmatureReport armature_check(const FinBIM& s);

nlohmann::ordered_json to_json(const ArmatureReport& r);

// ---------------------------------------------------------------------------
// Permutation groups

/// Permutation of {0..n-1}: `p[i]` is the image of i.
using Permutation = std::vector<std::size_t>;

/// Cycle notation `"(1 2)(3)"` (commas allowed) or a one-line image list
/// `"[2,1,3]"` / `"2 1 3"`; points are 1-based.
Permutation parse_permutation(std::string_view text, std::size_t n);

std::string format_permutation(const Permutation& p);

/// Closure of the generators under composition; sorted, includes the identity.
std::vector<Permutation> generate_group(std::size_t n, const std::vector<Permutation>& generators);

/// (G↓)∨ inside kb_monoid(pair:n): partial bijections agreeing pointwise with
/// some group element. n <= 6.
FinBIM monoid_from_group(std::size_t n, const std::vector<Permutation>& generators);

/// Permutation as a unit of kb_monoid(pair:n).
Bisection permutation_bisection(const FiniteGroupoid& pair, const Permutation& p);

}  // namespace bim
