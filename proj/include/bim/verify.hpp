#pragma once

// Invariant suites behind `bimtool verify` and the acceptance runner. Each
// property function draws from its own seeded generator and reports how many
// cases it checked and the first failure.

#include <cstdint>
#include <string>
#include <vector>

#include "bim/cuntz.hpp"
#include "bim/finite_monoid.hpp"
#include "bim/random.hpp"
#include "json.hpp"

namespace bim {

struct PropertyCount {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;

  bool pass() const { return failed == 0 && checked > 0; }
  void record(bool ok, const std::string& what = {});
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 42;
  std::vector<PropertyCount> properties;
  bool pass() const;
};

/// order-calculus, duality, classes, armature, cuntz, all.
const std::vector<std::string>& suite_names();

/// Throws PreconditionError for an unknown suite name.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed);

nlohmann::ordered_json to_json(const SuiteReport& r);

/// Finite monoid specs used by the suites; every entry is a groupoid spec.
const std::vector<std::string>& corpus_specs();

// ---------------------------------------------------------------------------
// Finite engine

/// All pairs: intersection equals φ(ab⁻¹)b.
PropertyCount meet_coherence(const FinBIM& s);
/// All elements: φ(s) = s ∧ 1, s = φ(s) ∨ sσ(s) orthogonal, φ(sσ(s)) = 0;
/// all unit/idempotent pairs: φ(ge) = φ(g)e.
PropertyCount fixpoint_laws(const FinBIM& s);
/// φ(⋁ s_i) = ⋁ φ(s_i) on random compatible families.
PropertyCount phi_of_joins(const FinBIM& s, Rng& rng, std::size_t families);
PropertyCount refinement_laws(const FinBIM& s, Rng& rng, std::size_t families);
/// σ(ghg⁻¹) = gσ(h)g⁻¹, and gh = hg for a partner h with σ(g)σ(h) = 0.
PropertyCount commutator_laws(const FinBIM& s, Rng& rng, std::size_t pairs);

// ---------------------------------------------------------------------------
// Cuntz engine

PropertyCount canonical_soundness(const CuntzMonoid& m, Rng& rng, std::size_t lists, std::size_t probes,
                                  std::size_t depth);
PropertyCount inverse_laws(const CuntzMonoid& m, Rng& rng, std::size_t count, std::size_t depth);
/// s = φ(s) ∨ sσ(s) and φ(s) = s ∧ 1 on random elements, φ(ge) = φ(g)e
/// and φ of compatible joins on random units, clopens and families.
PropertyCount fixpoint_laws(const CuntzMonoid& m, Rng& rng, std::size_t count, std::size_t depth);
PropertyCount refinement_laws(const CuntzMonoid& m, Rng& rng, std::size_t families);
PropertyCount commutator_laws(const CuntzMonoid& m, Rng& rng, std::size_t pairs);
PropertyCount unit_closure(const CuntzMonoid& m, Rng& rng, std::size_t pairs);
/// unit_from_infinitesimal gives an involution ≠ 1 above its input.
PropertyCount involutions(const CuntzMonoid& m, Rng& rng, std::size_t count);
PropertyCount infinitesimal_agreement(const CuntzMonoid& m, Rng& rng, std::size_t count);
/// Certificates for `op` on `pairs` random nonzero clopen pairs (or elements),
/// each re-verified after a JSON round trip.
PropertyCount witness_certificates(const CuntzMonoid& m, Rng& rng, const std::string& op, std::size_t pairs);
PropertyCount moved_points(const CuntzMonoid& m, Rng& rng, std::size_t units, std::size_t depth);
PropertyCount armature_bounded(const CuntzMonoid& m, Rng& rng, std::size_t units, std::size_t depth);

}  // namespace bim
