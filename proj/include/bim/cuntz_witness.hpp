#pragma once

// Witness constructions in C_n. Every construction is deterministic: it picks
// lexicographically first cylinders and splits lexicographically last ones.

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bim/checkers.hpp"
#include "bim/cuntz.hpp"
#include "json.hpp"

namespace bim {

/// d(s) = e, r(s) = f. Needs |e| ≡ |f| (mod n-1) for the canonical antichains.
CuntzElement clopen_iso(const CuntzMonoid& m, const ClopenSet& e, const ClopenSet& f);

/// Sends the cylinders of e, in order, onto the first |e| words of a prefix
/// code under `target` (k = 1 gives `target` itself).
CuntzElement place_into(const CuntzMonoid& m, const ClopenSet& e, const Word& target);

/// d(x) = e and r(x) inside the cylinder w·0, w the first cylinder of f.
CuntzElement transporter(const CuntzMonoid& m, const ClopenSet& e, const ClopenSet& f);

/// (w0 -> w1) for the first cylinder w of e.
CuntzElement infinitesimal_in(const CuntzMonoid& m, const ClopenSet& e);

/// x, y with d(x) = d(y) = e, ranges under w0 and w1 for the first cylinder w of e.
std::pair<CuntzElement, CuntzElement> properly_infinite_witness(const CuntzMonoid& m, const ClopenSet& e);

/// A unit g with g e g⁻¹ <= f (e ≠ 1, f ≠ 0).
CuntzElement conrade_unit(const CuntzMonoid& m, const ClopenSet& e, const ClopenSet& f);

struct PieceUnit {
  CuntzElement piece;
  CuntzElement unit;
};

/// Pieces of s (single rules, none with an ε side) each extended to a unit.
std::vector<PieceUnit> piecewise_unit_decomposition(const CuntzMonoid& m, const CuntzElement& s);

/// One element per cylinder of e (e = 1 is split first), with disjoint
/// ranges under w·0 for the first cylinder w of f.
Pencil<CuntzElement> orthogonal_pencil(const CuntzMonoid& m, const ClopenSet& e, const ClopenSet& f);

/// w = ⋁ b^{i-1} a w_i from an orthogonal pencil (w_i) from e to f and a
/// properly infinite pair (a, b) at f; d(w) = e and r(w) <= f.
CuntzElement zero_simple_witness(const CuntzMonoid& m, const ClopenSet& e, const ClopenSet& f);

struct MovedPoint {
  Word cylinder;  // cylinder of σ(g)
  Rule rule;      // rule of g used
  Point point;
  Point image;
};

struct MovedPointReport {
  ClopenSet sigma;
  bool rules_inside_sigma = true;
  std::vector<MovedPoint> moved;
  bool all_moved = true;
  std::size_t fixed_samples = 0;
  bool fixed_ok = true;
  bool ok() const { return rules_inside_sigma && all_moved && fixed_ok; }
};

/// Bounded check that σ(g) is where g moves points and φ(g) is fixed.
MovedPointReport moved_point_check(const CuntzMonoid& m, const CuntzElement& g, std::size_t depth);

nlohmann::ordered_json to_json(const CuntzMonoid& m, const MovedPointReport& r);

/// O1–O5 for the given units against the given idempotents. "g fixes e↓
/// pointwise" is tested on the cylinders below e down to one letter past the
/// longest word of g and e, which is enough to see any rule meeting e.
ArmatureReport armature_check(const CuntzMonoid& m, std::span<const CuntzElement> units,
                              std::span<const ClopenSet> idempotents);

// ---------------------------------------------------------------------------
// Certificates

/// Names accepted by `certify`: clopen-iso, transporter, infinitesimal-in,
/// properly-infinite, conrade-unit, piecewise-units, orthogonal-pencil,
/// zero-simple-witness, moved-points.
const std::vector<std::string>& witness_operations();

/// Runs a witness operation on textual inputs and records the output and the
/// checked postconditions.
nlohmann::ordered_json certify(const CuntzMonoid& m, std::string_view op, const std::vector<std::string>& inputs);

struct CertificateCheck {
  bool ok = false;
  std::string reason;
};

/// Re-parses a certificate, rechecks every postcondition against the recorded
/// output and confirms that rerunning the operation reproduces it.
CertificateCheck verify_certificate(const nlohmann::json& certificate);

}  // namespace bim
