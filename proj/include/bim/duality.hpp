#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bim/finite_monoid.hpp"
#include "json.hpp"

namespace bim {

/// G(S): objects are the idempotent atoms, arrows are the atoms of S.
/// In the finite case the ultrafilter a↑ is represented by its atom a.
struct DualGroupoid {
  GroupoidPtr groupoid;
  std::vector<Bisection> objects;  // object id -> idempotent atom
  std::vector<Bisection> arrows;   // arrow id -> atom
};

DualGroupoid groupoid_of(const FinBIM& s);

/// V_a: the arrows of G(S) below a, as a local bisection of G(S).
Bisection v_set(const FinBIM& s, const DualGroupoid& g, const Bisection& a);

struct IsoReport {
  bool ok = false;
  std::size_t elements = 0;
  std::size_t checks = 0;
  std::string violation;  // first law that failed, empty when ok
};

/// s ↦ V_s into KB(G(S)): bijective, preserves products, inverses, meets,
/// compatible joins, 0 and 1.
IsoReport roundtrip(const FinBIM& s);

/// arrow ↦ singleton atom from G onto G(KB(G)), checked as a groupoid
/// isomorphism and cross-checked by an independent isomorphism search.
IsoReport roundtrip_g(const FiniteGroupoid& g);

nlohmann::ordered_json to_json(const IsoReport& r);

struct VeeIdeal {
  std::vector<Bisection> idempotent_atoms;
  std::vector<Bisection> elements;
};

struct IdealCorrespondence {
  std::vector<VeeIdeal> vee_ideals;                    // one per union of orbits
  std::vector<std::vector<ObjectId>> invariant_opens;  // the matching object sets
  std::size_t orbit_count = 0;
  bool oracle_agrees = false;  // brute-force enumeration finds the same ideals
  bool order_iso = false;      // inclusion of ideals ⇔ inclusion of object sets
};

IdealCorrespondence ideal_correspondence(const FinBIM& s);

struct TheoremOneReport {
  bool fundamental = false;
  bool effective = false;
  bool zero_simplifying = false;
  bool minimal = false;
  bool fundamental_iff_effective() const { return fundamental == effective; }
  bool zero_simplifying_iff_minimal() const { return zero_simplifying == minimal; }
};

TheoremOneReport theorem_one_check(const FinBIM& s);

nlohmann::ordered_json to_json(const TheoremOneReport& r);

/// Filters a↑ for nonzero a; ultra ⇔ no nonzero element strictly below a.
bool is_ultrafilter(const FinBIM& s, const Bisection& a);

/// a↑ is prime: b ∨ c in a↑ forces b or c in a↑, over compatible pairs.
bool is_prime_filter(const FinBIM& s, const Bisection& a);

/// Full dualize report (groupoid, round trips, ideals, filters) as JSON.
nlohmann::ordered_json dualize_report(const FinBIM& s);

}  // namespace bim
