#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bim/calculus.hpp"
#include "bim/groupoid.hpp"
#include "json.hpp"

namespace bim {

/// A finite Boolean inverse ∧-monoid realised as a set of local bisections
/// of a finite groupoid: either all of them (KB(G)) or a validated carrier.
///
/// Elements are `Bisection` values; the natural partial order is subset
/// inclusion. Caches (idempotents, atoms, units) are filled at construction
/// and the object is immutable afterwards.
class FinBIM {
 public:
  using element_type = Bisection;

  /// KB(G): all local bisections.
  static FinBIM full(GroupoidPtr g);
  static FinBIM full(const FiniteGroupoid& g);

  /// Validates closure under product, inverse, meet, compatible join and
  /// complement of idempotents; throws `ValidationError` with witnesses.
  static FinBIM with_carrier(GroupoidPtr g, std::vector<Bisection> carrier);

  const FiniteGroupoid& groupoid() const { return *groupoid_; }
  const GroupoidPtr& groupoid_ptr() const { return groupoid_; }
  bool is_full() const { return full_; }

  std::span<const Bisection> elements() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }
  bool contains(const Bisection& a) const { return index_.count(a) != 0; }
  std::size_t index_of(const Bisection& a) const;

  std::span<const Bisection> idempotents() const { return idempotents_; }
  /// Minimal nonzero idempotents.
  std::span<const Bisection> idempotent_atoms() const { return idempotent_atoms_; }
  /// Minimal nonzero elements.
  std::span<const Bisection> atoms() const { return atoms_; }
  std::span<const Bisection> units() const { return units_; }

  Bisection zero() const { return {}; }
  Bisection one() const { return one_; }
  Bisection multiply(const Bisection& a, const Bisection& b) const;
  Bisection inverse(const Bisection& a) const;
  /// Largest idempotent below s, computed as s ∩ identities.
  Bisection phi(const Bisection& s) const;
  /// Complement of an idempotent inside 1.
  Bisection complement(const Bisection& e) const;
  Bisection join_unchecked(const Bisection& a, const Bisection& b) const;
  Bisection intersection(const Bisection& a, const Bisection& b) const;

  std::string format(const Bisection& a) const;
  /// Accepts `{1->2, 3->3}`, `{g}` (arrow labels) or a JSON array of arrow labels.
  Bisection parse(std::string_view text) const;

  nlohmann::ordered_json to_json(const Bisection& a) const;

 private:
  FinBIM(GroupoidPtr g, std::vector<Bisection> carrier, bool full);
  void build_caches();
  void require_member(const Bisection& a, const char* op) const;

  GroupoidPtr groupoid_;
  bool full_ = false;
  std::vector<Bisection> carrier_;
  std::map<Bisection, std::size_t> index_;
  Bisection one_;
  std::vector<Bisection> idempotents_;
  std::vector<Bisection> idempotent_atoms_;
  std::vector<Bisection> atoms_;
  std::vector<Bisection> units_;
};

static_assert(BooleanInverseMonoid<FinBIM>);

/// kb_monoid(G) / kb_monoid(G, carrier).
FinBIM kb_monoid(const FiniteGroupoid& g);
FinBIM kb_monoid(const FiniteGroupoid& g, std::vector<Bisection> carrier);

/// Brute-force pairwise closure check used as an independent oracle for
/// carrier validation; returns a description of the first failure.
std::optional<std::string> brute_force_closure_failure(const FiniteGroupoid& g, std::span<const Bisection> carrier);

// ---------------------------------------------------------------------------
// Element-level operations

struct Relations {
  bool leq = false;
  bool compatible = false;
  bool orthogonal = false;
  bool mu_related = false;
};

Relations relations(const FinBIM& s, const Bisection& a, const Bisection& b);

/// μ: a e a⁻¹ = b e b⁻¹ for every idempotent e.
bool mu_related(const FinBIM& s, const Bisection& a, const Bisection& b);

/// Intersection, cross-checked against φ(ab⁻¹)b; throws on disagreement.
Bisection checked_meet(const FinBIM& s, const Bisection& a, const Bisection& b);

Classification classify(const FinBIM& s, const Bisection& a);

struct BasicDecomposition {
  Bisection idempotent;
  std::vector<Bisection> infinitesimals;
};

/// Success: an idempotent plus pairwise orthogonal infinitesimals joining to s.
/// Failure: a piece of s (an atom restriction) with nontrivial isotropy.
struct BasicFailure {
  Bisection witness;
};

using BasicResult = std::variant<BasicDecomposition, BasicFailure>;

BasicResult basic_decompose(const FinBIM& s, const Bisection& a);

struct GreenResult {
  bool d_related = false;
  bool j_related = false;
  std::optional<Pencil<Bisection>> preceq;
  bool equiv = false;
};

/// Green's D and J, the pencil preorder ⪯ with witness, and ≡.
GreenResult green_on_idempotents(const FinBIM& s, const Bisection& e, const Bisection& f);

/// Witness for e ⪯ f, one pencil element per idempotent atom below e.
std::optional<Pencil<Bisection>> find_pencil(const FinBIM& s, const Bisection& e, const Bisection& f);

/// The principal two-sided ideal S a S, by closure.
std::vector<Bisection> principal_ideal(const FinBIM& s, const Bisection& a);

struct Substructures {
  std::vector<Bisection> units;
  std::optional<FinBIM> local_monoid;
};

/// Group of units and, when `e` is given, the local monoid eSe realised over
/// the full subgroupoid on the objects of e.
Substructures substructures(const FinBIM& s, const std::optional<Bisection>& e = std::nullopt);

}  // namespace bim
