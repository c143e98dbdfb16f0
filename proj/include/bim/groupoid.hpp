#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace bim {

using ObjectId = std::uint32_t;
using ArrowId = std::uint32_t;

struct Arrow {
  ObjectId dom = 0;
  ObjectId cod = 0;
  std::string label;
};

/// A finite discrete groupoid stored as dense tables.
///
/// Composition follows the functional convention: `compose(a, b)` is
/// "b then a" and is defined exactly when `dom(a) == cod(b)`.
/// Instances are immutable once built; every factory validates the
/// groupoid laws and throws `ValidationError` naming the offending arrows.
class FiniteGroupoid {
 public:
  FiniteGroupoid(std::vector<std::string> object_labels, std::vector<Arrow> arrows,
                 const std::vector<std::array<ArrowId, 3>>& compose_triples,
                 const std::vector<std::pair<ArrowId, ArrowId>>& inverse_pairs);

  std::size_t object_count() const { return object_labels_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }

  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  ObjectId dom(ArrowId a) const { return arrows_[a].dom; }
  ObjectId cod(ArrowId a) const { return arrows_[a].cod; }

  std::optional<ArrowId> compose(ArrowId a, ArrowId b) const;
  ArrowId inverse(ArrowId a) const { return inverse_[a]; }
  ArrowId identity(ObjectId x) const { return identity_[x]; }
  bool is_identity(ArrowId a) const { return identity_[arrows_[a].dom] == a; }

  const std::string& object_label(ObjectId x) const { return object_labels_.at(x); }
  std::optional<ObjectId> find_object(std::string_view label) const;
  std::optional<ArrowId> find_arrow(std::string_view label) const;
  std::vector<ArrowId> arrows_between(ObjectId dom, ObjectId cod) const;

  /// `x->y` when that arrow is the only one from x to y, else the arrow label.
  std::string arrow_name(ArrowId a) const;

 private:
  std::vector<std::string> object_labels_;
  std::vector<Arrow> arrows_;
  std::vector<std::int32_t> compose_;  // arrow_count^2, -1 where undefined
  std::vector<ArrowId> inverse_;
  std::vector<ArrowId> identity_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

/// Pair groupoid on objects labelled 1..n; arrow x->y has dom x and cod y.
FiniteGroupoid pair_groupoid(std::size_t n);

/// One-object groupoid from a Cayley table `table[i][j] = i*j`.
FiniteGroupoid group_groupoid(const std::vector<std::vector<std::size_t>>& table,
                              std::vector<std::string> labels = {});

/// Named groups: `Z<k>`, `S3`, `V4`, or a JSON Cayley table.
FiniteGroupoid named_group(std::string_view name);

FiniteGroupoid disjoint_union(const FiniteGroupoid& left, const FiniteGroupoid& right);

/// Full subgroupoid on `objects`; `arrow_map[a]` receives the new id of each
/// kept arrow a (or ~0 for dropped arrows).
FiniteGroupoid full_subgroupoid(const FiniteGroupoid& g, std::span<const ObjectId> objects,
                                std::vector<ArrowId>* arrow_map = nullptr);

/// Parses `pair:n`, `group:<name>`, `disjoint_union(a,b)` or JSON groupoid text.
FiniteGroupoid parse_groupoid_spec(std::string_view spec);

nlohmann::ordered_json to_json(const FiniteGroupoid& g);
FiniteGroupoid groupoid_from_json(const nlohmann::json& j);

std::string to_dot(const FiniteGroupoid& g, std::string_view name = "G");

// ---------------------------------------------------------------------------
// Local bisections

/// A set of arrows of a fixed groupoid, kept sorted; equality is set equality.
class Bisection {
 public:
  Bisection() = default;
  explicit Bisection(std::vector<ArrowId> arrows);
  Bisection(std::initializer_list<ArrowId> arrows);

  std::span<const ArrowId> arrows() const { return arrows_; }
  std::size_t size() const { return arrows_.size(); }
  bool empty() const { return arrows_.empty(); }
  bool contains(ArrowId a) const;
  bool subset_of(const Bisection& other) const;

  friend auto operator<=>(const Bisection&, const Bisection&) = default;

 private:
  std::vector<ArrowId> arrows_;
};

bool is_local_bisection(const FiniteGroupoid& g, std::span<const ArrowId> arrows);
Bisection bisection_product(const FiniteGroupoid& g, const Bisection& a, const Bisection& b);
Bisection bisection_inverse(const FiniteGroupoid& g, const Bisection& a);
Bisection set_intersection(const Bisection& a, const Bisection& b);
Bisection set_union(const Bisection& a, const Bisection& b);
Bisection set_difference(const Bisection& a, const Bisection& b);

/// All local bisections, in a deterministic order (by size, then lexicographic).
std::vector<Bisection> all_local_bisections(const FiniteGroupoid& g);

// ---------------------------------------------------------------------------
// Orbits and isotropy

struct GroupoidProperties {
  std::vector<std::vector<ObjectId>> orbits;
  std::vector<ArrowId> isotropy;
  bool principal = false;
  bool effective = false;
  bool minimal = false;
  bool connected = false;
};

/// Effective coincides with principal here: under the discrete topology the
/// interior of the isotropy subgroupoid is the isotropy subgroupoid itself.
GroupoidProperties groupoid_properties(const FiniteGroupoid& g);

nlohmann::ordered_json to_json(const FiniteGroupoid& g, const GroupoidProperties& p);

struct GroupoidIsomorphism {
  std::vector<ObjectId> objects;  // indexed by source object
  std::vector<ArrowId> arrows;    // indexed by source arrow
};

/// Checks that `iso` is a bijective functor from `g` onto `h`.
bool is_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h, const GroupoidIsomorphism& iso);

/// Backtracking search pruned by orbit and isotropy invariants.
std::optional<GroupoidIsomorphism> find_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h);

}  // namespace bim
