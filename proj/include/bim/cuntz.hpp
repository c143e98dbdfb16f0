#pragma once

// The Cuntz inverse monoid C_n: partial maps of n-ary Cantor space that
// replace a finite prefix u by a prefix v. Words are strings over the digits
// '0'..'(n-1)' (n <= 10); the empty word ε is printed "e".

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bim/calculus.hpp"
#include "json.hpp"

namespace bim {

using Word = std::string;

std::string format_word(const Word& w);
/// "e" or "ε" for the empty word; otherwise digits below n.
Word parse_word(std::string_view text, unsigned n);

inline bool is_prefix(const Word& p, const Word& w) { return w.size() >= p.size() && w.compare(0, p.size(), p) == 0; }
inline bool comparable(const Word& a, const Word& b) { return is_prefix(a, b) || is_prefix(b, a); }

/// Finite union of cylinders, kept as the antichain of maximal cylinders in
/// lexicographic order. Empty = 0, {ε} = 1.
class ClopenSet {
 public:
  ClopenSet() = default;
  const std::vector<Word>& words() const { return words_; }
  bool empty() const { return words_.empty(); }
  std::size_t size() const { return words_.size(); }
  friend auto operator<=>(const ClopenSet&, const ClopenSet&) = default;

 private:
  friend class CuntzMonoid;
  explicit ClopenSet(std::vector<Word> canonical) : words_(std::move(canonical)) {}
  std::vector<Word> words_;
};

struct Rule {
  Word from;
  Word to;
  friend auto operator<=>(const Rule&, const Rule&) = default;
};

/// Canonical prefix-exchange map: prefix-free domain and range words, no
/// mergeable sibling families, sorted by domain word.
class CuntzElement {
 public:
  CuntzElement() = default;
  const std::vector<Rule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  friend auto operator<=>(const CuntzElement&, const CuntzElement&) = default;

 private:
  friend class CuntzMonoid;
  explicit CuntzElement(std::vector<Rule> canonical) : rules_(std::move(canonical)) {}
  std::vector<Rule> rules_;
};

struct EvalOutcome {
  enum class Kind { mapped, undefined, needs_longer_input };
  Kind kind = Kind::undefined;
  Word image;
};

/// Eventually periodic point prefix·period^∞ (period nonempty).
struct Point {
  Word prefix;
  Word period;
};

class CuntzMonoid {
 public:
  using element_type = CuntzElement;

  explicit CuntzMonoid(unsigned n, std::size_t depth_cap = 32);

  unsigned alphabet() const { return n_; }
  std::size_t depth_cap() const { return depth_cap_; }

  // Canonical forms ----------------------------------------------------------
  /// Raw rules must have pairwise prefix-free domain words and range words.
  CuntzElement canonicalize(std::vector<Rule> rules) const;
  ClopenSet clopen(std::vector<Word> words) const;

  // Boolean inverse monoid interface -----------------------------------------
  CuntzElement zero() const { return {}; }
  CuntzElement one() const;
  /// (a·b)(ξ) = a(b(ξ)).
  CuntzElement multiply(const CuntzElement& a, const CuntzElement& b) const;
  CuntzElement inverse(const CuntzElement& a) const;
  CuntzElement phi(const CuntzElement& a) const;
  CuntzElement complement(const CuntzElement& e) const;
  CuntzElement join_unchecked(const CuntzElement& a, const CuntzElement& b) const;
  std::string format(const CuntzElement& a) const;

  // Idempotents as clopens ---------------------------------------------------
  CuntzElement identity(const ClopenSet& e) const;
  ClopenSet domain(const CuntzElement& a) const;
  ClopenSet range(const CuntzElement& a) const;
  /// Throws PreconditionError unless a is idempotent.
  ClopenSet as_clopen(const CuntzElement& a) const;

  ClopenSet clopen_meet(const ClopenSet& e, const ClopenSet& f) const;
  ClopenSet clopen_join(const ClopenSet& e, const ClopenSet& f) const;
  ClopenSet clopen_complement(const ClopenSet& e) const;
  bool clopen_leq(const ClopenSet& e, const ClopenSet& f) const;
  ClopenSet clopen_one() const { return ClopenSet({Word{}}); }
  std::string format(const ClopenSet& e) const;

  // Evaluation ---------------------------------------------------------------
  EvalOutcome evaluate(const CuntzElement& s, const Word& w) const;
  /// Image of an eventually periodic point, or nullopt outside the domain.
  std::optional<Point> evaluate(const CuntzElement& s, const Point& p) const;

  // Syntax -------------------------------------------------------------------
  /// `"0->10, 11->0"`, `"zero"`/empty for 0, or a JSON array of [from, to] pairs.
  CuntzElement parse_element(std::string_view text) const;
  /// `"{0, 110}"`, `"{e}"`, `"{}"` or a JSON array of words.
  ClopenSet parse_clopen(std::string_view text) const;
  nlohmann::ordered_json to_json(const CuntzElement& a) const;
  nlohmann::ordered_json to_json(const ClopenSet& e) const;

 private:
  void check_word(const Word& w) const;
  std::vector<Word> split(const Word& w) const;
  void complement_into(const std::vector<Word>& words, const Word& at, std::vector<Word>& out) const;

  unsigned n_;
  std::size_t depth_cap_;
};

static_assert(BooleanInverseMonoid<CuntzMonoid>);

bool points_equal(const Point& a, const Point& b);
std::string format_point(const Point& p);

// ---------------------------------------------------------------------------
// Element-level operations mirroring the finite engine

struct CuntzRelations {
  bool leq = false;
  bool compatible = false;
  bool orthogonal = false;
  /// Checked against cylinder idempotents up to `mu_depth`; a bounded test.
  bool mu_related = false;
  std::size_t mu_depth = 0;
};

/// Default depth is one more than the longest word in a or b.
CuntzRelations relations(const CuntzMonoid& m, const CuntzElement& a, const CuntzElement& b,
                         std::optional<std::size_t> mu_depth = std::nullopt);

bool mu_related_bounded(const CuntzMonoid& m, const CuntzElement& a, const CuntzElement& b, std::size_t depth);

/// Cylinder idempotents {w} for all words with |w| <= depth, plus 0.
std::vector<ClopenSet> cylinders_up_to(const CuntzMonoid& m, std::size_t depth);

/// Bounded fundamental check: a non-idempotent s fails to commute with some
/// cylinder idempotent of depth <= (longest word of s) + 1. Returns the cylinder,
/// or nullopt when s is idempotent. Throws Error if no cylinder separates s.
std::optional<ClopenSet> non_central_cylinder(const CuntzMonoid& m, const CuntzElement& s);

Classification classify(const CuntzMonoid& m, const CuntzElement& a);

struct CuntzBasicDecomposition {
  ClopenSet idempotent;
  std::vector<CuntzElement> infinitesimals;
};

/// Rules (u, v) with u ≠ v and u, v comparable: each has an isolated fixed point.
struct CuntzBasicFailure {
  std::vector<Rule> witnesses;
};

using CuntzBasicResult = std::variant<CuntzBasicDecomposition, CuntzBasicFailure>;

CuntzBasicResult basic_decompose(const CuntzMonoid& m, const CuntzElement& s);

}  // namespace bim
