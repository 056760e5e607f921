#pragma once

#include "fraisse/error.hpp"
#include "fraisse/metric.hpp"
#include "fraisse/rational.hpp"
#include "fraisse/subset.hpp"
#include "fraisse/tuple.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fraisse {

/// Why a value table fails to be a (semi)diversity. For the triangle case the
/// failing inequality is
///   delta(A + b + C) <= delta(A + b) + delta(b + C)
/// which together with one-element monotonicity is equivalent to the full
/// triangle axiom.
struct DiversityViolation {
  enum class Kind { negative, zero_value, monotonicity, triangle };
  Kind kind;
  SubsetMask set = 0;     // negative / zero_value / monotonicity: A; triangle: A
  SubsetMask other = 0;   // triangle: C
  std::size_t point = 0;  // monotonicity: x; triangle: b
  Rational lhs, rhs;      // the inequality lhs <= rhs that fails
  std::string describe(const std::vector<std::string>& labels) const;
};

class DiversityError : public Error {
 public:
  explicit DiversityError(DiversityViolation v, const std::string& message)
      : Error(ErrorCode::precondition, message), violation_(std::move(v)) {}
  const DiversityViolation& violation() const { return violation_; }

 private:
  DiversityViolation violation_;
};

/// A finite diversity: a value for every subset of the ground set, stored
/// densely by SubsetMask. Subsets of size <= 1 are 0.
class FiniteDiversity {
 public:
  /// Validates nonnegativity, the zero pattern (strict unless allow_semi),
  /// one-element monotonicity and the singleton-bridge triangle inequality.
  /// Throws DiversityError carrying the first witness found.
  static FiniteDiversity validate(std::vector<std::string> labels, std::vector<Rational> values,
                                  bool allow_semi = false);

  /// Skips the axiom check. For constructions that are valid by theorem; the
  /// test suites re-validate their outputs.
  static FiniteDiversity unchecked(std::vector<std::string> labels, std::vector<Rational> values);

  /// The check performed by validate, exposed for reporting. `values` must
  /// have 2^n entries; entries for |A| <= 1 are required to be 0.
  static std::optional<DiversityViolation> find_violation(std::size_t n, std::span<const Rational> values,
                                                          bool allow_semi);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::size_t index_of(const std::string& label) const;

  const Rational& value(SubsetMask set) const { return values_[set]; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& distance(std::size_t i, std::size_t j) const { return values_[bit(i) | bit(j)]; }

  /// True when some set of two or more points has value 0.
  bool is_semi() const;

  /// Largest value taken (the value on the whole ground set).
  const Rational& diameter() const { return values_.back(); }

  bool operator==(const FiniteDiversity&) const = default;

 private:
  FiniteDiversity(std::vector<std::string> labels, std::vector<Rational> values)
      : labels_(std::move(labels)), values_(std::move(values)) {}

  std::vector<std::string> labels_;
  std::vector<Rational> values_;
};

FiniteMetric induced_metric(const FiniteDiversity& d);

/// Substructure on the points of `set`, in ascending index order.
FiniteDiversity restrict(const FiniteDiversity& d, SubsetMask set);

/// Substructure on the listed distinct points, in the listed order.
FiniteDiversity select(const FiniteDiversity& d, std::span<const std::size_t> points);

/// Minimal one-point amalgam. X is the set of labels the inputs share; each
/// input must have exactly one further point (z1 in d1, z2 in d2). Output
/// points are X in d1's order, then z1, then z2. The result may be a
/// semidiversity (when z1 and z2 end up at distance 0).
FiniteDiversity amalgamate_one_point(const FiniteDiversity& d1, const FiniteDiversity& d2);

/// Positional form: both inputs list the common base first (same order) and
/// their new point last.
FiniteDiversity amalgamate_positional(const FiniteDiversity& d1, const FiniteDiversity& d2);

/// Adds the new point of `patch` to `ambient`. `patch` lists its base points
/// first and the new point last; base[i] is the ambient index of patch point
/// i. Points of the ambient outside the base are absorbed one by one with
/// amalgamate_positional. Output keeps the ambient order with the new point
/// appended.
FiniteDiversity extend_over_base(const FiniteDiversity& ambient, const FiniteDiversity& patch,
                                 std::span<const std::size_t> base);

/// Label-driven form: the base is every patch label also present in the
/// ambient; the patch must have exactly one other label.
FiniteDiversity extend_over_base(const FiniteDiversity& ambient, const FiniteDiversity& patch);

/// Disjoint union; every set meeting both sides takes the largest value
/// either input takes.
FiniteDiversity join(const FiniteDiversity& d1, const FiniteDiversity& d2);

/// Merges points at distance 0, keeping the first point of each class.
FiniteDiversity quotient(const FiniteDiversity& d);

/// Positions of `d` kept by quotient, one representative per class.
std::vector<std::size_t> quotient_representatives(const FiniteDiversity& d);

using DiversityTuple = EnumeratedTuple<FiniteDiversity>;

/// Max over nonempty position subsets X of |delta(a_X) - delta(b_X)|, with
/// repeated entries collapsed.
Rational d_infty(const DiversityTuple& a, const DiversityTuple& b);

/// d_infty / n.
Rational dk_lower_bound(const DiversityTuple& a, const DiversityTuple& b);

struct DiversityJointEmbedding {
  /// Points "a1".."an" then "b1".."bn"; the structure restricts to the
  /// positional structures of both tuples.
  FiniteDiversity joint;
  Rational bound;  // max_i d(a_i, b_i) in `joint`
};

/// Glues a1 to b1 (distance 0), then adds a2, b2, a3, b3, ... in that order:
/// each pair is attached to the current joint by minimal extensions and the
/// two extensions are amalgamated with amalgamate_positional. The bound is
/// not guaranteed to be <= d_infty.
DiversityJointEmbedding dk_chain_embedding(const DiversityTuple& a, const DiversityTuple& b);

/// The diversity generated by hyperedges: every set of a-points at delta_a,
/// every set of b-points at delta_b, and each link {a_i, b_i} at d_infty. A
/// set's value is the cheapest connected family of hyperedges covering it.
/// Restricts exactly to both tuples and keeps d(a_i, b_i) <= d_infty.
/// Exponential in 2n; fine up to n = 8.
DiversityJointEmbedding dk_coupled_embedding(const DiversityTuple& a, const DiversityTuple& b);

/// The tighter of the two constructions above; bound <= d_infty always.
DiversityJointEmbedding dk_upper_embedding(const DiversityTuple& a, const DiversityTuple& b);

/// The structure a tuple induces on its positions (repeats become distance-0
/// copies), labelled by `prefix` + position number.
FiniteDiversity positional_structure(const DiversityTuple& t, const std::string& prefix);

/// Looks for A, x, x' with |delta(A + x) - delta(A + x')| > d(x, x').
struct LipschitzWitness {
  SubsetMask set;
  std::size_t x, x_prime;
  Rational gap, distance;
};
std::optional<LipschitzWitness> find_lipschitz_violation(const FiniteDiversity& d);

}  // namespace fraisse
