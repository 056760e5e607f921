#pragma once

#include "fraisse/diversity.hpp"
#include "fraisse/metric.hpp"
#include "fraisse/rational.hpp"
#include "fraisse/subset.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace fraisse {

/// Nonnegative weights on the splits U | X\U of a ground set, each split keyed
/// by its side U that avoids the anchor. Stored densely by mask; entries for
/// masks containing the anchor (and the empty mask) stay 0.
class CutWeights {
 public:
  CutWeights(std::vector<std::string> labels, std::size_t anchor);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t anchor() const { return anchor_; }

  /// Canonical key of the split separating `side` from the rest: the side
  /// without the anchor. Fails for the empty or full side.
  SubsetMask key(SubsetMask side) const;

  const Rational& weight(SubsetMask side) const { return weights_[key(side)]; }
  void set_weight(SubsetMask side, Rational w);
  const std::vector<Rational>& table() const { return weights_; }

  /// Keys of all splits in ascending mask order.
  std::vector<SubsetMask> splits() const;

  bool operator==(const CutWeights&) const = default;

 private:
  std::vector<std::string> labels_;
  std::size_t anchor_;
  std::vector<Rational> weights_;
};

/// Sum of the weights of splits that separate A.
Rational evaluate_cuts(const CutWeights& w, SubsetMask set);

/// evaluate_cuts on every subset, as a semidiversity.
FiniteDiversity cut_diversity(const CutWeights& w);
FiniteMetric cut_metric(const CutWeights& w);

struct NotL1Witness {
  enum class Kind { mismatch, negative_weight };
  Kind kind;
  SubsetMask set = 0;        // mismatch: the set whose value the other equations contradict
  Rational reconstructed{};  // mismatch: value forced by earlier equations
  Rational actual{};         // mismatch: value in the input
  SubsetMask split = 0;      // negative_weight: split key
  Rational weight{};         // negative_weight: its forced weight
  std::string describe(const std::vector<std::string>& labels) const;
};

struct Decomposition {
  std::optional<CutWeights> weights;   // set when the input is L1
  std::optional<NotL1Witness> witness; // set otherwise
  bool is_l1() const { return weights.has_value(); }
};

/// Solves sum_U w_U delta_U(A) = delta(A) exactly. Equations are taken pairs
/// first, then by increasing size; the first equation the earlier ones
/// contradict is reported. Up to 8 points this runs rational elimination and
/// cross-checks it against the Moebius-inversion formula; above that only the
/// inversion formula runs.
Decomposition decompose(const FiniteDiversity& d, std::size_t anchor = 0);

/// Weights forced by the sets that contain the anchor, via Moebius inversion
/// of H(S) = delta(X) - delta(X \ S). May be negative.
CutWeights moebius_weights(const FiniteDiversity& d, std::size_t anchor);

struct L1Amalgam {
  /// Base points (d1's order), then z1, then z2.
  FiniteDiversity joint;
  CutWeights weights;
  Rational distance;     // delta({z1, z2})
  Rational split_sum;    // sum over U of |beta(U + z1) - gamma(U + z2)|
  Rational formula_sum;  // same sum from the inclusion-exclusion weight formula
  Rational bound;        // 2^(2n) max_V |delta(V + z1) - delta(V + z2)|, n = |base|
};

/// Two-point L1 amalgam over a common base. Inputs list the base first (same
/// order) and their new point last; anchor is a base index. Fails with a
/// witness message if either input is not L1 or the inputs disagree on the
/// base.
L1Amalgam amalgamate_l1(const FiniteDiversity& d1, const FiniteDiversity& d2, std::size_t anchor = 0);

/// Label-driven form with the anchor given by label.
L1Amalgam amalgamate_l1(const FiniteDiversity& d1, const FiniteDiversity& d2, const std::string& anchor);

struct PentagonalWitness {
  std::array<std::size_t, 3> s3;
  std::array<std::size_t, 2> t2;
  Rational value;
};

/// Sum of d over pairs inside S3, plus d over T2, minus the six cross
/// distances. Positive values violate the pentagonal inequality.
Rational pentagonal_value(const FiniteMetric& m, const std::array<std::size_t, 3>& s3,
                          const std::array<std::size_t, 2>& t2);

/// Witness when the selection violates the inequality, nullopt otherwise.
std::optional<PentagonalWitness> pentagonal_check(const FiniteMetric& m, const std::array<std::size_t, 3>& s3,
                                                  const std::array<std::size_t, 2>& t2);

/// Searches every (S3, T2) selection; returns the largest violation.
std::optional<PentagonalWitness> find_pentagonal_violation(const FiniteMetric& m);

/// Exact cut-cone membership for metrics on at most 6 points, by a phase-1
/// simplex with Bland's rule. Returns weights (anchor 0) when feasible.
std::optional<CutWeights> is_l1_metric(const FiniteMetric& m);

struct K23Report {
  FiniteMetric k23;
  Rational k23_pentagonal;  // S3 = {a,b,c}, T2 = {z1,z2}
  bool k23_l1;
  FiniteMetric left, right;  // the two 5-point inputs
  std::optional<CutWeights> left_weights, right_weights;
  Rational gamma_lo, gamma_hi;   // from the triangle inequality
  bool endpoints_valid;          // both endpoint amalgams are metrics
  bool outside_invalid;          // gamma_lo - 1/2 and gamma_hi + 1/2 are not
  Rational constant, slope;      // pentagonal value of the amalgam = constant + slope * gamma
  bool violated_on_interval;     // constant + slope * gamma > 0 on [gamma_lo, gamma_hi]

  bool certified() const;
};

/// The six-point amalgam family with d(z1, z2) = gamma (points a,b,c,e,z1,z2).
std::vector<Rational> k23_family_matrix(const Rational& gamma);

K23Report nap_counterexample();

}  // namespace fraisse
