#pragma once

#include "fraisse/error.hpp"
#include "fraisse/metric.hpp"
#include "fraisse/rational.hpp"
#include "fraisse/subset.hpp"
#include "fraisse/tuple.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fraisse {

/// Largest joint table a process may carry (|S|^|T| entries).
inline constexpr std::size_t kMaxOutcomes = std::size_t{1} << 18;

/// Outcome tables are dense over S^k. Outcome (s_0, ..., s_{k-1}) sits at
/// index s_0 + s_1*|S| + ... + s_{k-1}*|S|^{k-1}.
std::size_t outcome_count(std::size_t states, std::size_t length);
std::vector<std::size_t> decode_outcome(std::size_t index, std::size_t states, std::size_t length);
std::size_t encode_outcome(std::span<const std::size_t> digits, std::size_t states);

struct ProcessViolation {
  enum class Kind { negative, total_not_one, degenerate };
  Kind kind;
  std::size_t outcome = 0;  // negative
  Rational total;           // total_not_one
  std::size_t i = 0, j = 0; // degenerate: X(i) = X(j) almost surely
  std::string describe(const std::vector<std::string>& index, const std::vector<std::string>& states) const;
};

class ProcessError : public Error {
 public:
  ProcessError(ProcessViolation v, const std::string& message)
      : Error(ErrorCode::precondition, message), violation_(std::move(v)) {}
  const ProcessViolation& violation() const { return violation_; }

 private:
  ProcessViolation violation_;
};

/// A finite S-valued process: the joint law of (X(t))_{t in T} as a dense
/// table over S^|T|.
class FiniteProcess {
 public:
  /// Checks nonnegativity, total mass exactly 1, and (unless allow_semi) that
  /// distinct index points differ with positive probability.
  static FiniteProcess validate(std::vector<std::string> index, std::vector<std::string> states,
                                std::vector<Rational> pmf, bool allow_semi = false);
  static FiniteProcess unchecked(std::vector<std::string> index, std::vector<std::string> states,
                                 std::vector<Rational> pmf);
  static std::optional<ProcessViolation> find_violation(std::size_t points, std::size_t states,
                                                        std::span<const Rational> pmf, bool allow_semi);

  std::size_t size() const { return index_.size(); }
  std::size_t state_count() const { return states_.size(); }
  const std::vector<std::string>& labels() const { return index_; }
  const std::string& label(std::size_t i) const { return index_[i]; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t index_of(const std::string& label) const;

  const Rational& prob(std::size_t outcome) const { return pmf_[outcome]; }
  const std::vector<Rational>& pmf() const { return pmf_; }

  /// P(X(i) != X(j)).
  Rational distance(std::size_t i, std::size_t j) const;
  bool is_semi() const;

  bool operator==(const FiniteProcess&) const = default;

 private:
  FiniteProcess(std::vector<std::string> index, std::vector<std::string> states, std::vector<Rational> pmf)
      : index_(std::move(index)), states_(std::move(states)), pmf_(std::move(pmf)) {}

  std::vector<std::string> index_;
  std::vector<std::string> states_;
  std::vector<Rational> pmf_;
};

FiniteMetric induced_metric(const FiniteProcess& p);

/// Law of (X(points[0]), X(points[1]), ...) over S^k. Repeats are allowed.
std::vector<Rational> tuple_law(const FiniteProcess& p, std::span<const std::size_t> points);

/// Sums out the coordinates outside `set`; kept points stay in index order.
FiniteProcess marginal(const FiniteProcess& p, SubsetMask set);

/// The process on the listed distinct points, in the listed order.
FiniteProcess select(const FiniteProcess& p, std::span<const std::size_t> points);

/// Re-derives marginal consistency and permutation invariance from the table.
/// Returns a description of the first failure.
std::optional<std::string> check_consistency(const FiniteProcess& p);

/// Half the L1 distance between two tables over the same outcome space.
Rational total_variation(std::span<const Rational> p, std::span<const Rational> q);

struct CouplingEntry {
  std::size_t left, right;
  Rational prob;
};

/// A joint law on outcomes x outcomes, stored by its nonzero entries.
struct Coupling {
  std::size_t outcomes = 0;
  std::vector<CouplingEntry> entries;

  Rational mismatch() const;
  std::vector<Rational> left_marginal() const;
  std::vector<Rational> right_marginal() const;
};

/// Puts min(p(u), q(u)) on (u, u) and spreads the residuals as their
/// normalized product. Mismatch equals total_variation(p, q).
Coupling optimal_coupling(std::span<const Rational> p, std::span<const Rational> q);

struct ProcessAmalgam {
  /// Base points, then w, then z.
  FiniteProcess joint;
  Rational distance;     // d(w, z) in joint
  Rational weighted_tv;  // sum over base outcomes of P(base) * d_TV(conditionals)
  Rational half_l1;      // 1/2 sum |P1(base, w) - P2(base, z)|
  Rational bound;        // 1/2 |S|^(n+1) d_infty((base, w), (base, z))
};

/// Positional bAP amalgam: both inputs list the same base points first and
/// their new point last, and have identical base marginals. Conditionals
/// given each base outcome are coupled optimally.
ProcessAmalgam amalgamate_positional(const FiniteProcess& p1, const FiniteProcess& p2);

/// Label-driven form: the base is the shared labels (in p1's order); each
/// input has exactly one further label.
ProcessAmalgam amalgamate_one_point(const FiniteProcess& p1, const FiniteProcess& p2);

/// Independent product on the disjoint union of the index sets.
FiniteProcess join_independent(const FiniteProcess& p1, const FiniteProcess& p2);

/// Adds the new point of `patch` (base first, new point last) to `ambient`,
/// conditionally independent of the rest given the base. base[i] is the
/// ambient index of patch point i. The patch's base law must match.
FiniteProcess extend_over_base(const FiniteProcess& ambient, const FiniteProcess& patch,
                               std::span<const std::size_t> base);

using ProcessTuple = EnumeratedTuple<FiniteProcess>;

/// Max over nonempty position subsets X and outcomes s of
/// |P(a_X = s) - P(b_X = s)|.
Rational d_infty(const ProcessTuple& a, const ProcessTuple& b);
Rational dk_lower_bound(const ProcessTuple& a, const ProcessTuple& b);

/// The process a tuple induces on its positions, labelled prefix + number.
FiniteProcess positional_structure(const ProcessTuple& t, const std::string& prefix);

struct ProcessJointEmbedding {
  /// Points "a1".."an" then "b1".."bn".
  FiniteProcess joint;
  Rational bound;  // max_i P(a_i != b_i)
  Rational total_variation;
};

/// Couples the two whole vectors optimally.
ProcessJointEmbedding dk_upper_embedding(const ProcessTuple& a, const ProcessTuple& b);

/// Looks for x, x', a list of other points A and states s, s_A with
/// |P(X(x) = s, X(A) = s_A) - P(X(x') = s, X(A) = s_A)| > d(x, x').
struct ProcessLipschitzWitness {
  std::size_t x, x_prime;
  SubsetMask set;
  std::size_t outcome;  // over (x, A in ascending order)
  Rational gap, distance;
};
std::optional<ProcessLipschitzWitness> find_lipschitz_violation(const FiniteProcess& p);

}  // namespace fraisse
