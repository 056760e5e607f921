#pragma once

#include "fraisse/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fraisse {

struct MetricViolation {
  enum class Kind { asymmetric, nonzero_diagonal, negative, zero_distance, triangle };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;  // triangle: d(i,k) > d(i,j) + d(j,k)
  std::string describe() const;
};

/// Symmetric rational distance matrix with zero diagonal.
class FiniteMetric {
 public:
  /// Checks symmetry, zero diagonal, nonnegativity, the triangle inequality and
  /// (unless allow_semi) strict positivity off the diagonal.
  static FiniteMetric validate(std::vector<std::string> labels, std::vector<Rational> row_major,
                               bool allow_semi = false);

  static std::optional<MetricViolation> find_violation(std::size_t n, const std::vector<Rational>& row_major,
                                                       bool allow_semi);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Rational& at(std::size_t i, std::size_t j) const { return d_[i * size() + j]; }
  const std::vector<Rational>& matrix() const { return d_; }
  bool is_semi() const;
  std::size_t index_of(const std::string& label) const;

  bool operator==(const FiniteMetric&) const = default;

 private:
  FiniteMetric(std::vector<std::string> labels, std::vector<Rational> d)
      : labels_(std::move(labels)), d_(std::move(d)) {}

  std::vector<std::string> labels_;
  std::vector<Rational> d_;
};

/// Rejects empty, duplicate, or over-cap label lists.
void check_labels(const std::vector<std::string>& labels, std::size_t max_points);

}  // namespace fraisse
