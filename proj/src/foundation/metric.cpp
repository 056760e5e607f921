#include "fraisse/metric.hpp"

#include "fraisse/error.hpp"
#include "fraisse/subset.hpp"

#include <set>

namespace fraisse {

void check_labels(const std::vector<std::string>& labels, std::size_t max_points) {
  if (labels.empty()) fail(ErrorCode::invalid_input, "structure needs at least one point");
  if (labels.size() > max_points)
    fail(ErrorCode::size_limit, "ground set has " + std::to_string(labels.size()) + " points; the limit is " +
                                    std::to_string(max_points));
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) fail(ErrorCode::invalid_input, "empty point label");
    if (!seen.insert(l).second) fail(ErrorCode::invalid_input, "duplicate point label \"" + l + "\"");
  }
}

std::string MetricViolation::describe() const {
  auto s = [](std::size_t v) { return std::to_string(v); };
  switch (kind) {
    case Kind::asymmetric: return "d(" + s(i) + "," + s(j) + ") != d(" + s(j) + "," + s(i) + ")";
    case Kind::nonzero_diagonal: return "d(" + s(i) + "," + s(i) + ") != 0";
    case Kind::negative: return "d(" + s(i) + "," + s(j) + ") < 0";
    case Kind::zero_distance: return "d(" + s(i) + "," + s(j) + ") == 0 for distinct points";
    case Kind::triangle:
      return "d(" + s(i) + "," + s(k) + ") > d(" + s(i) + "," + s(j) + ") + d(" + s(j) + "," + s(k) + ")";
  }
  return "metric violation";
}

std::optional<MetricViolation> FiniteMetric::find_violation(std::size_t n, const std::vector<Rational>& d,
                                                            bool allow_semi) {
  using K = MetricViolation::Kind;
  if (d.size() != n * n) fail(ErrorCode::invalid_input, "distance matrix must be n x n");
  auto at = [&](std::size_t i, std::size_t j) -> const Rational& { return d[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) != 0) return MetricViolation{K::nonzero_diagonal, i, i};
    for (std::size_t j = 0; j < n; ++j) {
      if (at(i, j) != at(j, i)) return MetricViolation{K::asymmetric, i, j};
      if (at(i, j) < 0) return MetricViolation{K::negative, i, j};
      if (!allow_semi && i != j && at(i, j) == 0) return MetricViolation{K::zero_distance, i, j};
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (at(i, k) > at(i, j) + at(j, k)) return MetricViolation{K::triangle, i, j, k};
  return std::nullopt;
}

FiniteMetric FiniteMetric::validate(std::vector<std::string> labels, std::vector<Rational> row_major,
                                    bool allow_semi) {
  check_labels(labels, kMaxPoints);
  if (auto v = find_violation(labels.size(), row_major, allow_semi))
    fail(ErrorCode::precondition, "not a metric: " + v->describe());
  return FiniteMetric(std::move(labels), std::move(row_major));
}

bool FiniteMetric::is_semi() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (at(i, j) == 0) return true;
  return false;
}

std::size_t FiniteMetric::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  fail(ErrorCode::invalid_input, "unknown point label \"" + label + "\"");
}

}  // namespace fraisse
