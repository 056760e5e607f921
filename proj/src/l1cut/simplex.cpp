#include "fraisse/l1cut.hpp"

namespace fraisse {

std::optional<CutWeights> is_l1_metric(const FiniteMetric& m) {
  const std::size_t n = m.size();
  if (n > 6) fail(ErrorCode::size_limit, "cut-cone membership is limited to 6 points");
  CutWeights result(m.labels(), 0);
  if (n <= 1) return result;
  const auto splits = result.splits();
  const std::size_t vars = splits.size();

  // One equation per pair; artificial variables vars..vars+rows-1 start basic.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const std::size_t rows = pairs.size(), cols = vars + rows;
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const SubsetMask pair = bit(pairs[r].first) | bit(pairs[r].second);
    for (std::size_t k = 0; k < vars; ++k)
      if ((splits[k] & pair) != 0 && (pair & ~splits[k]) != 0) t[r][k] = 1;
    t[r][vars + r] = 1;
    t[r][cols] = m.at(pairs[r].first, pairs[r].second);
    basis[r] = vars + r;
  }
  // Phase-1 reduced costs: minimize the sum of the artificials.
  std::vector<Rational> cost(cols + 1);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t k = 0; k <= cols; ++k)
      if (k < vars || k == cols) cost[k] -= t[r][k];

  while (true) {
    std::size_t enter = cols;
    for (std::size_t k = 0; k < cols; ++k)
      if (cost[k] < 0) {
        enter = k;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = rows;
    Rational best;
    for (std::size_t r = 0; r < rows; ++r) {
      if (t[r][enter] <= 0) continue;
      Rational ratio = t[r][cols] / t[r][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = std::move(ratio);
      }
    }
    if (leave == rows) fail(ErrorCode::internal, "phase-1 simplex is unbounded");
    const Rational pivot = t[leave][enter];
    for (auto& x : t[leave]) x /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      const Rational f = t[r][enter];
      for (std::size_t k = 0; k <= cols; ++k)
        if (t[leave][k] != 0) t[r][k] -= f * t[leave][k];
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t k = 0; k <= cols; ++k)
        if (t[leave][k] != 0) cost[k] -= f * t[leave][k];
    }
    basis[leave] = enter;
  }
  if (cost[cols] != 0) return std::nullopt;  // remaining artificial mass
  for (std::size_t r = 0; r < rows; ++r)
    if (basis[r] < vars) result.set_weight(splits[basis[r]], t[r][cols]);
  if (cut_metric(result).matrix() != m.matrix()) fail(ErrorCode::internal, "simplex solution does not reproduce the metric");
  return result;
}

}  // namespace fraisse
