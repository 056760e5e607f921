#include "fraisse/l1cut.hpp"

namespace fraisse {
namespace {

std::vector<Rational> symmetric(std::size_t n, const std::vector<int>& upper) {
  std::vector<Rational> d(n * n);
  std::size_t at = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = upper[at++];
  return d;
}

const std::vector<std::string> kFamilyLabels{"a", "b", "c", "e", "z1", "z2"};

}  // namespace

std::vector<Rational> k23_family_matrix(const Rational& gamma) {
  auto d = symmetric(6, {2, 2, 2, 1, 1,  //
                         2, 2, 1, 1,     //
                         1, 1, 1,        //
                         1, 2,           //
                         0});
  d[4 * 6 + 5] = d[5 * 6 + 4] = gamma;
  return d;
}

bool K23Report::certified() const {
  return k23_pentagonal > 0 && !k23_l1 && left_weights && right_weights && gamma_lo == 1 && gamma_hi == 2 &&
         endpoints_valid && outside_invalid && violated_on_interval;
}

K23Report nap_counterexample() {
  auto k23 = FiniteMetric::validate({"a", "b", "c", "z1", "z2"}, symmetric(5, {2, 2, 1, 1, 2, 1, 1, 1, 1, 2}));
  auto left = FiniteMetric::validate({"a", "b", "c", "e", "z1"}, symmetric(5, {2, 2, 2, 1, 2, 2, 1, 1, 1, 1}));
  auto right = FiniteMetric::validate({"a", "b", "c", "e", "z2"}, symmetric(5, {2, 2, 2, 1, 2, 2, 1, 1, 1, 2}));

  // Triangle bounds on gamma = d(z1, z2) through each shared point.
  const std::size_t z1 = 4, z2 = 5;
  const auto base = k23_family_matrix(Rational(0));
  Rational lo(0), hi;
  bool first = true;
  for (std::size_t x = 0; x < 4; ++x) {
    const Rational& p = base[x * 6 + z1];
    const Rational& q = base[x * 6 + z2];
    lo = std::max(lo, abs(p - q));
    if (first || p + q < hi) hi = p + q;
    first = false;
  }
  auto is_metric = [](const Rational& g) {
    return !FiniteMetric::find_violation(6, k23_family_matrix(g), false).has_value();
  };

  // Pentagonal value is affine in gamma; recover its two coefficients.
  auto value_at = [&](const Rational& g) {
    auto m = FiniteMetric::validate(kFamilyLabels, k23_family_matrix(g));
    return pentagonal_value(m, {0, 1, 2}, {z1, z2});
  };
  const Rational slope = (value_at(hi) - value_at(lo)) / (hi - lo);
  const Rational constant = value_at(lo) - slope * lo;

  K23Report r{k23,
              pentagonal_value(k23, {0, 1, 2}, {3, 4}),
              is_l1_metric(k23).has_value(),
              left,
              right,
              is_l1_metric(left),
              is_l1_metric(right),
              lo,
              hi,
              is_metric(lo) && is_metric(hi),
              !is_metric(lo - Rational(1, 2)) && !is_metric(hi + Rational(1, 2)),
              constant,
              slope,
              constant + slope * lo > 0 && constant + slope * hi > 0};
  return r;
}

}  // namespace fraisse
