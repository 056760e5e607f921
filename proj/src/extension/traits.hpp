#pragma once

#include "fraisse/diversity.hpp"
#include "fraisse/stochastic.hpp"

#include <numeric>
#include <vector>

namespace fraisse::detail {

inline std::vector<std::size_t> iota_list(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

template <class Structure>
struct Kind;

template <>
struct Kind<FiniteDiversity> {
  using Tuple = DiversityTuple;
  static FiniteDiversity positional(const FiniteDiversity& s, std::vector<std::size_t> at) {
    return positional_structure(Tuple(s, std::move(at)), "p");
  }
  static bool same(const FiniteDiversity& a, const FiniteDiversity& b) { return a.values() == b.values(); }
  static Rational d_inf(const FiniteDiversity& a, const FiniteDiversity& b) {
    return d_infty(Tuple::all(a), Tuple::all(b));
  }
  static FiniteDiversity amalgamate(const FiniteDiversity& a, const FiniteDiversity& b) {
    return amalgamate_positional(a, b);
  }
  static Rational distance(const FiniteDiversity& s, std::size_t i, std::size_t j) { return s.distance(i, j); }
  static FiniteDiversity extend(const FiniteDiversity& ambient, const FiniteDiversity& patch,
                                std::span<const std::size_t> base) {
    return extend_over_base(ambient, patch, base);
  }
  static bool valid(const FiniteDiversity& s) {
    return !FiniteDiversity::find_violation(s.size(), s.values(), true).has_value();
  }
};

template <>
struct Kind<FiniteProcess> {
  using Tuple = ProcessTuple;
  static FiniteProcess positional(const FiniteProcess& s, std::vector<std::size_t> at) {
    return positional_structure(Tuple(s, std::move(at)), "p");
  }
  static bool same(const FiniteProcess& a, const FiniteProcess& b) { return a.pmf() == b.pmf(); }
  static Rational d_inf(const FiniteProcess& a, const FiniteProcess& b) {
    return d_infty(Tuple::all(a), Tuple::all(b));
  }
  static FiniteProcess amalgamate(const FiniteProcess& a, const FiniteProcess& b) {
    return amalgamate_positional(a, b).joint;
  }
  static Rational distance(const FiniteProcess& s, std::size_t i, std::size_t j) { return s.distance(i, j); }
  static FiniteProcess extend(const FiniteProcess& ambient, const FiniteProcess& patch,
                              std::span<const std::size_t> base) {
    return extend_over_base(ambient, patch, base);
  }
  static bool valid(const FiniteProcess& s) {
    return !FiniteProcess::find_violation(s.size(), s.state_count(), s.pmf(), true).has_value();
  }
};

/// Collapses repeated base entries: the distinct ambient points in first-seen
/// order, and the patch restricted to those positions plus its last point.
template <class Structure>
struct ReducedPatch {
  std::vector<std::size_t> base;
  Structure patch;
};

template <class Structure>
ReducedPatch<Structure> reduce(const Structure& patch, std::span<const std::size_t> base) {
  std::vector<std::size_t> distinct, positions;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (std::find(distinct.begin(), distinct.end(), base[i]) == distinct.end()) {
      distinct.push_back(base[i]);
      positions.push_back(i);
    }
  positions.push_back(base.size());
  return {std::move(distinct), select(patch, positions)};
}

}  // namespace fraisse::detail
