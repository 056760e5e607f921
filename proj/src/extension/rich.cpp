#include "fraisse/extension.hpp"

#include "traits.hpp"

#include <map>
#include <random>

namespace fraisse {
namespace {

using detail::iota_list;
using detail::Kind;

// Ordered tuples of distinct points on which `s` agrees with the first
// `length` positions of `tpl`.
template <class S>
void agreeing_bases(const S& s, const S& tpl, std::size_t length, std::vector<std::size_t>& prefix,
                    std::vector<std::vector<std::size_t>>& out) {
  if (prefix.size() == length) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t y = 0; y < s.size(); ++y) {
    if (std::find(prefix.begin(), prefix.end(), y) != prefix.end()) continue;
    prefix.push_back(y);
    if (Kind<S>::same(Kind<S>::positional(s, prefix), Kind<S>::positional(tpl, iota_list(prefix.size()))))
      agreeing_bases(s, tpl, length, prefix, out);
    prefix.pop_back();
  }
}

template <class S>
std::pair<Rational, std::size_t> best_point(const S& s, const S& tpl, const std::vector<std::size_t>& base) {
  std::optional<Rational> best;
  std::size_t at = 0;
  const S target = Kind<S>::positional(tpl, iota_list(tpl.size()));
  for (std::size_t y = 0; y < s.size(); ++y) {
    auto with = base;
    with.push_back(y);
    Rational d = Kind<S>::d_inf(Kind<S>::positional(s, with), target);
    if (!best || d < *best) {
      best = std::move(d);
      at = y;
    }
  }
  return {*best, at};
}

template <class S>
RichResult<S> build(const S& start, const std::vector<S>& catalog, std::size_t rounds, const Rational& epsilon,
                    std::uint64_t seed) {
  for (const S& tpl : catalog)
    if (tpl.size() < 2) fail(ErrorCode::invalid_input, "catalog templates need a base point and a new point");
  RichResult<S> result{start, {}, false, 0};
  std::mt19937_64 rng(seed);
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> seen;
  for (std::size_t round = 0; round < rounds && !catalog.empty(); ++round) {
    const std::size_t t = std::uniform_int_distribution<std::size_t>(0, catalog.size() - 1)(rng);
    const S& tpl = catalog[t];
    std::vector<std::vector<std::size_t>> bases;
    std::vector<std::size_t> prefix;
    agreeing_bases(result.structure, tpl, tpl.size() - 1, prefix, bases);
    if (bases.empty()) continue;
    const auto& base = bases[std::uniform_int_distribution<std::size_t>(0, bases.size() - 1)(rng)];
    if (best_point(result.structure, tpl, base).first > epsilon) {
      if (result.structure.size() < kMaxPoints) {
        result.structure = Kind<S>::extend(result.structure, tpl, base);
        ++result.added;
      } else {
        result.size_capped = true;
      }
    }
    if (seen.emplace(std::make_pair(t, base), result.report.size()).second)
      result.report.push_back(RichEntry{t, base, Rational(0), std::nullopt, false});
  }
  for (auto& e : result.report) {
    auto [d, y] = best_point(result.structure, catalog[e.template_index], e.base);
    e.best_d_inf = d;
    e.best_point = y;
    e.satisfied = d <= epsilon;
  }
  return result;
}

}  // namespace

RichResult<FiniteDiversity> build_rich_structure(const FiniteDiversity& start,
                                                 const std::vector<FiniteDiversity>& catalog, std::size_t rounds,
                                                 const Rational& epsilon, std::uint64_t seed) {
  return build(start, catalog, rounds, epsilon, seed);
}

RichResult<FiniteProcess> build_rich_structure(const FiniteProcess& start, const std::vector<FiniteProcess>& catalog,
                                               std::size_t rounds, const Rational& epsilon, std::uint64_t seed) {
  for (const auto& tpl : catalog)
    if (tpl.states() != start.states()) fail(ErrorCode::invalid_input, "catalog template uses a different state set");
  return build(start, catalog, rounds, epsilon, seed);
}

}  // namespace fraisse
