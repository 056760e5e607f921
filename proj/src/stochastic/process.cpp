#include "fraisse/stochastic.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fraisse {
namespace {

// Largest |entry| over every marginal of `table` (digits = `length` kept
// positions). Positions are summed out in increasing order from `from`, so
// each subset of positions is reached once.
void marginal_gaps(const std::vector<Rational>& table, std::size_t states, std::size_t length, std::size_t from,
                   Rational& best) {
  if (length == 0) return;
  for (const auto& x : table)
    if (abs(x) > best) best = abs(x);
  for (std::size_t t = from; t < length; ++t) {
    std::size_t stride = 1;
    for (std::size_t i = 0; i < t; ++i) stride *= states;
    std::vector<Rational> out(table.size() / states);
    for (std::size_t u = 0; u < table.size(); ++u) {
      const std::size_t low = u % stride, high = u / (stride * states);
      out[low + high * stride] += table[u];
    }
    marginal_gaps(out, states, length - 1, t, best);
  }
}

std::vector<Rational> pair_distances(std::size_t n, std::size_t states, std::span<const Rational> pmf) {
  std::vector<Rational> d(n * n);
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t u = 0; u < pmf.size(); ++u) {
    if (pmf[u] != 0)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (digits[i] != digits[j]) d[i * n + j] += pmf[u];
    for (std::size_t k = 0; k < n && ++digits[k] == states; ++k) digits[k] = 0;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[j * n + i] = d[i * n + j];
  return d;
}

}  // namespace

std::size_t outcome_count(std::size_t states, std::size_t length) {
  if (states == 0) fail(ErrorCode::invalid_input, "empty state set");
  std::size_t count = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (count > kMaxOutcomes / states)
      fail(ErrorCode::size_limit, "outcome table exceeds " + std::to_string(kMaxOutcomes) + " entries");
    count *= states;
  }
  return count;
}

std::vector<std::size_t> decode_outcome(std::size_t index, std::size_t states, std::size_t length) {
  std::vector<std::size_t> digits(length);
  for (std::size_t i = 0; i < length; ++i) {
    digits[i] = index % states;
    index /= states;
  }
  return digits;
}

std::size_t encode_outcome(std::span<const std::size_t> digits, std::size_t states) {
  std::size_t index = 0;
  for (std::size_t i = digits.size(); i-- > 0;) index = index * states + digits[i];
  return index;
}

std::string ProcessViolation::describe(const std::vector<std::string>& index,
                                       const std::vector<std::string>& states) const {
  switch (kind) {
    case Kind::negative: {
      std::string out = "negative probability at outcome (";
      auto digits = decode_outcome(outcome, states.size(), index.size());
      for (std::size_t i = 0; i < digits.size(); ++i) out += (i ? "," : "") + states[digits[i]];
      return out + ")";
    }
    case Kind::total_not_one: return "probabilities sum to " + to_string(total) + ", not 1";
    case Kind::degenerate:
      return "degenerate pair: " + index[i] + " and " + index[j] + " are equal with probability 1";
  }
  return "process violation";
}

std::optional<ProcessViolation> FiniteProcess::find_violation(std::size_t points, std::size_t states,
                                                              std::span<const Rational> pmf, bool allow_semi) {
  using K = ProcessViolation::Kind;
  if (points > kMaxPoints) fail(ErrorCode::size_limit, "process exceeds " + std::to_string(kMaxPoints) + " points");
  if (pmf.size() != outcome_count(states, points))
    fail(ErrorCode::invalid_input, "probability table must have |S|^|T| entries");
  Rational total(0);
  for (std::size_t u = 0; u < pmf.size(); ++u) {
    if (pmf[u] < 0) return ProcessViolation{K::negative, u, Rational(0), 0, 0};
    total += pmf[u];
  }
  if (total != 1) return ProcessViolation{K::total_not_one, 0, total, 0, 0};
  if (!allow_semi) {
    const auto d = pair_distances(points, states, pmf);
    for (std::size_t i = 0; i < points; ++i)
      for (std::size_t j = i + 1; j < points; ++j)
        if (d[i * points + j] == 0) return ProcessViolation{K::degenerate, 0, Rational(0), i, j};
  }
  return std::nullopt;
}

FiniteProcess FiniteProcess::validate(std::vector<std::string> index, std::vector<std::string> states,
                                      std::vector<Rational> pmf, bool allow_semi) {
  check_labels(index, kMaxPoints);
  if (states.empty()) fail(ErrorCode::invalid_input, "empty state set");
  if (std::set<std::string>(states.begin(), states.end()).size() != states.size())
    fail(ErrorCode::invalid_input, "duplicate state label");
  if (auto v = find_violation(index.size(), states.size(), pmf, allow_semi))
    throw ProcessError(*v, v->describe(index, states));
  return FiniteProcess(std::move(index), std::move(states), std::move(pmf));
}

FiniteProcess FiniteProcess::unchecked(std::vector<std::string> index, std::vector<std::string> states,
                                       std::vector<Rational> pmf) {
  return FiniteProcess(std::move(index), std::move(states), std::move(pmf));
}

std::size_t FiniteProcess::index_of(const std::string& label) const {
  auto it = std::find(index_.begin(), index_.end(), label);
  if (it == index_.end()) fail(ErrorCode::invalid_input, "unknown index point '" + label + "'");
  return static_cast<std::size_t>(it - index_.begin());
}

Rational FiniteProcess::distance(std::size_t i, std::size_t j) const {
  if (i == j) return Rational(0);
  const std::size_t pts[2] = {i, j};
  const auto law = tuple_law(*this, pts);
  Rational same(0);
  for (std::size_t s = 0; s < state_count(); ++s) same += law[s + s * state_count()];
  return 1 - same;
}

bool FiniteProcess::is_semi() const {
  const auto d = pair_distances(size(), state_count(), pmf_);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (d[i * size() + j] == 0) return true;
  return false;
}

FiniteMetric induced_metric(const FiniteProcess& p) {
  return FiniteMetric::validate(p.labels(), pair_distances(p.size(), p.state_count(), p.pmf()), true);
}

std::vector<Rational> tuple_law(const FiniteProcess& p, std::span<const std::size_t> points) {
  const std::size_t n = p.size(), s = p.state_count();
  for (std::size_t t : points)
    if (t >= n) fail(ErrorCode::invalid_input, "index point out of range");
  std::vector<Rational> out(outcome_count(s, points.size()));
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t u = 0; u < p.pmf().size(); ++u) {
    if (p.prob(u) != 0) {
      std::size_t idx = 0, scale = 1;
      for (std::size_t t : points) {
        idx += digits[t] * scale;
        scale *= s;
      }
      out[idx] += p.prob(u);
    }
    for (std::size_t k = 0; k < n && ++digits[k] == s; ++k) digits[k] = 0;
  }
  return out;
}

FiniteProcess marginal(const FiniteProcess& p, SubsetMask set) {
  if (set == 0) fail(ErrorCode::invalid_input, "marginal onto the empty set");
  if (!is_subset(set, full_mask(p.size()))) fail(ErrorCode::invalid_input, "marginal set out of range");
  return select(p, members(set));
}

FiniteProcess select(const FiniteProcess& p, std::span<const std::size_t> points) {
  std::vector<std::string> labels;
  for (std::size_t t : points) {
    if (t >= p.size()) fail(ErrorCode::invalid_input, "index point out of range");
    labels.push_back(p.label(t));
  }
  check_labels(labels, kMaxPoints);
  return FiniteProcess::unchecked(std::move(labels), p.states(), tuple_law(p, points));
}

std::optional<std::string> check_consistency(const FiniteProcess& p) {
  const std::size_t n = p.size(), s = p.state_count();
  Rational total(0);
  for (const auto& x : p.pmf()) total += x;
  if (total != 1) return "total mass " + to_string(total);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  // Summing out the last coordinate of any order agrees with the direct law.
  for (std::size_t drop = 0; drop < n; ++drop) {
    std::vector<std::size_t> rest;
    for (std::size_t t : all)
      if (t != drop) rest.push_back(t);
    std::vector<std::size_t> order = rest;
    order.push_back(drop);
    const auto with = tuple_law(p, order);
    const auto without = tuple_law(p, rest);
    const std::size_t block = without.size();
    for (std::size_t u = 0; u < block; ++u) {
      Rational sum(0);
      for (std::size_t z = 0; z < s; ++z) sum += with[u + z * block];
      if (sum != without[u]) return "marginal consistency fails when summing out " + p.label(drop);
    }
  }
  // Reversing the index order permutes outcome digits and nothing else.
  std::vector<std::size_t> rev(all.rbegin(), all.rend());
  const auto reversed = tuple_law(p, rev);
  for (std::size_t u = 0; u < p.pmf().size(); ++u) {
    auto digits = decode_outcome(u, s, n);
    std::reverse(digits.begin(), digits.end());
    if (reversed[encode_outcome(digits, s)] != p.prob(u)) return "permutation property fails";
  }
  return std::nullopt;
}

FiniteProcess join_independent(const FiniteProcess& p1, const FiniteProcess& p2) {
  if (p1.states() != p2.states()) fail(ErrorCode::invalid_input, "processes have different state sets");
  std::vector<std::string> labels = p1.labels();
  labels.insert(labels.end(), p2.labels().begin(), p2.labels().end());
  check_labels(labels, kMaxPoints);
  const std::size_t m = p1.pmf().size();
  std::vector<Rational> pmf(outcome_count(p1.state_count(), labels.size()));
  for (std::size_t v = 0; v < p2.pmf().size(); ++v) {
    if (p2.prob(v) == 0) continue;
    for (std::size_t u = 0; u < m; ++u) pmf[u + v * m] = p1.prob(u) * p2.prob(v);
  }
  return FiniteProcess::unchecked(std::move(labels), p1.states(), std::move(pmf));
}

FiniteProcess extend_over_base(const FiniteProcess& ambient, const FiniteProcess& patch,
                               std::span<const std::size_t> base) {
  if (patch.states() != ambient.states()) fail(ErrorCode::invalid_input, "processes have different state sets");
  if (patch.size() != base.size() + 1) fail(ErrorCode::invalid_input, "patch must be the base plus one point");
  const std::size_t s = ambient.state_count(), n = ambient.size(), k = base.size();
  const auto base_law = tuple_law(ambient, base);
  std::vector<std::size_t> first(k);
  std::iota(first.begin(), first.end(), std::size_t{0});
  if (tuple_law(patch, first) != base_law)
    fail(ErrorCode::precondition, "patch disagrees with the ambient on the base");

  std::vector<std::string> labels = ambient.labels();
  std::string fresh = patch.label(k);
  while (std::find(labels.begin(), labels.end(), fresh) != labels.end()) fresh += "'";
  labels.push_back(fresh);
  check_labels(labels, kMaxPoints);

  const std::size_t m = ambient.pmf().size(), block = base_law.size();
  std::vector<Rational> pmf(outcome_count(s, n + 1));
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t u = 0; u < m; ++u) {
    if (ambient.prob(u) != 0) {
      std::size_t b = 0, scale = 1;
      for (std::size_t t : base) {
        b += digits[t] * scale;
        scale *= s;
      }
      for (std::size_t z = 0; z < s; ++z) {
        const Rational& joint = patch.prob(b + z * block);
        if (joint != 0) pmf[u + z * m] = ambient.prob(u) * joint / base_law[b];
      }
    }
    for (std::size_t j = 0; j < n && ++digits[j] == s; ++j) digits[j] = 0;
  }
  return FiniteProcess::unchecked(std::move(labels), ambient.states(), std::move(pmf));
}

Rational d_infty(const ProcessTuple& a, const ProcessTuple& b) {
  if (a.length() != b.length()) fail(ErrorCode::invalid_input, "tuples have different lengths");
  if (a.structure().states() != b.structure().states())
    fail(ErrorCode::invalid_input, "processes have different state sets");
  const std::size_t n = a.length(), s = a.structure().state_count();
  if (n > kMaxPoints) fail(ErrorCode::size_limit, "tuple longer than the point limit");
  auto diff = tuple_law(a.structure(), a.entries());
  const auto lb = tuple_law(b.structure(), b.entries());
  for (std::size_t u = 0; u < diff.size(); ++u) diff[u] -= lb[u];
  Rational best(0);
  marginal_gaps(diff, s, n, 0, best);
  return best;
}

Rational dk_lower_bound(const ProcessTuple& a, const ProcessTuple& b) {
  Rational d = d_infty(a, b);
  if (a.length() == 0) return d;
  return d / Rational(static_cast<long>(a.length()));
}

FiniteProcess positional_structure(const ProcessTuple& t, const std::string& prefix) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < t.length(); ++i) labels.push_back(prefix + std::to_string(i + 1));
  return FiniteProcess::unchecked(std::move(labels), t.structure().states(), tuple_law(t.structure(), t.entries()));
}

namespace {

// Walks the marginals of a difference table whose digit 0 is the state of x
// or x' and whose remaining digits are the other points (`kept`, ascending).
// Digit 0 is never summed out. Stops at the first entry above `limit`.
bool lipschitz_walk(const std::vector<Rational>& table, std::size_t states, const std::vector<std::size_t>& kept,
                    std::size_t from, const Rational& limit, ProcessLipschitzWitness& w) {
  for (std::size_t u = 0; u < table.size(); ++u)
    if (abs(table[u]) > limit) {
      w.set = 0;
      for (std::size_t t : kept) w.set |= bit(t);
      w.outcome = u;
      w.gap = abs(table[u]);
      return true;
    }
  for (std::size_t t = from; t < kept.size(); ++t) {
    std::size_t stride = states;
    for (std::size_t i = 0; i < t; ++i) stride *= states;
    std::vector<Rational> out(table.size() / states);
    for (std::size_t u = 0; u < table.size(); ++u) out[u % stride + u / (stride * states) * stride] += table[u];
    auto rest = kept;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(t));
    if (lipschitz_walk(out, states, rest, t, limit, w)) return true;
  }
  return false;
}

}  // namespace

std::optional<ProcessLipschitzWitness> find_lipschitz_violation(const FiniteProcess& p) {
  const std::size_t n = p.size(), s = p.state_count();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      std::vector<std::size_t> others;
      for (std::size_t t = 0; t < n; ++t)
        if (t != x && t != y) others.push_back(t);
      // P(X(x) = s, rest = r) - P(X(x') = s, rest = r), one pass over the table.
      std::vector<Rational> diff(p.pmf().size() / s);
      std::vector<std::size_t> digits(n, 0);
      for (std::size_t u = 0; u < p.pmf().size(); ++u) {
        if (p.prob(u) != 0) {
          std::size_t r = 0;
          for (std::size_t i = others.size(); i-- > 0;) r = r * s + digits[others[i]];
          diff[digits[x] + s * r] += p.prob(u);
          diff[digits[y] + s * r] -= p.prob(u);
        }
        for (std::size_t k = 0; k < n && ++digits[k] == s; ++k) digits[k] = 0;
      }
      ProcessLipschitzWitness w{x, y, 0, 0, Rational(0), p.distance(x, y)};
      if (lipschitz_walk(diff, s, others, 0, w.distance, w)) return w;
    }
  return std::nullopt;
}

}  // namespace fraisse
