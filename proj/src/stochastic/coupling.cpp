#include "fraisse/stochastic.hpp"

#include <algorithm>
#include <numeric>

namespace fraisse {
namespace {

std::string outcome_string(std::size_t u, const FiniteProcess& p, std::size_t length) {
  std::string out = "(";
  auto digits = decode_outcome(u, p.state_count(), length);
  for (std::size_t i = 0; i < digits.size(); ++i) out += (i ? "," : "") + p.states()[digits[i]];
  return out + ")";
}

}  // namespace

Rational total_variation(std::span<const Rational> p, std::span<const Rational> q) {
  if (p.size() != q.size()) fail(ErrorCode::invalid_input, "distributions live on different outcome spaces");
  Rational sum(0);
  for (std::size_t u = 0; u < p.size(); ++u) sum += abs(p[u] - q[u]);
  return sum / 2;
}

Rational Coupling::mismatch() const {
  Rational m(0);
  for (const auto& e : entries)
    if (e.left != e.right) m += e.prob;
  return m;
}

std::vector<Rational> Coupling::left_marginal() const {
  std::vector<Rational> out(outcomes);
  for (const auto& e : entries) out[e.left] += e.prob;
  return out;
}

std::vector<Rational> Coupling::right_marginal() const {
  std::vector<Rational> out(outcomes);
  for (const auto& e : entries) out[e.right] += e.prob;
  return out;
}

Coupling optimal_coupling(std::span<const Rational> p, std::span<const Rational> q) {
  if (p.size() != q.size()) fail(ErrorCode::invalid_input, "distributions live on different outcome spaces");
  Coupling c;
  c.outcomes = p.size();
  std::vector<Rational> rp(p.size()), rq(q.size());
  Rational tv(0);
  for (std::size_t u = 0; u < p.size(); ++u) {
    const Rational& m = std::min(p[u], q[u]);
    if (m > 0) c.entries.push_back({u, u, m});
    rp[u] = p[u] - m;
    rq[u] = q[u] - m;
    tv += rp[u];
  }
  // Residual supports are disjoint, so the product lands off the diagonal.
  if (tv > 0)
    for (std::size_t u = 0; u < p.size(); ++u) {
      if (rp[u] == 0) continue;
      for (std::size_t v = 0; v < q.size(); ++v)
        if (rq[v] != 0) c.entries.push_back({u, v, rp[u] * rq[v] / tv});
    }
  return c;
}

ProcessAmalgam amalgamate_positional(const FiniteProcess& p1, const FiniteProcess& p2) {
  if (p1.states() != p2.states()) fail(ErrorCode::invalid_input, "processes have different state sets");
  if (p1.size() != p2.size() || p1.size() == 0)
    fail(ErrorCode::invalid_input, "inputs must share a base and add one point each");
  const std::size_t n = p1.size() - 1, s = p1.state_count();
  std::vector<std::size_t> base(n);
  std::iota(base.begin(), base.end(), std::size_t{0});
  const auto law1 = tuple_law(p1, base), law2 = tuple_law(p2, base);
  for (std::size_t u = 0; u < law1.size(); ++u)
    if (law1[u] != law2[u])
      fail(ErrorCode::precondition, "base marginals differ at " + outcome_string(u, p1, n) + ": " +
                                        to_string(law1[u]) + " vs " + to_string(law2[u]));

  std::vector<std::string> labels = p1.labels();
  std::string fresh = p2.label(n);
  while (std::find(labels.begin(), labels.end(), fresh) != labels.end()) fresh += "'";
  labels.push_back(fresh);
  check_labels(labels, kMaxPoints);

  const std::size_t block = law1.size();
  std::vector<Rational> pmf(outcome_count(s, n + 2));
  Rational weighted_tv(0);
  std::vector<Rational> c1(s), c2(s);
  for (std::size_t b = 0; b < block; ++b) {
    const Rational& mass = law1[b];
    if (mass == 0) continue;
    for (std::size_t x = 0; x < s; ++x) {
      c1[x] = p1.prob(b + x * block) / mass;
      c2[x] = p2.prob(b + x * block) / mass;
    }
    weighted_tv += mass * total_variation(c1, c2);
    for (const auto& e : optimal_coupling(c1, c2).entries)
      pmf[b + e.left * block + e.right * block * s] += mass * e.prob;
  }
  auto joint = FiniteProcess::unchecked(std::move(labels), p1.states(), std::move(pmf));
  Rational distance = joint.distance(n, n + 1);
  Rational half_l1 = total_variation(p1.pmf(), p2.pmf());
  Rational bound = pow_int(Rational(static_cast<long>(s)), static_cast<unsigned>(n + 1)) *
                   d_infty(ProcessTuple::all(p1), ProcessTuple::all(p2)) / 2;
  return ProcessAmalgam{std::move(joint), std::move(distance), std::move(weighted_tv), std::move(half_l1),
                        std::move(bound)};
}

ProcessAmalgam amalgamate_one_point(const FiniteProcess& p1, const FiniteProcess& p2) {
  std::vector<std::size_t> order1, order2;
  std::optional<std::size_t> extra1, extra2;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    const auto& l = p1.label(i);
    auto it = std::find(p2.labels().begin(), p2.labels().end(), l);
    if (it == p2.labels().end()) {
      if (extra1) fail(ErrorCode::invalid_input, "first input has more than one point outside the base");
      extra1 = i;
    } else {
      order1.push_back(i);
      order2.push_back(static_cast<std::size_t>(it - p2.labels().begin()));
    }
  }
  for (std::size_t j = 0; j < p2.size(); ++j)
    if (std::find(order2.begin(), order2.end(), j) == order2.end()) {
      if (extra2) fail(ErrorCode::invalid_input, "second input has more than one point outside the base");
      extra2 = j;
    }
  if (!extra1 || !extra2) fail(ErrorCode::invalid_input, "each input needs exactly one point outside the base");
  if (order1.empty()) fail(ErrorCode::invalid_input, "inputs share no points");
  order1.push_back(*extra1);
  order2.push_back(*extra2);
  return amalgamate_positional(select(p1, order1), select(p2, order2));
}

ProcessJointEmbedding dk_upper_embedding(const ProcessTuple& a, const ProcessTuple& b) {
  if (a.length() != b.length()) fail(ErrorCode::invalid_input, "tuples have different lengths");
  if (a.structure().states() != b.structure().states())
    fail(ErrorCode::invalid_input, "processes have different state sets");
  const std::size_t n = a.length(), s = a.structure().state_count();
  if (n == 0) fail(ErrorCode::invalid_input, "empty tuples");
  if (2 * n > kMaxPoints) fail(ErrorCode::size_limit, "joint embedding exceeds the point limit");
  const std::size_t total = outcome_count(s, 2 * n);
  const auto la = tuple_law(a.structure(), a.entries());
  const auto lb = tuple_law(b.structure(), b.entries());
  const Coupling c = optimal_coupling(la, lb);
  std::vector<Rational> pmf(total);
  for (const auto& e : c.entries) pmf[e.left + e.right * la.size()] += e.prob;

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) labels.push_back("b" + std::to_string(i + 1));
  auto joint = FiniteProcess::unchecked(std::move(labels), a.structure().states(), std::move(pmf));
  Rational bound(0);
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, joint.distance(i, n + i));
  return ProcessJointEmbedding{std::move(joint), std::move(bound), total_variation(la, lb)};
}

}  // namespace fraisse
