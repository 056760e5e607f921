#include "fraisse/l1cut.hpp"

#include <algorithm>
#include <variant>

namespace fraisse {
namespace {

std::string set_string(SubsetMask set, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : members(set)) {
    out += (first ? "" : ",") + (i < labels.size() ? labels[i] : std::to_string(i));
    first = false;
  }
  return out + "}";
}

bool separates(SubsetMask split, SubsetMask set) { return (set & split) != 0 && (set & ~split) != 0; }

// Sets of size >= 2, pairs first, then by size, then by mask.
std::vector<SubsetMask> equation_order(std::size_t n) {
  std::vector<SubsetMask> order;
  for (SubsetMask a = 0; a <= full_mask(n); ++a)
    if (cardinality(a) >= 2) order.push_back(a);
  std::stable_sort(order.begin(), order.end(),
                   [](SubsetMask x, SubsetMask y) { return cardinality(x) < cardinality(y); });
  return order;
}

std::optional<NotL1Witness> first_mismatch(const FiniteDiversity& d, const FiniteDiversity& rebuilt,
                                           const std::vector<SubsetMask>& order, std::size_t from) {
  for (std::size_t e = from; e < order.size(); ++e)
    if (rebuilt.value(order[e]) != d.value(order[e])) {
      NotL1Witness w{NotL1Witness::Kind::mismatch};
      w.set = order[e];
      w.reconstructed = rebuilt.value(order[e]);
      w.actual = d.value(order[e]);
      return w;
    }
  return std::nullopt;
}

std::optional<NotL1Witness> first_negative(const CutWeights& w) {
  for (SubsetMask u : w.splits())
    if (w.weight(u) < 0) {
      NotL1Witness out{NotL1Witness::Kind::negative_weight};
      out.split = u;
      out.weight = w.weight(u);
      return out;
    }
  return std::nullopt;
}

struct Row {
  std::vector<Rational> c;
  Rational rhs;
  std::size_t pivot;
};

// Pairs-first exact elimination. Returns weights, or the first contradicted
// equation as a mismatch witness.
std::variant<CutWeights, NotL1Witness> eliminate(const FiniteDiversity& d, std::size_t anchor,
                                                 const std::vector<SubsetMask>& order) {
  CutWeights result(d.labels(), anchor);
  const auto splits = result.splits();
  const std::size_t m = splits.size();
  std::vector<Row> rows;
  std::size_t e = 0;
  for (; e < order.size() && rows.size() < m; ++e) {
    const SubsetMask a = order[e];
    Row r{std::vector<Rational>(m), d.value(a), 0};
    for (std::size_t k = 0; k < m; ++k)
      if (separates(splits[k], a)) r.c[k] = 1;
    for (const Row& p : rows) {
      if (r.c[p.pivot] == 0) continue;
      const Rational f = r.c[p.pivot];
      for (std::size_t k = 0; k < m; ++k)
        if (p.c[k] != 0) r.c[k] -= f * p.c[k];
      r.rhs -= f * p.rhs;
    }
    auto nz = std::find_if(r.c.begin(), r.c.end(), [](const Rational& x) { return x != 0; });
    if (nz == r.c.end()) {
      if (r.rhs != 0) {
        NotL1Witness w{NotL1Witness::Kind::mismatch};
        w.set = a;
        w.actual = d.value(a);
        w.reconstructed = d.value(a) - r.rhs;
        return w;
      }
      continue;
    }
    r.pivot = static_cast<std::size_t>(nz - r.c.begin());
    const Rational lead = r.c[r.pivot];
    for (auto& x : r.c) x /= lead;
    r.rhs /= lead;
    rows.push_back(std::move(r));
  }
  if (rows.size() < m) fail(ErrorCode::internal, "cut system is rank deficient");

  // Row i has zeros at the pivots of earlier rows, so solve from the back.
  std::vector<Rational> lambda(m);
  for (std::size_t i = rows.size(); i-- > 0;) {
    Rational v = rows[i].rhs;
    for (std::size_t k = 0; k < m; ++k)
      if (k != rows[i].pivot && rows[i].c[k] != 0) v -= rows[i].c[k] * lambda[k];
    lambda[rows[i].pivot] = v;
  }
  for (std::size_t k = 0; k < m; ++k) result.set_weight(splits[k], lambda[k]);
  if (auto w = first_mismatch(d, cut_diversity(result), order, e)) return *w;
  return result;
}

}  // namespace

CutWeights::CutWeights(std::vector<std::string> labels, std::size_t anchor)
    : labels_(std::move(labels)), anchor_(anchor) {
  check_labels(labels_, kMaxPoints);
  if (anchor_ >= labels_.size()) fail(ErrorCode::invalid_input, "anchor is not a point");
  weights_.assign(std::size_t{full_mask(labels_.size())} + 1, Rational(0));
}

SubsetMask CutWeights::key(SubsetMask side) const {
  const SubsetMask full = full_mask(size());
  side &= full;
  if (side == 0 || side == full) fail(ErrorCode::invalid_input, "a split needs two nonempty sides");
  return contains(side, anchor_) ? full & ~side : side;
}

void CutWeights::set_weight(SubsetMask side, Rational w) { weights_[key(side)] = std::move(w); }

std::vector<SubsetMask> CutWeights::splits() const {
  std::vector<SubsetMask> out;
  for (SubsetMask u = 1; u <= full_mask(size()); ++u)
    if (!contains(u, anchor_)) out.push_back(u);
  return out;
}

Rational evaluate_cuts(const CutWeights& w, SubsetMask set) {
  Rational total(0);
  for (SubsetMask u : w.splits())
    if (separates(u, set)) total += w.weight(u);
  return total;
}

FiniteDiversity cut_diversity(const CutWeights& w) {
  // A set is left whole exactly by the splits with a side inside X \ A, so
  // delta(A) = W - sum_{U >= A} w_U - sum_{U <= X\A} w_U.
  const std::size_t n = w.size();
  const SubsetMask full = full_mask(n);
  std::vector<Rational> sub = w.table(), sup = w.table();
  for (std::size_t i = 0; i < n; ++i)
    for (SubsetMask m = 0; m <= full; ++m)
      if (contains(m, i)) {
        sub[m] += sub[m ^ bit(i)];
        sup[m ^ bit(i)] += sup[m];
      }
  const Rational total = sub[full];
  std::vector<Rational> values(std::size_t{full} + 1);
  for (SubsetMask a = 0; a <= full; ++a)
    if (cardinality(a) >= 2) values[a] = total - sup[a] - sub[full & ~a];
  return FiniteDiversity::unchecked(w.labels(), std::move(values));
}

FiniteMetric cut_metric(const CutWeights& w) {
  const std::size_t n = w.size();
  std::vector<Rational> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = evaluate_cuts(w, bit(i) | bit(j));
  return FiniteMetric::validate(w.labels(), std::move(d), true);
}

std::string NotL1Witness::describe(const std::vector<std::string>& labels) const {
  if (kind == Kind::negative_weight)
    return "split " + set_string(split, labels) + " is forced to weight " + to_string(weight);
  return "set " + set_string(set, labels) + " reconstructed as " + to_string(reconstructed) + " != " +
         to_string(actual);
}

CutWeights moebius_weights(const FiniteDiversity& d, std::size_t anchor) {
  const std::size_t n = d.size();
  const SubsetMask full = full_mask(n);
  CutWeights w(d.labels(), anchor);
  std::vector<Rational> f(std::size_t{full} + 1);
  for (SubsetMask s = 0; s <= full; ++s)
    if (!contains(s, anchor)) f[s] = d.value(full) - d.value(full & ~s);
  for (std::size_t i = 0; i < n; ++i)
    if (i != anchor)
      for (SubsetMask m = 0; m <= full; ++m)
        if (contains(m, i) && !contains(m, anchor)) f[m] -= f[m ^ bit(i)];
  for (SubsetMask u : w.splits()) w.set_weight(u, f[u]);
  return w;
}

Decomposition decompose(const FiniteDiversity& d, std::size_t anchor) {
  const std::size_t n = d.size();
  if (anchor >= n) fail(ErrorCode::invalid_input, "anchor is not a point");
  const auto order = equation_order(n);
  Decomposition out;
  if (n <= 8) {
    auto solved = eliminate(d, anchor, order);
    if (auto* w = std::get_if<NotL1Witness>(&solved)) {
      out.witness = *w;
      return out;
    }
    auto weights = std::get<CutWeights>(std::move(solved));
    if (weights != moebius_weights(d, anchor))
      fail(ErrorCode::internal, "elimination and Moebius inversion disagree");
    if (auto w = first_negative(weights)) {
      out.witness = *w;
      return out;
    }
    out.weights = std::move(weights);
    return out;
  }
  auto weights = moebius_weights(d, anchor);
  if (auto w = first_mismatch(d, cut_diversity(weights), order, 0)) {
    out.witness = *w;
    return out;
  }
  if (auto w = first_negative(weights)) {
    out.witness = *w;
    return out;
  }
  out.weights = std::move(weights);
  return out;
}

L1Amalgam amalgamate_l1(const FiniteDiversity& d1, const FiniteDiversity& d2, std::size_t anchor) {
  if (d1.size() != d2.size() || d1.size() < 2)
    fail(ErrorCode::invalid_input, "inputs must share a nonempty base and add one point each");
  const std::size_t n = d1.size() - 1;
  if (d1.size() + 1 > kMaxPoints) fail(ErrorCode::size_limit, "amalgam exceeds the point limit");
  if (anchor >= n) fail(ErrorCode::invalid_input, "anchor must be a base point");
  const SubsetMask base = full_mask(n);
  for (SubsetMask a = 0; a <= base; ++a)
    if (d1.value(a) != d2.value(a))
      fail(ErrorCode::precondition, "inputs disagree on the base at " + set_string(a, d1.labels()) + ": " +
                                        to_string(d1.value(a)) + " vs " + to_string(d2.value(a)));
  const auto dec1 = decompose(d1, anchor), dec2 = decompose(d2, anchor);
  if (!dec1.is_l1()) fail(ErrorCode::precondition, "first input is not L1: " + dec1.witness->describe(d1.labels()));
  if (!dec2.is_l1()) fail(ErrorCode::precondition, "second input is not L1: " + dec2.witness->describe(d2.labels()));
  const CutWeights& beta = *dec1.weights;
  const CutWeights& gamma = *dec2.weights;

  std::vector<std::string> labels = d1.labels();
  std::string fresh = d2.label(n);
  while (std::find(labels.begin(), labels.end(), fresh) != labels.end()) fresh += "'";
  labels.push_back(fresh);
  CutWeights w(labels, anchor);
  const SubsetMask z = bit(n), z1 = bit(n), z2 = bit(n + 1);
  Rational split_sum(0);
  for (SubsetMask u = 0; u <= base; ++u) {
    if (contains(u, anchor)) continue;
    const Rational bz = beta.weight(u | z), gz = gamma.weight(u | z);
    split_sum += abs(bz - gz);
    if (u == 0) {
      // Lone new points: the two splits {z1} and {z2} share their common mass.
      const Rational m = std::min(bz, gz);
      w.set_weight(z1 | z2, m);
      w.set_weight(z1, bz - m);
      w.set_weight(z2, gz - m);
      continue;
    }
    const Rational b = beta.weight(u), g = gamma.weight(u);
    const Rational m = std::min(b, g);
    w.set_weight(u, m);
    w.set_weight(u | z1 | z2, std::min(bz, gz));
    w.set_weight(u | z1, g - m);
    w.set_weight(u | z2, b - m);
  }

  // Inclusion-exclusion weights of the splits keyed by U within the base.
  auto formula = [&](const FiniteDiversity& d, SubsetMask u) {
    Rational f(0);
    for_each_subset(base & ~u, [&](SubsetMask extra) {
      const SubsetMask v = u | extra;
      const Rational term = d.value(v) - d.value(v | z);
      if (cardinality(extra) % 2 == 0) f -= term;
      else f += term;
    });
    return f;
  };
  Rational formula_sum(0), worst(0);
  for (SubsetMask u = 0; u <= base; ++u) {
    worst = std::max(worst, abs(d1.value(u | z) - d2.value(u | z)));
    if (!contains(u, anchor)) formula_sum += abs(formula(d1, u) - formula(d2, u));
  }

  auto joint = cut_diversity(w);
  Rational distance = joint.value(z1 | z2);
  return L1Amalgam{std::move(joint), std::move(w), std::move(distance), std::move(split_sum),
                   std::move(formula_sum), pow2(static_cast<int>(2 * n)) * worst};
}

L1Amalgam amalgamate_l1(const FiniteDiversity& d1, const FiniteDiversity& d2, const std::string& anchor) {
  std::vector<std::size_t> order1, order2;
  std::optional<std::size_t> extra1, extra2;
  for (std::size_t i = 0; i < d1.size(); ++i) {
    auto it = std::find(d2.labels().begin(), d2.labels().end(), d1.label(i));
    if (it == d2.labels().end()) {
      if (extra1) fail(ErrorCode::invalid_input, "first input has more than one point outside the base");
      extra1 = i;
    } else {
      order1.push_back(i);
      order2.push_back(static_cast<std::size_t>(it - d2.labels().begin()));
    }
  }
  for (std::size_t j = 0; j < d2.size(); ++j)
    if (std::find(order2.begin(), order2.end(), j) == order2.end()) {
      if (extra2) fail(ErrorCode::invalid_input, "second input has more than one point outside the base");
      extra2 = j;
    }
  if (!extra1 || !extra2) fail(ErrorCode::invalid_input, "each input needs exactly one point outside the base");
  auto pos = std::find_if(order1.begin(), order1.end(), [&](std::size_t i) { return d1.label(i) == anchor; });
  if (pos == order1.end()) fail(ErrorCode::invalid_input, "anchor '" + anchor + "' is not a shared point");
  const std::size_t anchor_at = static_cast<std::size_t>(pos - order1.begin());
  order1.push_back(*extra1);
  order2.push_back(*extra2);
  return amalgamate_l1(select(d1, order1), select(d2, order2), anchor_at);
}

Rational pentagonal_value(const FiniteMetric& m, const std::array<std::size_t, 3>& s3,
                          const std::array<std::size_t, 2>& t2) {
  std::vector<std::size_t> all{s3[0], s3[1], s3[2], t2[0], t2[1]};
  for (std::size_t p : all)
    if (p >= m.size()) fail(ErrorCode::invalid_input, "pentagonal point out of range");
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    fail(ErrorCode::invalid_input, "pentagonal selection needs five distinct points");
  Rational v = m.at(s3[0], s3[1]) + m.at(s3[0], s3[2]) + m.at(s3[1], s3[2]) + m.at(t2[0], t2[1]);
  for (std::size_t x : s3)
    for (std::size_t y : t2) v -= m.at(x, y);
  return v;
}

std::optional<PentagonalWitness> pentagonal_check(const FiniteMetric& m, const std::array<std::size_t, 3>& s3,
                                                  const std::array<std::size_t, 2>& t2) {
  Rational v = pentagonal_value(m, s3, t2);
  if (v > 0) return PentagonalWitness{s3, t2, std::move(v)};
  return std::nullopt;
}

std::optional<PentagonalWitness> find_pentagonal_violation(const FiniteMetric& m) {
  const std::size_t n = m.size();
  std::optional<PentagonalWitness> best;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = p + 1; q < n; ++q) {
            if (p == i || p == j || p == k || q == i || q == j || q == k) continue;
            auto w = pentagonal_check(m, {i, j, k}, {p, q});
            if (w && (!best || w->value > best->value)) best = std::move(w);
          }
  return best;
}

}  // namespace fraisse
