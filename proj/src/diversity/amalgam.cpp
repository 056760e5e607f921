#include "fraisse/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <queue>

namespace fraisse {
namespace {

std::string fresh_label(const std::vector<std::string>& taken, std::string candidate) {
  while (std::find(taken.begin(), taken.end(), candidate) != taken.end()) candidate += "'";
  return candidate;
}

FiniteDiversity relabel(const FiniteDiversity& d, std::vector<std::string> labels) {
  return FiniteDiversity::unchecked(std::move(labels), d.values());
}

void require_base_agreement(const FiniteDiversity& d1, const FiniteDiversity& d2, std::size_t m,
                            const char* what) {
  for (SubsetMask a = 0; a <= full_mask(m); ++a)
    if (d1.value(a) != d2.value(a)) {
      std::string set;
      for (std::size_t i : members(a)) set += (set.empty() ? "" : ",") + d1.label(i);
      fail(ErrorCode::precondition, std::string(what) + ": inputs disagree on {" + set + "}: " +
                                        to_string(d1.value(a)) + " vs " + to_string(d2.value(a)));
    }
}

std::size_t check_pair(const DiversityTuple& a, const DiversityTuple& b) {
  if (a.length() != b.length()) fail(ErrorCode::invalid_input, "tuples have different lengths");
  if (a.length() == 0) fail(ErrorCode::invalid_input, "tuples must be nonempty");
  if (2 * a.length() > kMaxPoints) fail(ErrorCode::size_limit, "joint embedding would exceed the point limit");
  return a.length();
}

// `joint` lists a1..an then b1..bn.
DiversityJointEmbedding finish(const FiniteDiversity& joint, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) labels.push_back("b" + std::to_string(i + 1));
  FiniteDiversity out = relabel(joint, std::move(labels));
  Rational bound(0);
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, out.distance(i, n + i));
  return {std::move(out), std::move(bound)};
}

}  // namespace

FiniteDiversity amalgamate_positional(const FiniteDiversity& d1, const FiniteDiversity& d2) {
  if (d1.size() != d2.size()) fail(ErrorCode::invalid_input, "amalgamation inputs must have the same size");
  const std::size_t m = d1.size() - 1;
  if (m + 2 > kMaxPoints) fail(ErrorCode::size_limit, "amalgam would exceed the point limit");
  require_base_agreement(d1, d2, m, "amalgamation");

  const SubsetMask base = full_mask(m);
  const SubsetMask z1 = bit(m), z2 = bit(m + 1);
  const SubsetMask full = full_mask(m + 2);
  std::vector<Rational> values(std::size_t{full} + 1);

  // Exact integer arithmetic on a common denominator when it fits; sums of
  // two entries stay far from overflow under this limit.
  std::vector<Rational> both(d1.values());
  both.insert(both.end(), d2.values().begin(), d2.values().end());
  const auto scaled = scale_to_int64(both, std::int64_t{1} << 60);
  const std::size_t half = d1.values().size();
  std::vector<double> f1, f2;
  double margin = 0;
  if (!scaled) {
    for (const auto& x : d1.values()) f1.push_back(x.convert_to<double>());
    for (const auto& x : d2.values()) f2.push_back(x.convert_to<double>());
    for (double x : f1) margin = std::max(margin, std::abs(x));
    for (double x : f2) margin = std::max(margin, std::abs(x));
    margin *= 1e-9;
  }

  for (SubsetMask s = 0; s <= full; ++s) {
    const SubsetMask a = s & base;
    if (!(s & z1) || !(s & z2)) {
      // At most one new point: copy from the input that owns it.
      values[s] = (s & z2) ? d2.value(a | bit(m)) : d1.value(s);
      continue;
    }
    // delta(A+z1+z2) = max( max_B d1(A+B+z1) - d2(B+z2), max_C d2(A+C+z2) - d1(C+z1) ).
    // B, C range over X\A; including points of A only shrinks the difference.
    const SubsetMask free = base & ~a;
    if (scaled) {
      const std::int64_t* v1 = scaled->values.data();
      const std::int64_t* v2 = v1 + half;
      std::int64_t best = v1[a | bit(m)];
      for_each_subset(free, [&](SubsetMask b) {
        best = std::max(best, v1[a | b | bit(m)] - v2[b | bit(m)]);
        best = std::max(best, v2[a | b | bit(m)] - v1[b | bit(m)]);
      });
      values[s] = Rational(Integer(best), scaled->denominator);
      continue;
    }
    // Otherwise find the max in doubles, then settle it exactly among the
    // terms within rounding distance of it.
    double top = f1[a | bit(m)];
    for_each_subset(free, [&](SubsetMask b) {
      top = std::max({top, f1[a | b | bit(m)] - f2[b | bit(m)], f2[a | b | bit(m)] - f1[b | bit(m)]});
    });
    const double cut = std::isfinite(top) && std::isfinite(margin) ? top - margin : -HUGE_VAL;
    Rational best = d1.value(a | bit(m));
    for_each_subset(free, [&](SubsetMask b) {
      if (f1[a | b | bit(m)] - f2[b | bit(m)] >= cut) {
        Rational t = d1.value(a | b | bit(m)) - d2.value(b | bit(m));
        if (t > best) best = std::move(t);
      }
      if (f2[a | b | bit(m)] - f1[b | bit(m)] >= cut) {
        Rational t = d2.value(a | b | bit(m)) - d1.value(b | bit(m));
        if (t > best) best = std::move(t);
      }
    });
    values[s] = std::move(best);
  }

  std::vector<std::string> labels(d1.labels().begin(), d1.labels().end());
  labels.push_back(fresh_label(labels, d2.label(m)));
  return FiniteDiversity::unchecked(std::move(labels), std::move(values));
}

FiniteDiversity amalgamate_one_point(const FiniteDiversity& d1, const FiniteDiversity& d2) {
  std::vector<std::size_t> common1, common2, extra1, extra2;
  for (std::size_t i = 0; i < d1.size(); ++i) {
    auto it = std::find(d2.labels().begin(), d2.labels().end(), d1.label(i));
    if (it == d2.labels().end()) {
      extra1.push_back(i);
    } else {
      common1.push_back(i);
      common2.push_back(static_cast<std::size_t>(it - d2.labels().begin()));
    }
  }
  for (std::size_t j = 0; j < d2.size(); ++j)
    if (std::find(common2.begin(), common2.end(), j) == common2.end()) extra2.push_back(j);
  if (extra1.size() != 1 || extra2.size() != 1)
    fail(ErrorCode::invalid_input,
         "one-point amalgamation needs inputs that share all but one label each (found " +
             std::to_string(extra1.size()) + " and " + std::to_string(extra2.size()) + " unshared)");
  if (common1.empty()) fail(ErrorCode::invalid_input, "amalgamation inputs share no points; use join");
  common1.push_back(extra1[0]);
  common2.push_back(extra2[0]);
  return amalgamate_positional(select(d1, common1), select(d2, common2));
}

FiniteDiversity extend_over_base(const FiniteDiversity& ambient, const FiniteDiversity& patch,
                                 std::span<const std::size_t> base) {
  if (base.size() + 1 != patch.size())
    fail(ErrorCode::invalid_input, "patch must have exactly one point beyond the base");
  if (base.empty()) fail(ErrorCode::precondition, "extension needs a nonempty base");
  if (ambient.size() + 1 > kMaxPoints) fail(ErrorCode::size_limit, "extension would exceed the point limit");
  std::vector<std::size_t> placed(base.begin(), base.end());
  for (std::size_t p : placed)
    if (p >= ambient.size()) fail(ErrorCode::invalid_input, "base index out of range");
  {
    auto sorted = placed;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(ErrorCode::invalid_input, "base points must be distinct");
  }
  require_base_agreement(select(ambient, placed), patch, base.size(), "extension");

  // cur lists `placed` (ambient indices) followed by the new point.
  FiniteDiversity cur = patch;
  for (std::size_t y = 0; y < ambient.size(); ++y) {
    if (std::find(placed.begin(), placed.end(), y) != placed.end()) continue;
    auto with_y = placed;
    with_y.push_back(y);
    FiniteDiversity am = amalgamate_positional(cur, select(ambient, with_y));
    // am: placed..., z, y  ->  placed..., y, z
    std::vector<std::size_t> order(placed.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    order.push_back(placed.size() + 1);
    order.push_back(placed.size());
    cur = select(am, order);
    placed.push_back(y);
  }

  std::vector<std::size_t> order(ambient.size() + 1);
  for (std::size_t k = 0; k < placed.size(); ++k) order[placed[k]] = k;
  order[ambient.size()] = placed.size();
  FiniteDiversity out = select(cur, order);
  auto labels = ambient.labels();
  labels.push_back(fresh_label(labels, patch.label(patch.size() - 1)));
  return relabel(out, std::move(labels));
}

FiniteDiversity extend_over_base(const FiniteDiversity& ambient, const FiniteDiversity& patch) {
  std::vector<std::size_t> base, order;
  std::size_t extra = patch.size();
  for (std::size_t i = 0; i < patch.size(); ++i) {
    auto it = std::find(ambient.labels().begin(), ambient.labels().end(), patch.label(i));
    if (it == ambient.labels().end()) {
      if (extra != patch.size()) fail(ErrorCode::invalid_input, "patch must have exactly one label not in the base");
      extra = i;
    } else {
      base.push_back(static_cast<std::size_t>(it - ambient.labels().begin()));
      order.push_back(i);
    }
  }
  if (extra == patch.size()) fail(ErrorCode::invalid_input, "patch has no new point");
  order.push_back(extra);
  return extend_over_base(ambient, select(patch, order), base);
}

FiniteDiversity positional_structure(const DiversityTuple& t, const std::string& prefix) {
  FiniteDiversity s = select(t.structure(), t.entries());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < t.length(); ++i) labels.push_back(prefix + std::to_string(i + 1));
  return relabel(s, std::move(labels));
}

DiversityJointEmbedding dk_chain_embedding(const DiversityTuple& a, const DiversityTuple& b) {
  const std::size_t n = check_pair(a, b);
  const FiniteDiversity pa = positional_structure(a, "a");
  const FiniteDiversity pb = positional_structure(b, "b");

  // a1 and b1 share joint index 0.
  const std::size_t first = 0;
  FiniteDiversity joint = select(pa, std::span(&first, 1));
  std::vector<std::size_t> a_at{0}, b_at{0};
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> prefix(k + 1);
    std::iota(prefix.begin(), prefix.end(), std::size_t{0});
    FiniteDiversity with_a = extend_over_base(joint, select(pa, prefix), a_at);
    FiniteDiversity with_b = extend_over_base(joint, select(pb, prefix), b_at);
    const std::size_t size = joint.size();
    joint = amalgamate_positional(with_a, with_b);
    a_at.push_back(size);
    b_at.push_back(size + 1);
  }

  std::vector<std::size_t> order = a_at;
  order.insert(order.end(), b_at.begin(), b_at.end());
  return finish(select(joint, order), n);
}

DiversityJointEmbedding dk_coupled_embedding(const DiversityTuple& a, const DiversityTuple& b) {
  const std::size_t n = check_pair(a, b);
  const FiniteDiversity pa = positional_structure(a, "a");
  const FiniteDiversity pb = positional_structure(b, "b");
  const Rational eps = d_infty(a, b);
  const SubsetMask side = full_mask(n);
  const SubsetMask full = full_mask(2 * n);

  // Hyperedges: every pure set with its own value, plus links {a_i, b_i}
  // of length eps. The joint value of S is the cheapest connected family
  // of hyperedges whose union covers S.
  struct Edge {
    SubsetMask mask;
    Rational weight;
  };
  std::vector<Edge> edges;
  for (SubsetMask p = 1; p <= side; ++p) {
    if (cardinality(p) < 2) continue;
    edges.push_back({p, pa.value(p)});
    edges.push_back({p << n, pb.value(p)});
  }
  for (std::size_t i = 0; i < n; ++i) edges.push_back({bit(i) | bit(n + i), eps});

  std::vector<std::optional<Rational>> reach(std::size_t{full} + 1);
  using Item = std::pair<Rational, SubsetMask>;
  auto later = [](const Item& x, const Item& y) { return x.first > y.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> queue(later);
  auto relax = [&](SubsetMask w, const Rational& cost) {
    auto& slot = reach[w];
    if (!slot || cost < *slot) {
      slot = cost;
      queue.emplace(cost, w);
    }
  };
  for (std::size_t i = 0; i < 2 * n; ++i) relax(bit(i), Rational(0));
  for (const auto& e : edges) relax(e.mask, e.weight);
  std::vector<bool> done(std::size_t{full} + 1, false);
  while (!queue.empty()) {
    auto [cost, w] = queue.top();
    queue.pop();
    if (done[w] || cost != *reach[w]) continue;
    done[w] = true;
    for (const auto& e : edges) {
      if ((e.mask & w) == 0 || is_subset(e.mask, w)) continue;
      relax(w | e.mask, cost + e.weight);
    }
  }

  // Every set is covered by the full union, so the superset minimum is finite.
  std::vector<Rational> values(std::size_t{full} + 1);
  for (SubsetMask s = full + 1; s-- > 0;) {
    Rational best = reach[s] ? *reach[s] : values[full];
    for (std::size_t i = 0; i < 2 * n; ++i) {
      if (!contains(s, i) && values[s | bit(i)] < best) best = values[s | bit(i)];
    }
    values[s] = s == 0 ? Rational(0) : best;
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < 2 * n; ++i) labels.push_back("_" + std::to_string(i));
  return finish(FiniteDiversity::unchecked(std::move(labels), std::move(values)), n);
}

DiversityJointEmbedding dk_upper_embedding(const DiversityTuple& a, const DiversityTuple& b) {
  auto chain = dk_chain_embedding(a, b);
  auto coupled = dk_coupled_embedding(a, b);
  return coupled.bound < chain.bound ? std::move(coupled) : std::move(chain);
}

}  // namespace fraisse
