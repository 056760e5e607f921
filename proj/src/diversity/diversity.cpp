#include "fraisse/diversity.hpp"

#include <algorithm>
#include <cmath>

namespace fraisse {
namespace {

std::string set_string(SubsetMask set, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : members(set)) {
    if (!first) out += ",";
    out += i < labels.size() ? labels[i] : std::to_string(i);
    first = false;
  }
  return out + "}";
}

}  // namespace

std::string DiversityViolation::describe(const std::vector<std::string>& labels) const {
  auto S = [&](SubsetMask m) { return set_string(m, labels); };
  auto P = [&](std::size_t i) { return i < labels.size() ? labels[i] : std::to_string(i); };
  switch (kind) {
    case Kind::negative: return "negative value on " + S(set) + ": " + to_string(lhs);
    case Kind::zero_value: return "value 0 on " + S(set) + " (diversities vanish only on sets of size <= 1)";
    case Kind::monotonicity:
      return "monotonicity fails for A=" + S(set) + ", x=" + P(point) + ": " + to_string(lhs) + " > " +
             to_string(rhs);
    case Kind::triangle:
      return "triangle inequality fails for A=" + S(set) + ", b=" + P(point) + ", C=" + S(other) + ": " +
             to_string(lhs) + " > " + to_string(rhs);
  }
  return "diversity violation";
}

namespace {

struct Bridge {
  SubsetMask a, c;
  std::size_t b;
};

// Disjoint nonempty A, C suffice: overlap only enlarges the right-hand side.
// Each inequality is first decided in double precision with a margin far
// above the rounding error; only near-ties fall back to exact comparison.
std::optional<Bridge> first_bridge_failure(std::size_t n, std::span<const Rational> v) {
  const SubsetMask full = full_mask(n);
  std::vector<double> f(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) f[i] = v[i].convert_to<double>();
  // A ascending, then b, then C ascending.
  for (SubsetMask a = 1; a <= full; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (contains(a, b)) continue;
      const double left = f[a | bit(b)];
      const SubsetMask others = full & ~a & ~bit(b);
      for (SubsetMask c = others & (0u - others); c != 0; c = (c - others) & others) {
        const SubsetMask whole = a | c | bit(b), right = c | bit(b);
        const double slack = left + f[right] - f[whole];
        const double margin = 1e-9 * (std::abs(left) + std::abs(f[right]) + std::abs(f[whole]));
        if (slack > margin) continue;
        if (v[whole] > v[a | bit(b)] + v[right]) return Bridge{a, c, b};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<DiversityViolation> FiniteDiversity::find_violation(std::size_t n, std::span<const Rational> v,
                                                                  bool allow_semi) {
  using K = DiversityViolation::Kind;
  if (n > kMaxPoints) fail(ErrorCode::size_limit, "diversity exceeds " + std::to_string(kMaxPoints) + " points");
  const SubsetMask full = full_mask(n);
  if (v.size() != std::size_t{full} + 1) fail(ErrorCode::invalid_input, "value table must have 2^n entries");

  for (SubsetMask a = 0; a <= full; ++a) {
    if (cardinality(a) <= 1) {
      if (v[a] != 0) fail(ErrorCode::invalid_input, "sets of size <= 1 must have value 0");
      continue;
    }
    if (v[a] < 0) return DiversityViolation{K::negative, a, 0, 0, v[a], Rational(0)};
    if (!allow_semi && v[a] == 0) return DiversityViolation{K::zero_value, a, 0, 0, v[a], Rational(0)};
  }
  for (SubsetMask a = 0; a <= full; ++a)
    for (std::size_t x = 0; x < n; ++x)
      if (!contains(a, x) && v[a] > v[a | bit(x)])
        return DiversityViolation{K::monotonicity, a, 0, x, v[a], v[a | bit(x)]};

  if (auto bad = first_bridge_failure(n, v)) {
    const auto [a, c, b] = *bad;
    return DiversityViolation{K::triangle, a, c, b, v[a | c | bit(b)], Rational(v[a | bit(b)] + v[c | bit(b)])};
  }
  return std::nullopt;
}

FiniteDiversity FiniteDiversity::validate(std::vector<std::string> labels, std::vector<Rational> values,
                                          bool allow_semi) {
  check_labels(labels, kMaxPoints);
  if (auto v = find_violation(labels.size(), values, allow_semi))
    throw DiversityError(*v, "not a " + std::string(allow_semi ? "semi" : "") + "diversity: " + v->describe(labels));
  return FiniteDiversity(std::move(labels), std::move(values));
}

FiniteDiversity FiniteDiversity::unchecked(std::vector<std::string> labels, std::vector<Rational> values) {
  check_labels(labels, kMaxPoints);
  if (values.size() != std::size_t{full_mask(labels.size())} + 1)
    fail(ErrorCode::internal, "value table must have 2^n entries");
  return FiniteDiversity(std::move(labels), std::move(values));
}

std::size_t FiniteDiversity::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  fail(ErrorCode::invalid_input, "unknown point label \"" + label + "\"");
}

bool FiniteDiversity::is_semi() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (distance(i, j) == 0) return true;
  return false;
}

FiniteMetric induced_metric(const FiniteDiversity& d) {
  const std::size_t n = d.size();
  std::vector<Rational> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) m[i * n + j] = d.distance(i, j);
  return FiniteMetric::validate(d.labels(), std::move(m), /*allow_semi=*/true);
}

FiniteDiversity select(const FiniteDiversity& d, std::span<const std::size_t> points) {
  if (points.empty()) fail(ErrorCode::precondition, "cannot select an empty set of points");
  std::vector<std::size_t> idx(points.begin(), points.end());
  std::vector<std::string> labels;
  for (std::size_t p : idx) {
    if (p >= d.size()) fail(ErrorCode::invalid_input, "point index out of range");
    std::string l = d.label(p);
    while (std::find(labels.begin(), labels.end(), l) != labels.end()) l += "'";
    labels.push_back(std::move(l));
  }
  const SubsetMask full = full_mask(idx.size());
  std::vector<Rational> values(std::size_t{full} + 1);
  for (SubsetMask m = 0; m <= full; ++m) values[m] = d.value(image(m, idx));
  return FiniteDiversity::unchecked(std::move(labels), std::move(values));
}

FiniteDiversity restrict(const FiniteDiversity& d, SubsetMask set) {
  if (set == 0) fail(ErrorCode::precondition, "cannot restrict to the empty set");
  if (!is_subset(set, full_mask(d.size()))) fail(ErrorCode::invalid_input, "restriction set has unknown points");
  auto pts = members(set);
  return select(d, pts);
}

FiniteDiversity join(const FiniteDiversity& d1, const FiniteDiversity& d2) {
  std::vector<std::string> labels = d1.labels();
  for (const auto& l : d2.labels()) {
    if (std::find(labels.begin(), labels.end(), l) != labels.end())
      fail(ErrorCode::invalid_input, "join needs disjoint label sets; \"" + l + "\" appears in both");
    labels.push_back(l);
  }
  if (labels.size() > kMaxPoints) fail(ErrorCode::size_limit, "join exceeds the point limit");
  const Rational k = std::max(d1.diameter(), d2.diameter());
  const std::size_t n1 = d1.size();
  const SubsetMask low = full_mask(n1);
  const SubsetMask full = full_mask(labels.size());
  std::vector<Rational> values(std::size_t{full} + 1);
  for (SubsetMask m = 0; m <= full; ++m) {
    SubsetMask a = m & low, b = m >> n1;
    values[m] = (a != 0 && b != 0) ? k : (b == 0 ? d1.value(a) : d2.value(b));
  }
  return FiniteDiversity::unchecked(std::move(labels), std::move(values));
}

std::vector<std::size_t> quotient_representatives(const FiniteDiversity& d) {
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < d.size(); ++i) {
    bool merged = std::any_of(reps.begin(), reps.end(), [&](std::size_t r) { return d.distance(r, i) == 0; });
    if (!merged) reps.push_back(i);
  }
  return reps;
}

FiniteDiversity quotient(const FiniteDiversity& d) {
  auto reps = quotient_representatives(d);
  if (reps.size() == d.size()) return d;
  return select(d, reps);
}

Rational d_infty(const DiversityTuple& a, const DiversityTuple& b) {
  if (a.length() != b.length()) fail(ErrorCode::invalid_input, "tuples have different lengths");
  if (a.length() > kMaxPoints) fail(ErrorCode::size_limit, "tuple longer than the point limit");
  Rational best(0);
  const SubsetMask full = full_mask(a.length());
  for (SubsetMask x = 1; x <= full && x != 0; ++x) {
    Rational diff = abs(a.structure().value(image(x, a.entries())) - b.structure().value(image(x, b.entries())));
    if (diff > best) best = diff;
  }
  return best;
}

Rational dk_lower_bound(const DiversityTuple& a, const DiversityTuple& b) {
  Rational d = d_infty(a, b);
  if (a.length() == 0) return d;
  return d / Rational(static_cast<long>(a.length()));
}

std::optional<LipschitzWitness> find_lipschitz_violation(const FiniteDiversity& d) {
  const std::size_t n = d.size();
  const SubsetMask full = full_mask(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const Rational& dist = d.distance(x, y);
      for (SubsetMask a = 0; a <= full; ++a) {
        Rational gap = abs(d.value(a | bit(x)) - d.value(a | bit(y)));
        if (gap > dist) return LipschitzWitness{a, x, y, gap, dist};
      }
    }
  return std::nullopt;
}

}  // namespace fraisse
