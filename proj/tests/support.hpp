#pragma once

// Random instance generators and brute-force reference computations shared by
// the unit tests and the acceptance binary. The references deliberately avoid
// the library's own algorithms: they enumerate definitions directly.

#include "fraisse/diversity.hpp"
#include "fraisse/l1cut.hpp"
#include "fraisse/stochastic.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace support {

using namespace fraisse;
using Rng = std::mt19937_64;

inline Rational rnd(Rng& g, int lo, int hi, int den) {
  return Rational(std::uniform_int_distribution<int>(lo, hi)(g), den);
}

inline std::vector<std::string> names(std::size_t n, const std::string& prefix = "p") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Cheapest connected family of hyperedges whose union contains each set.
// Every diversity arises this way (take its own values as weights), so random
// weights give a broad family.
inline std::vector<Rational> hyperedge_closure(std::size_t n, const std::map<SubsetMask, Rational>& edges) {
  const SubsetMask full = full_mask(n);
  std::vector<std::optional<Rational>> best(std::size_t{full} + 1);
  for (std::size_t i = 0; i < n; ++i) best[bit(i)] = Rational(0);
  // Masks are grown by adding overlapping edges; relax until nothing changes.
  bool changed = true;
  while (changed) {
    changed = false;
    for (SubsetMask m = 1; m <= full; ++m) {
      if (!best[m]) continue;
      for (const auto& [e, w] : edges) {
        if (!(e & m)) continue;
        const SubsetMask u = m | e;
        Rational c = *best[m] + w;
        if (!best[u] || c < *best[u]) {
          best[u] = c;
          changed = true;
        }
      }
    }
  }
  std::vector<Rational> v(std::size_t{full} + 1);
  for (SubsetMask s = full; s > 0; --s) {
    if (cardinality(s) < 2) continue;
    std::optional<Rational> lo;
    for (SubsetMask t = s; t <= full; t = (t + 1) | s)
      if (best[t] && (!lo || *best[t] < *lo)) lo = best[t];
    v[s] = *lo;
  }
  return v;
}

// Alternates two families: cut combinations plus a scaled diameter, and
// hyperedge closures with random weights.
inline FiniteDiversity random_diversity(Rng& g, std::size_t n, const std::string& prefix = "p") {
  const SubsetMask full = full_mask(n);
  std::vector<Rational> v(std::size_t{full} + 1);
  if (std::uniform_int_distribution<int>(0, 1)(g) == 0 || n < 2) {
    std::uniform_int_distribution<int> coin(0, 2);
    for (SubsetMask u = 1; u < full; ++u) {
      if (contains(u, 0) || coin(g) != 0) continue;
      const Rational w = rnd(g, 0, 4, 2);
      for (SubsetMask a = 1; a <= full; ++a)
        if ((a & u) && (a & ~u)) v[a] += w;
    }
    std::vector<Rational> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = rnd(g, 2, 4, 2);
    const Rational mu = rnd(g, 0, 3, 1), c = rnd(g, 1, 3, 3);
    for (SubsetMask a = 1; a <= full; ++a) {
      if (cardinality(a) < 2) continue;
      Rational diam(0);
      for (std::size_t i : members(a))
        for (std::size_t j : members(a)) diam = std::max(diam, d[i * n + j]);
      v[a] += mu * diam + c;
    }
  } else {
    std::map<SubsetMask, Rational> edges;
    for (SubsetMask e = 1; e <= full; ++e) {
      if (cardinality(e) < 2) continue;
      if (cardinality(e) == 2 || std::uniform_int_distribution<int>(0, 2)(g) == 0) edges[e] = rnd(g, 1, 8, 2);
    }
    v = hyperedge_closure(n, edges);
  }
  return FiniteDiversity::validate(names(n, prefix), std::move(v));
}

inline std::vector<Rational> mix(const std::vector<Rational>& a, const std::vector<Rational>& b, const Rational& t) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1 - t) * a[i] + t * b[i];
  return out;
}

// A one-point extension of `base` (base points first): shift by r, or a copy of
// base point j.
inline std::vector<Rational> shift_extension(const FiniteDiversity& base, const Rational& r) {
  const std::size_t k = base.size();
  std::vector<Rational> v(std::size_t{full_mask(k + 1)} + 1);
  for (SubsetMask s = 0; s <= full_mask(k); ++s) {
    v[s] = base.value(s);
    if (s != 0) v[s | bit(k)] = base.value(s) + r;
  }
  return v;
}

// Two diversities that agree on their first n points and each carry one more
// point. Built by restricting a random (n+2)-point diversity and then mixing
// each side with an independent shift extension, so the pair is not tied to
// one joint structure.
struct DiversityPair {
  FiniteDiversity d1, d2;
};

inline DiversityPair random_agreeing_pair(Rng& g, std::size_t n) {
  const FiniteDiversity j = random_diversity(g, n + 2);
  const FiniteDiversity base = restrict(j, full_mask(n));
  auto side = [&](std::size_t z, const std::string& label) {
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(i);
    pts.push_back(z);
    auto v = select(j, pts).values();
    if (std::uniform_int_distribution<int>(0, 1)(g) == 0)
      v = mix(v, shift_extension(base, base.diameter() + rnd(g, 1, 4, 2)), rnd(g, 0, 4, 4));
    auto l = names(n);
    l.push_back(label);
    return FiniteDiversity::validate(l, std::move(v));
  };
  return {side(n, "z1"), side(n + 1, "z2")};
}

// d_infty straight from its definition: every nonempty set of positions, the
// values of the deduplicated point sets.
inline Rational brute_d_infty(const FiniteDiversity& a, const std::vector<std::size_t>& ta, const FiniteDiversity& b,
                              const std::vector<std::size_t>& tb) {
  Rational best(0);
  const std::size_t k = ta.size();
  for (SubsetMask x = 1; x < (SubsetMask{1} << k); ++x) {
    SubsetMask sa = 0, sb = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (x & bit(i)) {
        sa |= bit(ta[i]);
        sb |= bit(tb[i]);
      }
    best = std::max(best, abs(a.value(sa) - b.value(sb)));
  }
  return best;
}

inline std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Process with every outcome weighted by a small random integer.
inline std::vector<Rational> random_law(Rng& g, std::size_t outcomes, int zero_odds = 3) {
  std::vector<Rational> p(outcomes);
  Rational total(0);
  while (total == 0) {
    total = 0;
    for (auto& x : p) {
      x = std::uniform_int_distribution<int>(0, zero_odds)(g) == 0 ? 0 : std::uniform_int_distribution<int>(1, 6)(g);
      total += x;
    }
  }
  for (auto& x : p) x /= total;
  return p;
}

inline std::vector<std::string> state_names(std::size_t s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s; ++i) out.push_back(std::to_string(i));
  return out;
}

inline FiniteProcess random_process(Rng& g, std::size_t n, std::size_t s, const std::string& prefix = "t") {
  return FiniteProcess::validate(names(n, prefix), state_names(s), random_law(g, outcome_count(s, n)), true);
}

// Probability that the listed coordinates take the listed states, summed over
// the whole table.
inline Rational brute_prob(const FiniteProcess& p, const std::vector<std::size_t>& coords,
                           const std::vector<std::size_t>& states) {
  Rational total(0);
  for (std::size_t u = 0; u < p.pmf().size(); ++u) {
    auto d = decode_outcome(u, p.state_count(), p.size());
    bool ok = true;
    for (std::size_t i = 0; i < coords.size() && ok; ++i) ok = d[coords[i]] == states[i];
    if (ok) total += p.prob(u);
  }
  return total;
}

inline Rational brute_d_infty(const FiniteProcess& a, const std::vector<std::size_t>& ta, const FiniteProcess& b,
                              const std::vector<std::size_t>& tb) {
  Rational best(0);
  const std::size_t k = ta.size(), s = a.state_count();
  for (SubsetMask x = 1; x < (SubsetMask{1} << k); ++x) {
    std::vector<std::size_t> ca, cb;
    for (std::size_t i = 0; i < k; ++i)
      if (x & bit(i)) {
        ca.push_back(ta[i]);
        cb.push_back(tb[i]);
      }
    std::vector<std::size_t> digits(ca.size(), 0);
    while (true) {
      best = std::max(best, abs(brute_prob(a, ca, digits) - brute_prob(b, cb, digits)));
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == s) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  return best;
}

// Agreeing process pair: a base law times two independent random kernels for
// the new point.
struct ProcessPair {
  FiniteProcess p1, p2;
};

inline ProcessPair random_agreeing_processes(Rng& g, std::size_t n, std::size_t s) {
  const auto base = random_law(g, outcome_count(s, n));
  auto side = [&](const std::string& label) {
    const std::size_t block = base.size();
    std::vector<Rational> pmf(block * s);
    for (std::size_t b = 0; b < block; ++b) {
      auto k = random_law(g, s, 2);
      for (std::size_t z = 0; z < s; ++z) pmf[b + z * block] = base[b] * k[z];
    }
    auto l = names(n, "a");
    l.push_back(label);
    return FiniteProcess::validate(l, state_names(s), std::move(pmf), true);
  };
  return {side("w"), side("z")};
}

inline Rational brute_cut_value(const CutWeights& w, SubsetMask a) {
  Rational total(0);
  for (SubsetMask u = 1; u < full_mask(w.size()); ++u) {
    if (contains(u, w.anchor())) continue;
    const bool inside = (a & u) != 0, outside = (a & ~u) != 0;
    if (inside && outside) total += w.weight(u);
  }
  return total;
}

inline CutWeights random_cuts(Rng& g, std::size_t n, const std::string& prefix = "p") {
  CutWeights w(names(n, prefix), 0);
  for (SubsetMask u : w.splits())
    if (std::uniform_int_distribution<int>(0, 2)(g) != 0) w.set_weight(u, rnd(g, 0, 6, 2));
  return w;
}

// Two L1 diversities over a common n-point base (anchor = point 0): every base
// split's weight is divided at random between the sides with and without the
// new point, and the lone new-point split gets its own weight.
struct L1Pair {
  CutWeights beta, gamma;
  FiniteDiversity d1, d2;
};

inline L1Pair random_l1_pair(Rng& g, std::size_t n) {
  auto l1 = names(n), l2 = names(n);
  l1.push_back("z1");
  l2.push_back("z2");
  CutWeights beta(l1, 0), gamma(l2, 0);
  const SubsetMask z = bit(n);
  for (SubsetMask v = 1; v < full_mask(n); ++v) {
    if (contains(v, 0)) continue;
    const Rational omega = std::uniform_int_distribution<int>(0, 2)(g) == 0 ? Rational(0) : rnd(g, 1, 6, 2);
    const Rational t1 = rnd(g, 0, 4, 4) * omega, t2 = rnd(g, 0, 4, 4) * omega;
    beta.set_weight(v | z, t1);
    beta.set_weight(v, omega - t1);
    gamma.set_weight(v | z, t2);
    gamma.set_weight(v, omega - t2);
  }
  beta.set_weight(z, rnd(g, 0, 4, 2));
  gamma.set_weight(z, rnd(g, 0, 4, 2));
  return {beta, gamma, cut_diversity(beta), cut_diversity(gamma)};
}

// Shortest-path closure of random positive weights.
inline FiniteMetric random_metric(Rng& g, std::size_t n) {
  std::vector<Rational> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = rnd(g, 1, 12, std::uniform_int_distribution<int>(1, 3)(g));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return FiniteMetric::validate(names(n), d);
}

inline bool brute_lipschitz(const FiniteDiversity& d) {
  const std::size_t n = d.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (SubsetMask a = 0; a <= full_mask(n); ++a)
        if (abs(d.value(a | bit(x)) - d.value(a | bit(y))) > d.distance(x, y)) return false;
  return true;
}

inline bool brute_lipschitz(const FiniteProcess& p) {
  const std::size_t n = p.size(), s = p.state_count();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const Rational dist = p.distance(x, y);
      for (SubsetMask a = 0; a <= full_mask(n); ++a) {
        if (contains(a, x) || contains(a, y)) continue;
        auto rest = members(a);
        std::vector<std::size_t> cx{x}, cy{y};
        cx.insert(cx.end(), rest.begin(), rest.end());
        cy.insert(cy.end(), rest.begin(), rest.end());
        std::vector<std::size_t> digits(cx.size(), 0);
        while (true) {
          if (abs(brute_prob(p, cx, digits) - brute_prob(p, cy, digits)) > dist) return false;
          std::size_t i = 0;
          while (i < digits.size() && ++digits[i] == s) digits[i++] = 0;
          if (i == digits.size()) break;
        }
      }
    }
  return true;
}

}  // namespace support
