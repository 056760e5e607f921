#include "fraisse/extension.hpp"

#include "traits.hpp"

#include <algorithm>
#include <memory>
#include <random>

namespace fraisse {
namespace {

using detail::iota_list;
using detail::Kind;

template <class S>
std::optional<std::size_t> find_exact(const S& ambient, const std::vector<std::size_t>& base, const S& patch) {
  for (std::size_t y = 0; y < ambient.size(); ++y) {
    auto at = base;
    at.push_back(y);
    if (Kind<S>::same(Kind<S>::positional(ambient, at), Kind<S>::positional(patch, iota_list(patch.size()))))
      return y;
  }
  return std::nullopt;
}

template <class S>
OracleAnswer<S> attach(const S& ambient, const std::vector<std::size_t>& base, const S& patch) {
  S grown = Kind<S>::extend(ambient, patch, base);
  const std::size_t point = grown.size() - 1;
  return {std::move(grown), point};
}

template <class S>
ApproxOracle<S> exact_oracle() {
  return [](const S& ambient, std::span<const std::size_t> base, const S& patch, const Rational&) {
    auto r = detail::reduce(patch, base);
    if (auto y = find_exact(ambient, r.base, r.patch)) return OracleAnswer<S>{ambient, *y};
    return attach(ambient, r.base, r.patch);
  };
}

Rational mix_weight(const Rational& tolerance, const Rational& spread) {
  if (spread == 0) return Rational(0);
  return std::min(Rational(1), tolerance / spread);
}

// Shift: the new point sits at r beyond every base set. Copy: it duplicates a
// random base point. Both are valid extensions of the same base.
FiniteDiversity alternative(const FiniteDiversity& p, std::mt19937_64& rng) {
  const std::size_t k = p.size() - 1;
  const SubsetMask base = full_mask(k), y = bit(k);
  std::vector<Rational> v = p.values();
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
    const Rational r = p.value(base) + 1 + Rational(std::uniform_int_distribution<int>(0, 7)(rng), 4);
    for (SubsetMask s = 1; s <= base; ++s) v[s | y] = p.value(s) + r;
  } else {
    const std::size_t j = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
    for (SubsetMask s = 0; s <= base; ++s) v[s | y] = p.value(s | bit(j));
  }
  return FiniteDiversity::unchecked(p.labels(), std::move(v));
}

// Independent: the new coordinate is drawn from a random law. Copy: it repeats
// a random base coordinate.
FiniteProcess alternative(const FiniteProcess& p, std::mt19937_64& rng) {
  const std::size_t k = p.size() - 1, s = p.state_count();
  const auto law = tuple_law(p, iota_list(k));
  const std::size_t block = law.size();
  std::vector<Rational> pmf(p.pmf().size());
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
    std::vector<Rational> q(s);
    Rational total(0);
    for (auto& x : q) {
      x = std::uniform_int_distribution<int>(0, 3)(rng);
      total += x;
    }
    if (total == 0) {
      q[0] = 1;
      total = 1;
    }
    for (std::size_t b = 0; b < block; ++b)
      for (std::size_t z = 0; z < s; ++z) pmf[b + z * block] = law[b] * q[z] / total;
  } else {
    const std::size_t j = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
    for (std::size_t b = 0; b < block; ++b) pmf[b + decode_outcome(b, s, k)[j] * block] = law[b];
  }
  return FiniteProcess::unchecked(p.labels(), p.states(), std::move(pmf));
}

// Used when the random alternative is too close to the patch. A shift past the
// patch diameter is at d_infty >= 1; a constant coordinate on the least likely
// state is at d_infty >= 1 - 1/|S|.
FiniteDiversity far_alternative(const FiniteDiversity& p) {
  const std::size_t k = p.size() - 1;
  const SubsetMask base = full_mask(k), y = bit(k);
  std::vector<Rational> v = p.values();
  const Rational r = p.diameter() + 1;
  for (SubsetMask s = 1; s <= base; ++s) v[s | y] = p.value(s) + r;
  return FiniteDiversity::unchecked(p.labels(), std::move(v));
}

FiniteProcess far_alternative(const FiniteProcess& p) {
  const std::size_t k = p.size() - 1;
  const auto law = tuple_law(p, iota_list(k));
  const std::vector<std::size_t> last{k};
  const auto z = tuple_law(p, last);
  const std::size_t rare = static_cast<std::size_t>(std::min_element(z.begin(), z.end()) - z.begin());
  std::vector<Rational> pmf(p.pmf().size());
  for (std::size_t b = 0; b < law.size(); ++b) pmf[b + rare * law.size()] = law[b];
  return FiniteProcess::unchecked(p.labels(), p.states(), std::move(pmf));
}

std::vector<Rational> mix(const std::vector<Rational>& p, const std::vector<Rational>& q, const Rational& lambda) {
  std::vector<Rational> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = (1 - lambda) * p[i] + lambda * q[i];
  return out;
}

// Convex combinations of extensions of one base are extensions of it.
FiniteDiversity mixed(const FiniteDiversity& p, const FiniteDiversity& q, const Rational& lambda) {
  return FiniteDiversity::unchecked(p.labels(), mix(p.values(), q.values(), lambda));
}

FiniteProcess mixed(const FiniteProcess& p, const FiniteProcess& q, const Rational& lambda) {
  return FiniteProcess::unchecked(p.labels(), p.states(), mix(p.pmf(), q.pmf(), lambda));
}

template <class S>
ApproxOracle<S> noise_oracle(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](const S& ambient, std::span<const std::size_t> base, const S& patch, const Rational& tolerance) {
    if (base.empty()) fail(ErrorCode::invalid_input, "noise oracle needs a nonempty base");
    auto r = detail::reduce(patch, base);
    S alt = alternative(r.patch, *rng);
    Rational spread = Kind<S>::d_inf(r.patch, alt);
    if (spread < tolerance) {
      alt = far_alternative(r.patch);
      spread = Kind<S>::d_inf(r.patch, alt);
    }
    const Rational lambda = mix_weight(tolerance, spread);
    return attach(ambient, r.base, mixed(r.patch, alt, lambda));
  };
}

template <class S>
ChainRun<S> run_chain(const S& ambient, std::span<const std::size_t> base_span, const S& patch,
                      const ApproxOracle<S>& oracle, const BapConstant& c, std::size_t steps) {
  using K = Kind<S>;
  const std::vector<std::size_t> base(base_span.begin(), base_span.end());
  const std::size_t n = base.size();
  if (n == 0) fail(ErrorCode::invalid_input, "extension chain needs a nonempty base");
  if (patch.size() != n + 1) fail(ErrorCode::invalid_input, "patch must list the base and then one new point");
  for (std::size_t b : base)
    if (b >= ambient.size()) fail(ErrorCode::invalid_input, "base point outside the ambient");
  if (!K::same(K::positional(ambient, base), K::positional(patch, iota_list(n))))
    fail(ErrorCode::precondition, "patch disagrees with the ambient on the base");

  ChainRun<S> run{{}, ambient, std::nullopt, true, {}};
  std::vector<std::size_t> current = base;  // ambient indices of (a, w_0, ..., w_{p-1})
  std::vector<std::size_t> ws;
  for (std::size_t p = 0; p < steps; ++p) {
    const std::size_t k = current.size();
    if (k + 2 > kMaxPoints) {
      run.failure = "step " + std::to_string(p) + " would exceed the point limit";
      break;
    }
    const Rational scale = pow2(-static_cast<int>(p));
    const Rational tolerance = std::min(1 / c(k), Rational(1)) * scale;
    const S& target = run.amalgam ? *run.amalgam : patch;

    const std::size_t before = run.ambient.size();
    OracleAnswer<S> answer = oracle(run.ambient, current, target, tolerance);
    if (answer.point >= answer.ambient.size() ||
        !K::same(K::positional(answer.ambient, iota_list(before)), K::positional(run.ambient, iota_list(before))))
      fail(ErrorCode::internal, "oracle moved earlier points");
    run.ambient = std::move(answer.ambient);

    ChainStep step;
    step.p = p;
    step.point = answer.point;
    step.tolerance = tolerance;
    auto extended = current;
    extended.push_back(answer.point);
    const S left = K::positional(run.ambient, extended);
    step.oracle_d_inf = K::d_inf(left, target);
    auto with_w = base;
    with_w.push_back(answer.point);
    step.d_inf = K::d_inf(K::positional(run.ambient, with_w), patch);

    S joint = K::amalgamate(left, target);
    step.d_z = K::distance(joint, k, k + 1);
    auto with_z = iota_list(n);
    with_z.push_back(k + 1);
    const bool extends = K::same(K::positional(joint, iota_list(k + 1)), left) &&
                         K::same(K::positional(joint, with_z), K::positional(patch, iota_list(n + 1)));
    if (!ws.empty()) step.d_succ = K::distance(run.ambient, ws.back(), answer.point);

    std::string problem;
    if (step.oracle_d_inf > tolerance) problem = "oracle missed its tolerance";
    else if (step.d_inf > scale) problem = "condition I fails";
    else if (!extends) problem = "amalgam does not extend both inputs";
    else if (step.d_z > scale) problem = "condition II fails";
    else if (step.d_succ && *step.d_succ > 3 * scale) problem = "successor bound fails";
    step.ok = problem.empty();
    run.steps.push_back(step);
    run.amalgam = std::move(joint);
    ws.push_back(answer.point);
    current.push_back(answer.point);
    if (!step.ok) {
      run.failure = "step " + std::to_string(p) + ": " + problem;
      break;
    }
  }
  for (std::size_t p = 0; p < ws.size(); ++p)
    for (std::size_t q = p + 1; q < ws.size(); ++q)
      if (K::distance(run.ambient, ws[p], ws[q]) > 3 * pow2(-static_cast<int>(p))) run.cauchy_ok = false;
  if (run.failure.empty() && !run.cauchy_ok) run.failure = "Cauchy bound fails";
  return run;
}

}  // namespace

BapConstant diversity_bap_constant() {
  return [](std::size_t) { return Rational(1); };
}

BapConstant process_bap_constant(std::size_t states) {
  return [states](std::size_t k) {
    return pow_int(Rational(static_cast<long>(states)), static_cast<unsigned>(k + 1)) / 2;
  };
}

BapConstant l1_bap_constant() {
  return [](std::size_t k) { return pow2(static_cast<int>(2 * k)); };
}

ApproxOracle<FiniteDiversity> diversity_exact_oracle() { return exact_oracle<FiniteDiversity>(); }
ApproxOracle<FiniteProcess> process_exact_oracle() { return exact_oracle<FiniteProcess>(); }
ApproxOracle<FiniteDiversity> diversity_noise_oracle(std::uint64_t seed) { return noise_oracle<FiniteDiversity>(seed); }
ApproxOracle<FiniteProcess> process_noise_oracle(std::uint64_t seed) { return noise_oracle<FiniteProcess>(seed); }

ChainRun<FiniteDiversity> extension_chain(const FiniteDiversity& ambient, std::span<const std::size_t> base,
                                          const FiniteDiversity& patch, const ApproxOracle<FiniteDiversity>& oracle,
                                          const BapConstant& c, std::size_t steps) {
  return run_chain(ambient, base, patch, oracle, c, steps);
}

ChainRun<FiniteProcess> extension_chain(const FiniteProcess& ambient, std::span<const std::size_t> base,
                                        const FiniteProcess& patch, const ApproxOracle<FiniteProcess>& oracle,
                                        const BapConstant& c, std::size_t steps) {
  return run_chain(ambient, base, patch, oracle, c, steps);
}

}  // namespace fraisse
