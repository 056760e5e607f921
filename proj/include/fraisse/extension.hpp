#pragma once

#include "fraisse/diversity.hpp"
#include "fraisse/rational.hpp"
#include "fraisse/stochastic.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fraisse {

/// What an approximate-extension oracle hands back: the (possibly grown)
/// ambient structure and the index of the realized point. Points already in
/// the ambient keep their indices and values.
template <class Structure>
struct OracleAnswer {
  Structure ambient;
  std::size_t point;
};

/// Called with the ambient, the ambient indices of the base (repeats allowed),
/// a patch listing the base positions first and the wanted point last, and a
/// tolerance.
template <class Structure>
using ApproxOracle = std::function<OracleAnswer<Structure>(const Structure& ambient, std::span<const std::size_t> base,
                                                           const Structure& patch, const Rational& tolerance)>;

/// bAP constant as a function of the length of the amalgamation base.
using BapConstant = std::function<Rational(std::size_t base_length)>;

BapConstant diversity_bap_constant();               // 1
BapConstant process_bap_constant(std::size_t states);  // |S|^(k+1) / 2
BapConstant l1_bap_constant();                      // 2^(2k)

/// Returns an existing point matching the patch exactly when there is one,
/// otherwise attaches the patch itself.
ApproxOracle<FiniteDiversity> diversity_exact_oracle();
ApproxOracle<FiniteProcess> process_exact_oracle();

/// Attaches a convex mixture of the patch with a random valid extension of the
/// same base, scaled so the realized d_infty equals the tolerance (or less when
/// no alternative is that far). Deterministic for a given seed and call order.
ApproxOracle<FiniteDiversity> diversity_noise_oracle(std::uint64_t seed);
ApproxOracle<FiniteProcess> process_noise_oracle(std::uint64_t seed);

struct ChainStep {
  std::size_t p = 0;
  std::size_t point = 0;        // ambient index of w_p
  Rational tolerance;           // requested from the oracle
  Rational oracle_d_inf;        // recomputed against the oracle's target
  Rational d_inf;               // d_infty((a, z), (a, w_p)), at most 2^-p
  Rational d_z;                 // d(w_p, z) in M_p, at most 2^-p
  std::optional<Rational> d_succ;  // d(w_{p-1}, w_p), at most 3 * 2^-p
  bool ok = true;
};

template <class Structure>
struct ChainRun {
  std::vector<ChainStep> steps;
  Structure ambient;
  /// M_p for the last step: positions are the base, w_0..w_p, then z.
  std::optional<Structure> amalgam;
  bool cauchy_ok = true;  // d(w_p, w_q) <= 3 * 2^-p for all p < q
  std::string failure;    // first failed check, empty when all hold

  bool ok() const { return failure.empty(); }
};

/// Replays the exact-extension induction for the target patch (base first,
/// new point last) over the base points of `ambient`. Stops at the first
/// failed bound and records it.
ChainRun<FiniteDiversity> extension_chain(const FiniteDiversity& ambient, std::span<const std::size_t> base,
                                          const FiniteDiversity& patch, const ApproxOracle<FiniteDiversity>& oracle,
                                          const BapConstant& c, std::size_t steps);
ChainRun<FiniteProcess> extension_chain(const FiniteProcess& ambient, std::span<const std::size_t> base,
                                        const FiniteProcess& patch, const ApproxOracle<FiniteProcess>& oracle,
                                        const BapConstant& c, std::size_t steps);

struct RichEntry {
  std::size_t template_index;
  std::vector<std::size_t> base;
  Rational best_d_inf;                   // over every point of the final structure
  std::optional<std::size_t> best_point;
  bool satisfied;                        // best_d_inf <= epsilon
};

template <class Structure>
struct RichResult {
  Structure structure;
  std::vector<RichEntry> report;  // one entry per sampled (template, base), in first-sampled order
  bool size_capped = false;
  std::size_t added = 0;
};

/// Each round draws a catalog template (base positions first, new point last)
/// and a random tuple of distinct points agreeing with its base. When no point
/// realizes it within epsilon, the template is attached there by
/// extend_over_base. Growth stops at the point cap.
RichResult<FiniteDiversity> build_rich_structure(const FiniteDiversity& start,
                                                 const std::vector<FiniteDiversity>& catalog, std::size_t rounds,
                                                 const Rational& epsilon, std::uint64_t seed);
RichResult<FiniteProcess> build_rich_structure(const FiniteProcess& start, const std::vector<FiniteProcess>& catalog,
                                               std::size_t rounds, const Rational& epsilon, std::uint64_t seed);

}  // namespace fraisse
