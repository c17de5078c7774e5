// SPDX-License-Identifier: Apache-2.0
//
// Interception probability of a guessing eavesdropper, P = 1 / C(M, N_T),
// kept in log10 because C(M, N_T) overflows doubles at realistic sizes.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "spwt/types.hpp"

namespace spwt {

/// log10 C(m, k) from lgamma. Requires 0 <= k <= m.
double log10_binomial_lgamma(std::int64_t m, std::int64_t k);

/// log10 C(m, k) from the exact big-integer binomial. Requires 0 <= k <= m.
double log10_binomial_exact(std::int64_t m, std::int64_t k);

/// Largest M routed through the exact path by log10_intercept_prob.
inline constexpr std::int64_t kExactBinomialLimit = 200;

/// -log10 C(M, N_T). Requires 1 <= N_T <= M.
double log10_intercept_prob(std::int64_t pool_size, std::int64_t num_antennas);

struct InterceptReport {
    PoolKind kind = PoolKind::Pss;
    std::int64_t pool_size = 0;
    std::int64_t num_antennas = 0;
    double log10_probability = 0.0;
};

InterceptReport intercept_report(PoolKind kind, std::int64_t pool_size, std::int64_t num_antennas);

struct LssParams {
    std::int64_t a = 2;
    std::int64_t b = 0;
};

/// Pool size for a kind at N_S: LSS by formula, QSS as floor(sqrt(N_S)),
/// PSS by sieve.
std::int64_t pool_cardinality(PoolKind kind, std::int64_t num_subcarriers, const LssParams& lss);

struct InterceptRow {
    std::int64_t sweep_value = 0;
    PoolKind kind = PoolKind::Pss;
    std::int64_t pool_size = 0;
    std::optional<double> log10_p;  // empty when N_T > M
    bool feasible() const { return log10_p.has_value(); }
};

/// One row per (N_S, kind), kinds varying fastest.
std::vector<InterceptRow> sweep_vs_ns(std::span<const PoolKind> kinds, std::span<const std::int64_t> ns_values,
                                      std::int64_t num_antennas, const LssParams& lss);

/// One row per (N_T, kind), kinds varying fastest.
std::vector<InterceptRow> sweep_vs_nt(std::span<const PoolKind> kinds, std::span<const std::int64_t> nt_values,
                                      std::int64_t num_subcarriers, const LssParams& lss);

}  // namespace spwt
