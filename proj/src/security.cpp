// SPDX-License-Identifier: Apache-2.0

#include "spwt/security.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "spwt/subcarrier_sets.hpp"

namespace spwt {

namespace mp = boost::multiprecision;

namespace {

void check_binomial_args(std::int64_t m, std::int64_t k)
{
    if (m < 0 || k < 0 || k > m) throw std::invalid_argument("binomial requires 0 <= k <= m");
}

std::int64_t isqrt(std::int64_t n)
{
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

double log10_binomial_lgamma(std::int64_t m, std::int64_t k)
{
    check_binomial_args(m, k);
    const double ln = std::lgamma(static_cast<double>(m) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
                      std::lgamma(static_cast<double>(m - k) + 1.0);
    return ln / std::numbers::ln10;
}

double log10_binomial_exact(std::int64_t m, std::int64_t k)
{
    check_binomial_args(m, k);
    k = std::min(k, m - k);
    mp::cpp_int c = 1;
    // Each partial product c * (m - i) / (i + 1) is itself a binomial, so the
    // division is exact.
    for (std::int64_t i = 0; i < k; ++i) c = c * (m - i) / (i + 1);
    const mp::cpp_bin_float_100 as_float(c);
    return static_cast<double>(mp::log10(as_float));
}

double log10_intercept_prob(std::int64_t pool_size, std::int64_t num_antennas)
{
    if (num_antennas < 1) throw std::invalid_argument("N_T must be >= 1");
    if (num_antennas > pool_size) throw std::invalid_argument("N_T exceeds the pool size");
    const double lc = pool_size <= kExactBinomialLimit ? log10_binomial_exact(pool_size, num_antennas)
                                                       : log10_binomial_lgamma(pool_size, num_antennas);
    return lc == 0.0 ? 0.0 : -lc;
}

InterceptReport intercept_report(PoolKind kind, std::int64_t pool_size, std::int64_t num_antennas)
{
    return {kind, pool_size, num_antennas, log10_intercept_prob(pool_size, num_antennas)};
}

std::int64_t pool_cardinality(PoolKind kind, std::int64_t num_subcarriers, const LssParams& lss)
{
    switch (kind) {
    case PoolKind::Lss: return lss_cardinality(num_subcarriers, lss.a, lss.b);
    case PoolKind::Qss: return isqrt(num_subcarriers);
    case PoolKind::Pss:
        return num_subcarriers < 3 ? 0 : static_cast<std::int64_t>(primes_up_to(num_subcarriers - 1).size());
    case PoolKind::Custom: break;
    }
    throw std::invalid_argument("interception sweeps need an lss, qss or pss pool");
}

namespace {

InterceptRow make_row(std::int64_t sweep_value, PoolKind kind, std::int64_t pool_size, std::int64_t num_antennas)
{
    InterceptRow row{sweep_value, kind, pool_size, std::nullopt};
    if (num_antennas >= 1 && num_antennas <= pool_size) row.log10_p = log10_intercept_prob(pool_size, num_antennas);
    return row;
}

// Prime counts for every N_S in the sweep from a single sieve.
std::vector<std::int64_t> prime_counts(std::span<const std::int64_t> ns_values)
{
    std::int64_t max_ns = 0;
    for (auto ns : ns_values) max_ns = std::max(max_ns, ns);
    const auto primes = primes_up_to(max_ns - 1);
    std::vector<std::int64_t> counts;
    counts.reserve(ns_values.size());
    for (auto ns : ns_values)
        counts.push_back(std::lower_bound(primes.begin(), primes.end(), ns) - primes.begin());
    return counts;
}

}  // namespace

std::vector<InterceptRow> sweep_vs_ns(std::span<const PoolKind> kinds, std::span<const std::int64_t> ns_values,
                                      std::int64_t num_antennas, const LssParams& lss)
{
    if (kinds.empty() || ns_values.empty()) throw std::invalid_argument("sweep needs at least one kind and N_S");
    if (num_antennas < 1) throw std::invalid_argument("N_T must be >= 1");
    for (auto ns : ns_values)
        if (ns < 1) throw std::invalid_argument("N_S must be >= 1");
    const auto pss_counts = prime_counts(ns_values);

    std::vector<InterceptRow> rows;
    for (std::size_t i = 0; i < ns_values.size(); ++i) {
        for (auto kind : kinds) {
            std::int64_t m = 0;
            if (kind == PoolKind::Pss) {
                m = pss_counts[i];
            } else if (kind == PoolKind::Lss && lss.b >= ns_values[i]) {
                m = 0;
            } else {
                m = pool_cardinality(kind, ns_values[i], lss);
            }
            rows.push_back(make_row(ns_values[i], kind, m, num_antennas));
        }
    }
    return rows;
}

std::vector<InterceptRow> sweep_vs_nt(std::span<const PoolKind> kinds, std::span<const std::int64_t> nt_values,
                                      std::int64_t num_subcarriers, const LssParams& lss)
{
    if (kinds.empty() || nt_values.empty()) throw std::invalid_argument("sweep needs at least one kind and N_T");
    for (auto nt : nt_values)
        if (nt < 1) throw std::invalid_argument("N_T must be >= 1");
    std::vector<std::int64_t> sizes;
    for (auto kind : kinds) sizes.push_back(pool_cardinality(kind, num_subcarriers, lss));
    std::vector<InterceptRow> rows;
    for (auto nt : nt_values)
        for (std::size_t j = 0; j < kinds.size(); ++j) rows.push_back(make_row(nt, kinds[j], sizes[j], nt));
    return rows;
}

}  // namespace spwt
