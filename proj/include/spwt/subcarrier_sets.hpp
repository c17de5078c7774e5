// SPDX-License-Identifier: Apache-2.0
//
// Linear, quadratic and prime subcarrier index pools, and uniform random
// selection of N_T indices from a pool.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spwt/types.hpp"

namespace spwt {

struct PoolParams {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
};

/// Immutable, strictly increasing set of subcarrier indices in [0, N_S).
class SubcarrierPool {
public:
    SubcarrierPool(PoolKind kind, PoolParams params, std::int64_t num_subcarriers,
                   std::vector<SubcarrierIndex> indices);

    PoolKind kind() const { return kind_; }
    const PoolParams& params() const { return params_; }
    std::int64_t num_subcarriers() const { return num_subcarriers_; }
    const std::vector<SubcarrierIndex>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }

    bool contains(SubcarrierIndex k) const;

private:
    PoolKind kind_;
    PoolParams params_;
    std::int64_t num_subcarriers_;
    std::vector<SubcarrierIndex> indices_;
};

/// { a*l + b : l >= 0 } below N_S. Requires a >= 1 and 0 <= b < N_S.
SubcarrierPool build_lss(std::int64_t num_subcarriers, std::int64_t a, std::int64_t b);

/// { a*s^2 + b*s + c : s >= 0 } below N_S. Requires a >= 1, a + b > 0 (so the
/// sequence is strictly increasing) and 0 <= c < N_S. With (1, 0, 0) the pool
/// holds floor(sqrt(N_S)) squares, starting at 0.
SubcarrierPool build_qss(std::int64_t num_subcarriers, std::int64_t a, std::int64_t b, std::int64_t c);

/// All primes <= N_S - 1. Requires N_S >= 3.
SubcarrierPool build_pss(std::int64_t num_subcarriers);

/// Eratosthenes sieve: every prime <= limit, ascending.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

/// The textbook estimate N_S / ln N_S of the PSS size (reported only).
double approx_prime_count(std::int64_t num_subcarriers);

/// Pool cardinality without materializing QSS/LSS index lists.
std::int64_t lss_cardinality(std::int64_t num_subcarriers, std::int64_t a, std::int64_t b);

/// Uniform N_T-subset without replacement, returned in increasing pool order.
SubcarrierPlan select_random(const SubcarrierPool& pool, int num_antennas, std::uint64_t seed);
SubcarrierPlan select_random(const SubcarrierPool& pool, int num_antennas, std::mt19937_64& rng);

/// The first N_T pool entries in order. On LSS this is the affine mapping
/// k_n = a (n - 1) + b of a conventional frequency diverse array.
SubcarrierPlan select_contiguous(const SubcarrierPool& pool, int num_antennas);

}  // namespace spwt
