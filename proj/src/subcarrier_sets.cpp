// SPDX-License-Identifier: Apache-2.0

#include "spwt/subcarrier_sets.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>
#include <string>

namespace spwt {

SubcarrierPool::SubcarrierPool(PoolKind kind, PoolParams params, std::int64_t num_subcarriers,
                               std::vector<SubcarrierIndex> indices)
    : kind_(kind), params_(params), num_subcarriers_(num_subcarriers), indices_(std::move(indices))
{
    if (indices_.empty()) throw std::invalid_argument("subcarrier pool is empty");
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] < 0 || indices_[i] >= num_subcarriers_)
            throw std::invalid_argument("pool index outside [0, N_S)");
        if (i > 0 && indices_[i] <= indices_[i - 1])
            throw std::invalid_argument("pool indices must be strictly increasing");
    }
}

bool SubcarrierPool::contains(SubcarrierIndex k) const
{
    return std::binary_search(indices_.begin(), indices_.end(), k);
}

std::int64_t lss_cardinality(std::int64_t num_subcarriers, std::int64_t a, std::int64_t b)
{
    if (a < 1) throw std::invalid_argument("LSS step a must be >= 1");
    if (b < 0 || b >= num_subcarriers) throw std::invalid_argument("LSS offset b must lie in [0, N_S)");
    return (num_subcarriers - 1 - b) / a + 1;
}

SubcarrierPool build_lss(std::int64_t num_subcarriers, std::int64_t a, std::int64_t b)
{
    const auto count = lss_cardinality(num_subcarriers, a, b);
    std::vector<SubcarrierIndex> idx;
    idx.reserve(static_cast<std::size_t>(count));
    for (std::int64_t l = 0; l < count; ++l) idx.push_back(a * l + b);
    return SubcarrierPool(PoolKind::Lss, {a, b, 0}, num_subcarriers, std::move(idx));
}

SubcarrierPool build_qss(std::int64_t num_subcarriers, std::int64_t a, std::int64_t b, std::int64_t c)
{
    if (a < 1) throw std::invalid_argument("QSS coefficient a must be >= 1");
    // f(s+1) - f(s) = a(2s+1) + b, positive for all s >= 0 iff a + b > 0.
    if (a + b <= 0) throw std::invalid_argument("QSS parameters produce a non-monotone (duplicate) sequence");
    if (c < 0 || c >= num_subcarriers) throw std::invalid_argument("QSS offset c must lie in [0, N_S)");

    // s runs over 0..floor(sqrt(N_S))-1 so the count matches floor(sqrt(N_S)) for (1,0,0).
    std::int64_t s_end = static_cast<std::int64_t>(std::sqrt(static_cast<double>(num_subcarriers)));
    while (s_end * s_end > num_subcarriers) --s_end;
    while ((s_end + 1) * (s_end + 1) <= num_subcarriers) ++s_end;

    std::vector<SubcarrierIndex> idx;
    for (std::int64_t s = 0; s < s_end; ++s) {
        const std::int64_t v = a * s * s + b * s + c;
        if (v > num_subcarriers - 1) break;
        idx.push_back(v);
    }
    return SubcarrierPool(PoolKind::Qss, {a, b, c}, num_subcarriers, std::move(idx));
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit)
{
    std::vector<std::int64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::int64_t i = 2; i * i <= limit; ++i) {
        if (composite[i]) continue;
        for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    for (std::int64_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

SubcarrierPool build_pss(std::int64_t num_subcarriers)
{
    if (num_subcarriers < 3) throw std::invalid_argument("PSS needs N_S >= 3");
    return SubcarrierPool(PoolKind::Pss, {}, num_subcarriers, primes_up_to(num_subcarriers - 1));
}

double approx_prime_count(std::int64_t num_subcarriers)
{
    const double n = static_cast<double>(num_subcarriers);
    return n / std::log(n);
}

SubcarrierPlan select_random(const SubcarrierPool& pool, int num_antennas, std::mt19937_64& rng)
{
    if (num_antennas < 1) throw std::invalid_argument("need at least one antenna");
    if (static_cast<std::size_t>(num_antennas) > pool.size())
        throw std::invalid_argument("pool of size " + std::to_string(pool.size()) + " cannot supply " +
                                    std::to_string(num_antennas) + " distinct subcarriers");
    SubcarrierPlan plan;
    plan.source = pool.kind();
    plan.indices.reserve(static_cast<std::size_t>(num_antennas));
    // Selection sampling over a forward range keeps the pool's order.
    std::sample(pool.indices().begin(), pool.indices().end(), std::back_inserter(plan.indices), num_antennas,
                rng);
    return plan;
}

SubcarrierPlan select_random(const SubcarrierPool& pool, int num_antennas, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return select_random(pool, num_antennas, rng);
}

SubcarrierPlan select_contiguous(const SubcarrierPool& pool, int num_antennas)
{
    if (num_antennas < 1) throw std::invalid_argument("need at least one antenna");
    if (static_cast<std::size_t>(num_antennas) > pool.size())
        throw std::invalid_argument("pool of size " + std::to_string(pool.size()) + " cannot supply " +
                                    std::to_string(num_antennas) + " distinct subcarriers");
    SubcarrierPlan plan;
    plan.source = pool.kind();
    plan.indices.assign(pool.indices().begin(), pool.indices().begin() + num_antennas);
    return plan;
}

}  // namespace spwt
