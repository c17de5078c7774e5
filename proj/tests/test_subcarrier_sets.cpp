// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "spwt/subcarrier_sets.hpp"

using namespace spwt;

namespace {

bool trial_division_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("linear set")
{
    const auto p = build_lss(16, 3, 1);
    CHECK(p.indices() == std::vector<SubcarrierIndex>{1, 4, 7, 10, 13});
    CHECK(p.kind() == PoolKind::Lss);
    CHECK(build_lss(16, 1, 0).size() == 16);
    CHECK(build_lss(16384, 2, 0).size() == 8192);
    CHECK(lss_cardinality(1000, 4, 3) == build_lss(1000, 4, 3).size());
    CHECK_THROWS_AS(build_lss(16, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_lss(16, 2, 16), std::invalid_argument);
}

TEST_CASE("quadratic set")
{
    CHECK(build_qss(16, 1, 0, 0).indices() == std::vector<SubcarrierIndex>{0, 1, 4, 9});
    CHECK(build_qss(1000, 1, 0, 0).size() == 31);
    CHECK(build_qss(16384, 1, 0, 0).size() == 128);
    const auto general = build_qss(500, 2, 3, 1);
    for (std::size_t s = 0; s < general.size(); ++s) {
        const auto si = static_cast<std::int64_t>(s);
        CHECK(general.indices()[s] == 2 * si * si + 3 * si + 1);
    }
    CHECK(general.indices().back() < 500);
    CHECK_THROWS_AS(build_qss(100, 1, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_qss(100, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("prime set")
{
    CHECK(build_pss(16).indices() == std::vector<SubcarrierIndex>{2, 3, 5, 7, 11, 13});
    const auto p1000 = build_pss(1000);
    CHECK(p1000.size() == 168);
    CHECK(approx_prime_count(1000) == doctest::Approx(144.76).epsilon(1e-4));
    CHECK(static_cast<double>(p1000.size()) > approx_prime_count(1000));

    const auto p = build_pss(16384);
    CHECK(p.size() == 1900);
    CHECK(p.size() > 128);
    std::size_t count = 0;
    for (std::int64_t k = 0; k < 16384; ++k) {
        const bool prime = trial_division_prime(k);
        CHECK(p.contains(k) == prime);
        count += prime;
    }
    CHECK(count == p.size());
    CHECK_THROWS_AS(build_pss(2), std::invalid_argument);
}

TEST_CASE("pool invariants")
{
    CHECK_THROWS_AS(SubcarrierPool(PoolKind::Custom, {}, 10, {}), std::invalid_argument);
    CHECK_THROWS_AS(SubcarrierPool(PoolKind::Custom, {}, 10, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(SubcarrierPool(PoolKind::Custom, {}, 10, {3, 10}), std::invalid_argument);
}

TEST_CASE("random selection")
{
    const auto pool = build_pss(16384);

    SUBCASE("subset of the pool, ascending, distinct")
    {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto plan = select_random(pool, 120, seed);
            REQUIRE(plan.size() == 120);
            CHECK(std::is_sorted(plan.indices.begin(), plan.indices.end()));
            CHECK(std::adjacent_find(plan.indices.begin(), plan.indices.end()) == plan.indices.end());
            for (auto k : plan.indices) CHECK(pool.contains(k));
            CHECK(plan.source == PoolKind::Pss);
        }
    }
    SUBCASE("deterministic per seed")
    {
        CHECK(select_random(pool, 120, 7).indices == select_random(pool, 120, 7).indices);
        CHECK(select_random(pool, 120, 7).indices != select_random(pool, 120, 8).indices);
    }
    SUBCASE("forced selection")
    {
        const auto small = build_pss(16);
        CHECK(select_random(small, 6, 3).indices == small.indices());
        CHECK_THROWS_AS(select_random(small, 7, 3), std::invalid_argument);
    }
    SUBCASE("uniform over all pairs of a six-element pool")
    {
        const SubcarrierPool six(PoolKind::Custom, {}, 10, {0, 1, 2, 3, 4, 5});
        std::mt19937_64 rng(99);
        std::map<std::vector<SubcarrierIndex>, int> counts;
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) ++counts[select_random(six, 2, rng).indices];
        CHECK(counts.size() == 15);
        const double expected = draws / 15.0;
        double chi2 = 0.0;
        for (const auto& [k, n] : counts) chi2 += (n - expected) * (n - expected) / expected;
        // 14 degrees of freedom: P(chi2 > 36.12) = 0.001.
        CHECK(chi2 < 36.12);
    }
    SUBCASE("contiguous selection")
    {
        const auto lss = build_lss(16384, 2, 0);
        const auto plan = select_contiguous(lss, 5);
        CHECK(plan.indices == std::vector<SubcarrierIndex>{0, 2, 4, 6, 8});
    }
}
