// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "spwt/randomizer.hpp"
#include "spwt/subcarrier_sets.hpp"

using namespace spwt;

namespace {

std::vector<SubcarrierIndex> first_primes(int count)
{
    const auto p = build_pss(16384);
    return {p.indices().begin(), p.indices().begin() + count};
}

// Row-by-row fill into a rows x cols matrix with the pad cells at the start of
// the last row, then column-by-column readout skipping pads.
std::vector<SubcarrierIndex> dense_interleave(const std::vector<SubcarrierIndex>& seq, int cols, int rows)
{
    std::vector<std::vector<std::optional<SubcarrierIndex>>> m(rows, std::vector<std::optional<SubcarrierIndex>>(cols));
    const int n = static_cast<int>(seq.size());
    const int pad = rows * cols - n;
    int src = 0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (r == rows - 1 && c < pad) continue;
            m[r][c] = seq[src++];
        }
    std::vector<SubcarrierIndex> out;
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
            if (m[r][c]) out.push_back(*m[r][c]);
    return out;
}

// Exact population variance of adjacent spacings, in integers until the end.
double integer_variance(const std::vector<SubcarrierIndex>& seq)
{
    const auto m = static_cast<std::int64_t>(seq.size() - 1);
    std::int64_t s1 = 0, s2 = 0;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        const auto d = std::llabs(seq[i + 1] - seq[i]);
        s1 += d;
        s2 += d * d;
    }
    return static_cast<double>(m * s2 - s1 * s1) / static_cast<double>(m * m);
}

}  // namespace

TEST_CASE("random metric")
{
    CHECK(random_metric(std::vector<SubcarrierIndex>{1, 2, 3, 4}) == 0.0);
    CHECK(random_metric(std::vector<SubcarrierIndex>{0, 1, 3}) == 0.25);
    CHECK_THROWS_AS(random_metric(std::vector<SubcarrierIndex>{1}), std::invalid_argument);

    const auto pool = build_pss(16384);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto sel = select_random(pool, 120, seed).indices;
        std::shuffle(sel.begin(), sel.end(), std::mt19937_64(seed));
        CHECK(random_metric(sel) == doctest::Approx(integer_variance(sel)).epsilon(1e-9));
    }
    // Fraction oracle: 47961422 / 14161.
    const auto k7 = mod_partition_order(first_primes(120), 7);
    CHECK(random_metric(block_interleave(k7, {11, 11})) == doctest::Approx(47961422.0 / 14161.0).epsilon(1e-12));
}

TEST_CASE("modulo partition ordering")
{
    CHECK(mod_partition_order(std::vector<SubcarrierIndex>{2, 3, 5, 7, 11, 13}, 3) ==
          std::vector<SubcarrierIndex>{3, 7, 13, 2, 5, 11});
    CHECK(mod_partition_order(std::vector<SubcarrierIndex>{1, 2, 3, 4}, 2) == std::vector<SubcarrierIndex>{2, 4, 1, 3});

    auto primes = first_primes(120);
    std::reverse(primes.begin(), primes.end());
    const auto out = mod_partition_order(primes, 7);
    auto a = out, b = primes;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    for (std::size_t i = 1; i < out.size(); ++i) {
        const auto r0 = out[i - 1] % 7, r1 = out[i] % 7;
        CHECK(r0 <= r1);
        if (r0 == r1) CHECK(out[i - 1] < out[i]);
    }
    CHECK(out.front() == 7);
    CHECK_THROWS_AS(mod_partition_order(primes, 1), std::invalid_argument);
}

TEST_CASE("modulus selection")
{
    CHECK(default_modulus(120) == 7);
    CHECK(default_modulus(5) == 2);
    CHECK(default_modulus(50) == 7);
    CHECK(default_modulus(49) == 5);
    CHECK_THROWS_AS(default_modulus(4), std::invalid_argument);
}

TEST_CASE("block dimensions")
{
    auto same = [](BlockDims a, BlockDims b) { return a.cols == b.cols && a.rows == b.rows; };
    CHECK(same(choose_block_dims(120), {11, 11}));
    CHECK(same(choose_block_dims(12), {5, 3}));
    CHECK(same(choose_block_dims(7), {3, 3}));
    for (int nt = 3; nt <= 500; ++nt) {
        const auto d = choose_block_dims(nt);
        CHECK(block_dims_valid(nt, d));
        auto next = d;
        for (int i = 0; i < 5; ++i) {
            next = next_block_dims(nt, next);
            CHECK(block_dims_valid(nt, next));
        }
    }
    CHECK_THROWS_AS(choose_block_dims(2), std::invalid_argument);
}

TEST_CASE("block interleaving")
{
    CHECK(block_interleave(std::vector<SubcarrierIndex>{1, 2, 3, 4, 5, 6, 7}, {3, 3}) ==
          std::vector<SubcarrierIndex>{1, 4, 2, 5, 3, 6, 7});
    // Zero is a legal index and must survive padding.
    CHECK(block_interleave(std::vector<SubcarrierIndex>{0, 1, 4, 9, 16, 25, 36}, {3, 3}) ==
          std::vector<SubcarrierIndex>{0, 9, 1, 16, 4, 25, 36});
    CHECK_THROWS_AS(block_interleave(std::vector<SubcarrierIndex>{1, 2, 3, 4, 5, 6}, {3, 2}), std::invalid_argument);

    SUBCASE("frozen 11x11 reference")
    {
        const std::vector<SubcarrierIndex> expected{
            7,   379, 37,  401, 73,  409, 137, 571, 173, 593, 29,  421, 79,  443, 101, 479, 151, 599, 229, 607,
            293, 43,  449, 107, 457, 157, 521, 179, 613, 257, 13,  307, 71,  463, 149, 499, 199, 563, 193, 641,
            271, 41,  349, 113, 491, 163, 541, 227, 577, 263, 5,   313, 83,  419, 127, 547, 191, 569, 241, 619,
            277, 19,  383, 97,  433, 197, 617, 233, 653, 269, 647, 347, 47,  397, 139, 461, 211, 631, 317, 3,
            283, 11,  389, 61,  439, 167, 503, 239, 659, 331, 17,  311, 53,  431, 89,  467, 181, 587, 281, 2,
            359, 31,  353, 67,  487, 103, 509, 223, 601, 337, 23,  373, 59,  367, 109, 557, 131, 523, 251, 643};
        const auto k7 = mod_partition_order(first_primes(120), 7);
        CHECK(block_interleave(k7, {11, 11}) == expected);
    }
    SUBCASE("dense matrix construction, all shapes up to 50")
    {
        for (int nt = 3; nt <= 50; ++nt) {
            std::vector<SubcarrierIndex> seq(static_cast<std::size_t>(nt));
            std::iota(seq.begin(), seq.end(), 100);
            for (int cols = 2; cols < nt; ++cols) {
                const BlockDims d{cols, (nt + cols - 1) / cols};
                if (!block_dims_valid(nt, d)) continue;
                CHECK(block_interleave(seq, d) == dense_interleave(seq, d.cols, d.rows));
            }
        }
    }
}

TEST_CASE("threshold calibration")
{
    const auto pool = build_pss(16384);
    const auto samples = calibration_samples(pool, 120, 200, 4);
    CHECK(calibrate_threshold(pool, 120, 200, 0.0, 4) == *std::min_element(samples.begin(), samples.end()));

    const auto lss = build_lss(40, 2, 0);
    CHECK(calibrate_threshold(lss, static_cast<int>(lss.size()), 100, 0.5, 1) == 0.0);

    const double a = calibrate_threshold(pool, 120, 10000, 0.5, 1);
    const double b = calibrate_threshold(pool, 120, 10000, 0.5, 2);
    CHECK(std::abs(a - b) / a < 0.02);

    CHECK_THROWS_AS(calibrate_threshold(pool, 120, 99, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_threshold(pool, 120, 100, 1.0, 1), std::invalid_argument);
}

TEST_CASE("randomization procedure")
{
    const auto pool = build_pss(16384);

    SUBCASE("zero threshold stops at the first interleave")
    {
        RpParams p;
        p.metric_threshold = 0.0;
        const auto r = randomize(pool, select_random(pool, 120, 3).indices, p);
        CHECK(r.trace.success);
        CHECK(r.trace.interleaves_used == 1);
        CHECK(r.trace.redraws_used == 0);
    }
    SUBCASE("success is strict")
    {
        const auto sel = select_random(pool, 120, 5).indices;
        const double first = random_metric(block_interleave(mod_partition_order(sel, 7), choose_block_dims(120)));
        RpParams p;
        p.metric_threshold = first;
        p.max_interleaves = 1;
        CHECK_THROWS_AS(randomize(sel, p), RpExhausted);
        p.metric_threshold = std::nextafter(first, 0.0);
        CHECK(randomize(sel, p).trace.success);
    }
    SUBCASE("output is a permutation of a pool selection")
    {
        const double threshold = calibrate_threshold(pool, 120, 2000, 0.5, 1);
        int first_try = 0;
        for (std::uint64_t seed = 1; seed <= 40; ++seed) {
            RpParams p;
            p.metric_threshold = threshold;
            p.seed = seed;
            const auto sel = select_random(pool, 120, seed).indices;
            const auto r = randomize(pool, sel, p);
            CHECK(r.plan.source == PoolKind::Pss);
            CHECK(random_metric(r.plan.indices) > threshold);
            auto sorted = r.plan.indices;
            std::sort(sorted.begin(), sorted.end());
            CHECK(sorted == r.trace.selections.back());
            for (auto k : sorted) CHECK(pool.contains(k));
            first_try += r.trace.redraws_used == 0;
        }
        CHECK(first_try > 20);
    }
    SUBCASE("deterministic")
    {
        RpParams p;
        p.metric_threshold = 17000.0;
        p.seed = 9;
        const auto sel = select_random(pool, 120, 9).indices;
        const auto a = randomize(pool, sel, p);
        const auto b = randomize(pool, sel, p);
        CHECK(a.plan.indices == b.plan.indices);
        CHECK(a.trace.interleaves_used == b.trace.interleaves_used);
    }
    SUBCASE("exhaustion")
    {
        RpParams p;
        p.metric_threshold = 1e12;
        p.max_interleaves = 3;
        p.max_redraws = 2;
        const auto sel = select_random(pool, 120, 1).indices;
        try {
            randomize(pool, sel, p);
            FAIL("expected exhaustion");
        } catch (const RpExhausted& e) {
            CHECK_FALSE(e.trace().success);
            CHECK(e.trace().interleaves_used == 9);
            CHECK(e.trace().redraws_used == 2);
            CHECK(e.trace().selections.size() == 3);
            CHECK(e.trace().selections[1] != e.trace().selections[0]);
        }
        CHECK_THROWS_AS(randomize(sel, p), RpExhausted);
    }
    SUBCASE("parameter validation")
    {
        RpParams p;
        const auto sel = select_random(pool, 120, 1).indices;
        p.modulus = 11;  // 121 >= 120
        CHECK_THROWS_AS(randomize(pool, sel, p), std::invalid_argument);
        p.modulus = 6;
        CHECK_THROWS_AS(randomize(pool, sel, p), std::invalid_argument);
        p = {};
        p.block_cols = 12;  // 12 x 10 = 120 leaves no pad row
        CHECK_THROWS_AS(randomize(pool, sel, p), std::invalid_argument);
        p = {};
        p.metric_threshold = -1.0;
        CHECK_THROWS_AS(randomize(pool, sel, p), std::invalid_argument);
    }
}
