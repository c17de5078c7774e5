// SPDX-License-Identifier: Apache-2.0

#include "spwt/randomizer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

namespace spwt {

namespace {

bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int ceil_sqrt(int n)
{
    int r = static_cast<int>(std::sqrt(static_cast<double>(n)));
    while (r * r < n) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= n) --r;
    return r;
}

constexpr std::uint64_t kRedrawStream = 0x5244524157ULL;

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

double random_metric(std::span<const SubcarrierIndex> sequence)
{
    if (sequence.size() < 2) throw std::invalid_argument("random metric needs at least two indices");
    const std::size_t m = sequence.size() - 1;
    std::vector<double> spacing(m);
    double mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        spacing[i] = static_cast<double>(std::llabs(sequence[i] - sequence[i + 1]));
        mean += spacing[i];
    }
    mean /= static_cast<double>(m);
    double acc = 0.0;
    for (double s : spacing) acc += (s - mean) * (s - mean);
    return acc / static_cast<double>(m);
}

std::vector<double> calibration_samples(const SubcarrierPool& pool, int num_antennas, int num_samples,
                                        std::uint64_t seed)
{
    if (num_samples < 1) throw std::invalid_argument("calibration needs at least one sample");
    std::vector<double> out(static_cast<std::size_t>(num_samples));
    for (int i = 0; i < num_samples; ++i) {
        auto rng = sample_rng(seed, static_cast<std::uint64_t>(i));
        out[i] = random_metric(select_random(pool, num_antennas, rng).indices);
    }
    return out;
}

double calibrate_threshold(const SubcarrierPool& pool, int num_antennas, int num_samples, double quantile,
                           std::uint64_t seed)
{
    if (num_samples < 100) throw std::invalid_argument("threshold calibration needs >= 100 samples");
    if (!(quantile >= 0.0 && quantile < 1.0)) throw std::invalid_argument("quantile must lie in [0, 1)");
    auto samples = calibration_samples(pool, num_antennas, num_samples, seed);
    std::sort(samples.begin(), samples.end());
    const double pos = quantile * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, samples.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return samples[lo] + frac * (samples[hi] - samples[lo]);
}

int default_modulus(int num_antennas)
{
    for (int p = ceil_sqrt(num_antennas); p >= 2; --p)
        if (p * p < num_antennas && is_prime(p)) return p;
    throw std::invalid_argument("no prime below sqrt(N_T) for N_T=" + std::to_string(num_antennas) +
                                " (need N_T >= 5)");
}

std::vector<SubcarrierIndex> mod_partition_order(std::span<const SubcarrierIndex> selection, int modulus)
{
    if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
    std::vector<std::vector<SubcarrierIndex>> classes(static_cast<std::size_t>(modulus));
    for (auto k : selection) {
        auto r = k % modulus;
        if (r < 0) r += modulus;
        classes[static_cast<std::size_t>(r)].push_back(k);
    }
    std::vector<SubcarrierIndex> out;
    out.reserve(selection.size());
    for (auto& cls : classes) {
        std::sort(cls.begin(), cls.end());
        out.insert(out.end(), cls.begin(), cls.end());
    }
    return out;
}

bool block_dims_valid(int num_antennas, BlockDims dims)
{
    if (dims.cols < 1 || dims.rows < 1) return false;
    const std::int64_t full = static_cast<std::int64_t>(dims.rows) * dims.cols;
    return static_cast<std::int64_t>(dims.rows - 1) * dims.cols < num_antennas && num_antennas < full;
}

BlockDims choose_block_dims(int num_antennas)
{
    if (num_antennas < 3) throw std::invalid_argument("block interleaving needs N_T >= 3");
    int cols = ceil_sqrt(num_antennas);
    while (num_antennas % cols == 0) ++cols;
    return {cols, (num_antennas + cols - 1) / cols};
}

BlockDims next_block_dims(int num_antennas, BlockDims current)
{
    for (int cols = current.cols + 1; cols <= num_antennas - 1; ++cols) {
        if (num_antennas % cols == 0) continue;
        BlockDims next{cols, (num_antennas + cols - 1) / cols};
        if (block_dims_valid(num_antennas, next)) return next;
    }
    return choose_block_dims(num_antennas);
}

std::vector<SubcarrierIndex> block_interleave(std::span<const SubcarrierIndex> sequence, BlockDims dims)
{
    const int n = static_cast<int>(sequence.size());
    if (!block_dims_valid(n, dims))
        throw std::invalid_argument("block shape " + std::to_string(dims.rows) + "x" + std::to_string(dims.cols) +
                                    " violates (J-1)I < N_T < JI for N_T=" + std::to_string(n));

    const int pad = dims.rows * dims.cols - n;
    const int head = (dims.rows - 1) * dims.cols;
    // Empty optionals mark pad cells; 0 is a legal subcarrier index.
    std::vector<std::optional<SubcarrierIndex>> cells(static_cast<std::size_t>(dims.rows) * dims.cols);
    for (int i = 0; i < head; ++i) cells[i] = sequence[i];
    for (int i = head; i < n; ++i) cells[head + pad + (i - head)] = sequence[i];

    std::vector<SubcarrierIndex> out;
    out.reserve(sequence.size());
    for (int c = 0; c < dims.cols; ++c)
        for (int r = 0; r < dims.rows; ++r)
            if (const auto& cell = cells[static_cast<std::size_t>(r) * dims.cols + c]) out.push_back(*cell);
    return out;
}

void RpParams::validate(int num_antennas) const
{
    if (modulus != 0) {
        if (!is_prime(modulus)) throw std::invalid_argument("RP modulus must be prime");
        if (static_cast<std::int64_t>(modulus) * modulus >= num_antennas)
            throw std::invalid_argument("RP modulus must be below sqrt(N_T)");
    }
    if (block_cols != 0) {
        const BlockDims dims{block_cols, (num_antennas + block_cols - 1) / block_cols};
        if (!block_dims_valid(num_antennas, dims))
            throw std::invalid_argument("block column count violates (J-1)I < N_T < JI");
    }
    if (!(metric_threshold >= 0.0)) throw std::invalid_argument("metric threshold must be >= 0");
    if (max_interleaves < 1) throw std::invalid_argument("max_interleaves must be >= 1");
    if (max_redraws < 1) throw std::invalid_argument("max_redraws must be >= 1");
}

RpExhausted::RpExhausted(RpTrace trace)
    : std::runtime_error("randomization exhausted its budget; best metric " + std::to_string(trace.best_metric) +
                         " did not exceed threshold " + std::to_string(trace.threshold)),
      trace_(std::move(trace))
{
}

namespace {

RpResult run_procedure(const SubcarrierPool* pool, std::span<const SubcarrierIndex> selection,
                       const RpParams& params)
{
    const int nt = static_cast<int>(selection.size());
    params.validate(nt);

    RpTrace trace;
    trace.modulus = params.modulus != 0 ? params.modulus : default_modulus(nt);
    trace.threshold = params.metric_threshold;
    trace.best_metric = -1.0;

    const BlockDims first_dims =
        params.block_cols != 0 ? BlockDims{params.block_cols, (nt + params.block_cols - 1) / params.block_cols}
                               : choose_block_dims(nt);

    // Redraws get their own stream so they never repeat a seed-derived selection.
    auto redraw_rng = sample_rng(params.seed, kRedrawStream);
    std::vector<SubcarrierIndex> current(selection.begin(), selection.end());
    const int attempts = pool != nullptr ? 1 + params.max_redraws : 1;

    for (int draw = 0; draw < attempts; ++draw) {
        if (draw > 0) {
            current = select_random(*pool, nt, redraw_rng).indices;
            trace.redraws_used = draw;
        }
        trace.selections.push_back(current);

        std::vector<SubcarrierIndex> seq = mod_partition_order(current, trace.modulus);
        BlockDims dims = first_dims;
        for (int step = 1; step <= params.max_interleaves; ++step) {
            // Re-applying one fixed permutation cycles; each repeat widens the block.
            if (step > 1) dims = next_block_dims(nt, dims);
            seq = block_interleave(seq, dims);
            const double metric = random_metric(seq);
            ++trace.interleaves_used;
            trace.iterations.push_back({draw, step, dims, metric, seq});
            if (metric > trace.best_metric) {
                trace.best_metric = metric;
                trace.best_sequence = seq;
            }
            if (metric > params.metric_threshold) {
                trace.success = true;
                SubcarrierPlan plan;
                plan.indices = seq;
                plan.source = pool != nullptr ? pool->kind() : PoolKind::Custom;
                return {std::move(plan), std::move(trace)};
            }
        }
    }
    throw RpExhausted(std::move(trace));
}

}  // namespace

RpResult randomize(const SubcarrierPool& pool, std::span<const SubcarrierIndex> selection, const RpParams& params)
{
    RpResult result = run_procedure(&pool, selection, params);
    result.plan.source = pool.kind();
    return result;
}

RpResult randomize(std::span<const SubcarrierIndex> selection, const RpParams& params)
{
    return run_procedure(nullptr, selection, params);
}

}  // namespace spwt
