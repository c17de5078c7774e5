// SPDX-License-Identifier: Apache-2.0
//
// Randomization procedure applied to a subcarrier selection before it is
// mapped onto the antennas: residue-class ordering modulo a small prime,
// followed by zero-padded block interleaving, repeated until the spacing
// variance ("random metric") clears a threshold.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "spwt/subcarrier_sets.hpp"
#include "spwt/types.hpp"

namespace spwt {

/// Variance of adjacent absolute spacings |k_i - k_{i+1}|, normalized by the
/// number of spacings. Requires at least two entries.
double random_metric(std::span<const SubcarrierIndex> sequence);

/// Random metric of `num_samples` random selections drawn in ascending pool
/// order. Sample i uses its own generator seeded from (seed, i).
std::vector<double> calibration_samples(const SubcarrierPool& pool, int num_antennas, int num_samples,
                                        std::uint64_t seed);

/// Empirical quantile (linear interpolation between order statistics) of the
/// calibration samples. quantile = 0 returns the minimum.
double calibrate_threshold(const SubcarrierPool& pool, int num_antennas, int num_samples, double quantile,
                           std::uint64_t seed);

/// Largest prime p with p < sqrt(N_T). Throws for N_T < 5.
int default_modulus(int num_antennas);

/// K'_0 || K'_1 || ... || K'_{p-1}, where K'_r holds the entries congruent to
/// r modulo p in ascending order.
std::vector<SubcarrierIndex> mod_partition_order(std::span<const SubcarrierIndex> selection, int modulus);

/// Block shape for the interleaver: `cols` (I) entries per row, `rows` (J)
/// rows, with (J-1) I < N_T < J I.
struct BlockDims {
    int cols = 0;
    int rows = 0;
    friend bool operator==(const BlockDims&, const BlockDims&) = default;
};

bool block_dims_valid(int num_antennas, BlockDims dims);

/// I = smallest integer >= ceil(sqrt(N_T)) not dividing N_T, J = ceil(N_T / I).
BlockDims choose_block_dims(int num_antennas);

/// Next valid shape with a larger I (I <= N_T - 1); wraps to the first shape.
BlockDims next_block_dims(int num_antennas, BlockDims current);

/// Fills the first J-1 rows left to right, right-aligns the remainder in the
/// last row behind J I - N_T empty pad cells, then reads column by column
/// skipping the pads.
std::vector<SubcarrierIndex> block_interleave(std::span<const SubcarrierIndex> sequence, BlockDims dims);

struct RpParams {
    int modulus = 0;     // 0 selects default_modulus(N_T)
    int block_cols = 0;  // 0 selects choose_block_dims(N_T)
    double metric_threshold = 0.0;
    int max_interleaves = 16;
    int max_redraws = 8;
    std::uint64_t seed = 1;

    void validate(int num_antennas) const;
};

struct RpIteration {
    int redraw = 0;
    int interleave = 0;  // 1-based within the redraw
    BlockDims dims;
    double metric = 0.0;
    std::vector<SubcarrierIndex> sequence;
};

struct RpTrace {
    int modulus = 0;
    double threshold = 0.0;
    std::vector<std::vector<SubcarrierIndex>> selections;  // one per draw, ascending
    std::vector<RpIteration> iterations;
    int interleaves_used = 0;
    int redraws_used = 0;
    bool success = false;
    double best_metric = 0.0;
    std::vector<SubcarrierIndex> best_sequence;
};

struct RpResult {
    SubcarrierPlan plan;
    RpTrace trace;
};

/// Raised when no interleaving of any draw clears the threshold.
class RpExhausted : public std::runtime_error {
public:
    explicit RpExhausted(RpTrace trace);
    const RpTrace& trace() const { return trace_; }

private:
    RpTrace trace_;
};

/// Runs the procedure on `selection`. When the interleave budget runs out a
/// fresh selection is drawn from `pool` (up to max_redraws times) and the
/// procedure restarts. Success requires random_metric > threshold (strict).
RpResult randomize(const SubcarrierPool& pool, std::span<const SubcarrierIndex> selection,
                   const RpParams& params);

/// As above without a pool: exhaustion of the interleave budget is final.
RpResult randomize(std::span<const SubcarrierIndex> selection, const RpParams& params);

}  // namespace spwt
