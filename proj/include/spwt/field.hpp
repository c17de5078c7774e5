// SPDX-License-Identifier: Apache-2.0
//
// SINR surfaces over an (angle, distance) grid and their peak structure.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "spwt/model.hpp"
#include "spwt/types.hpp"

namespace spwt {

/// Uniform axis start, start + step, ... up to stop (inclusive within 1e-9
/// steps). stop == start gives a single sample.
struct Axis {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::size_t size() const;
    double value(std::size_t i) const { return start + static_cast<double>(i) * step; }
    /// Index of the sample nearest x, or npos when x lies more than half a
    /// step outside the axis.
    std::size_t nearest(double x) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct Grid {
    Axis angle_deg{0.0, 180.0, 0.5};
    Axis distance_m{2.5, 1000.0, 2.5};

    void validate() const;
    std::size_t size() const { return angle_deg.size() * distance_m.size(); }

    /// Single cell at the given position.
    static Grid at(const Position& pos);
};

/// Row-major SINR matrix in dB, one row per angle sample.
struct SinrField {
    Grid grid;
    std::vector<double> sinr_db;
    std::string fingerprint;

    std::size_t rows() const { return grid.angle_deg.size(); }
    std::size_t cols() const { return grid.distance_m.size(); }
    double at(std::size_t angle_idx, std::size_t distance_idx) const { return sinr_db[angle_idx * cols() + distance_idx]; }
};

/// Values below this are reported at the floor so every cell stays finite.
inline constexpr double kSinrFloorDb = -300.0;

struct FieldOptions {
    PhaseModel model = PhaseModel::Exact;
    int threads = 1;
};

/// Analytic SINR at every grid cell. Output is independent of `threads`.
SinrField compute_field(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                        const Grid& grid, const FieldOptions& options = {});

struct ExclusionWindow {
    double angle_deg = 2.0;
    double distance_m = 20.0;
};

struct FieldCell {
    std::size_t angle_idx = 0;
    std::size_t distance_idx = 0;
    double angle_deg = 0.0;
    double distance_m = 0.0;
    double value_db = 0.0;
};

struct PeakReport {
    FieldCell main;
    std::vector<FieldCell> side_peaks;  // descending by value
    std::vector<double> side_ratios;    // linear power ratio side / main, same order
    double max_side_ratio = 0.0;
    double leakage_threshold_db = 3.0;
    double leakage_fraction = 0.0;
};

/// Main peak is the maximum inside the window around bob (bob's nearest cell
/// always counts); side peaks are strict 8-neighbour local maxima outside it.
/// Throws when bob lies outside the grid.
PeakReport find_peaks(const SinrField& field, const Position& bob, const ExclusionWindow& window = {},
                      double leakage_threshold_db = 3.0);

/// Fraction of cells outside the window with value >= main_value_db -
/// threshold_db, relative to the number of cells outside the window.
double leakage_fraction(const SinrField& field, const Position& bob, const ExclusionWindow& window,
                        double main_value_db, double threshold_db);

/// angle_deg,distance_m,sinr_db with a header row.
void write_field_csv(std::ostream& os, const SinrField& field);

/// Raw little-endian float64 matrix, row-major.
void write_field_binary(std::ostream& os, const SinrField& field);

}  // namespace spwt
