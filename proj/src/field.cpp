// SPDX-License-Identifier: Apache-2.0

#include "spwt/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "spwt/io.hpp"

namespace spwt {

std::size_t Axis::size() const
{
    if (!(step > 0.0) || stop < start) return 0;
    return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
}

std::size_t Axis::nearest(double x) const
{
    const std::size_t n = size();
    if (n == 0) return npos;
    const double half = step / 2.0;
    if (x < start - half || x > value(n - 1) + half) return npos;
    const double idx = std::round((x - start) / step);
    return static_cast<std::size_t>(std::clamp(idx, 0.0, static_cast<double>(n - 1)));
}

void Grid::validate() const
{
    auto check = [](const Axis& a, const char* name) {
        if (!(a.step > 0.0) || !std::isfinite(a.step)) throw std::invalid_argument(std::string(name) + " step must be > 0");
        if (!(a.stop >= a.start)) throw std::invalid_argument(std::string(name) + " stop must be >= start");
    };
    check(angle_deg, "angle");
    check(distance_m, "distance");
    if (angle_deg.start < 0.0 || angle_deg.stop > 180.0) throw std::invalid_argument("angle axis must lie in [0, 180] deg");
    if (!(distance_m.start > 0.0)) throw std::invalid_argument("distance axis must start above 0 m");
}

Grid Grid::at(const Position& pos)
{
    const double deg = pos.angle_deg();
    return Grid{Axis{deg, deg, 1.0}, Axis{pos.distance_m, pos.distance_m, 1.0}};
}

namespace {

Position cell_position(const Grid& grid, std::size_t i, std::size_t j)
{
    return Position::from_degrees(grid.angle_deg.value(i), grid.distance_m.value(j));
}

}  // namespace

SinrField compute_field(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob, const Grid& grid,
                        const FieldOptions& options)
{
    config.validate();
    plan.validate(config);
    grid.validate();
    if (grid.size() == 0) throw std::invalid_argument("empty grid");

    SinrField field;
    field.grid = grid;
    field.fingerprint = field_fingerprint(config, plan, bob, options.model);
    field.sinr_db.assign(grid.size(), 0.0);

    const ArrayEvaluator eval(config, plan, bob, options.model);
    const std::size_t rows = grid.angle_deg.size();
    const std::size_t cols = grid.distance_m.size();

    auto fill_rows = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                const double s = eval.evaluate(cell_position(grid, i, j)).sinr;
                field.sinr_db[i * cols + j] = s > 0.0 ? std::max(to_db(s), kSinrFloorDb) : kSinrFloorDb;
            }
    };

    const auto threads = static_cast<std::size_t>(std::clamp(options.threads, 1, 256));
    if (threads == 1 || rows == 1) {
        fill_rows(0, rows);
    } else {
        // Cells are independent, so any row partition yields the same matrix.
        std::vector<std::jthread> pool;
        const std::size_t chunk = (rows + threads - 1) / threads;
        for (std::size_t begin = 0; begin < rows; begin += chunk)
            pool.emplace_back(fill_rows, begin, std::min(rows, begin + chunk));
    }
    return field;
}

namespace {

struct BobCell {
    std::size_t i;
    std::size_t j;
};

BobCell locate_bob(const SinrField& field, const Position& bob)
{
    const std::size_t i = field.grid.angle_deg.nearest(bob.angle_deg());
    const std::size_t j = field.grid.distance_m.nearest(bob.distance_m);
    if (i == Axis::npos || j == Axis::npos) throw std::invalid_argument("bob lies outside the field grid");
    return {i, j};
}

bool in_window(const SinrField& field, const Position& bob, const ExclusionWindow& w, std::size_t i, std::size_t j)
{
    return std::abs(field.grid.angle_deg.value(i) - bob.angle_deg()) <= w.angle_deg &&
           std::abs(field.grid.distance_m.value(j) - bob.distance_m) <= w.distance_m;
}

FieldCell make_cell(const SinrField& field, std::size_t i, std::size_t j)
{
    return {i, j, field.grid.angle_deg.value(i), field.grid.distance_m.value(j), field.at(i, j)};
}

bool strict_local_max(const SinrField& field, std::size_t i, std::size_t j)
{
    const double v = field.at(i, j);
    const auto rows = static_cast<std::ptrdiff_t>(field.rows());
    const auto cols = static_cast<std::ptrdiff_t>(field.cols());
    for (std::ptrdiff_t di = -1; di <= 1; ++di)
        for (std::ptrdiff_t dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            const auto ni = static_cast<std::ptrdiff_t>(i) + di;
            const auto nj = static_cast<std::ptrdiff_t>(j) + dj;
            if (ni < 0 || nj < 0 || ni >= rows || nj >= cols) continue;
            if (field.at(static_cast<std::size_t>(ni), static_cast<std::size_t>(nj)) >= v) return false;
        }
    return true;
}

}  // namespace

double leakage_fraction(const SinrField& field, const Position& bob, const ExclusionWindow& window,
                        double main_value_db, double threshold_db)
{
    if (!(threshold_db > 0.0)) throw std::invalid_argument("leakage threshold must be > 0 dB");
    const BobCell b = locate_bob(field, bob);
    std::size_t outside = 0;
    std::size_t hot = 0;
    for (std::size_t i = 0; i < field.rows(); ++i)
        for (std::size_t j = 0; j < field.cols(); ++j) {
            if ((i == b.i && j == b.j) || in_window(field, bob, window, i, j)) continue;
            ++outside;
            if (field.at(i, j) >= main_value_db - threshold_db) ++hot;
        }
    return outside == 0 ? 0.0 : static_cast<double>(hot) / static_cast<double>(outside);
}

PeakReport find_peaks(const SinrField& field, const Position& bob, const ExclusionWindow& window,
                      double leakage_threshold_db)
{
    if (!(window.angle_deg > 0.0 && window.distance_m > 0.0))
        throw std::invalid_argument("exclusion window must be positive in both axes");
    const BobCell b = locate_bob(field, bob);

    PeakReport report;
    report.main = make_cell(field, b.i, b.j);
    for (std::size_t i = 0; i < field.rows(); ++i)
        for (std::size_t j = 0; j < field.cols(); ++j)
            if (in_window(field, bob, window, i, j) && field.at(i, j) > report.main.value_db)
                report.main = make_cell(field, i, j);

    for (std::size_t i = 0; i < field.rows(); ++i)
        for (std::size_t j = 0; j < field.cols(); ++j) {
            if ((i == b.i && j == b.j) || in_window(field, bob, window, i, j)) continue;
            if (strict_local_max(field, i, j)) report.side_peaks.push_back(make_cell(field, i, j));
        }
    std::stable_sort(report.side_peaks.begin(), report.side_peaks.end(),
                     [](const FieldCell& a, const FieldCell& c) { return a.value_db > c.value_db; });
    for (const auto& s : report.side_peaks) report.side_ratios.push_back(from_db(s.value_db - report.main.value_db));
    report.max_side_ratio = report.side_ratios.empty() ? 0.0 : report.side_ratios.front();

    report.leakage_threshold_db = leakage_threshold_db;
    report.leakage_fraction = leakage_fraction(field, bob, window, report.main.value_db, leakage_threshold_db);
    return report;
}

void write_field_csv(std::ostream& os, const SinrField& field)
{
    os << "angle_deg,distance_m,sinr_db\n";
    for (std::size_t i = 0; i < field.rows(); ++i) {
        const std::string angle = format_double(field.grid.angle_deg.value(i));
        for (std::size_t j = 0; j < field.cols(); ++j)
            os << angle << ',' << format_double(field.grid.distance_m.value(j)) << ','
               << format_double(field.at(i, j)) << '\n';
    }
}

void write_field_binary(std::ostream& os, const SinrField& field)
{
    for (double v : field.sinr_db) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
        char bytes[8];
        std::memcpy(bytes, &bits, sizeof bits);
        os.write(bytes, sizeof bytes);
    }
}

}  // namespace spwt
