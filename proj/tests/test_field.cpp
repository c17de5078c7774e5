// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "spwt/field.hpp"
#include "spwt/randomizer.hpp"
#include "spwt/subcarrier_sets.hpp"

using namespace spwt;

namespace {

const Position kBob = Position::from_degrees(60.0, 500.0);

SinrField synthetic(std::size_t rows, std::size_t cols, double value)
{
    SinrField f;
    f.grid = Grid{Axis{59.0, 59.0 + static_cast<double>(rows - 1), 1.0},
                  Axis{470.0, 470.0 + 30.0 * static_cast<double>(cols - 1), 30.0}};
    f.sinr_db.assign(rows * cols, value);
    return f;
}

SubcarrierPlan rp_plan(std::uint64_t seed)
{
    const auto pool = build_pss(16384);
    RpParams p;
    p.metric_threshold = 17000.0;
    p.seed = seed;
    return randomize(pool, select_random(pool, 120, seed).indices, p).plan;
}

}  // namespace

TEST_CASE("axes")
{
    const Axis a{0.0, 180.0, 0.5};
    CHECK(a.size() == 361);
    CHECK(a.value(120) == 60.0);
    CHECK(a.nearest(60.1) == 120);
    CHECK(a.nearest(180.2) == 360);
    CHECK(a.nearest(180.3) == Axis::npos);
    CHECK(Axis{2.5, 1000.0, 2.5}.size() == 400);
    CHECK(Axis{0.0, 1.0, 0.1}.size() == 11);
    CHECK(Axis{5.0, 5.0, 1.0}.size() == 1);

    Grid g;
    CHECK_NOTHROW(g.validate());
    g.distance_m.start = 0.0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = {};
    g.angle_deg.stop = 181.0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = {};
    g.angle_deg.step = 0.0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("single cell at bob")
{
    SystemConfig c;
    const auto f = compute_field(c, rp_plan(1), kBob, Grid::at(kBob));
    REQUIRE(f.sinr_db.size() == 1);
    CHECK(f.sinr_db[0] == doctest::Approx(10.0 * std::log10(5.0)).epsilon(1e-12));
}

TEST_CASE("field properties")
{
    SystemConfig c;
    const auto plan = rp_plan(2);
    const Grid grid{Axis{50.0, 70.0, 0.5}, Axis{400.0, 600.0, 2.5}};

    SUBCASE("bob's cell is the maximum")
    {
        const auto f = compute_field(c, plan, kBob, grid);
        const auto at_bob = f.at(grid.angle_deg.nearest(60.0), grid.distance_m.nearest(500.0));
        CHECK(at_bob == doctest::Approx(10.0 * std::log10(5.0)).epsilon(1e-9));
        for (double v : f.sinr_db) CHECK(v <= at_bob);
    }
    SUBCASE("thread count does not change the matrix")
    {
        const auto serial = compute_field(c, plan, kBob, grid, {PhaseModel::Exact, 1});
        const auto parallel = compute_field(c, plan, kBob, grid, {PhaseModel::Exact, 7});
        REQUIRE(serial.sinr_db.size() == parallel.sinr_db.size());
        CHECK(std::memcmp(serial.sinr_db.data(), parallel.sinr_db.data(), serial.sinr_db.size() * sizeof(double)) ==
              0);
        CHECK(serial.fingerprint == parallel.fingerprint);
    }
    SUBCASE("range periodicity of the approximate model")
    {
        const double period = c.lightspeed_m_s / c.subchannel_bw_hz;
        const Grid near{Axis{40.0, 80.0, 5.0}, Axis{300.0, 700.0, 100.0}};
        const Grid far{Axis{40.0, 80.0, 5.0}, Axis{300.0 + period, 700.0 + period, 100.0}};
        const auto a = compute_field(c, plan, kBob, near, {PhaseModel::Approx, 1});
        const auto b = compute_field(c, plan, kBob, far, {PhaseModel::Approx, 1});
        for (std::size_t i = 0; i < a.sinr_db.size(); ++i) CHECK(std::abs(a.sinr_db[i] - b.sinr_db[i]) < 1e-9);
    }
}

TEST_CASE("peak finding")
{
    SUBCASE("one interior maximum")
    {
        auto f = synthetic(3, 3, 0.0);
        f.sinr_db[4] = 7.0;
        const auto r = find_peaks(f, kBob, {1.5, 40.0});
        CHECK(r.main.value_db == 7.0);
        CHECK(r.side_peaks.empty());
        CHECK(r.max_side_ratio == 0.0);
    }
    SUBCASE("plateau")
    {
        const auto f = synthetic(5, 5, 1.0);
        const auto r = find_peaks(f, kBob, {0.5, 10.0});
        CHECK(r.main.angle_deg == 60.0);
        CHECK(r.main.distance_m == 500.0);
        CHECK(r.side_peaks.empty());
    }
    SUBCASE("side peak outside the window")
    {
        auto f = synthetic(5, 5, -10.0);
        f.sinr_db[1 * 5 + 1] = 7.0;  // bob
        f.sinr_db[4 * 5 + 4] = 7.0 - 10.0;
        const auto r = find_peaks(f, kBob, {0.5, 10.0});
        REQUIRE(r.side_peaks.size() == 1);
        CHECK(r.side_peaks[0].angle_deg == 63.0);
        CHECK(r.max_side_ratio == doctest::Approx(0.1).epsilon(1e-12));
    }
    SUBCASE("bob outside the grid")
    {
        const auto f = synthetic(3, 3, 0.0);
        CHECK_THROWS_AS(find_peaks(f, Position::from_degrees(100.0, 500.0)), std::invalid_argument);
    }
}

TEST_CASE("leakage fraction")
{
    const ExclusionWindow w{0.5, 10.0};
    auto f = synthetic(5, 5, 7.0);
    CHECK(leakage_fraction(f, kBob, w, 7.0, 3.0) == 1.0);
    f = synthetic(5, 5, 7.0 - 6.0);
    f.sinr_db[1 * 5 + 1] = 7.0;
    CHECK(leakage_fraction(f, kBob, w, 7.0, 3.0) == 0.0);
    f.sinr_db[0] = 5.0;
    CHECK(leakage_fraction(f, kBob, w, 7.0, 3.0) == doctest::Approx(1.0 / 24.0));
    CHECK_THROWS_AS(leakage_fraction(f, kBob, w, 7.0, 0.0), std::invalid_argument);
}

TEST_CASE("serialization")
{
    SinrField f = synthetic(2, 2, 0.0);
    f.sinr_db = {1.5, -0.25, 6.989700043360188, -300.0};
    std::ostringstream csv;
    write_field_csv(csv, f);
    CHECK(csv.str() ==
          "angle_deg,distance_m,sinr_db\n59,470,1.5\n59,500,-0.25\n60,470,6.989700043360188\n60,500,-300\n");

    std::ostringstream bin;
    write_field_binary(bin, f);
    const std::string bytes = bin.str();
    REQUIRE(bytes.size() == 32);
    // 1.5 = 0x3FF8000000000000, little-endian.
    CHECK(static_cast<unsigned char>(bytes[6]) == 0xF8);
    CHECK(static_cast<unsigned char>(bytes[7]) == 0x3F);
}
