// SPDX-License-Identifier: Apache-2.0
//
// Subcommand argument bundles and implementations behind the CLI11 wiring.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "spwt/field.hpp"
#include "spwt/randomizer.hpp"
#include "spwt/types.hpp"

namespace spwt::cli {

struct SystemArgs {
    double carrier_freq_hz = 3.0e9;
    double subchannel_bw_hz = 10.0e3;
    std::int64_t num_subcarriers = 16384;
    int num_antennas = 120;
    double element_spacing_m = 0.0;  // 0: half wavelength
    double alpha1 = 0.5;
    double snr_db = 10.0;            // P_s / noise power
    double lightspeed_m_s = 3.0e8;

    SystemConfig to_config() const;
};

struct PoolArgs {
    std::string set = "pss";
    std::int64_t lss_a = 2;
    std::int64_t lss_b = 0;
    std::int64_t qss_a = 1;
    std::int64_t qss_b = 0;
    std::int64_t qss_c = 0;
    std::string selection = "random";  // or "contiguous"
};

struct RpArgs {
    bool enabled = true;
    int modulus = 0;
    int block_cols = 0;
    double threshold = -1.0;  // < 0: calibrate
    double quantile = 0.5;
    int calib_samples = 10000;
    int max_interleaves = 16;
    int max_redraws = 8;
    std::uint64_t seed = 1;
};

struct BobArgs {
    double angle_deg = 60.0;
    double distance_m = 500.0;

    Position to_position() const { return Position::from_degrees(angle_deg, distance_m); }
};

struct GridArgs {
    double angle_min = 0.0;
    double angle_max = 180.0;
    double angle_step = 0.5;
    double dist_min = 2.5;
    double dist_max = 1000.0;
    double dist_step = 2.5;
    std::string shorthand;  // "1x1@bob"

    Grid to_grid(const BobArgs& bob) const;
};

/// Shared context for a single subcommand invocation.
struct RunContext {
    std::string command;
    std::string resolved_config;  // TOML, replayable
    std::filesystem::path out_dir;
    std::ostream& out;
    std::ostream& err;
};

struct BuildPlanArgs {
    SystemArgs system;
    PoolArgs pool;
    RpArgs rp;
};

struct SimulateFieldArgs {
    SystemArgs system;
    PoolArgs pool;
    RpArgs rp;
    BobArgs bob;
    GridArgs grid;
    std::string plan_file;
    std::string phase_model = "exact";
    double excl_angle_deg = 2.0;
    double excl_distance_m = 20.0;
    double leak_db = 3.0;
    int threads = 1;
};

struct InterceptArgs {
    std::string vs = "ns";
    std::vector<std::string> kinds{"lss", "qss", "pss"};
    int num_antennas = 16;
    std::int64_t num_subcarriers = 1000;
    std::int64_t ns_min = 100;
    std::int64_t ns_max = 10000;
    std::int64_t ns_step = 100;
    std::int64_t nt_min = 1;
    std::int64_t nt_max = 40;
    std::int64_t nt_step = 1;
    std::int64_t lss_a = 2;
    std::int64_t lss_b = 0;
};

struct LeakPredictArgs {
    SystemArgs system;
    PoolArgs pool;
    RpArgs rp;
    BobArgs bob;
    GridArgs region;
    std::string plan_file;
    int m_max = 3;
};

struct CalibrateArgs {
    SystemArgs system;
    PoolArgs pool;
    int samples = 10000;
    double quantile = 0.5;
    std::uint64_t seed = 1;
};

struct ReplayArgs {
    std::string manifest;
    std::string out_dir;
    int threads = 0;  // 0: as recorded
};

int cmd_build_plan(const BuildPlanArgs& args, RunContext& ctx);
int cmd_simulate_field(const SimulateFieldArgs& args, RunContext& ctx);
int cmd_intercept_prob(const InterceptArgs& args, RunContext& ctx);
int cmd_leak_predict(const LeakPredictArgs& args, RunContext& ctx);
int cmd_calibrate_threshold(const CalibrateArgs& args, RunContext& ctx);
int cmd_replay(const ReplayArgs& args, std::ostream& out, std::ostream& err);

}  // namespace spwt::cli
