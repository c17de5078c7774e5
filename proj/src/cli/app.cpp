// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "spwt/cli.hpp"
#include "spwt/randomizer.hpp"

namespace spwt::cli {

namespace {

void add_system_options(CLI::App* app, SystemArgs& s, bool with_antennas = true)
{
    app->add_option("--fc", s.carrier_freq_hz, "Carrier frequency [Hz]")->capture_default_str();
    app->add_option("--df", s.subchannel_bw_hz, "Subcarrier spacing [Hz]")->capture_default_str();
    app->add_option("--ns", s.num_subcarriers, "Number of OFDM subcarriers N_S")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    if (with_antennas)
        app->add_option("--nt", s.num_antennas, "Number of antennas N_T")
            ->capture_default_str()
            ->check(CLI::Range(2, 1 << 20));
    app->add_option("--spacing", s.element_spacing_m, "Element spacing [m], 0 = half wavelength")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_option("--alpha1", s.alpha1, "Power fraction for the confidential signal")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--snr-db", s.snr_db, "Total transmit power over noise power [dB]")->capture_default_str();
    app->add_option("--lightspeed", s.lightspeed_m_s, "Propagation speed [m/s]")->capture_default_str();
}

void add_pool_options(CLI::App* app, PoolArgs& p)
{
    app->add_option("--set", p.set, "Subcarrier set: lss, qss or pss")
        ->capture_default_str()
        ->check(CLI::IsMember({"lss", "qss", "pss"}));
    app->add_option("--selection", p.selection, "Pick N_T entries at random or take the first N_T")
        ->capture_default_str()
        ->check(CLI::IsMember({"random", "contiguous"}));
    app->add_option("--lss-a", p.lss_a, "LSS step a")->capture_default_str();
    app->add_option("--lss-b", p.lss_b, "LSS offset b")->capture_default_str();
    app->add_option("--qss-a", p.qss_a, "QSS coefficient a")->capture_default_str();
    app->add_option("--qss-b", p.qss_b, "QSS coefficient b")->capture_default_str();
    app->add_option("--qss-c", p.qss_c, "QSS coefficient c")->capture_default_str();
}

void add_rp_options(CLI::App* app, RpArgs& r)
{
    app->add_flag("--rp,!--no-rp", r.enabled, "Apply the randomization procedure")
        ->default_str(r.enabled ? "true" : "false");
    app->add_option("--modulus", r.modulus, "Residue modulus p, 0 = largest prime below sqrt(N_T)")
        ->capture_default_str();
    app->add_option("--block-cols", r.block_cols, "Interleaver columns I, 0 = automatic")->capture_default_str();
    app->add_option("--threshold", r.threshold, "Random-metric threshold, < 0 = calibrate")->capture_default_str();
    app->add_option("--quantile", r.quantile, "Calibration quantile")->capture_default_str();
    app->add_option("--calib-samples", r.calib_samples, "Calibration sample count")->capture_default_str();
    app->add_option("--max-interleaves", r.max_interleaves, "Interleaves per draw")->capture_default_str();
    app->add_option("--max-redraws", r.max_redraws, "Fresh draws before giving up")->capture_default_str();
    app->add_option("--seed", r.seed, "Random seed")->capture_default_str();
}

void add_bob_options(CLI::App* app, BobArgs& b)
{
    app->add_option("--bob-angle", b.angle_deg, "Desired receiver angle [deg]")->capture_default_str();
    app->add_option("--bob-distance", b.distance_m, "Desired receiver distance [m]")->capture_default_str();
}

void add_grid_options(CLI::App* app, GridArgs& g)
{
    app->add_option("--angle-min", g.angle_min, "Grid start angle [deg]")->capture_default_str();
    app->add_option("--angle-max", g.angle_max, "Grid stop angle [deg]")->capture_default_str();
    app->add_option("--angle-step", g.angle_step, "Grid angle step [deg]")->capture_default_str();
    app->add_option("--dist-min", g.dist_min, "Grid start distance [m]")->capture_default_str();
    app->add_option("--dist-max", g.dist_max, "Grid stop distance [m]")->capture_default_str();
    app->add_option("--dist-step", g.dist_step, "Grid distance step [m]")->capture_default_str();
}

// Keeps the subcommand's own keys; drops unset values that would not parse back.
std::string resolved_config(const CLI::App& app, const std::string& command)
{
    std::istringstream all(app.config_to_str(true, false));
    std::ostringstream kept;
    const std::string prefix = command + ".";
    for (std::string line; std::getline(all, line);) {
        if (line.rfind(prefix, 0) != 0) continue;
        if (line.size() >= 3 && line.compare(line.size() - 3, 3, "=\"\"") == 0) continue;
        if (line.rfind(prefix + "out-dir=", 0) == 0) continue;
        kept << line << '\n';
    }
    return kept.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Secure precise wireless transmission simulator with random subcarrier selection",
                 std::string(kToolName)};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.set_config("--config", "", "TOML configuration file (flags override file values)")->envname(kConfigEnvVar);
    app.require_subcommand(1);

    std::string out_dir = ".";

    BuildPlanArgs build;
    auto* build_cmd = app.add_subcommand("build-plan", "Draw subcarriers from a set and randomize their mapping");
    add_system_options(build_cmd, build.system);
    add_pool_options(build_cmd, build.pool);
    add_rp_options(build_cmd, build.rp);
    build_cmd->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();

    SimulateFieldArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate-field", "SINR surface over an angle/distance grid plus peak report");
    add_system_options(sim_cmd, sim.system);
    add_pool_options(sim_cmd, sim.pool);
    add_rp_options(sim_cmd, sim.rp);
    add_bob_options(sim_cmd, sim.bob);
    add_grid_options(sim_cmd, sim.grid);
    sim_cmd->add_option("--grid", sim.grid.shorthand, "Grid shorthand; '1x1@bob' evaluates Bob's cell only")
        ->check(CLI::IsMember({"", "1x1@bob"}));
    sim_cmd->add_option("--plan", sim.plan_file, "Plan JSON from build-plan (N_T taken from the plan)");
    sim_cmd->add_option("--phase", sim.phase_model, "Phase model: exact or approx")
        ->capture_default_str()
        ->check(CLI::IsMember({"exact", "approx"}));
    sim_cmd->add_option("--excl-angle", sim.excl_angle_deg, "Main-peak window half-width [deg]")->capture_default_str();
    sim_cmd->add_option("--excl-dist", sim.excl_distance_m, "Main-peak window half-width [m]")->capture_default_str();
    sim_cmd->add_option("--leak-db", sim.leak_db, "Leakage threshold below the main peak [dB]")->capture_default_str();
    sim_cmd->add_option("--threads", sim.threads, "Worker threads (output is identical for any value)")
        ->capture_default_str()
        ->check(CLI::Range(1, 256));
    sim_cmd->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();

    InterceptArgs icpt;
    auto* icpt_cmd = app.add_subcommand("intercept-prob", "Interception probability sweeps over N_S or N_T");
    icpt_cmd->add_option("--vs", icpt.vs, "Sweep variable: ns or nt")
        ->capture_default_str()
        ->check(CLI::IsMember({"ns", "nt"}));
    icpt_cmd->add_option("--kinds", icpt.kinds, "Comma-separated sets")
        ->capture_default_str()
        ->delimiter(',')
        ->check(CLI::IsMember({"lss", "qss", "pss"}));
    icpt_cmd->add_option("--nt", icpt.num_antennas, "N_T for the N_S sweep")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    icpt_cmd->add_option("--ns", icpt.num_subcarriers, "N_S for the N_T sweep")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    icpt_cmd->add_option("--ns-min", icpt.ns_min, "")->capture_default_str()->check(CLI::PositiveNumber);
    icpt_cmd->add_option("--ns-max", icpt.ns_max, "")->capture_default_str()->check(CLI::PositiveNumber);
    icpt_cmd->add_option("--ns-step", icpt.ns_step, "")->capture_default_str()->check(CLI::PositiveNumber);
    icpt_cmd->add_option("--nt-min", icpt.nt_min, "")->capture_default_str()->check(CLI::PositiveNumber);
    icpt_cmd->add_option("--nt-max", icpt.nt_max, "")->capture_default_str()->check(CLI::PositiveNumber);
    icpt_cmd->add_option("--nt-step", icpt.nt_step, "")->capture_default_str()->check(CLI::PositiveNumber);
    icpt_cmd->add_option("--lss-a", icpt.lss_a, "LSS step a")->capture_default_str()->check(CLI::PositiveNumber);
    icpt_cmd->add_option("--lss-b", icpt.lss_b, "LSS offset b")->capture_default_str()->check(CLI::NonNegativeNumber);
    icpt_cmd->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();

    LeakPredictArgs leak;
    auto* leak_cmd = app.add_subcommand("leak-predict", "Positions where equal adjacent spacings align");
    add_system_options(leak_cmd, leak.system);
    add_pool_options(leak_cmd, leak.pool);
    add_rp_options(leak_cmd, leak.rp);
    add_bob_options(leak_cmd, leak.bob);
    add_grid_options(leak_cmd, leak.region);
    leak_cmd->add_option("--plan", leak.plan_file, "Plan JSON from build-plan (N_T taken from the plan)");
    leak_cmd->add_option("--m-max", leak.m_max, "Largest |m| offset to enumerate")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    leak_cmd->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();

    CalibrateArgs calib;
    auto* calib_cmd = app.add_subcommand("calibrate-threshold", "Random-metric threshold from sampled selections");
    add_system_options(calib_cmd, calib.system);
    add_pool_options(calib_cmd, calib.pool);
    calib_cmd->add_option("--samples", calib.samples, "Sample count")->capture_default_str()->check(CLI::Range(100, 100000000));
    calib_cmd->add_option("--quantile", calib.quantile, "Quantile in [0, 1)")->capture_default_str()->check(CLI::Range(0.0, 0.999999999));
    calib_cmd->add_option("--seed", calib.seed, "Random seed")->capture_default_str();
    calib_cmd->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();

    ReplayArgs replay;
    auto* replay_cmd = app.add_subcommand("replay", "Re-run a manifest and compare output digests");
    replay_cmd->add_option("--manifest", replay.manifest, "manifest.json to replay")->required();
    replay_cmd->add_option("--out-dir", replay.out_dir, "Directory for the replayed outputs")->required();
    replay_cmd->add_option("--threads", replay.threads, "Override the recorded thread count")->check(CLI::Range(1, 256));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto context_for = [&](CLI::App* cmd) {
        return RunContext{cmd->get_name(), resolved_config(app, cmd->get_name()), out_dir, out, err};
    };

    try {
        if (*build_cmd) {
            auto ctx = context_for(build_cmd);
            return cmd_build_plan(build, ctx);
        }
        if (*sim_cmd) {
            auto ctx = context_for(sim_cmd);
            return cmd_simulate_field(sim, ctx);
        }
        if (*icpt_cmd) {
            auto ctx = context_for(icpt_cmd);
            return cmd_intercept_prob(icpt, ctx);
        }
        if (*leak_cmd) {
            auto ctx = context_for(leak_cmd);
            return cmd_leak_predict(leak, ctx);
        }
        if (*calib_cmd) {
            auto ctx = context_for(calib_cmd);
            return cmd_calibrate_threshold(calib, ctx);
        }
        if (*replay_cmd) return cmd_replay(replay, out, err);
    } catch (const RpExhausted& e) {
        err << "error: " << e.what() << '\n';
        return kExitProcedure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace spwt::cli
