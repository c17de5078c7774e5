// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "spwt/cli.hpp"
#include "spwt/io.hpp"
#include "spwt/leak_analysis.hpp"
#include "spwt/security.hpp"
#include "spwt/subcarrier_sets.hpp"

namespace spwt::cli {

using nlohmann::json;
namespace fs = std::filesystem;

SystemConfig SystemArgs::to_config() const
{
    SystemConfig c;
    c.carrier_freq_hz = carrier_freq_hz;
    c.subchannel_bw_hz = subchannel_bw_hz;
    c.num_subcarriers = num_subcarriers;
    c.num_antennas = num_antennas;
    c.lightspeed_m_s = lightspeed_m_s;
    c.element_spacing_m = element_spacing_m > 0.0 ? element_spacing_m : c.wavelength_m() / 2.0;
    c.alpha1 = alpha1;
    c.alpha2 = 1.0 - alpha1;
    c.noise_power = 1.0;
    c.total_power = from_db(snr_db);
    return c;
}

Grid GridArgs::to_grid(const BobArgs& bob) const
{
    if (shorthand == "1x1@bob")
        return Grid{Axis{bob.angle_deg, bob.angle_deg, 1.0}, Axis{bob.distance_m, bob.distance_m, 1.0}};
    Grid g{Axis{angle_min, angle_max, angle_step}, Axis{dist_min, dist_max, dist_step}};
    g.validate();
    return g;
}

namespace {

SubcarrierPool make_pool(const PoolArgs& p, std::int64_t num_subcarriers)
{
    switch (parse_pool_kind(p.set)) {
    case PoolKind::Lss: return build_lss(num_subcarriers, p.lss_a, p.lss_b);
    case PoolKind::Qss: return build_qss(num_subcarriers, p.qss_a, p.qss_b, p.qss_c);
    case PoolKind::Pss: return build_pss(num_subcarriers);
    case PoolKind::Custom: break;
    }
    throw std::invalid_argument("unsupported subcarrier set '" + p.set + "'");
}

void require_feasible(const SubcarrierPool& pool, int num_antennas)
{
    if (static_cast<std::size_t>(num_antennas) > pool.size())
        throw std::invalid_argument(std::string(to_string(pool.kind())) + " pool holds " +
                                    std::to_string(pool.size()) + " subcarriers, fewer than N_T=" +
                                    std::to_string(num_antennas));
}

struct PlanOutcome {
    SubcarrierPlan plan;
    std::optional<RpTrace> trace;
    std::optional<RpParams> params;
};

RpParams rp_params(const RpArgs& r, const SubcarrierPool& pool, int num_antennas)
{
    RpParams p;
    p.modulus = r.modulus;
    p.block_cols = r.block_cols;
    p.max_interleaves = r.max_interleaves;
    p.max_redraws = r.max_redraws;
    p.seed = r.seed;
    p.metric_threshold = r.threshold >= 0.0
                             ? r.threshold
                             : calibrate_threshold(pool, num_antennas, r.calib_samples, r.quantile, r.seed);
    return p;
}

// Throws RpExhausted; callers that persist the trace catch it themselves.
PlanOutcome draw_plan(const SystemConfig& config, const SubcarrierPool& pool, const PoolArgs& pa, const RpArgs& rp)
{
    require_feasible(pool, config.num_antennas);
    PlanOutcome out;
    out.plan = pa.selection == "contiguous" ? select_contiguous(pool, config.num_antennas)
                                            : select_random(pool, config.num_antennas, rp.seed);
    if (!rp.enabled) return out;
    out.params = rp_params(rp, pool, config.num_antennas);
    auto result = randomize(pool, out.plan.indices, *out.params);
    out.plan = std::move(result.plan);
    out.trace = std::move(result.trace);
    return out;
}

SubcarrierPlan read_plan(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open plan file " + path);
    json j;
    try {
        in >> j;
        return j.contains("plan") ? j.at("plan").get<SubcarrierPlan>() : j.get<SubcarrierPlan>();
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed plan file " + path + ": " + e.what());
    }
}

json trace_summary(const RpTrace& t)
{
    return {{"modulus", t.modulus},
            {"threshold", t.threshold},
            {"success", t.success},
            {"interleaves_used", t.interleaves_used},
            {"redraws_used", t.redraws_used},
            {"best_metric", t.best_metric}};
}

class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    template <typename Writer>
    void write(const std::string& name, Writer&& writer, bool binary = false)
    {
        const fs::path path = dir_ / name;
        {
            std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
            if (!os) throw std::runtime_error("cannot write " + path.string());
            writer(os);
            if (!os) throw std::runtime_error("write failed for " + path.string());
        }
        digests_[name] = file_sha256(path);
    }

    void write_json(const std::string& name, const json& j)
    {
        write(name, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    }

    void write_manifest(const RunContext& ctx, json body)
    {
        body["tool"] = kToolName;
        body["version"] = kToolVersion;
        body["command"] = ctx.command;
        body["config"] = ctx.resolved_config;
        body["outputs"] = digests_;
        std::ofstream os(dir_ / "manifest.json");
        os << body.dump(2) << '\n';
        if (!os) throw std::runtime_error("cannot write manifest in " + dir_.string());
    }

private:
    fs::path dir_;
    std::map<std::string, std::string> digests_;
};

json plan_json(const SystemConfig& config, const SubcarrierPlan& plan, const std::optional<SubcarrierPool>& pool)
{
    json j{{"num_subcarriers", config.num_subcarriers}, {"num_antennas", plan.size()}, {"plan", plan}};
    if (pool) j["pool"] = {{"kind", to_string(pool->kind())},
                           {"params", {{"a", pool->params().a}, {"b", pool->params().b}, {"c", pool->params().c}}},
                           {"cardinality", pool->size()}};
    return j;
}

json pool_params_json(const PoolArgs& p)
{
    return {{"set", p.set},
            {"selection", p.selection},
            {"lss", {{"a", p.lss_a}, {"b", p.lss_b}}},
            {"qss", {{"a", p.qss_a}, {"b", p.qss_b}, {"c", p.qss_c}}}};
}

json rp_json(const RpArgs& r, const PlanOutcome& outcome)
{
    json j{{"enabled", r.enabled}, {"quantile", r.quantile}, {"calib_samples", r.calib_samples}};
    if (outcome.params) j["params"] = *outcome.params;
    if (outcome.trace) j["trace"] = trace_summary(*outcome.trace);
    return j;
}

std::string fixed(double v, int digits)
{
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(digits) << v;
    return ss.str();
}

}  // namespace

int cmd_build_plan(const BuildPlanArgs& args, RunContext& ctx)
{
    const SystemConfig config = args.system.to_config();
    config.validate();
    const SubcarrierPool pool = make_pool(args.pool, config.num_subcarriers);
    OutputSet outputs(ctx.out_dir);

    PlanOutcome outcome;
    try {
        outcome = draw_plan(config, pool, args.pool, args.rp);
    } catch (const RpExhausted& e) {
        outputs.write_json("trace.json", e.trace());
        outputs.write_manifest(ctx, {{"system", config},
                                     {"pool", pool_params_json(args.pool)},
                                     {"rp", {{"enabled", true}, {"trace", trace_summary(e.trace())}}},
                                     {"seeds", {{"selection", args.rp.seed}}},
                                     {"status", "rp_exhausted"}});
        ctx.err << "error: " << e.what() << '\n';
        return kExitProcedure;
    }

    outputs.write_json("plan.json", plan_json(config, outcome.plan, pool));
    if (outcome.trace) outputs.write_json("trace.json", *outcome.trace);
    outputs.write_manifest(ctx, {{"system", config},
                                 {"pool", pool_params_json(args.pool)},
                                 {"rp", rp_json(args.rp, outcome)},
                                 {"seeds", {{"selection", args.rp.seed}}},
                                 {"status", "ok"}});

    ctx.out << "plan: " << outcome.plan.size() << " subcarriers from " << to_string(pool.kind()) << " (M=" << pool.size()
            << ")";
    if (outcome.trace)
        ctx.out << ", metric " << fixed(outcome.trace->best_metric, 1) << " > " << fixed(outcome.trace->threshold, 1)
                << " after " << outcome.trace->interleaves_used << " interleave(s)";
    ctx.out << '\n';
    return kExitOk;
}

int cmd_simulate_field(const SimulateFieldArgs& args, RunContext& ctx)
{
    SystemConfig config = args.system.to_config();
    const Position bob = args.bob.to_position();
    bob.validate();

    PlanOutcome outcome;
    std::optional<SubcarrierPool> pool;
    if (!args.plan_file.empty()) {
        outcome.plan = read_plan(args.plan_file);
        config.num_antennas = static_cast<int>(outcome.plan.size());
        config.validate();
    } else {
        config.validate();
        pool = make_pool(args.pool, config.num_subcarriers);
        outcome = draw_plan(config, *pool, args.pool, args.rp);
    }
    outcome.plan.validate(config);

    const Grid grid = args.grid.to_grid(args.bob);
    FieldOptions options{parse_phase_model(args.phase_model), args.threads};
    const SinrField field = compute_field(config, outcome.plan, bob, grid, options);
    const PeakReport peaks =
        find_peaks(field, bob, ExclusionWindow{args.excl_angle_deg, args.excl_distance_m}, args.leak_db);

    OutputSet outputs(ctx.out_dir);
    outputs.write("field.csv", [&](std::ostream& os) { write_field_csv(os, field); });
    outputs.write("field.bin", [&](std::ostream& os) { write_field_binary(os, field); }, true);
    outputs.write_json("field.json", field_sidecar(field));
    outputs.write_json("peaks.json", peaks);
    outputs.write_json("plan.json", plan_json(config, outcome.plan, pool));
    outputs.write_manifest(ctx, {{"system", config},
                                 {"bob", bob},
                                 {"pool", args.plan_file.empty() ? pool_params_json(args.pool) : json(nullptr)},
                                 {"plan_file", args.plan_file},
                                 {"rp", rp_json(args.rp, outcome)},
                                 {"phase_model", args.phase_model},
                                 {"threads", args.threads},
                                 {"seeds", {{"selection", args.rp.seed}}},
                                 {"fingerprint", field.fingerprint}});

    ctx.out << "grid " << field.rows() << "x" << field.cols() << ", main peak " << fixed(peaks.main.value_db, 4)
            << " dB at (" << peaks.main.angle_deg << " deg, " << peaks.main.distance_m << " m)\n"
            << "side peaks " << peaks.side_peaks.size() << ", max side/main " << fixed(peaks.max_side_ratio, 4)
            << ", leakage(" << args.leak_db << " dB) " << peaks.leakage_fraction << '\n';
    return kExitOk;
}

namespace {

std::vector<std::int64_t> range_values(std::int64_t lo, std::int64_t hi, std::int64_t step, const char* name)
{
    if (step < 1 || hi < lo) throw std::invalid_argument(std::string("invalid ") + name + " range");
    std::vector<std::int64_t> v;
    for (std::int64_t x = lo; x <= hi; x += step) v.push_back(x);
    return v;
}

}  // namespace

int cmd_intercept_prob(const InterceptArgs& args, RunContext& ctx)
{
    std::vector<PoolKind> kinds;
    for (const auto& k : args.kinds) kinds.push_back(parse_pool_kind(k));
    if (kinds.empty()) throw std::invalid_argument("no subcarrier sets requested");
    const LssParams lss{args.lss_a, args.lss_b};

    std::vector<InterceptRow> rows;
    json sweep;
    if (args.vs == "ns") {
        const auto ns = range_values(args.ns_min, args.ns_max, args.ns_step, "N_S");
        rows = sweep_vs_ns(kinds, ns, args.num_antennas, lss);
        sweep = {{"vs", "ns"}, {"num_antennas", args.num_antennas}, {"ns", {args.ns_min, args.ns_max, args.ns_step}}};
    } else {
        const auto nt = range_values(args.nt_min, args.nt_max, args.nt_step, "N_T");
        rows = sweep_vs_nt(kinds, nt, args.num_subcarriers, lss);
        sweep = {{"vs", "nt"}, {"num_subcarriers", args.num_subcarriers}, {"nt", {args.nt_min, args.nt_max, args.nt_step}}};
    }
    sweep["kinds"] = args.kinds;
    sweep["lss"] = {{"a", args.lss_a}, {"b", args.lss_b}};

    OutputSet outputs(ctx.out_dir);
    outputs.write("intercept.csv", [&](std::ostream& os) { write_intercept_csv(os, rows); });
    outputs.write_manifest(ctx, {{"sweep", sweep}});

    const auto infeasible = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.feasible(); });
    ctx.out << rows.size() << " rows (" << infeasible << " infeasible)\n";
    return kExitOk;
}

int cmd_leak_predict(const LeakPredictArgs& args, RunContext& ctx)
{
    SystemConfig config = args.system.to_config();
    const Position bob = args.bob.to_position();
    bob.validate();

    PlanOutcome outcome;
    std::optional<SubcarrierPool> pool;
    if (!args.plan_file.empty()) {
        outcome.plan = read_plan(args.plan_file);
        config.num_antennas = static_cast<int>(outcome.plan.size());
        config.validate();
    } else {
        config.validate();
        pool = make_pool(args.pool, config.num_subcarriers);
        outcome = draw_plan(config, *pool, args.pool, args.rp);
    }
    outcome.plan.validate(config);

    const LeakRegion region{args.region.angle_min, args.region.angle_max, args.region.dist_min, args.region.dist_max};
    const LeakReport report = analyze_leaks(config, bob, outcome.plan, args.m_max, region);

    OutputSet outputs(ctx.out_dir);
    outputs.write_json("leaks.json", {{"bob", bob}, {"m_max", args.m_max}, {"report", report}});
    outputs.write_json("plan.json", plan_json(config, outcome.plan, pool));
    outputs.write_manifest(ctx, {{"system", config},
                                 {"bob", bob},
                                 {"pool", args.plan_file.empty() ? pool_params_json(args.pool) : json(nullptr)},
                                 {"plan_file", args.plan_file},
                                 {"rp", rp_json(args.rp, outcome)},
                                 {"seeds", {{"selection", args.rp.seed}}}});

    if (report.affine_pattern)
        ctx.out << "affine pattern: k_n = " << report.affine_pattern->slope << "*n + " << report.affine_pattern->intercept
                << '\n';
    ctx.out << report.duplicate_spacings.size() << " duplicate spacing group(s), " << report.predicted_leaks.size()
            << " predicted position(s)\n";
    if (!report.predicted_leaks.empty()) {
        ctx.out << std::setw(5) << "n1" << std::setw(5) << "n2" << std::setw(5) << "dm1" << std::setw(5) << "dm2"
                << std::setw(12) << "angle_deg" << std::setw(14) << "distance_m" << std::setw(14) << "res_approx"
                << std::setw(14) << "res_exact" << '\n';
        for (const auto& l : report.predicted_leaks) {
            std::ostringstream ra, re;
            ra << std::scientific << std::setprecision(2) << l.residual_approx;
            re << std::scientific << std::setprecision(2) << l.residual_exact;
            ctx.out << std::setw(5) << l.n1 << std::setw(5) << l.n2 << std::setw(5) << l.m_diffs.first << std::setw(5)
                    << l.m_diffs.second << std::setw(12) << fixed(l.position.angle_deg(), 4) << std::setw(14)
                    << fixed(l.position.distance_m, 3) << std::setw(14) << ra.str() << std::setw(14) << re.str()
                    << '\n';
        }
    }
    return kExitOk;
}

int cmd_calibrate_threshold(const CalibrateArgs& args, RunContext& ctx)
{
    const SystemConfig config = args.system.to_config();
    config.validate();
    const SubcarrierPool pool = make_pool(args.pool, config.num_subcarriers);
    require_feasible(pool, config.num_antennas);

    auto samples = calibration_samples(pool, config.num_antennas, args.samples, args.seed);
    const double threshold = calibrate_threshold(pool, config.num_antennas, args.samples, args.quantile, args.seed);
    std::sort(samples.begin(), samples.end());
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(samples.size());

    OutputSet outputs(ctx.out_dir);
    outputs.write_json("calibration.json", {{"pool", pool_params_json(args.pool)},
                                            {"num_antennas", config.num_antennas},
                                            {"num_subcarriers", config.num_subcarriers},
                                            {"samples", args.samples},
                                            {"quantile", args.quantile},
                                            {"seed", args.seed},
                                            {"threshold", threshold},
                                            {"min", samples.front()},
                                            {"max", samples.back()},
                                            {"mean", mean}});
    outputs.write_manifest(ctx, {{"system", config}, {"pool", pool_params_json(args.pool)}, {"seeds", {{"calibration", args.seed}}}});

    ctx.out << "threshold " << fixed(threshold, 3) << " (quantile " << args.quantile << " of " << args.samples
            << " samples)\n";
    return kExitOk;
}

int cmd_replay(const ReplayArgs& args, std::ostream& out, std::ostream& err)
{
    json manifest;
    {
        std::ifstream in(args.manifest);
        if (!in) {
            err << "error: cannot open " << args.manifest << '\n';
            return kExitUsage;
        }
        try {
            in >> manifest;
        } catch (const json::exception& e) {
            err << "error: malformed manifest: " << e.what() << '\n';
            return kExitUsage;
        }
    }
    if (!manifest.contains("command") || !manifest.contains("config") || !manifest.contains("outputs")) {
        err << "error: manifest lacks command, config or outputs\n";
        return kExitUsage;
    }
    const auto command = manifest.at("command").get<std::string>();
    if (command == "replay") {
        err << "error: cannot replay a replay\n";
        return kExitUsage;
    }

    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    const fs::path config_path = dir / "replay.toml";
    {
        std::ofstream os(config_path);
        os << manifest.at("config").get<std::string>();
        if (!os) {
            err << "error: cannot write " << config_path.string() << '\n';
            return kExitUsage;
        }
    }

    std::vector<std::string> argv{"--config", config_path.string(), command, "--out-dir", dir.string()};
    if (args.threads > 0) {
        if (command != "simulate-field") {
            err << "error: --threads applies only to simulate-field manifests\n";
            return kExitUsage;
        }
        argv.push_back("--threads");
        argv.push_back(std::to_string(args.threads));
    }

    std::ostringstream sub_out;
    const int code = run(argv, sub_out, err);
    fs::remove(config_path);
    if (code != kExitOk) {
        err << "error: replayed command exited with " << code << '\n';
        return kExitProcedure;
    }

    bool identical = true;
    for (const auto& [name, digest] : manifest.at("outputs").items()) {
        const fs::path path = dir / name;
        const std::string got = fs::exists(path) ? file_sha256(path) : std::string("missing");
        const bool same = got == digest.get<std::string>();
        identical = identical && same;
        out << (same ? "match    " : "MISMATCH ") << name << ' ' << got << '\n';
    }
    out << (identical ? "replay identical\n" : "replay differs\n");
    return identical ? kExitOk : kExitProcedure;
}

}  // namespace spwt::cli
