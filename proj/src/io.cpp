// SPDX-License-Identifier: Apache-2.0

#include "spwt/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace spwt {

using nlohmann::json;

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf.data(), res.ptr);
}

namespace {

std::string to_hex(const unsigned char* data, unsigned len)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0x0f]);
    }
    return out;
}

}  // namespace

std::string sha256_hex(std::string_view data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 computation failed");
    return to_hex(md.data(), len);
}

std::string file_sha256(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

std::string field_fingerprint(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                              PhaseModel model)
{
    const json j = {{"config", config}, {"plan", plan}, {"bob", bob}, {"phase_model", to_string(model)}};
    return sha256_hex(j.dump()).substr(0, 16);
}

void to_json(json& j, const SystemConfig& c)
{
    j = json{{"carrier_freq_hz", c.carrier_freq_hz},
             {"subchannel_bw_hz", c.subchannel_bw_hz},
             {"num_subcarriers", c.num_subcarriers},
             {"num_antennas", c.num_antennas},
             {"element_spacing_m", c.element_spacing_m},
             {"alpha1", c.alpha1},
             {"alpha2", c.alpha2},
             {"total_power", c.total_power},
             {"noise_power", c.noise_power},
             {"lightspeed_m_s", c.lightspeed_m_s}};
}

void from_json(const json& j, SystemConfig& c)
{
    j.at("carrier_freq_hz").get_to(c.carrier_freq_hz);
    j.at("subchannel_bw_hz").get_to(c.subchannel_bw_hz);
    j.at("num_subcarriers").get_to(c.num_subcarriers);
    j.at("num_antennas").get_to(c.num_antennas);
    j.at("element_spacing_m").get_to(c.element_spacing_m);
    j.at("alpha1").get_to(c.alpha1);
    j.at("alpha2").get_to(c.alpha2);
    j.at("total_power").get_to(c.total_power);
    j.at("noise_power").get_to(c.noise_power);
    j.at("lightspeed_m_s").get_to(c.lightspeed_m_s);
}

void to_json(json& j, const Position& pos)
{
    j = json{{"angle_deg", pos.angle_deg()}, {"angle_rad", pos.angle_rad}, {"distance_m", pos.distance_m}};
}

void to_json(json& j, const SubcarrierPool& pool)
{
    j = json{{"kind", to_string(pool.kind())},
             {"params", {{"a", pool.params().a}, {"b", pool.params().b}, {"c", pool.params().c}}},
             {"num_subcarriers", pool.num_subcarriers()},
             {"cardinality", pool.size()},
             {"indices", pool.indices()}};
}

void to_json(json& j, const SubcarrierPlan& plan)
{
    j = json{{"source_kind", to_string(plan.source)}, {"indices", plan.indices}};
}

void from_json(const json& j, SubcarrierPlan& plan)
{
    j.at("indices").get_to(plan.indices);
    plan.source = j.contains("source_kind") ? parse_pool_kind(j.at("source_kind").get<std::string>())
                                            : PoolKind::Custom;
}

void to_json(json& j, const RpParams& p)
{
    j = json{{"modulus", p.modulus},
             {"block_cols", p.block_cols},
             {"metric_threshold", p.metric_threshold},
             {"max_interleaves", p.max_interleaves},
             {"max_redraws", p.max_redraws},
             {"seed", p.seed}};
}

void to_json(json& j, const RpTrace& t)
{
    json iterations = json::array();
    for (const auto& it : t.iterations) {
        iterations.push_back({{"redraw", it.redraw},
                              {"interleave", it.interleave},
                              {"block_cols", it.dims.cols},
                              {"block_rows", it.dims.rows},
                              {"metric", it.metric},
                              {"sequence", it.sequence}});
    }
    j = json{{"modulus", t.modulus},
             {"threshold", t.threshold},
             {"success", t.success},
             {"interleaves_used", t.interleaves_used},
             {"redraws_used", t.redraws_used},
             {"best_metric", t.best_metric},
             {"best_sequence", t.best_sequence},
             {"selections", t.selections},
             {"iterations", std::move(iterations)}};
}

void to_json(json& j, const LeakReport& r)
{
    j = json::object();
    j["affine_pattern"] = r.affine_pattern ? json{{"slope", r.affine_pattern->slope},
                                                  {"intercept", r.affine_pattern->intercept}}
                                           : json(nullptr);
    json dups = json::array();
    for (const auto& d : r.duplicate_spacings) {
        json pairs = json::array();
        for (const auto& [a, b] : d.pairs) pairs.push_back({a, b});
        dups.push_back({{"spacing", d.spacing}, {"pairs", std::move(pairs)}});
    }
    j["duplicate_spacings"] = std::move(dups);
    json leaks = json::array();
    for (const auto& l : r.predicted_leaks) {
        leaks.push_back({{"position", l.position},
                         {"n1", l.n1},
                         {"n2", l.n2},
                         {"m_diffs", {l.m_diffs.first, l.m_diffs.second}},
                         {"antennas", l.antennas},
                         {"residual_approx_rad", l.residual_approx},
                         {"residual_exact_rad", l.residual_exact}});
    }
    j["predicted_leaks"] = std::move(leaks);
}

namespace {

json cell_json(const FieldCell& c)
{
    return {{"angle_idx", c.angle_idx},
            {"distance_idx", c.distance_idx},
            {"angle_deg", c.angle_deg},
            {"distance_m", c.distance_m},
            {"value_db", c.value_db}};
}

}  // namespace

void to_json(json& j, const PeakReport& r)
{
    json sides = json::array();
    for (std::size_t i = 0; i < r.side_peaks.size(); ++i) {
        json cell = cell_json(r.side_peaks[i]);
        cell["ratio_to_main"] = r.side_ratios[i];
        sides.push_back(std::move(cell));
    }
    j = json{{"main", cell_json(r.main)},
             {"side_peaks", std::move(sides)},
             {"max_side_ratio", r.max_side_ratio},
             {"leakage_threshold_db", r.leakage_threshold_db},
             {"leakage_fraction", r.leakage_fraction}};
}

void to_json(json& j, const Axis& a)
{
    j = json{{"start", a.start}, {"stop", a.stop}, {"step", a.step}, {"count", a.size()}};
}

json field_sidecar(const SinrField& field)
{
    return {{"format", "spwt-field"},
            {"dtype", "float64"},
            {"byte_order", "little"},
            {"layout", "row-major, rows = angle samples, columns = distance samples"},
            {"units", "dB"},
            {"shape", {field.rows(), field.cols()}},
            {"angle_deg", field.grid.angle_deg},
            {"distance_m", field.grid.distance_m},
            {"fingerprint", field.fingerprint}};
}

void write_intercept_csv(std::ostream& os, std::span<const InterceptRow> rows)
{
    os << "sweep_var,kind,M,log10_p,feasible\n";
    for (const auto& r : rows) {
        os << r.sweep_value << ',' << to_string(r.kind) << ',' << r.pool_size << ',';
        if (r.log10_p) os << format_double(*r.log10_p);
        os << ',' << (r.feasible() ? "true" : "false") << '\n';
    }
}

}  // namespace spwt
