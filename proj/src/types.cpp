// SPDX-License-Identifier: Apache-2.0

#include "spwt/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace spwt {

std::string_view to_string(PoolKind kind)
{
    switch (kind) {
    case PoolKind::Lss: return "lss";
    case PoolKind::Qss: return "qss";
    case PoolKind::Pss: return "pss";
    case PoolKind::Custom: return "custom";
    }
    return "custom";
}

PoolKind parse_pool_kind(std::string_view name)
{
    if (name == "lss") return PoolKind::Lss;
    if (name == "qss") return PoolKind::Qss;
    if (name == "pss") return PoolKind::Pss;
    if (name == "custom") return PoolKind::Custom;
    throw std::invalid_argument("unknown subcarrier set '" + std::string(name) + "'");
}

std::string_view to_string(PhaseModel model)
{
    return model == PhaseModel::Exact ? "exact" : "approx";
}

PhaseModel parse_phase_model(std::string_view name)
{
    if (name == "exact") return PhaseModel::Exact;
    if (name == "approx") return PhaseModel::Approx;
    throw std::invalid_argument("unknown phase model '" + std::string(name) + "'");
}

void SystemConfig::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("invalid system config: ") + what);
    };
    require(std::isfinite(carrier_freq_hz) && carrier_freq_hz > 0, "carrier frequency must be > 0");
    require(std::isfinite(subchannel_bw_hz) && subchannel_bw_hz > 0, "subchannel bandwidth must be > 0");
    require(num_antennas >= 2, "need at least 2 antennas");
    require(num_subcarriers >= num_antennas, "need N_S >= N_T");
    require(std::isfinite(element_spacing_m) && element_spacing_m > 0, "element spacing must be > 0");
    require(alpha1 >= 0 && alpha2 >= 0, "power fractions must be >= 0");
    require(std::abs(alpha1 + alpha2 - 1.0) <= 1e-12, "alpha1 + alpha2 must equal 1");
    require(std::isfinite(total_power) && total_power > 0, "total power must be > 0");
    require(std::isfinite(noise_power) && noise_power > 0, "noise power must be > 0");
    require(std::isfinite(lightspeed_m_s) && lightspeed_m_s > 0, "speed of light must be > 0");
    require(static_cast<double>(num_subcarriers) * subchannel_bw_hz <= 0.1 * carrier_freq_hz,
            "occupied bandwidth N_S*df must not exceed 0.1*f_c");
}

Position Position::from_degrees(double angle_deg, double distance_m)
{
    return Position{angle_deg * kPi / 180.0, distance_m};
}

double Position::angle_deg() const { return angle_rad * 180.0 / kPi; }

void Position::validate() const
{
    if (!(angle_rad >= 0.0 && angle_rad <= kPi))
        throw std::invalid_argument("position angle must lie in [0, pi]");
    if (!(distance_m > 0.0) || !std::isfinite(distance_m))
        throw std::invalid_argument("position distance must be > 0");
}

void SubcarrierPlan::validate(const SystemConfig& config) const
{
    if (indices.size() != static_cast<std::size_t>(config.num_antennas))
        throw std::invalid_argument("plan length " + std::to_string(indices.size()) +
                                    " does not match N_T=" + std::to_string(config.num_antennas));
    std::unordered_set<SubcarrierIndex> seen;
    for (auto k : indices) {
        if (k < 0 || k >= config.num_subcarriers)
            throw std::invalid_argument("subcarrier index " + std::to_string(k) + " outside [0, N_S)");
        if (!seen.insert(k).second)
            throw std::invalid_argument("subcarrier index " + std::to_string(k) + " used twice");
    }
}

}  // namespace spwt
