// SPDX-License-Identifier: Apache-2.0
//
// Shared domain types: system parameters, receiver positions and the
// antenna-to-subcarrier plan.

#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace spwt {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

using SubcarrierIndex = std::int64_t;
using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

enum class PoolKind { Lss, Qss, Pss, Custom };

std::string_view to_string(PoolKind kind);
PoolKind parse_pool_kind(std::string_view name);

/// Carrier, subcarrier, array, power and noise parameters shared by every
/// physics operation. Defaults reproduce the reference simulation setup
/// (3 GHz carrier, 120 antennas at half-wavelength spacing, P_s/noise = 10 dB).
struct SystemConfig {
    double carrier_freq_hz = 3.0e9;
    double subchannel_bw_hz = 10.0e3;
    std::int64_t num_subcarriers = 16384;
    int num_antennas = 120;
    double element_spacing_m = 0.05;
    double alpha1 = 0.5;
    double alpha2 = 0.5;
    double total_power = 10.0;  // linear, in units of noise_power
    double noise_power = 1.0;
    double lightspeed_m_s = 3.0e8;

    double wavelength_m() const { return lightspeed_m_s / carrier_freq_hz; }

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

/// Receiver location relative to the first (reference) array element.
struct Position {
    double angle_rad = 0.0;
    double distance_m = 1.0;

    static Position from_degrees(double angle_deg, double distance_m);
    double angle_deg() const;
    void validate() const;

    friend bool operator==(const Position&, const Position&) = default;
};

/// Ordered subcarrier indices, entry n-1 drives antenna n.
struct SubcarrierPlan {
    std::vector<SubcarrierIndex> indices;
    PoolKind source = PoolKind::Custom;

    std::size_t size() const { return indices.size(); }
    SubcarrierIndex operator[](std::size_t i) const { return indices[i]; }

    /// Length N_T, every index in [0, N_S), all distinct.
    void validate(const SystemConfig& config) const;
};

enum class PhaseModel { Exact, Approx };

std::string_view to_string(PhaseModel model);
PhaseModel parse_phase_model(std::string_view name);

}  // namespace spwt
