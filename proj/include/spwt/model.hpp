// SPDX-License-Identifier: Apache-2.0
//
// Array geometry, per-antenna propagation phases, matched-filter precoding,
// artificial-noise projection and receive SINR.
//
// Conventions: antennas are numbered 1..N_T with antenna 1 as the phase
// reference. The channel vector h(pos) has entries exp(-j psi_n(pos)) and the
// precoder is v = h(bob)/sqrt(N_T), so h(bob)^H v = sqrt(N_T).

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <variant>

#include "spwt/types.hpp"

namespace spwt {

/// R_n = R - (n-1) d cos(theta). Throws if n is outside [1, N_T].
double element_distance(const SystemConfig& config, const Position& pos, int antenna);

/// Raw (unwrapped) phase psi_n(pos) in radians.
///   exact:  2 pi (f_c + k_n df) R_n / c - 2 pi f_c R / c
///   approx: 2 pi k_n df R / c - 2 pi f_c (n-1) d cos(theta) / c
double steering_phase(const SystemConfig& config, const SubcarrierPlan& plan, const Position& pos,
                      int antenna, PhaseModel model = PhaseModel::Exact);

/// phi_n - psi_n(pos) with phi_n = psi_n(bob), computed without forming the
/// large absolute phases. Exactly zero when pos == bob.
double phase_offset(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                    const Position& pos, int antenna, PhaseModel model = PhaseModel::Exact);

/// g = (1/sqrt(N_T)) sum_n exp(j (phi_n - psi_n(pos))). |g| <= sqrt(N_T), with
/// equality at bob.
Complex steering_gain(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                      const Position& pos, PhaseModel model = PhaseModel::Exact);

ComplexVec channel_vector(const SystemConfig& config, const SubcarrierPlan& plan, const Position& pos,
                          PhaseModel model = PhaseModel::Exact);

ComplexVec matched_precoder(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                            PhaseModel model = PhaseModel::Exact);

/// w = (I - h h^H / N_T) z / sqrt(N_T - 1). Requires unit-modulus h (so that
/// ||h||^2 = N_T) and N_T >= 2; then h^H w = 0 and E||w||^2 = 1 for z ~ CN(0, I).
ComplexVec an_vector(std::span<const Complex> h_bob, std::span<const Complex> z);

/// i.i.d. CN(0, 1) entries.
ComplexVec draw_circular_gaussian(std::size_t n, std::mt19937_64& rng);

struct AnalyticSinr {};
struct MonteCarloSinr {
    int num_realizations = 10000;
    std::uint64_t seed = 1;
};
using SinrMode = std::variant<AnalyticSinr, MonteCarloSinr>;

/// Linear SINR at pos for a link steered to bob. The channel is normalized to
/// unit norm, which puts the SINR at bob at alpha1 * P_s / noise:
///
///   SINR = alpha1 P_s |g|^2 / N_T / (alpha2 P_s E|h^H w|^2 / N_T + noise)
///
/// Analytic mode uses E|h^H w|^2 = ||P h||^2 / (N_T - 1); Monte-Carlo mode
/// averages |h^H w|^2 over fresh AN draws seeded from the mode's seed.
double sinr(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob, const Position& pos,
            const SinrMode& mode = AnalyticSinr{}, PhaseModel model = PhaseModel::Exact);

/// Upper bound on |psi_exact - psi_approx| over every antenna and position:
/// 2 pi k_max df (N_T - 1) d / c.
double approx_phase_error_bound(const SystemConfig& config, const SubcarrierPlan& plan);

double to_db(double linear);
double from_db(double db);

/// Evaluates many positions against one (config, plan, bob) triple.
class ArrayEvaluator {
public:
    struct Response {
        Complex gain;     // steering_gain
        double an_power;  // E|h^H w|^2 with unit-modulus h
        double sinr;      // linear
    };

    ArrayEvaluator(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                   PhaseModel model = PhaseModel::Exact);

    Response evaluate(const Position& pos) const;

    /// Per-antenna phase offsets phi_n - psi_n(pos).
    void phase_offsets(const Position& pos, std::span<double> out) const;

    const SystemConfig& config() const { return config_; }
    const Position& bob() const { return bob_; }

private:
    SystemConfig config_;
    Position bob_;
    PhaseModel model_;
    double cos_bob_;
    std::vector<double> subcarrier_offset_hz_;  // k_n * df
    std::vector<double> element_offset_m_;      // (n-1) * d
};

}  // namespace spwt
