// SPDX-License-Identifier: Apache-2.0

#include "spwt/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spwt {

namespace {

void check_antenna(const SystemConfig& config, int antenna)
{
    if (antenna < 1 || antenna > config.num_antennas)
        throw std::out_of_range("antenna index " + std::to_string(antenna) + " outside [1, " +
                                std::to_string(config.num_antennas) + "]");
}

void check_plan_length(const SystemConfig& config, const SubcarrierPlan& plan)
{
    if (plan.size() != static_cast<std::size_t>(config.num_antennas))
        throw std::invalid_argument("plan length does not match N_T");
}

}  // namespace

double element_distance(const SystemConfig& config, const Position& pos, int antenna)
{
    check_antenna(config, antenna);
    return pos.distance_m - (antenna - 1) * config.element_spacing_m * std::cos(pos.angle_rad);
}

double steering_phase(const SystemConfig& config, const SubcarrierPlan& plan, const Position& pos, int antenna,
                      PhaseModel model)
{
    check_antenna(config, antenna);
    check_plan_length(config, plan);
    const double k_df = static_cast<double>(plan[antenna - 1]) * config.subchannel_bw_hz;
    const double array_term =
        config.carrier_freq_hz * (antenna - 1) * config.element_spacing_m * std::cos(pos.angle_rad);
    // The exact form expands to 2 pi [k df R_n - f_c (R - R_n)] / c; evaluating it
    // this way avoids cancelling two ~f_c R / c terms.
    const double range = model == PhaseModel::Exact ? element_distance(config, pos, antenna) : pos.distance_m;
    return kTwoPi * (k_df * range - array_term) / config.lightspeed_m_s;
}

ArrayEvaluator::ArrayEvaluator(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                               PhaseModel model)
    : config_(config), bob_(bob), model_(model), cos_bob_(std::cos(bob.angle_rad))
{
    check_plan_length(config, plan);
    subcarrier_offset_hz_.reserve(plan.size());
    element_offset_m_.reserve(plan.size());
    for (std::size_t n = 0; n < plan.size(); ++n) {
        subcarrier_offset_hz_.push_back(static_cast<double>(plan[n]) * config.subchannel_bw_hz);
        element_offset_m_.push_back(static_cast<double>(n) * config.element_spacing_m);
    }
}

void ArrayEvaluator::phase_offsets(const Position& pos, std::span<double> out) const
{
    const double d_cos = cos_bob_ - std::cos(pos.angle_rad);
    const double d_range = bob_.distance_m - pos.distance_m;
    const double scale = kTwoPi / config_.lightspeed_m_s;
    const double fc = config_.carrier_freq_hz;
    const bool exact = model_ == PhaseModel::Exact;
    for (std::size_t n = 0; n < element_offset_m_.size(); ++n) {
        const double path = element_offset_m_[n] * d_cos;
        const double range_diff = exact ? d_range - path : d_range;
        out[n] = scale * (subcarrier_offset_hz_[n] * range_diff - fc * path);
    }
}

ArrayEvaluator::Response ArrayEvaluator::evaluate(const Position& pos) const
{
    const std::size_t nt = element_offset_m_.size();
    std::vector<double> offsets(nt);
    phase_offsets(pos, offsets);

    std::vector<Complex> terms(nt);
    Complex sum{0.0, 0.0};
    for (std::size_t n = 0; n < nt; ++n) {
        terms[n] = std::polar(1.0, offsets[n]);
        sum += terms[n];
    }

    // ||(I - h_b h_b^H / N_T) h||^2 expressed through the offsets: after rotating
    // antenna n by exp(j psi_n(pos)), the n-th residual entry is 1 - conj(t_n) s / N_T.
    const double ntd = static_cast<double>(nt);
    double projected = 0.0;
    for (std::size_t n = 0; n < nt; ++n)
        projected += std::norm(1.0 - std::conj(terms[n]) * sum / ntd);

    Response r;
    r.gain = sum / std::sqrt(ntd);
    r.an_power = projected / (ntd - 1.0);
    const double signal = config_.alpha1 * config_.total_power * std::norm(r.gain) / ntd;
    const double interference = config_.alpha2 * config_.total_power * r.an_power / ntd;
    r.sinr = signal / (interference + config_.noise_power);
    return r;
}

double phase_offset(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                    const Position& pos, int antenna, PhaseModel model)
{
    check_antenna(config, antenna);
    ArrayEvaluator eval(config, plan, bob, model);
    std::vector<double> offsets(plan.size());
    eval.phase_offsets(pos, offsets);
    return offsets[antenna - 1];
}

Complex steering_gain(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                      const Position& pos, PhaseModel model)
{
    return ArrayEvaluator(config, plan, bob, model).evaluate(pos).gain;
}

ComplexVec channel_vector(const SystemConfig& config, const SubcarrierPlan& plan, const Position& pos,
                          PhaseModel model)
{
    check_plan_length(config, plan);
    ComplexVec h(plan.size());
    for (int n = 1; n <= config.num_antennas; ++n)
        h[n - 1] = std::polar(1.0, -steering_phase(config, plan, pos, n, model));
    return h;
}

ComplexVec matched_precoder(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                            PhaseModel model)
{
    ComplexVec v = channel_vector(config, plan, bob, model);
    const double norm = 1.0 / std::sqrt(static_cast<double>(v.size()));
    for (auto& x : v) x *= norm;
    return v;
}

ComplexVec an_vector(std::span<const Complex> h_bob, std::span<const Complex> z)
{
    const std::size_t nt = h_bob.size();
    if (nt < 2) throw std::invalid_argument("AN projection needs N_T >= 2");
    if (z.size() != nt) throw std::invalid_argument("AN seed length does not match channel length");

    Complex inner{0.0, 0.0};  // h^H z
    for (std::size_t n = 0; n < nt; ++n) inner += std::conj(h_bob[n]) * z[n];
    const double ntd = static_cast<double>(nt);
    const double scale = 1.0 / std::sqrt(ntd - 1.0);

    ComplexVec w(nt);
    for (std::size_t n = 0; n < nt; ++n) w[n] = (z[n] - h_bob[n] * inner / ntd) * scale;
    return w;
}

ComplexVec draw_circular_gaussian(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> component(0.0, std::sqrt(0.5));
    ComplexVec z(n);
    for (auto& x : z) {
        const double re = component(rng);
        const double im = component(rng);
        x = Complex{re, im};
    }
    return z;
}

double sinr(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob, const Position& pos,
            const SinrMode& mode, PhaseModel model)
{
    if (const auto* mc = std::get_if<MonteCarloSinr>(&mode)) {
        if (mc->num_realizations < 1) throw std::invalid_argument("Monte-Carlo SINR needs >= 1 realization");
        const ComplexVec h_bob = channel_vector(config, plan, bob, model);
        const ComplexVec h = channel_vector(config, plan, pos, model);
        const double ntd = static_cast<double>(h.size());

        std::mt19937_64 rng(mc->seed);
        double an_sum = 0.0;
        for (int i = 0; i < mc->num_realizations; ++i) {
            const ComplexVec z = draw_circular_gaussian(h.size(), rng);
            const ComplexVec w = an_vector(h_bob, z);
            Complex hw{0.0, 0.0};
            for (std::size_t n = 0; n < h.size(); ++n) hw += std::conj(h[n]) * w[n];
            an_sum += std::norm(hw);
        }
        const double an_power = an_sum / mc->num_realizations;
        const double g2 = std::norm(steering_gain(config, plan, bob, pos, model));
        const double signal = config.alpha1 * config.total_power * g2 / ntd;
        return signal / (config.alpha2 * config.total_power * an_power / ntd + config.noise_power);
    }
    return ArrayEvaluator(config, plan, bob, model).evaluate(pos).sinr;
}

double approx_phase_error_bound(const SystemConfig& config, const SubcarrierPlan& plan)
{
    SubcarrierIndex k_max = 0;
    for (auto k : plan.indices) k_max = std::max(k_max, k);
    return kTwoPi * static_cast<double>(k_max) * config.subchannel_bw_hz * (config.num_antennas - 1) *
           config.element_spacing_m / config.lightspeed_m_s;
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace spwt
