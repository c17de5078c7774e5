// SPDX-License-Identifier: Apache-2.0

#include "spwt/leak_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "spwt/model.hpp"

namespace spwt {

std::optional<AffinePattern> detect_affine_pattern(const SubcarrierPlan& plan)
{
    if (plan.size() < 3) throw std::invalid_argument("affine detection needs at least 3 antennas");
    const SubcarrierIndex slope = plan[1] - plan[0];
    for (std::size_t i = 2; i < plan.size(); ++i)
        if (plan[i] - plan[i - 1] != slope) return std::nullopt;
    return AffinePattern{slope, plan[0] - slope};
}

std::vector<DuplicateSpacing> audit_spacings(const SubcarrierPlan& plan)
{
    if (plan.size() < 3) throw std::invalid_argument("spacing audit needs at least 3 antennas");
    std::map<SubcarrierIndex, std::vector<std::pair<int, int>>> groups;
    for (std::size_t i = 0; i + 1 < plan.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        groups[std::llabs(plan[i + 1] - plan[i])].emplace_back(n, n + 1);
    }
    std::vector<DuplicateSpacing> out;
    for (auto& [spacing, pairs] : groups)
        if (pairs.size() >= 2) out.push_back({spacing, std::move(pairs)});
    return out;
}

Position predict_illegal_position(const SystemConfig& config, const Position& bob, const SubcarrierPlan& plan,
                                  int n1, int n2, MDiffs m_diffs)
{
    using R = IllegalPositionError::Reason;
    const int nt = static_cast<int>(plan.size());
    if (n1 < 1 || n1 + 1 >= n2 || n2 + 1 > nt)
        throw IllegalPositionError(R::BadPairs, "need 1 <= n1, n1 + 1 < n2, n2 + 1 <= N_T");

    const SubcarrierIndex dk = plan[n1] - plan[n1 - 1];
    if (plan[n2] - plan[n2 - 1] != dk)
        throw IllegalPositionError(R::UnequalSpacing, "adjacent spacings at n1 and n2 differ");
    const SubcarrierIndex dk_prime = plan[n2 - 1] - plan[n1 - 1] - dk;
    const std::int64_t gap = n2 - n1 - 1;
    const std::int64_t denom = gap * dk - dk_prime;
    if (denom == 0) throw IllegalPositionError(R::ZeroDenominator, "singular alignment system");

    const double p = static_cast<double>(gap * m_diffs.first - m_diffs.second) / static_cast<double>(denom);
    const double q = static_cast<double>(dk_prime * m_diffs.first - dk * m_diffs.second) / static_cast<double>(denom);

    const double c = config.lightspeed_m_s;
    Position out;
    out.distance_m = bob.distance_m - p * c / config.subchannel_bw_hz;
    if (q == 0.0) {
        out.angle_rad = bob.angle_rad;
    } else {
        const double arg = std::cos(bob.angle_rad) - c * q / (config.carrier_freq_hz * config.element_spacing_m);
        if (!(std::abs(arg) <= 1.0))
            throw IllegalPositionError(R::NoRealAngle, "arccos argument " + std::to_string(arg) + " outside [-1, 1]");
        out.angle_rad = std::acos(arg);
    }
    if (!(out.distance_m > 0.0))
        throw IllegalPositionError(R::BehindArray, "solution distance " + std::to_string(out.distance_m) + " m <= 0");
    return out;
}

double alignment_residual(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                          const Position& pos, std::span<const int> antennas, PhaseModel model)
{
    if (antennas.empty()) throw std::invalid_argument("alignment residual needs at least one antenna");
    ArrayEvaluator eval(config, plan, bob, model);
    std::vector<double> offsets(plan.size());
    eval.phase_offsets(pos, offsets);

    std::vector<double> phases;
    phases.reserve(antennas.size());
    for (int n : antennas) {
        if (n < 1 || n > static_cast<int>(plan.size())) throw std::out_of_range("antenna index out of range");
        double w = std::fmod(offsets[n - 1], kTwoPi);
        if (w < 0) w += kTwoPi;
        phases.push_back(w);
    }
    std::sort(phases.begin(), phases.end());

    // The smallest covering arc is the circle minus its largest empty gap.
    double largest_gap = kTwoPi - (phases.back() - phases.front());
    for (std::size_t i = 1; i < phases.size(); ++i) largest_gap = std::max(largest_gap, phases[i] - phases[i - 1]);
    return std::max(0.0, (kTwoPi - largest_gap) / 2.0);
}

Position affine_alignment_position(const SystemConfig& config, const Position& bob, const AffinePattern& pattern,
                                   std::int64_t m)
{
    if (pattern.slope == 0) throw std::invalid_argument("affine slope must be nonzero");
    Position out = bob;
    out.distance_m = bob.distance_m + static_cast<double>(m) * config.lightspeed_m_s /
                                          (static_cast<double>(pattern.slope) * config.subchannel_bw_hz);
    if (!(out.distance_m > 0.0))
        throw IllegalPositionError(IllegalPositionError::Reason::BehindArray, "aligned position lies behind the array");
    return out;
}

bool LeakRegion::contains(const Position& pos) const
{
    const double deg = pos.angle_deg();
    return deg >= angle_min_deg && deg <= angle_max_deg && pos.distance_m >= distance_min_m &&
           pos.distance_m <= distance_max_m;
}

std::vector<PredictedLeak> sweep_illegal_positions(const SystemConfig& config, const Position& bob,
                                                   const SubcarrierPlan& plan, int m_max, const LeakRegion& region)
{
    if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");
    // Antennas n (1-based) grouped by signed spacing k_{n+1} - k_n.
    std::map<SubcarrierIndex, std::vector<int>> by_spacing;
    for (std::size_t i = 0; i + 1 < plan.size(); ++i)
        by_spacing[plan[i + 1] - plan[i]].push_back(static_cast<int>(i) + 1);

    std::vector<PredictedLeak> out;
    for (const auto& [spacing, starts] : by_spacing) {
        for (std::size_t i = 0; i < starts.size(); ++i) {
            for (std::size_t j = i + 1; j < starts.size(); ++j) {
                const int n1 = starts[i];
                const int n2 = starts[j];
                if (n1 + 1 >= n2) continue;  // overlapping pairs share an antenna
                for (std::int64_t a = -m_max; a <= m_max; ++a) {
                    for (std::int64_t b = -m_max; b <= m_max; ++b) {
                        if (a == 0 && b == 0) continue;
                        Position pos;
                        try {
                            pos = predict_illegal_position(config, bob, plan, n1, n2, {a, b});
                        } catch (const IllegalPositionError&) {
                            continue;
                        }
                        if (!region.contains(pos)) continue;
                        PredictedLeak leak;
                        leak.position = pos;
                        leak.n1 = n1;
                        leak.n2 = n2;
                        leak.m_diffs = {a, b};
                        leak.antennas = {n1, n1 + 1, n2, n2 + 1};
                        leak.residual_approx =
                            alignment_residual(config, plan, bob, pos, leak.antennas, PhaseModel::Approx);
                        leak.residual_exact =
                            alignment_residual(config, plan, bob, pos, leak.antennas, PhaseModel::Exact);
                        out.push_back(leak);
                    }
                }
            }
        }
    }
    return out;
}

LeakReport analyze_leaks(const SystemConfig& config, const Position& bob, const SubcarrierPlan& plan, int m_max,
                         const LeakRegion& region)
{
    LeakReport report;
    report.affine_pattern = detect_affine_pattern(plan);
    report.duplicate_spacings = audit_spacings(plan);
    report.predicted_leaks = sweep_illegal_positions(config, bob, plan, m_max, region);
    return report;
}

}  // namespace spwt
