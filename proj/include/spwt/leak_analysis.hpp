// SPDX-License-Identifier: Apache-2.0
//
// Audits of subcarrier plans for patterns that let signals from several
// antennas combine coherently away from the intended receiver, and the
// closed-form positions where two equally spaced adjacent antenna pairs align.
// Predictions use the approximate phase model, under which they are exact.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spwt/types.hpp"

namespace spwt {

/// k_n = slope * n + intercept with n = 1..N_T.
struct AffinePattern {
    std::int64_t slope = 0;
    std::int64_t intercept = 0;
    friend bool operator==(const AffinePattern&, const AffinePattern&) = default;
};

std::optional<AffinePattern> detect_affine_pattern(const SubcarrierPlan& plan);

/// Adjacent pairs (n, n+1), 1-based, that share one absolute spacing.
struct DuplicateSpacing {
    SubcarrierIndex spacing = 0;
    std::vector<std::pair<int, int>> pairs;
};

/// Groups of >= 2 adjacent pairs with equal |k_{n+1} - k_n|, ordered by
/// spacing. Empty means the plan is unequally spaced.
std::vector<DuplicateSpacing> audit_spacings(const SubcarrierPlan& plan);

/// Integer offsets (m2 - m1, m3 - m2) selecting one member of the solution
/// family.
struct MDiffs {
    std::int64_t first = 0;
    std::int64_t second = 0;
};

class IllegalPositionError : public std::domain_error {
public:
    enum class Reason { BadPairs, UnequalSpacing, ZeroDenominator, NoRealAngle, BehindArray };
    IllegalPositionError(Reason reason, const std::string& what) : std::domain_error(what), reason_(reason) {}
    Reason reason() const { return reason_; }

private:
    Reason reason_;
};

/// Position where antennas {n1, n1+1, n2, n2+1} combine coherently, given
/// k_{n1+1} - k_{n1} = k_{n2+1} - k_{n2}. Throws IllegalPositionError when the
/// pairs are invalid, the system is singular, or the solution has no real
/// angle or lies at R <= 0. m_diffs = (0, 0) returns bob.
Position predict_illegal_position(const SystemConfig& config, const Position& bob, const SubcarrierPlan& plan,
                                  int n1, int n2, MDiffs m_diffs);

/// Half-width (radians) of the smallest arc holding every phase
/// phi_n - psi_n(pos) of the given 1-based antennas; 0 means coherent.
double alignment_residual(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                          const Position& pos, std::span<const int> antennas,
                          PhaseModel model = PhaseModel::Approx);

/// For an affine plan with the given slope: the position at bob's angle, shifted
/// in range by m * c / (slope * df), where every antenna aligns.
Position affine_alignment_position(const SystemConfig& config, const Position& bob, const AffinePattern& pattern,
                                   std::int64_t m);

struct LeakRegion {
    double angle_min_deg = 0.0;
    double angle_max_deg = 180.0;
    double distance_min_m = 0.0;
    double distance_max_m = 1000.0;

    bool contains(const Position& pos) const;
};

struct PredictedLeak {
    Position position;
    int n1 = 0;
    int n2 = 0;
    MDiffs m_diffs;
    std::array<int, 4> antennas{};
    double residual_approx = 0.0;
    double residual_exact = 0.0;
};

struct LeakReport {
    std::optional<AffinePattern> affine_pattern;
    std::vector<DuplicateSpacing> duplicate_spacings;
    std::vector<PredictedLeak> predicted_leaks;
};

/// Every (n1, n2) with equal signed adjacent spacings, every m_diffs with
/// |m| <= m_max except (0, 0), keeping real positions inside `region`.
std::vector<PredictedLeak> sweep_illegal_positions(const SystemConfig& config, const Position& bob,
                                                   const SubcarrierPlan& plan, int m_max, const LeakRegion& region);

LeakReport analyze_leaks(const SystemConfig& config, const Position& bob, const SubcarrierPlan& plan, int m_max,
                         const LeakRegion& region);

}  // namespace spwt
