// SPDX-License-Identifier: Apache-2.0
//
// JSON/CSV serialization of domain objects, digests and number formatting.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "spwt/field.hpp"
#include "spwt/leak_analysis.hpp"
#include "spwt/randomizer.hpp"
#include "spwt/security.hpp"
#include "spwt/subcarrier_sets.hpp"
#include "spwt/types.hpp"

namespace spwt {

/// Shortest decimal that round-trips to the same double ('.' separator).
std::string format_double(double value);

std::string sha256_hex(std::string_view data);
std::string file_sha256(const std::filesystem::path& path);

/// Short digest of everything a field depends on besides the grid.
std::string field_fingerprint(const SystemConfig& config, const SubcarrierPlan& plan, const Position& bob,
                              PhaseModel model);

void to_json(nlohmann::json& j, const SystemConfig& config);
void from_json(const nlohmann::json& j, SystemConfig& config);
void to_json(nlohmann::json& j, const Position& pos);
void to_json(nlohmann::json& j, const SubcarrierPool& pool);
void to_json(nlohmann::json& j, const SubcarrierPlan& plan);
void from_json(const nlohmann::json& j, SubcarrierPlan& plan);
void to_json(nlohmann::json& j, const RpParams& params);
void to_json(nlohmann::json& j, const RpTrace& trace);
void to_json(nlohmann::json& j, const LeakReport& report);
void to_json(nlohmann::json& j, const PeakReport& report);
void to_json(nlohmann::json& j, const Axis& axis);

/// Axes and layout description accompanying write_field_binary output.
nlohmann::json field_sidecar(const SinrField& field);

/// sweep_var,kind,M,log10_p,feasible; log10_p is empty on infeasible rows.
void write_intercept_csv(std::ostream& os, std::span<const InterceptRow> rows);

}  // namespace spwt
