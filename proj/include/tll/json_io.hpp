#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tll/bounds.hpp"
#include "tll/configuration.hpp"
#include "tll/energy.hpp"
#include "tll/optimizer.hpp"
#include "tll/potential.hpp"
#include "tll/spectral.hpp"

// JSON encodings of the library's value types. Parsers throw tll::Error
// naming the offending field.

namespace tll::io {

using json = nlohmann::json;

json to_json(const PotentialSpec& spec);
PotentialSpec potential_from_json(const json& j);

json to_json(const Domain& domain);
Domain domain_from_json(const json& j);

json to_json(const Configuration& config);
Configuration configuration_from_json(const json& j);
/// One coordinate per line; blank lines and lines starting with '#' are skipped.
Configuration configuration_from_csv(const std::string& text, const Domain& domain);

json to_json(const Measure& mu);
Measure measure_from_json(const json& j);

AnnealSchedule schedule_from_json(const json& j);
json to_json(const AnnealSchedule& schedule);

json to_json(const ValidationReport& report);
json to_json(const EnergyReport& report);
json to_json(const BoundReport& report);
json to_json(const ChainAudit& audit);
json to_json(const Certificate& certificate);
json to_json(const OptimizationResult& result);
json to_json(const StabilityReport& report);
json to_json(const DegenerateMember& member);
json to_json(const UniquenessReport& report);
json to_json(const TowerProfile& profile);
json to_json(const ScanReport& report);
json to_json(const KSpaceResult& result);

std::string read_file(const std::filesystem::path& path);
json read_json_file(const std::filesystem::path& path);

/// Loads a configuration from .json or (with `csv_domain`) from CSV.
Configuration load_configuration(const std::filesystem::path& path, const Domain* csv_domain);

/// 64-bit FNV-1a digest, hex encoded.
std::string digest(const std::string& payload);

/// Renders with 12 significant digits.
std::string format_number(double value);

}  // namespace tll::io
