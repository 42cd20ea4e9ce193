#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dpamimo/scenario.hpp"

namespace dpamimo {

/// Parses a scenario document (JSON, `schema_version: 1`). Unknown keys are
/// rejected; every error is a ConfigError carrying the field path.
ScenarioConfig parse_scenario(std::string_view text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Serializes back into the same schema. parse_scenario(to_json(c)) == c.
std::string to_json(const ScenarioConfig& config);

/// Band catalog alone, in the scenario's "catalog" array form.
std::string catalog_to_json(const BandCatalog& catalog);
BandCatalog catalog_from_json(std::string_view text);

/// Expands a sweep document:
///   {"schema_version": 1, "base": <scenario object or path>,
///    "grid": {"<field path>": [values...], ...}}
/// Field paths use '/' separators ("grip", "requirement/min_throughput_bps").
/// The product is taken over keys in sorted order, last key varying fastest.
/// Each point that fails to parse becomes an error entry instead of a config.
struct GridPoint {
    std::string label;  // "grip=free_space,seed=3"
    std::optional<ScenarioConfig> config;
    std::optional<std::string> error;
};
std::vector<GridPoint> expand_grid(std::string_view text,
                                   const std::filesystem::path& base_dir = {});

std::string read_file(const std::filesystem::path& path);

}  // namespace dpamimo
