#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "waveobs/grid.hpp"

namespace waveobs::cli {

/// Parses a JSON scenario. Missing keys take the defaults of ScenarioConfig;
/// unknown keys, wrong types and violated invariants raise ConfigError.
/// `has_source` records whether the document named a source explicitly.
ScenarioConfig parse_config(const std::string& text);

/// Reads and parses `path`; an unreadable file raises IoError.
ScenarioConfig load_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const ScenarioConfig& cfg);

}  // namespace waveobs::cli
