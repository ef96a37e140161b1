#pragma once

// JSON configuration documents (schema in docs/config.schema.json).

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecoroute/core.hpp"

namespace ecoroute {

/// Applies `key=value` overrides (dotted paths, numeric array indices) to a
/// config document. Values parse as JSON when possible and as strings
/// otherwise. Keys outside the schema are rejected.
void apply_overrides(nlohmann::json& doc, const std::vector<std::string>& overrides);

/// Parses, resolves defaults (missing deadlines, a "critical" harvest mean,
/// missing catalog weights) and validates a config document.
SystemConfig parse_config(const nlohmann::json& doc);

SystemConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

/// Reads a JSON document; parse failures become ValidationError.
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace ecoroute
