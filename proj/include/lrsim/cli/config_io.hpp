#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lrsim/engine.hpp"

namespace lrsim::cli {

/// Parses an experiment document. Unknown keys and bad enum names are
/// ConfigError; missing keys take the library defaults.
ExperimentConfig config_from_json(const nlohmann::json& doc);

/// Every field, with units in the key names. Keys come out sorted.
nlohmann::json config_to_json(const ExperimentConfig& config);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Compact sorted-key serialization used for digests.
std::string canonical_config(const ExperimentConfig& config);

/// Lowercase hex SHA-256 of canonical_config.
std::string config_digest(const ExperimentConfig& config);

std::string sha256_hex(const std::string& data);

struct RunManifest {
  std::string config_digest;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string command;
  std::string started_utc;
  std::string finished_utc;
};

nlohmann::json manifest_to_json(const RunManifest& manifest);

/// Current UTC time as an ISO 8601 string.
std::string utc_now();

/// Shortest decimal that reads back to the same double; locale-independent.
std::string format_double(double x);

}  // namespace lrsim::cli
