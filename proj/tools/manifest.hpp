#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace pacd::cli {

struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string version;
  std::string started;
  std::string finished;
  std::vector<std::pair<std::string, std::string>> outputs;  // path, sha256
};

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

nlohmann::json to_json(const RunManifest& m);

/// Digests every output, stamps the finish time and writes
/// <first output>.manifest.json. Returns the manifest path.
std::string finish_manifest(RunManifest& m);

}  // namespace pacd::cli
