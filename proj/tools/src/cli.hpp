#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fibwalk::cli {

/// Key/value parameters read from a config file. Keys use the flag spelling
/// with '_' in place of '-' (theta_a for --theta-a).
struct RunConfig {
  std::string command;  // set only by the sidecar form
  std::vector<std::pair<std::string, nlohmann::json>> entries;
};

/// Accepts a flat JSON object, a sidecar written by this tool
/// ({"command": ..., "parameters": {...}, ...}), or "key = value" lines.
/// Throws ValidationError for missing files and malformed documents.
RunConfig load_config(const std::filesystem::path& path);

/// Full command line without the program name. Returns the process exit code:
/// 0 on success, 1 for invalid input, 2 when the computation itself fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibwalk::cli
