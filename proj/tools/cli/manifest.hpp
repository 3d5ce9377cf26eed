#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace terndio::cli {

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

struct OutputDigest {
  std::string target;  ///< file path, or "-" for standard output
  std::string fnv1a;
};

struct RunManifest {
  std::string tool = "terndio";
  std::string version;
  std::string subcommand;
  std::vector<std::string> argv;  ///< the command line as given, replayed verbatim
  std::vector<std::pair<std::string, std::string>> parameters;  ///< resolved values
  std::uint64_t seed = 0;
  bool seed_from_env = false;
  double wall_seconds = 0.0;
  std::vector<OutputDigest> outputs;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
};

}  // namespace terndio::cli
