#include "manifest.hpp"

#include <cstdio>

#include "json.hpp"
#include "terndio/errors.hpp"

namespace terndio::cli {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = tool;
  j["version"] = version;
  j["subcommand"] = subcommand;
  j["argv"] = argv;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  j["parameters"] = params;
  j["seed"] = seed;
  j["seed_from_env"] = seed_from_env;
  j["wall_seconds"] = wall_seconds;
  nlohmann::ordered_json outs = nlohmann::ordered_json::array();
  for (const auto& o : outputs) outs.push_back({{"target", o.target}, {"fnv1a", o.fnv1a}});
  j["outputs"] = outs;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    RunManifest m;
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.subcommand = j.at("subcommand").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    for (auto it = j.at("parameters").begin(); it != j.at("parameters").end(); ++it) {
      m.parameters.emplace_back(it.key(), it.value().get<std::string>());
    }
    m.seed = j.at("seed").get<std::uint64_t>();
    m.seed_from_env = j.value("seed_from_env", false);
    m.wall_seconds = j.value("wall_seconds", 0.0);
    for (const auto& o : j.at("outputs")) {
      m.outputs.push_back({o.at("target").get<std::string>(), o.at("fnv1a").get<std::string>()});
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace terndio::cli
