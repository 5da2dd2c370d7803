#include "breachcost/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace breachcost {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open input file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  char hex[32];
  std::snprintf(hex, sizeof hex, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(buffer.str())));
  return hex;
}

std::string rfc3339_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string to_json(const RunManifest& manifest) {
  nlohmann::json j;
  j["subcommand"] = manifest.subcommand;
  j["config"] = manifest.config;
  j["inputs"] = manifest.inputs;
  j["outputs"] = manifest.outputs;
  j["warnings"] = manifest.warnings;
  j["timestamp"] = manifest.timestamp;
  return j.dump(2) + "\n";
}

}  // namespace breachcost
