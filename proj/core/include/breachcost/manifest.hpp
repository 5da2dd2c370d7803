#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace breachcost {

// What a CLI run saw and produced. The timestamp here is the only one the
// tool ever writes; data outputs stay byte-identical across reruns.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> config;  // resolved key -> value
  std::map<std::string, std::string> inputs;  // path -> content digest
  std::vector<std::string> outputs;
  std::vector<std::string> warnings;
  std::string timestamp;  // RFC 3339, UTC
};

std::uint64_t fnv1a64(std::string_view bytes);

// "fnv1a64:<16 hex digits>" over the file's bytes.
std::string digest_file(const std::string& path);

std::string rfc3339_utc_now();

std::string to_json(const RunManifest& manifest);

}  // namespace breachcost
