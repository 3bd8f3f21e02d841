#pragma once

#include <cstdint>
#include <string>

#include "risfox/montecarlo.hpp"

namespace risfox::scenario {

// Parsed scenario file: flat `key = value` lines, `#` starts a comment.
struct Scenario {
  mc::ScenarioConfig config;
  mc::MCConfig mc;
  std::string source;       // file text as read
  std::uint64_t hash = 0;   // FNV-1a of the canonical dump
};

// Throws ConfigError carrying the offending line and key.
Scenario parse(const std::string& text);
Scenario load(const std::string& path);
// Canonical dump of every key, sorted; parse(canonical(s)) reproduces s.
std::string canonical(const Scenario& s);
std::uint64_t fnv1a(const std::string& text);

}  // namespace risfox::scenario
