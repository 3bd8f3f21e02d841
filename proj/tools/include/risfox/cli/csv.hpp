#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace risfox::cli {

struct CsvRow {
  std::string sweep;
  std::string method;
  double value = 0.0;
  double err = 0.0;
  std::string meta;  // key=value;key=value
};

// Shortest round-trip decimal text, independent of the global locale.
std::string format_number(double x);

std::string to_csv(const std::vector<CsvRow>& rows);
void write_text(const std::string& path, const std::string& text);

struct Manifest {
  std::string command;
  std::uint64_t scenario_hash = 0;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  int streams = 0;
  std::vector<std::string> artifacts;
};

std::string manifest_json(const Manifest& m);
std::string hex64(std::uint64_t v);

}  // namespace risfox::cli
