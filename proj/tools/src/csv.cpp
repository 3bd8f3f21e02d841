#include "risfox/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "risfox/error.hpp"

namespace risfox::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string to_csv(const std::vector<CsvRow>& rows) {
  std::string out = "sweep,method,value,err,meta\n";
  for (const auto& r : rows)
    out += r.sweep + "," + r.method + "," + format_number(r.value) + "," + format_number(r.err) + "," + r.meta + "\n";
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("write failed for '" + path + "'");
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  const auto r = std::to_chars(buf, buf + 16, v, 16);
  std::string s(buf, r.ptr);
  return std::string(16 - s.size(), '0') + s;
}

std::string manifest_json(const Manifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = "risfox";
  j["version"] = RISFOX_VERSION_STRING;
  j["command"] = m.command;
  j["scenario_hash"] = hex64(m.scenario_hash);
  j["seed"] = m.seed;
  j["trials"] = m.trials;
  j["streams"] = m.streams;
  j["artifacts"] = m.artifacts;
  return j.dump(2) + "\n";
}

}  // namespace risfox::cli
