#pragma once

#include <string>
#include <vector>

namespace risfox::cli {

enum class Suite { fast, full };
enum class Fault { none, contour };

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double observed = 0.0;
  bool passed = false;
  std::string detail;
};

// Known inconsistencies in the source formulas, with a measured quantity where one exists.
struct DiscrepancyNote {
  std::string id;
  std::string text;
  double measured = 0.0;
};

struct ValidationReport {
  std::string suite;
  std::vector<CheckResult> checks;
  std::vector<DiscrepancyNote> notes;

  bool passed() const;
  std::string to_text() const;
  std::string to_json() const;
};

ValidationReport validate(Suite suite, Fault fault = Fault::none, int threads = 0);

}  // namespace risfox::cli
