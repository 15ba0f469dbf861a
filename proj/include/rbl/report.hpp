#pragma once
#include <optional>
#include <string>
#include <vector>

namespace rbl {

// An evaluated theoretical quantity next to its empirical counterpart,
// with a tolerance verdict.
struct BoundReport {
  std::string name;
  double theory_value = 0.0;
  std::optional<double> empirical_value;
  std::optional<double> std_error;
  bool pass = true;
  std::string meta;
};

std::string format_report_table(const std::vector<BoundReport>& reports);

}  // namespace rbl
