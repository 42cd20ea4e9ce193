#pragma once

#include <string>
#include <vector>

#include "dpamimo/scenario.hpp"

namespace dpamimo {

/// Canonical machine report: keys sorted, floats printed with 6 significant
/// digits, two-space indentation, trailing newline. Byte-stable for a given report.
std::string report_to_json(const MetricsReport& report);

/// Flat per-module CSV with a header row.
std::string report_to_csv(const MetricsReport& report);

/// JSON array of sweep results in input order.
std::string sweep_to_json(const std::vector<SweepResult>& results,
                          const std::vector<std::string>& labels = {});

std::string comparison_to_csv(const std::vector<ComparisonRow>& rows);

/// printf("%.6g") with "null" for non-finite values.
std::string format_number(double value);

}  // namespace dpamimo
