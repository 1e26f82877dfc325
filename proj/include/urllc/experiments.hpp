#pragma once

#include <string>

#include "urllc/scenario.hpp"

namespace urllc {

/// Closed forms, enumeration totals and the verbatim/coherent delta; one CSV
/// row per profile in the document.
std::string analytic_report_csv(const ScenarioDoc& doc);

/// Reliability-region boundary sweep (x, y_boundary, feasible) using the
/// document's [sweep] section and first profile.
std::string region_report_csv(const ScenarioDoc& doc);

struct SimulateResult {
  McStats stats;
  std::string csv;
  std::string traces;  // empty unless trace_count > 0
};

SimulateResult simulate_report(const ScenarioDoc& doc, uint64_t trials, uint64_t seed,
                               int trace_count = 0);

struct CompareResult {
  ModeComparison comparison;
  std::string csv;
};

CompareResult compare_report(const ScenarioDoc& doc, uint64_t trials, uint64_t seed);

/// Fixed-format float for CSV cells (12 significant digits).
std::string csv_num(double v);

}  // namespace urllc
