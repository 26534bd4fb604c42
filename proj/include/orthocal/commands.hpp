#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "orthocal/config.hpp"
#include "orthocal/identification.hpp"
#include "orthocal/measurement_io.hpp"
#include "orthocal/table1.hpp"
#include "orthocal/virtual_rig.hpp"

namespace orthocal {

/// Outcome of one tool command: human-readable text plus the same content as
/// structured data. `passed` is false when a comparison inside the command failed.
struct Report {
  std::string text;
  nlohmann::ordered_json data;
  bool passed = true;
  std::optional<CalibrationResult> calibration;

  /// Pretty-printed JSON with round-trip precision for every number.
  std::string json() const;
};

/// Measurement CSV produced by running the protocol on the configured rig.
std::string simulate_measurements(const RunConfig& config, MeasurementForm form);

Report identify(const RunConfig& config, const MeasurementSet& measurements,
                const std::string& source = {});

/// Published prototype experiments with published rms values compared at `tolerance` (mm).
/// Posture angles come from the config override when present, otherwise from
/// a fit on Experiment #2.
Report reproduce_table1(const RunConfig& config, double tolerance);

struct MonteCarloOutput {
  std::string csv;
  Report report;
};

MonteCarloOutput run_monte_carlo(const RunConfig& config, int trials, MeasurementForm form);

/// Fast internal consistency checks of the whole pipeline.
Report selftest();

}  // namespace orthocal
