#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "orthocal/identification.hpp"
#include "orthocal/leg_model.hpp"
#include "orthocal/types.hpp"

namespace orthocal {

/// A virtual Orthoglide with known encoder offsets and a pair of dial gauges.
struct RigConfig {
  Geometry geometry;
  JointOffsets true_offsets;
  double gauge_resolution = 0.010;  // mm
  double noise_std = 0.007;         // mm, per reading
  int repetitions = 3;
  std::uint64_t seed = 1;
  double offset_bound_fraction = kDefaultOffsetBoundFraction;

  void validate() const;
};

using Rng = std::mt19937_64;

/// Round-half-even onto the resolution grid.
double quantize(double value, double resolution);

/// One gauge reading at the actual posture reached when the nominal test
/// posture is commanded: exact transverse leg coordinate + N(0, noise_std),
/// quantized to the gauge resolution.
double simulate_reading(const RigConfig& rig, Axis axis, PostureKind kind, GaugeDirection dir,
                        Rng& rng);

/// Raw readings of one protocol execution.
struct ProtocolRun {
  /// Motion sequence executed for each leg and repetition.
  static constexpr std::array<PostureKind, 4> kSequence{PostureKind::Zero, PostureKind::Max,
                                                        PostureKind::Min, PostureKind::Zero};

  int repetitions = 0;
  /// Flat storage indexed by reading_index().
  std::vector<double> readings;

  static std::size_t reading_index(Axis leg, GaugeDirection dir, int repetition, int step,
                                   int repetitions);
  double reading(Axis leg, GaugeDirection dir, int repetition, int step) const;

  /// Largest |final zero - initial zero| over all legs, gauges and repetitions.
  double max_zero_drift() const;

  friend bool operator==(const ProtocolRun&, const ProtocolRun&) = default;
};

struct ProtocolResult {
  ProtocolRun run;
  MeasurementVector full;     // full_layout() order
  MeasurementVector reduced;  // reduced_layout() order

  const MeasurementVector& measurements(MeasurementForm form) const {
    return form == MeasurementForm::Full ? full : reduced;
  }
};

/// Zero -> Max -> Min -> Zero for every leg and repetition; per-repetition
/// deltas against the initial zero are averaged over the repetitions.
ProtocolResult run_protocol(const RigConfig& rig);

/// Per-measurement noise std of the averaged deltas:
/// sqrt(2 (noise_std^2 + resolution^2 / 12) / repetitions).
double effective_measurement_noise(const RigConfig& rig);

struct TrialEstimate {
  JointOffsets offsets;
  double sigma_hat = 0.0;
  double rms_after_predicted = 0.0;
};

struct MonteCarloSummary {
  MeasurementForm form = MeasurementForm::Full;
  std::vector<TrialEstimate> trials;
  JointOffsets mean;
  JointOffsets bias;  // mean - true offsets
  JointOffsets std;   // sample std of the estimates
  double mean_sigma_hat = 0.0;
  double std_sigma_hat = 0.0;
  double effective_noise = 0.0;
};

/// Seed of trial `k`: derived from the rig seed only, so trials are independent
/// of evaluation order.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

MonteCarloSummary monte_carlo_identification(const RigConfig& rig, int trials,
                                             MeasurementForm form);

}  // namespace orthocal
