#include "orthocal/virtual_rig.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orthocal/error.hpp"

namespace orthocal {

void RigConfig::validate() const {
  geometry.validate();
  std::ostringstream why;
  if (!(gauge_resolution > 0.0) || !std::isfinite(gauge_resolution)) {
    why << "gauge resolution must be positive";
  } else if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) {
    why << "noise std must be non-negative";
  } else if (repetitions < 1) {
    why << "at least one repetition is required";
  } else {
    check_offsets(true_offsets, geometry, offset_bound_fraction);
    return;
  }
  throw Error(ErrorCode::ConfigError, why.str());
}

double quantize(double value, double resolution) {
  return std::nearbyint(value / resolution) * resolution;
}

namespace {

double noisy(double exact, const RigConfig& rig, Rng& rng) {
  double v = exact;
  if (rig.noise_std > 0.0) v += std::normal_distribution<double>(0.0, rig.noise_std)(rng);
  return quantize(v, rig.gauge_resolution);
}

}  // namespace

double simulate_reading(const RigConfig& rig, Axis axis, PostureKind kind, GaugeDirection dir,
                        Rng& rng) {
  const DeviationPair exact = exact_gauge_readings(axis, kind, rig.geometry, rig.true_offsets);
  return noisy(exact[dir], rig, rng);
}

std::size_t ProtocolRun::reading_index(Axis leg, GaugeDirection dir, int repetition, int step,
                                       int repetitions) {
  const auto steps = kSequence.size();
  return ((index(leg) * 2 + static_cast<std::size_t>(dir)) * static_cast<std::size_t>(repetitions) +
          static_cast<std::size_t>(repetition)) *
             steps +
         static_cast<std::size_t>(step);
}

double ProtocolRun::reading(Axis leg, GaugeDirection dir, int repetition, int step) const {
  return readings.at(reading_index(leg, dir, repetition, step, repetitions));
}

double ProtocolRun::max_zero_drift() const {
  double drift = 0.0;
  for (Axis leg : kAllAxes) {
    for (auto dir : {GaugeDirection::First, GaugeDirection::Second}) {
      for (int r = 0; r < repetitions; ++r) {
        drift = std::max(drift, std::abs(reading(leg, dir, r, 3) - reading(leg, dir, r, 0)));
      }
    }
  }
  return drift;
}

ProtocolResult run_protocol(const RigConfig& rig) {
  rig.validate();
  Rng rng(rig.seed);

  ProtocolResult out;
  ProtocolRun& run = out.run;
  run.repetitions = rig.repetitions;
  run.readings.assign(3 * 2 * static_cast<std::size_t>(rig.repetitions) * ProtocolRun::kSequence.size(),
                      0.0);

  // Averaged deltas per leg, gauge and posture (max, min).
  double delta[3][2][2] = {};

  for (Axis leg : kAllAxes) {
    // The exact leg position only depends on the posture; noise is drawn per reading.
    std::array<DeviationPair, 3> exact;
    for (auto kind : {PostureKind::Zero, PostureKind::Max, PostureKind::Min}) {
      exact[static_cast<std::size_t>(kind)] =
          exact_gauge_readings(leg, kind, rig.geometry, rig.true_offsets);
    }
    for (int r = 0; r < rig.repetitions; ++r) {
      for (int step = 0; step < static_cast<int>(ProtocolRun::kSequence.size()); ++step) {
        const auto kind = ProtocolRun::kSequence[static_cast<std::size_t>(step)];
        for (auto dir : {GaugeDirection::First, GaugeDirection::Second}) {
          run.readings[ProtocolRun::reading_index(leg, dir, r, step, rig.repetitions)] =
              noisy(exact[static_cast<std::size_t>(kind)][dir], rig, rng);
        }
      }
      for (auto dir : {GaugeDirection::First, GaugeDirection::Second}) {
        const double zero = run.reading(leg, dir, r, 0);
        delta[index(leg)][static_cast<int>(dir)][0] += run.reading(leg, dir, r, 1) - zero;
        delta[index(leg)][static_cast<int>(dir)][1] += run.reading(leg, dir, r, 2) - zero;
      }
    }
  }

  const auto averaged = [&](Axis leg, Axis gauge, int posture) {
    const auto dir = gauge_axis(leg, GaugeDirection::First) == gauge ? GaugeDirection::First
                                                                      : GaugeDirection::Second;
    return delta[index(leg)][static_cast<int>(dir)][posture] / rig.repetitions;
  };

  const auto& full = full_layout();
  out.full.resize(static_cast<Eigen::Index>(full.size()));
  for (std::size_t i = 0; i < full.size(); ++i) {
    out.full(static_cast<Eigen::Index>(i)) =
        averaged(full[i].leg, full[i].gauge, full[i].kind == PostureKind::Max ? 0 : 1);
  }
  const auto& reduced = reduced_layout();
  out.reduced.resize(static_cast<Eigen::Index>(reduced.size()));
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    out.reduced(static_cast<Eigen::Index>(i)) =
        averaged(reduced[i].leg, reduced[i].gauge, 0) - averaged(reduced[i].leg, reduced[i].gauge, 1);
  }
  return out;
}

double effective_measurement_noise(const RigConfig& rig) {
  const double per_reading =
      rig.noise_std * rig.noise_std + rig.gauge_resolution * rig.gauge_resolution / 12.0;
  return std::sqrt(2.0 * per_reading / rig.repetitions);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

MonteCarloSummary monte_carlo_identification(const RigConfig& rig, int trials,
                                             MeasurementForm form) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "at least one trial is required");
  rig.validate();

  const DesignMatrix a = design_matrix(form, PostureAngles::from(rig.geometry));
  MonteCarloSummary s;
  s.form = form;
  s.effective_noise = effective_measurement_noise(rig);
  s.trials.reserve(static_cast<std::size_t>(trials));

  RigConfig trial_rig = rig;
  for (int k = 0; k < trials; ++k) {
    trial_rig.seed = trial_seed(rig.seed, static_cast<std::uint64_t>(k));
    const ProtocolResult protocol = run_protocol(trial_rig);
    const CalibrationResult fit = solve_offsets(a, protocol.measurements(form));
    s.trials.push_back({fit.offsets, fit.sigma_hat, fit.rms_after_predicted});
  }

  const double n = static_cast<double>(trials);
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  double sigma_sum = 0.0;
  for (const auto& t : s.trials) {
    sum += t.offsets.vec();
    sigma_sum += t.sigma_hat;
  }
  const Eigen::Vector3d mean = sum / n;
  s.mean_sigma_hat = sigma_sum / n;

  Eigen::Vector3d var = Eigen::Vector3d::Zero();
  double sigma_var = 0.0;
  if (trials > 1) {
    for (const auto& t : s.trials) {
      var += (t.offsets.vec() - mean).cwiseAbs2();
      sigma_var += (t.sigma_hat - s.mean_sigma_hat) * (t.sigma_hat - s.mean_sigma_hat);
    }
    var /= n - 1.0;
    sigma_var /= n - 1.0;
  }
  s.mean = JointOffsets::from(mean);
  s.bias = JointOffsets::from(mean - rig.true_offsets.vec());
  s.std = JointOffsets::from(var.cwiseSqrt());
  s.std_sigma_hat = std::sqrt(sigma_var);
  return s;
}

}  // namespace orthocal
