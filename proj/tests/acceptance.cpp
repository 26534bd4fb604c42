// Acceptance checks. One line per criterion, non-zero exit when any fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "orthocal/commands.hpp"
#include "orthocal/identification.hpp"
#include "orthocal/kinematics.hpp"
#include "orthocal/leg_model.hpp"
#include "orthocal/table1.hpp"
#include "orthocal/virtual_rig.hpp"
#include "support.hpp"

using namespace orthocal;
using orthocal::testing::max_abs;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

template <class F>
void guarded(int id, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

void table1_rms() {
  constexpr double tol = 0.03;
  double worst = 0.0;
  for (const auto& e : table1::experiments()) {
    worst = std::max(worst, std::abs(rms(table1::to_vector(e.measured)) - e.measured_rms));
    worst = std::max(worst, std::abs(rms(table1::to_vector(e.expected)) - e.expected_rms));
  }
  report(1, worst <= tol, fmt("published row rms vs recomputed, worst |diff| %.4f mm (tol %.2f)", worst, tol));
}

void fit_closure() {
  const auto& exps = table1::experiments();
  const table1::AngleFit fit = table1::fit_angles(exps[1]);
  const DesignMatrix a = design_matrix_reduced(fit.angles);
  const double r2 = solve_offsets(a, table1::to_vector(exps[1].measured)).rms_after_predicted;
  const double r3 = solve_offsets(a, table1::to_vector(exps[2].measured)).rms_after_predicted;
  const bool ok = std::abs(r2 - 0.20) <= 0.02 && std::abs(r3 - 0.20) <= 0.03;
  report(2, ok,
         fmt("predicted rms after compensation #2 %.3f (0.20+-0.02), #3 %.3f (0.20+-0.03), "
             "angles %.4f/%.4f rad",
             r2, r3, fit.angles.alpha_max, fit.angles.alpha_min));
}

void exact_recovery() {
  std::mt19937_64 rng(301);
  const PostureAngles angles = PostureAngles::from(Geometry{});
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const JointOffsets truth = orthocal::testing::random_offsets(rng, 5.0);
    for (auto form : {MeasurementForm::Full, MeasurementForm::Reduced}) {
      const DesignMatrix a = design_matrix(form, angles);
      const CalibrationResult r = solve_offsets(a, a * truth.vec());
      worst = std::max(worst, max_abs(r.offsets.vec() - truth.vec()));
    }
  }
  report(3, worst <= 1e-9, fmt("1000 noise-free recoveries, full and reduced, worst error %.2e mm (tol 1e-9)", worst));
}

void pipeline() {
  auto run = [](double scale, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      RigConfig rig;
      rig.noise_std = 0.0;
      rig.gauge_resolution = 1e-12;
      rig.true_offsets = orthocal::testing::random_offsets(rng, scale);
      const ProtocolResult p = run_protocol(rig);
      const PostureAngles angles = PostureAngles::from(rig.geometry);
      for (auto form : {MeasurementForm::Full, MeasurementForm::Reduced}) {
        const CalibrationResult r = solve_offsets(design_matrix(form, angles), p.measurements(form));
        worst = std::max(worst, max_abs(r.offsets.vec() - rig.true_offsets.vec()));
      }
    }
    return worst;
  };
  const double small = run(0.1, 11);
  const double large = run(1.0, 12);
  report(4, small <= 1e-3 && large <= 0.1,
         fmt("noise-free rig pipeline, 0.1 mm offsets err %.2e (tol 1e-3), 1 mm offsets err %.2e (tol 0.1)",
             small, large));
}

void round_trip() {
  const Geometry g;
  std::mt19937_64 rng(5);
  double worst_p = 0.0, worst_c = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const CartesianPoint p = sample_workspace(g, rng);
    const JointOffsets d = orthocal::testing::random_offsets(rng, 5.0);
    const JointVector rho = inverse_kinematics(p, d, kPrototypeBranch, g.leg_length);
    const CartesianPoint back = direct_kinematics(rho, d, g.leg_length);
    worst_p = std::max(worst_p, max_abs(back.vec() - p.vec()));
    for (double r : closure_residual(back, rho + d, g.leg_length)) {
      worst_c = std::max(worst_c, std::abs(r));
    }
  }
  report(5, worst_p <= 1e-9 && worst_c <= 1e-9,
         fmt("1e5 IK->DK round trips, worst position %.2e mm, worst closure %.2e mm^2 (tol 1e-9)",
             worst_p, worst_c));
}

void jacobians() {
  const Geometry g;
  const double L = g.leg_length;
  std::mt19937_64 rng(8);
  double worst_fd = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const CartesianPoint p = sample_workspace(g, rng);
    const JointVector q = inverse_kinematics(p, {}, kPrototypeBranch, L);
    worst_fd = std::max(worst_fd, orthocal::testing::rel_diff(jacobian(p, q, L),
                                                             orthocal::testing::fd_jacobian(q, L, 1e-6 * L)));
    worst_fd = std::max(worst_fd, orthocal::testing::rel_diff(inverse_jacobian(p, q, L),
                                                             orthocal::testing::fd_inverse_jacobian(p, L, 1e-6 * L)));
  }
  const double at_zero = max_abs(jacobian({0, 0, 0}, {L, L, L}, L) - Matrix3::Identity());
  const Posture xmax = test_posture(Axis::X, PostureKind::Max, g);
  const double t = std::tan(g.alpha_max());
  const Eigen::Vector3d dp = jacobian(xmax.tcp, xmax.joints, L) * Eigen::Vector3d{1, 0, 0};
  const double structure = max_abs(dp - Eigen::Vector3d{1, t, t});
  report(6, worst_fd <= 1e-6 && at_zero <= 1e-12 && structure <= 1e-10,
         fmt("Jacobians vs central differences %.2e (tol 1e-6), identity at zero %.1e, "
             "x-max column %.1e (tol 1e-10)",
             worst_fd, at_zero, structure));
}

void linearization() {
  const Geometry g;
  const JointOffsets dir{1.0, -0.6, 0.4};
  auto mismatch = [&](double eps) {
    JointOffsets d;
    for (Axis a : kAllAxes) d[a] = eps * dir[a];
    double sum = 0.0;
    for (Axis leg : kAllAxes) {
      for (auto kind : {PostureKind::Max, PostureKind::Min}) {
        const double alpha = kind == PostureKind::Max ? g.alpha_max() : g.alpha_min();
        const DeviationPair e = exact_deviation_delta(leg, kind, g, d);
        const DeviationPair l = linearized_deviation_delta(leg, kind, alpha, d);
        sum += std::pow(e.first - l.first, 2) + std::pow(e.second - l.second, 2);
      }
    }
    return std::sqrt(sum);
  };
  const double r1 = mismatch(1e-1) / mismatch(1e-2);
  const double r2 = mismatch(1e-2) / mismatch(1e-3);
  const bool ok = std::abs(r1 - 100.0) <= 20.0 && std::abs(r2 - 100.0) <= 20.0;
  report(7, ok, fmt("exact vs linear mismatch per decade of offset, ratios %.1f and %.1f (100+-20%%)", r1, r2));
}

void monte_carlo() {
  RigConfig rig;
  rig.true_offsets = {0.3, -0.2, 0.15};
  rig.gauge_resolution = 1e-9;
  rig.noise_std = 0.01;
  rig.seed = 2024;
  bool ok = true;
  std::string text;
  for (auto form : {MeasurementForm::Full, MeasurementForm::Reduced}) {
    RigConfig r = rig;
    const MonteCarloSummary a = monte_carlo_identification(r, 1000, form);
    r.noise_std = 0.02;
    const MonteCarloSummary b = monte_carlo_identification(r, 1000, form);
    const double sigma_rel = a.mean_sigma_hat / a.effective_noise - 1.0;
    double worst_ratio = 0.0;
    for (Axis ax : kAllAxes) {
      worst_ratio = std::max(worst_ratio, std::abs(b.std[ax] / a.std[ax] / 2.0 - 1.0));
    }
    ok = ok && std::abs(sigma_rel) <= 0.10 && worst_ratio <= 0.15;
    const std::string name(to_string(form));
    text += name + fmt(" sigma_hat/effective-1 %+.3f, std ratio/2-1 %.3f; ", sigma_rel, worst_ratio);
  }
  report(8, ok, "1000-trial Monte Carlo at 0.01 mm noise, " + text + "(tol 0.10 and 0.15)");
}

void determinism() {
  RunConfig c = RunConfig::parse("offset_x_mm=0.2\noffset_y_mm=-0.1\nseed=77\n");
  bool ok = true;
  for (auto form : {MeasurementForm::Full, MeasurementForm::Reduced}) {
    const std::string a = simulate_measurements(c, form);
    const std::string b = simulate_measurements(c, form);
    ok = ok && a == b;
    ok = ok && identify(c, read_measurements(a)).json() == identify(c, read_measurements(b)).json();
  }
  ok = ok && run_monte_carlo(c, 50, MeasurementForm::Full).csv ==
                 run_monte_carlo(c, 50, MeasurementForm::Full).csv;
  RunConfig other = c;
  other.seed = 78;
  const bool differs =
      simulate_measurements(c, MeasurementForm::Full) != simulate_measurements(other, MeasurementForm::Full);
  report(9, ok && differs, std::string("identical seeds give byte-identical measurement files and reports") +
                               (differs ? "" : " (but a different seed did not change the output)"));
}

}  // namespace

int main() {
  guarded(1, table1_rms);
  guarded(2, fit_closure);
  guarded(3, exact_recovery);
  guarded(4, pipeline);
  guarded(5, round_trip);
  guarded(6, jacobians);
  guarded(7, linearization);
  guarded(8, monte_carlo);
  guarded(9, determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
