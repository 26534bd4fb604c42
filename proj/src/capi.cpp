#include "orthocal.h"

#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "orthocal/commands.hpp"
#include "orthocal/error.hpp"
#include "orthocal/kinematics.hpp"

struct orthocal_config {
  orthocal::RunConfig config;
  std::string string_value;
};

struct orthocal_report {
  orthocal::Report report;
  std::string json;
};

namespace {

using namespace orthocal;

thread_local std::string g_last_error;

struct BufferTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

orthocal_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return ORTHOCAL_ERR_INVALID_ARGUMENT;
    case ErrorCode::UnreachablePoint: return ORTHOCAL_ERR_UNREACHABLE_POINT;
    case ErrorCode::SingularJoint: return ORTHOCAL_ERR_SINGULAR_JOINT;
    case ErrorCode::NoRealSolution: return ORTHOCAL_ERR_NO_REAL_SOLUTION;
    case ErrorCode::SingularPosture: return ORTHOCAL_ERR_SINGULAR_POSTURE;
    case ErrorCode::DegenerateLeg: return ORTHOCAL_ERR_DEGENERATE_LEG;
    case ErrorCode::StationOutOfRange: return ORTHOCAL_ERR_STATION_OUT_OF_RANGE;
    case ErrorCode::RankDeficient: return ORTHOCAL_ERR_RANK_DEFICIENT;
    case ErrorCode::EmptyVector: return ORTHOCAL_ERR_EMPTY_VECTOR;
    case ErrorCode::ParseError: return ORTHOCAL_ERR_PARSE;
    case ErrorCode::ConfigError: return ORTHOCAL_ERR_CONFIG;
    case ErrorCode::IoError: return ORTHOCAL_ERR_IO;
  }
  return ORTHOCAL_ERR_INTERNAL;
}

orthocal_status fail(orthocal_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes at the C boundary.
template <class F>
orthocal_status guarded(F&& body) noexcept {
  try {
    g_last_error.clear();
    body();
    return ORTHOCAL_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const BufferTooSmall& e) {
    return fail(ORTHOCAL_ERR_BUFFER_TOO_SMALL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ORTHOCAL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ORTHOCAL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ORTHOCAL_ERR_INTERNAL, "unknown error");
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw Error(ErrorCode::InvalidArgument, what);
}

template <class T>
T triple(const double* v) {
  require(v != nullptr, "null vector argument");
  return {v[0], v[1], v[2]};
}

template <class T>
void store(const T& t, double* out) {
  require(out != nullptr, "null output argument");
  out[0] = t.x;
  out[1] = t.y;
  out[2] = t.z;
}

void store(const Matrix3& m, double* out) {
  require(out != nullptr, "null output argument");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[3 * i + j] = m(i, j);
}

MeasurementForm form_of(orthocal_form form) {
  switch (form) {
    case ORTHOCAL_FORM_FULL: return MeasurementForm::Full;
    case ORTHOCAL_FORM_REDUCED: return MeasurementForm::Reduced;
    default: throw Error(ErrorCode::InvalidArgument, "invalid measurement form");
  }
}

orthocal_report* make_report(Report r) {
  auto* out = new orthocal_report{std::move(r), {}};
  out->json = out->report.json();
  return out;
}

const CalibrationResult& calibration_of(const orthocal_report* report) {
  require(report != nullptr, "null report");
  require(report->report.calibration.has_value(), "report carries no calibration result");
  return *report->report.calibration;
}

}  // namespace

extern "C" {

const char* orthocal_version(void) { return "1.0.0"; }

const char* orthocal_last_error(void) { return g_last_error.c_str(); }

const char* orthocal_status_name(orthocal_status status) {
  switch (status) {
    case ORTHOCAL_OK: return "ok";
    case ORTHOCAL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ORTHOCAL_ERR_CONFIG: return "config error";
    case ORTHOCAL_ERR_PARSE: return "parse error";
    case ORTHOCAL_ERR_IO: return "i/o error";
    case ORTHOCAL_ERR_UNREACHABLE_POINT: return "unreachable point";
    case ORTHOCAL_ERR_SINGULAR_JOINT: return "singular joint";
    case ORTHOCAL_ERR_NO_REAL_SOLUTION: return "no real solution";
    case ORTHOCAL_ERR_SINGULAR_POSTURE: return "singular posture";
    case ORTHOCAL_ERR_DEGENERATE_LEG: return "degenerate leg";
    case ORTHOCAL_ERR_STATION_OUT_OF_RANGE: return "station out of range";
    case ORTHOCAL_ERR_RANK_DEFICIENT: return "rank deficient";
    case ORTHOCAL_ERR_EMPTY_VECTOR: return "empty vector";
    case ORTHOCAL_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case ORTHOCAL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int orthocal_exit_code(orthocal_status status) {
  switch (status) {
    case ORTHOCAL_OK: return 0;
    case ORTHOCAL_ERR_UNREACHABLE_POINT:
    case ORTHOCAL_ERR_SINGULAR_JOINT:
    case ORTHOCAL_ERR_NO_REAL_SOLUTION:
    case ORTHOCAL_ERR_SINGULAR_POSTURE:
    case ORTHOCAL_ERR_DEGENERATE_LEG:
    case ORTHOCAL_ERR_STATION_OUT_OF_RANGE:
    case ORTHOCAL_ERR_RANK_DEFICIENT:
      return 3;
    default:
      return 2;
  }
}

orthocal_status orthocal_config_create(orthocal_config** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = new orthocal_config{};
  });
}

orthocal_status orthocal_config_load(const char* path, orthocal_config** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    RunConfig cfg = RunConfig::load(path);
    *out = new orthocal_config{std::move(cfg), {}};
  });
}

orthocal_status orthocal_config_set(orthocal_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config != nullptr && key != nullptr && value != nullptr, "null argument");
    config->config.set(key, value);
  });
}

orthocal_status orthocal_config_validate(const orthocal_config* config) {
  return guarded([&] {
    require(config != nullptr, "null config");
    config->config.validate();
  });
}

orthocal_status orthocal_config_angles(const orthocal_config* config, double* alpha_max,
                                       double* alpha_min) {
  return guarded([&] {
    require(config != nullptr && alpha_max != nullptr && alpha_min != nullptr, "null argument");
    const PostureAngles a = config->config.angles();
    *alpha_max = a.alpha_max;
    *alpha_min = a.alpha_min;
  });
}

orthocal_status orthocal_config_get_int(const orthocal_config* config, const char* key,
                                        int64_t* value) {
  return guarded([&] {
    require(config != nullptr && key != nullptr && value != nullptr, "null argument");
    const RunConfig& c = config->config;
    const std::string k = key;
    if (k == "repetitions") *value = c.repetitions;
    else if (k == "seed") *value = static_cast<int64_t>(c.seed);
    else if (k == "trials") *value = c.trials;
    else if (k == "form") *value = c.form == MeasurementForm::Full ? ORTHOCAL_FORM_FULL : ORTHOCAL_FORM_REDUCED;
    else throw Error(ErrorCode::ConfigError, "no integer config key '" + k + "'");
  });
}

orthocal_status orthocal_config_get_double(const orthocal_config* config, const char* key,
                                           double* value) {
  return guarded([&] {
    require(config != nullptr && key != nullptr && value != nullptr, "null argument");
    const RunConfig& c = config->config;
    const std::string k = key;
    if (k == "L_mm") *value = c.geometry.leg_length;
    else if (k == "rho_min_mm") *value = c.geometry.rho_min;
    else if (k == "rho_max_mm") *value = c.geometry.rho_max;
    else if (k == "alpha1_rad") *value = c.angles().alpha_max;
    else if (k == "alpha2_rad") *value = c.angles().alpha_min;
    else if (k == "offset_x_mm") *value = c.true_offsets.x;
    else if (k == "offset_y_mm") *value = c.true_offsets.y;
    else if (k == "offset_z_mm") *value = c.true_offsets.z;
    else if (k == "noise_std_mm") *value = c.noise_std;
    else if (k == "resolution_mm") *value = c.gauge_resolution;
    else if (k == "offset_bound_frac") *value = c.offset_bound_fraction;
    else if (k == "tolerance_mm") *value = c.tolerance;
    else throw Error(ErrorCode::ConfigError, "no numeric config key '" + k + "'");
  });
}

orthocal_status orthocal_config_get_string(const orthocal_config* config, const char* key,
                                           const char** value) {
  return guarded([&] {
    require(config != nullptr && key != nullptr && value != nullptr, "null argument");
    auto* c = const_cast<orthocal_config*>(config);
    const std::string k = key;
    if (k == "in") c->string_value = c->config.in_path;
    else if (k == "out") c->string_value = c->config.out_path;
    else if (k == "form") c->string_value = to_string(c->config.form);
    else throw Error(ErrorCode::ConfigError, "no string config key '" + k + "'");
    *value = c->string_value.c_str();
  });
}

void orthocal_config_free(orthocal_config* config) { delete config; }

orthocal_status orthocal_closure_residual(const double p[3], const double q[3], double L,
                                          double out[3]) {
  return guarded([&] {
    require(out != nullptr, "null output argument");
    const auto r = closure_residual(triple<CartesianPoint>(p), triple<JointVector>(q), L);
    std::memcpy(out, r.data(), sizeof(double) * 3);
  });
}

orthocal_status orthocal_inverse_kinematics(const double p[3], const double offsets[3],
                                            const int branch[3], double L, double joints_out[3]) {
  return guarded([&] {
    ConfigIndices s = kPrototypeBranch;
    if (branch != nullptr) {
      for (int i = 0; i < 3; ++i) require(branch[i] == 1 || branch[i] == -1, "branch must be +-1");
      s = {branch[0], branch[1], branch[2]};
    }
    store(inverse_kinematics(triple<CartesianPoint>(p), triple<JointOffsets>(offsets), s, L),
          joints_out);
  });
}

orthocal_status orthocal_direct_kinematics(const double joints[3], const double offsets[3],
                                           double L, double p_out[3]) {
  return guarded([&] {
    store(direct_kinematics(triple<JointVector>(joints), triple<JointOffsets>(offsets), L), p_out);
  });
}

orthocal_status orthocal_inverse_jacobian(const double p[3], const double q[3], double L,
                                          double out[9]) {
  return guarded([&] {
    store(inverse_jacobian(triple<CartesianPoint>(p), triple<JointVector>(q), L), out);
  });
}

orthocal_status orthocal_jacobian(const double p[3], const double q[3], double L, double out[9]) {
  return guarded(
      [&] { store(jacobian(triple<CartesianPoint>(p), triple<JointVector>(q), L), out); });
}

orthocal_status orthocal_design_matrix(orthocal_form form, double alpha_max, double alpha_min,
                                       double* out, size_t capacity, size_t* rows) {
  return guarded([&] {
    require(rows != nullptr, "null rows argument");
    const DesignMatrix a = design_matrix(form_of(form), {alpha_max, alpha_min});
    *rows = static_cast<size_t>(a.rows());
    if (out == nullptr || capacity < static_cast<size_t>(a.size())) {
      throw BufferTooSmall("design matrix buffer too small");
    }
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < 3; ++j) out[3 * i + j] = a(i, j);
  });
}

orthocal_status orthocal_solve(const double* matrix, size_t rows, const double* measurements,
                               orthocal_report** out) {
  return guarded([&] {
    require(matrix != nullptr && measurements != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    DesignMatrix a(static_cast<Eigen::Index>(rows), 3);
    MeasurementVector m(static_cast<Eigen::Index>(rows));
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0; j < 3; ++j) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = matrix[3 * i + j];
      }
      m(static_cast<Eigen::Index>(i)) = measurements[i];
    }
    Report r;
    r.calibration = solve_offsets(a, m);
    const auto& fit = *r.calibration;
    r.data["command"] = "solve";
    r.data["offsets_mm"] = {{"x", fit.offsets.x}, {"y", fit.offsets.y}, {"z", fit.offsets.z}};
    r.data["residuals_mm"] =
        std::vector<double>(fit.residuals.data(), fit.residuals.data() + fit.residuals.size());
    r.data["sigma_hat_mm"] = fit.sigma_hat;
    r.data["rms_before_mm"] = fit.rms_before;
    r.data["rms_after_predicted_mm"] = fit.rms_after_predicted;
    *out = make_report(std::move(r));
  });
}

orthocal_status orthocal_rms(const double* values, size_t count, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output argument");
    require(values != nullptr || count == 0, "null values");
    *out = rms(std::span<const double>(values, count));
  });
}

orthocal_status orthocal_simulate(const orthocal_config* config, orthocal_form form,
                                  const char* out_path) {
  return guarded([&] {
    require(config != nullptr && out_path != nullptr, "null argument");
    write_file(out_path, simulate_measurements(config->config, form_of(form)));
  });
}

orthocal_status orthocal_identify_file(const orthocal_config* config, const char* in_path,
                                       orthocal_form form, orthocal_report** out) {
  return guarded([&] {
    require(config != nullptr && in_path != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    config->config.validate();
    std::optional<MeasurementForm> expected;
    if (form != ORTHOCAL_FORM_AUTO) expected = form_of(form);
    const MeasurementSet set = read_measurements(read_file(in_path), expected);
    *out = make_report(identify(config->config, set, in_path));
  });
}

orthocal_status orthocal_table1(const orthocal_config* config, double tolerance,
                                orthocal_report** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    require(tolerance >= 0.0, "tolerance must be non-negative");
    *out = nullptr;
    *out = make_report(reproduce_table1(config->config, tolerance));
  });
}

orthocal_status orthocal_montecarlo(const orthocal_config* config, int trials, orthocal_form form,
                                    const char* csv_path, orthocal_report** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    MonteCarloOutput result = run_monte_carlo(config->config, trials, form_of(form));
    if (csv_path != nullptr) write_file(csv_path, result.csv);
    *out = make_report(std::move(result.report));
  });
}

orthocal_status orthocal_selftest(orthocal_report** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = make_report(selftest());
  });
}

const char* orthocal_report_text(const orthocal_report* report) {
  return report ? report->report.text.c_str() : "";
}

const char* orthocal_report_json(const orthocal_report* report) {
  return report ? report->json.c_str() : "";
}

int orthocal_report_passed(const orthocal_report* report) {
  return report && report->report.passed ? 1 : 0;
}

orthocal_status orthocal_report_write(const orthocal_report* report, const char* path) {
  return guarded([&] {
    require(report != nullptr && path != nullptr, "null argument");
    write_file(path, report->json);
  });
}

orthocal_status orthocal_report_offsets(const orthocal_report* report, double out[3]) {
  return guarded([&] { store(calibration_of(report).offsets, out); });
}

orthocal_status orthocal_report_residuals(const orthocal_report* report, double* out,
                                          size_t capacity, size_t* count) {
  return guarded([&] {
    require(count != nullptr, "null count argument");
    const auto& r = calibration_of(report).residuals;
    *count = static_cast<size_t>(r.size());
    if (out == nullptr || capacity < *count) {
      throw BufferTooSmall("residual buffer too small");
    }
    std::memcpy(out, r.data(), sizeof(double) * *count);
  });
}

orthocal_status orthocal_report_sigma_hat(const orthocal_report* report, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output argument");
    *out = calibration_of(report).sigma_hat;
  });
}

orthocal_status orthocal_report_rms(const orthocal_report* report, double* before,
                                    double* after_predicted) {
  return guarded([&] {
    const auto& fit = calibration_of(report);
    if (before) *before = fit.rms_before;
    if (after_predicted) *after_predicted = fit.rms_after_predicted;
  });
}

void orthocal_report_free(orthocal_report* report) { delete report; }

}  // extern "C"
