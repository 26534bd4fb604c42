#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "orthocal.h"

namespace {

std::string temp_path(const char* name) { return std::string("capi_") + name; }

}  // namespace

TEST_CASE("status helpers") {
  CHECK(std::string(orthocal_version()) == "1.0.0");
  CHECK(orthocal_exit_code(ORTHOCAL_OK) == 0);
  CHECK(orthocal_exit_code(ORTHOCAL_ERR_PARSE) == 2);
  CHECK(orthocal_exit_code(ORTHOCAL_ERR_CONFIG) == 2);
  CHECK(orthocal_exit_code(ORTHOCAL_ERR_RANK_DEFICIENT) == 3);
  CHECK(orthocal_exit_code(ORTHOCAL_ERR_UNREACHABLE_POINT) == 3);
  CHECK(std::string(orthocal_status_name(ORTHOCAL_ERR_RANK_DEFICIENT)).size() > 0);
}

TEST_CASE("config") {
  orthocal_config* c = nullptr;
  REQUIRE(orthocal_config_create(&c) == ORTHOCAL_OK);
  CHECK(orthocal_config_set(c, "seed", "12") == ORTHOCAL_OK);
  int64_t seed = 0;
  CHECK(orthocal_config_get_int(c, "seed", &seed) == ORTHOCAL_OK);
  CHECK(seed == 12);
  CHECK(orthocal_config_set(c, "nope", "1") == ORTHOCAL_ERR_CONFIG);
  CHECK(std::string(orthocal_last_error()).find("nope") != std::string::npos);
  CHECK(orthocal_config_set(c, "form", "full") == ORTHOCAL_OK);
  const char* form = nullptr;
  CHECK(orthocal_config_get_string(c, "form", &form) == ORTHOCAL_OK);
  CHECK(std::string(form) == "full");
  double a1 = 0, a2 = 0;
  CHECK(orthocal_config_angles(c, &a1, &a2) == ORTHOCAL_OK);
  CHECK(a1 > 0.0);
  CHECK(a2 < 0.0);
  CHECK(orthocal_config_create(nullptr) == ORTHOCAL_ERR_INVALID_ARGUMENT);
  orthocal_config_free(c);
  orthocal_config_free(nullptr);
}

TEST_CASE("kinematics") {
  const double p[3] = {10.0, -20.0, 30.0};
  const double off[3] = {0.5, -0.3, 0.2};
  double q[3], back[3], res[3];
  REQUIRE(orthocal_inverse_kinematics(p, off, nullptr, 310.0, q) == ORTHOCAL_OK);
  REQUIRE(orthocal_direct_kinematics(q, off, 310.0, back) == ORTHOCAL_OK);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(back[i] - p[i]) < 1e-9);
  const double actual[3] = {q[0] + off[0], q[1] + off[1], q[2] + off[2]};
  REQUIRE(orthocal_closure_residual(p, actual, 310.0, res) == ORTHOCAL_OK);
  for (double r : res) CHECK(std::abs(r) < 1e-9);
  double ij[9], j[9];
  REQUIRE(orthocal_inverse_jacobian(p, actual, 310.0, ij) == ORTHOCAL_OK);
  REQUIRE(orthocal_jacobian(p, actual, 310.0, j) == ORTHOCAL_OK);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += j[r * 3 + k] * ij[k * 3 + c];
      CHECK(std::abs(s - (r == c ? 1.0 : 0.0)) < 1e-10);
    }
  }
  const double far[3] = {0.0, 300.0, 300.0};
  CHECK(orthocal_inverse_kinematics(far, off, nullptr, 310.0, q) ==
        ORTHOCAL_ERR_UNREACHABLE_POINT);
}

TEST_CASE("design matrix and solve") {
  double a[36];
  size_t rows = 0;
  CHECK(orthocal_design_matrix(ORTHOCAL_FORM_FULL, 0.3, -0.4, a, 10, &rows) ==
        ORTHOCAL_ERR_BUFFER_TOO_SMALL);
  REQUIRE(orthocal_design_matrix(ORTHOCAL_FORM_FULL, 0.3, -0.4, a, 36, &rows) == ORTHOCAL_OK);
  REQUIRE(rows == 12);
  const double truth[3] = {0.4, -0.25, 0.1};
  double m[12];
  for (size_t r = 0; r < rows; ++r) {
    m[r] = a[r * 3] * truth[0] + a[r * 3 + 1] * truth[1] + a[r * 3 + 2] * truth[2];
  }
  orthocal_report* rep = nullptr;
  REQUIRE(orthocal_solve(a, rows, m, &rep) == ORTHOCAL_OK);
  double est[3];
  REQUIRE(orthocal_report_offsets(rep, est) == ORTHOCAL_OK);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(est[i] - truth[i]) < 1e-9);
  double sigma = 1.0;
  CHECK(orthocal_report_sigma_hat(rep, &sigma) == ORTHOCAL_OK);
  CHECK(sigma < 1e-9);
  double resid[12];
  size_t count = 0;
  CHECK(orthocal_report_residuals(rep, resid, 12, &count) == ORTHOCAL_OK);
  CHECK(count == 12);
  orthocal_report_free(rep);

  double r[18];
  REQUIRE(orthocal_design_matrix(ORTHOCAL_FORM_REDUCED, 0.3, 0.3, r, 18, &rows) == ORTHOCAL_OK);
  const double zeros[6] = {1, 2, 3, 4, 5, 6};
  rep = nullptr;
  CHECK(orthocal_solve(r, rows, zeros, &rep) == ORTHOCAL_ERR_RANK_DEFICIENT);
  CHECK(rep == nullptr);

  double out = 0.0;
  CHECK(orthocal_rms(zeros, 0, &out) == ORTHOCAL_ERR_EMPTY_VECTOR);
  CHECK(orthocal_rms(zeros, 2, &out) == ORTHOCAL_OK);
  CHECK(out == doctest::Approx(std::sqrt(2.5)));
}

TEST_CASE("simulate and identify through files") {
  orthocal_config* c = nullptr;
  REQUIRE(orthocal_config_create(&c) == ORTHOCAL_OK);
  orthocal_config_set(c, "offset_x_mm", "0.1");
  orthocal_config_set(c, "offset_y_mm", "-0.1");
  orthocal_config_set(c, "noise_std_mm", "0");
  orthocal_config_set(c, "resolution_mm", "1e-12");
  const std::string path = temp_path("sim.csv");
  REQUIRE(orthocal_simulate(c, ORTHOCAL_FORM_FULL, path.c_str()) == ORTHOCAL_OK);
  orthocal_report* rep = nullptr;
  REQUIRE(orthocal_identify_file(c, path.c_str(), ORTHOCAL_FORM_AUTO, &rep) == ORTHOCAL_OK);
  double est[3];
  REQUIRE(orthocal_report_offsets(rep, est) == ORTHOCAL_OK);
  CHECK(std::abs(est[0] - 0.1) <= 1e-3);
  CHECK(std::abs(est[1] + 0.1) <= 1e-3);
  CHECK(std::abs(est[2]) <= 1e-3);
  CHECK(orthocal_report_passed(rep) == 1);
  CHECK(std::string(orthocal_report_json(rep)).find("offsets_mm") != std::string::npos);
  orthocal_report_free(rep);

  rep = nullptr;
  CHECK(orthocal_identify_file(c, path.c_str(), ORTHOCAL_FORM_REDUCED, &rep) ==
        ORTHOCAL_ERR_PARSE);
  CHECK(orthocal_identify_file(c, "/nonexistent/x.csv", ORTHOCAL_FORM_AUTO, &rep) ==
        ORTHOCAL_ERR_IO);
  std::remove(path.c_str());
  orthocal_config_free(c);
}

TEST_CASE("table1 and selftest") {
  orthocal_config* c = nullptr;
  REQUIRE(orthocal_config_create(&c) == ORTHOCAL_OK);
  orthocal_report* rep = nullptr;
  REQUIRE(orthocal_table1(c, 0.03, &rep) == ORTHOCAL_OK);
  CHECK(orthocal_report_passed(rep) == 1);
  double before = 0, after = 0;
  CHECK(orthocal_report_rms(rep, &before, &after) == ORTHOCAL_ERR_INVALID_ARGUMENT);
  orthocal_report_free(rep);
  REQUIRE(orthocal_selftest(&rep) == ORTHOCAL_OK);
  CHECK(orthocal_report_passed(rep) == 1);
  orthocal_report_free(rep);
  orthocal_config_free(c);
}
