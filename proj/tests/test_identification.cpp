#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "orthocal/error.hpp"
#include "orthocal/identification.hpp"
#include "orthocal/table1.hpp"
#include "support.hpp"

using namespace orthocal;
using orthocal::testing::random_offsets;

namespace {

const PostureAngles kDefaultAngles = PostureAngles::from(Geometry{});

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an orthocal::Error");
  return ErrorCode::InvalidArgument;
}

PostureAngles random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.2);
  return {u(rng), -u(rng)};
}

}  // namespace

TEST_CASE("full design matrix") {
  SUBCASE("coefficients for symmetric angles") {
    const double a = 0.3;
    const DesignMatrix m = design_matrix_full({a, -a});
    const double b1 = std::sin(a), c1 = (0.5 + b1) * std::tan(a);
    const double b2 = -b1, c2 = (0.5 - b1) * -std::tan(a);
    // dx_y_max, dy_x_max, dx_y_min, dy_x_min
    CHECK(m(0, 0) == doctest::Approx(b1));
    CHECK(m(0, 1) == doctest::Approx(c1));
    CHECK(m(1, 0) == doctest::Approx(c1));
    CHECK(m(1, 1) == doctest::Approx(b1));
    CHECK(m(2, 0) == doctest::Approx(b2));
    CHECK(m(2, 1) == doctest::Approx(c2));
    CHECK(m(3, 0) == doctest::Approx(c2));
    CHECK(m(3, 1) == doctest::Approx(b2));
    CHECK(m(0, 2) == 0.0);
    CHECK(m.rows() == 12);
  }
  SUBCASE("matches the linearised leg model for random offsets") {
    std::mt19937_64 rng(21);
    const auto& rows = full_layout();
    for (int k = 0; k < 100; ++k) {
      const JointOffsets d = random_offsets(rng, 5.0);
      const Eigen::VectorXd predicted = design_matrix_full(kDefaultAngles) * d.vec();
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const double alpha =
            rows[r].kind == PostureKind::Max ? kDefaultAngles.alpha_max : kDefaultAngles.alpha_min;
        const DeviationPair lin = linearized_deviation_delta(rows[r].leg, rows[r].kind, alpha, d);
        const double expected =
            gauge_axis(rows[r].leg, GaugeDirection::First) == rows[r].gauge ? lin.first : lin.second;
        REQUIRE(std::abs(predicted(static_cast<Eigen::Index>(r)) - expected) < 1e-12);
      }
    }
  }
  SUBCASE("zero angles leave nothing to identify") {
    CHECK(numerical_rank(design_matrix_full({0.0, 0.0})) == 0);
  }
  SUBCASE("invalid angles") {
    CHECK(code_of([] { design_matrix_full({1.6, -0.2}); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("reduced design matrix") {
  SUBCASE("differencing the full system") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 20; ++k) {
      const PostureAngles a = random_angles(rng);
      const DesignMatrix diff = reduction_operator() * design_matrix_full(a);
      CHECK((diff - design_matrix_reduced(a)).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
  SUBCASE("x offset pattern") {
    const double b = std::sin(kDefaultAngles.alpha_max) - std::sin(kDefaultAngles.alpha_min);
    const double c = (0.5 + std::sin(kDefaultAngles.alpha_max)) * std::tan(kDefaultAngles.alpha_max) -
                     (0.5 + std::sin(kDefaultAngles.alpha_min)) * std::tan(kDefaultAngles.alpha_min);
    const Eigen::VectorXd v = design_matrix_reduced(kDefaultAngles) * Eigen::Vector3d{1, 0, 0};
    // dx_y, dx_z, dy_x, dy_z, dz_x, dz_y
    CHECK(v(0) == doctest::Approx(b));
    CHECK(v(1) == doctest::Approx(b));
    CHECK(v(2) == doctest::Approx(c));
    CHECK(v(3) == 0.0);
    CHECK(v(4) == doctest::Approx(c));
    CHECK(v(5) == 0.0);
  }
  SUBCASE("rank") {
    CHECK(numerical_rank(design_matrix_reduced(kDefaultAngles)) == 3);
    CHECK(numerical_rank(design_matrix_reduced({0.3, 0.3})) < 3);
  }
}

TEST_CASE("least-squares solve") {
  SUBCASE("exact recovery for both forms") {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 200; ++k) {
      const PostureAngles a = random_angles(rng);
      const JointOffsets truth = random_offsets(rng, 5.0);
      for (auto form : {MeasurementForm::Full, MeasurementForm::Reduced}) {
        const DesignMatrix m = design_matrix(form, a);
        const CalibrationResult r = solve_offsets(m, m * truth.vec());
        REQUIRE((r.offsets.vec() - truth.vec()).cwiseAbs().maxCoeff() <= 1e-9);
        REQUIRE(r.sigma_hat < 1e-9);
      }
    }
  }
  SUBCASE("zero measurements") {
    const CalibrationResult r =
        solve_offsets(design_matrix_full(kDefaultAngles), Eigen::VectorXd::Zero(12));
    CHECK(r.offsets == JointOffsets{});
    CHECK(r.residuals.cwiseAbs().maxCoeff() == 0.0);
    CHECK(r.rms_before == 0.0);
  }
  SUBCASE("residual invariants on noisy data") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> noise(0.0, 0.1);
    for (int k = 0; k < 100; ++k) {
      const DesignMatrix a = design_matrix_full(random_angles(rng));
      Eigen::VectorXd m = a * random_offsets(rng, 2.0).vec();
      for (Eigen::Index i = 0; i < m.size(); ++i) m(i) += noise(rng);
      const CalibrationResult r = solve_offsets(a, m);
      CHECK((r.residuals - (m - a * r.offsets.vec())).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((a.transpose() * r.residuals).norm() <= 1e-9 * a.norm() * m.norm());
      CHECK(r.rms_after_predicted == doctest::Approx(rms(r.residuals)));
      CHECK(r.sigma_hat == doctest::Approx(std::sqrt(r.residuals.squaredNorm() / 9.0)));
    }
  }
  SUBCASE("unbiased noise estimate") {
    std::mt19937_64 rng(2024);
    const double sigma = 0.05;
    std::normal_distribution<double> noise(0.0, sigma);
    const DesignMatrix a = design_matrix_full(kDefaultAngles);
    double sum = 0.0;
    const int trials = 2000;
    for (int k = 0; k < trials; ++k) {
      Eigen::VectorXd m = a * Eigen::Vector3d{0.4, -0.2, 0.1};
      for (Eigen::Index i = 0; i < m.size(); ++i) m(i) += noise(rng);
      sum += solve_offsets(a, m).sigma_hat;
    }
    CHECK(std::abs(sum / trials - sigma) <= 0.1 * sigma);
  }
  SUBCASE("full and reduced forms agree on noise-free data") {
    const JointOffsets truth{1.2, -0.7, 0.33};
    const Eigen::VectorXd full = design_matrix_full(kDefaultAngles) * truth.vec();
    const Eigen::VectorXd reduced = reduction_operator() * full;
    const auto rf = solve_offsets(design_matrix_full(kDefaultAngles), full);
    const auto rr = solve_offsets(design_matrix_reduced(kDefaultAngles), reduced);
    CHECK((rf.offsets.vec() - rr.offsets.vec()).cwiseAbs().maxCoeff() <= 1e-9);
  }
  SUBCASE("errors") {
    CHECK(code_of([] { solve_offsets(design_matrix_reduced({0.3, 0.3}), Eigen::VectorXd::Ones(6)); }) ==
          ErrorCode::RankDeficient);
    CHECK(code_of([] { solve_offsets(design_matrix_full(kDefaultAngles), Eigen::VectorXd::Ones(6)); }) ==
          ErrorCode::InvalidArgument);
    const DesignMatrix three = design_matrix_full(kDefaultAngles).topRows(3);
    CHECK(code_of([&] { solve_offsets(three, Eigen::VectorXd::Ones(3)); }) ==
          ErrorCode::InvalidArgument);
  }
}

TEST_CASE("predict improvement and rms") {
  SUBCASE("zero offsets return the measurements") {
    const Eigen::VectorXd m = table1::to_vector(table1::experiments()[1].measured);
    CHECK(predict_improvement(design_matrix_reduced(kDefaultAngles), m, {}) == m);
  }
  SUBCASE("least-squares offsets return the residuals") {
    const DesignMatrix a = design_matrix_reduced(kDefaultAngles);
    const Eigen::VectorXd m = table1::to_vector(table1::experiments()[1].measured);
    const CalibrationResult r = solve_offsets(a, m);
    CHECK((predict_improvement(a, m, r.offsets) - r.residuals).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("published rows") {
    const std::array<double, 6> e2{-0.43, -0.37, +0.42, -0.18, -1.14, -0.70};
    const std::array<double, 6> e3{-0.23, +0.27, +0.34, -0.10, -0.09, +0.11};
    CHECK(std::abs(rms(std::span<const double>(e2)) - 0.62) <= 0.01);
    CHECK(std::abs(rms(std::span<const double>(e3)) - 0.21) <= 0.01);
    const std::array<double, 3> zero{};
    CHECK(rms(std::span<const double>(zero)) == 0.0);
  }
  SUBCASE("empty") {
    CHECK(code_of([] { rms(std::span<const double>{}); }) == ErrorCode::EmptyVector);
  }
}

TEST_CASE("prototype angle fit") {
  const auto& exps = table1::experiments();
  const table1::AngleFit fit = table1::fit_angles(exps[1]);
  CHECK(fit.angles.alpha_max > 0.0);
  CHECK(fit.angles.alpha_min < 0.0);
  CHECK(std::abs(fit.predicted_rms - 0.20) <= 0.02);
  CHECK(fit.mismatch < 0.01);

  const DesignMatrix a = design_matrix_reduced(fit.angles);
  const auto exp3 = solve_offsets(a, table1::to_vector(exps[2].measured));
  CHECK(std::abs(exp3.rms_after_predicted - 0.20) <= 0.03);
  const auto exp2 = solve_offsets(a, table1::to_vector(exps[1].measured));
  CHECK(exp2.residuals.cwiseAbs().maxCoeff() == doctest::Approx(0.28).epsilon(0.05));
}
