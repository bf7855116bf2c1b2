#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "steer/gaussian.hpp"

using namespace steer;

TEST_CASE("two-mode squeezed vacuum covariance") {
  const auto vac = tmsv_covariance(0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(vac(i, j) == (i == j ? 0.5 : 0.0));
  const auto cm = tmsv_covariance(0.69);
  CHECK(cm(0, 0) == doctest::Approx(std::cosh(1.38) / 2).epsilon(1e-15));
  CHECK(cm(0, 0) == doctest::Approx(1.0566).epsilon(1e-4));
  CHECK(cm(0, 2) == doctest::Approx(std::sinh(1.38) / 2));
  CHECK(cm(1, 3) == doctest::Approx(-std::sinh(1.38) / 2));
  CHECK_THROWS_AS(tmsv_covariance(-0.1), std::invalid_argument);
}

TEST_CASE("pure states have symplectic eigenvalues 1/2") {
  for (int k = 0; k <= 30; ++k) {
    const auto nu = symplectic_eigenvalues(tmsv_covariance(0.1 * k));
    CHECK(std::abs(nu[0] - 0.5) <= 1e-10);
    CHECK(std::abs(nu[1] - 0.5) <= 1e-10);
  }
  const auto th = symplectic_eigenvalues(thermal_covariance(1.5));
  CHECK(th[0] == doctest::Approx(1.5));
}

TEST_CASE("bona fide condition is enforced") {
  CovarianceMatrix::Entries bad{};
  for (int i = 0; i < 4; ++i) bad[i][i] = 0.25;  // below vacuum noise
  CHECK_THROWS_AS(CovarianceMatrix{bad}, std::invalid_argument);
  CovarianceMatrix::Entries asym = tmsv_covariance(0.3).entries();
  asym[0][1] = 0.1;
  CHECK_THROWS_AS(CovarianceMatrix{asym}, std::invalid_argument);
}

TEST_CASE("inferred variances follow 1/(2 cosh 2r)") {
  for (int k = 0; k < 100; ++k) {
    const double r = 3.0 * k / 99.0;
    const auto iv = inferred_variances(tmsv_covariance(r));
    const double expect = 1.0 / (2.0 * std::cosh(2.0 * r));
    CHECK(std::abs(iv.var_x - expect) <= 1e-12);
    CHECK(std::abs(iv.var_p - expect) <= 1e-12);
  }
  const auto zero = inferred_variances(tmsv_covariance(0.0));
  CHECK(zero.var_x == doctest::Approx(0.5));
}

TEST_CASE("inferred variances decrease with squeezing") {
  double prev = 1.0;
  for (int k = 0; k <= 40; ++k) {
    const auto iv = inferred_variances(tmsv_covariance(0.05 * k));
    CHECK(iv.var_x < prev);
    prev = iv.var_x;
    if (k > 0) CHECK(reid_check(iv.var_x, iv.var_p).steering);
  }
}

TEST_CASE("Reid check") {
  const auto iv = inferred_variances(tmsv_covariance(0.69));
  const auto rc = reid_check(iv.var_x, iv.var_p);
  CHECK(rc.steering);
  CHECK(std::round(rc.product * 1000) / 1000 == doctest::Approx(0.237));
  CHECK(std::round(std::sqrt(iv.var_x) * 1000) / 1000 == doctest::Approx(0.486));
  const auto r0 = reid_check(0.5, 0.5);
  CHECK(r0.product == 0.5);
  CHECK_FALSE(r0.steering);
  const auto thermal = inferred_variances(thermal_covariance(1.0));
  const auto rt = reid_check(thermal.var_x, thermal.var_p);
  CHECK(rt.product == doctest::Approx(1.0));
  CHECK_FALSE(rt.steering);
  CHECK_THROWS_AS(reid_check(-0.1, 0.5), std::invalid_argument);
}

TEST_CASE("loss degrades but keeps a bona fide state") {
  const auto lossy = apply_symmetric_loss(tmsv_covariance(0.69), 0.8);
  const auto iv = inferred_variances(lossy);
  CHECK(iv.var_x > inferred_variances(tmsv_covariance(0.69)).var_x);
  CHECK_THROWS_AS(apply_symmetric_loss(tmsv_covariance(0.1), 1.5), std::invalid_argument);
}

TEST_CASE("zero variance on Alice falls back to Bob's own variance") {
  CovarianceMatrix::Entries m{};
  m[0][0] = 0.0;  // V(x_A) = 0
  m[1][1] = 1.0;
  m[2][2] = 0.7;
  m[3][3] = 0.7;
  m[1][3] = m[3][1] = 0.2;
  const auto iv = inferred_variances(m);
  CHECK(iv.var_x == doctest::Approx(0.7));
  CHECK(iv.var_p == doctest::Approx(0.7 - 0.04));
  CHECK_FALSE(iv.warnings.empty());
}
