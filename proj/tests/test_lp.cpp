#include <doctest.h>

#include <random>

#include "steer/lp.hpp"

using namespace steer;

TEST_CASE("exact: simplex of one constraint") {
  FeasibilityProblem<Rational> p(2);
  p.add_equality({1, 1}, 1);
  const auto v = solve_feasibility(p);
  REQUIRE(v.status == FeasibilityStatus::Feasible);
  CHECK(v.model[0] + v.model[1] == 1);
  CHECK(v.model[0] >= 0);
  CHECK(v.model[1] >= 0);
}

TEST_CASE("exact: negative right-hand side has a one-row certificate") {
  FeasibilityProblem<Rational> p(1);
  p.add_equality({1}, -1);
  const auto v = solve_feasibility(p);
  REQUIRE(v.status == FeasibilityStatus::Infeasible);
  REQUIRE(v.certificate.size() == 1);
  CHECK(v.certificate[0] > 0);  // c = (1) up to scale: c.A = 1 >= 0, c.b = -1 < 0
  CHECK(verify_certificate(p, v.certificate, Rational(0)));
}

TEST_CASE("exact: contradictory rows") {
  FeasibilityProblem<Rational> p(2);
  p.add_equality({1, 1}, 1);
  p.add_equality({1, 1}, 2);
  const auto v = solve_feasibility(p);
  CHECK(v.status == FeasibilityStatus::Infeasible);
  CHECK(verify_certificate(p, v.certificate, Rational(0)));
}

TEST_CASE("exact: random systems built from a known nonnegative solution") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> coef(-3, 3), val(0, 4);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 4 + t % 5, m = 2 + t % 4;
    std::vector<Rational> x(n);
    for (auto& xi : x) xi = Rational(val(rng), 1 + val(rng));
    FeasibilityProblem<Rational> p(n);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Rational> row(n);
      Rational b(0);
      for (std::size_t j = 0; j < n; ++j) {
        row[j] = coef(rng);
        b += row[j] * x[j];
      }
      p.add_equality(row, b);
    }
    const auto v = solve_feasibility(p);
    REQUIRE(v.status == FeasibilityStatus::Feasible);
    CHECK(sgn(constraint_violation(p, v.model)) == 0);
    for (const auto& xi : v.model) CHECK(xi >= 0);
  }
}

TEST_CASE("floating: random feasible systems and their perturbations") {
  std::mt19937_64 rng(202);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 10 + t, m = 4 + t % 6;
    std::vector<double> x(n);
    for (auto& xi : x) xi = u(rng) < 0.5 ? 0.0 : u(rng);
    FeasibilityProblem<double> p(n);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> row(n);
      double b = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        row[j] = g(rng);
        b += row[j] * x[j];
      }
      p.add_equality(row, b);
    }
    const auto v = solve_feasibility(p, 1e-9);
    REQUIRE(v.status == FeasibilityStatus::Feasible);
    CHECK(constraint_violation(p, v.model) <= 1e-8);
  }
}

TEST_CASE("floating: infeasible system certificate re-verifies") {
  // Probability vector with negative mean: x0 + x1 = 1, x0 - x1 = 3 forces x1 = -1.
  FeasibilityProblem<double> p(2);
  p.add_equality({1.0, 1.0}, 1.0);
  p.add_equality({1.0, -1.0}, 3.0);
  const auto v = solve_feasibility(p, 1e-9);
  REQUIRE(v.status == FeasibilityStatus::Infeasible);
  CHECK(verify_certificate(p, v.certificate, 1e-8));
}

TEST_CASE("floating: residual inside the gap band is Undecided") {
  // x = 1 + 5e-9 and x = 1 cannot both hold; residual 5e-9 lies in (tol, 100 tol).
  FeasibilityProblem<double> p(1);
  p.add_equality({1.0}, 1.0);
  p.add_equality({1.0}, 1.0 + 5e-9);
  const auto v = solve_feasibility(p, 1e-9);
  CHECK(v.status == FeasibilityStatus::Undecided);
  CHECK(v.gap_low == 1e-9);
  CHECK(v.gap_high == doctest::Approx(1e-7));
}

TEST_CASE("degenerate systems do not cycle") {
  // Many redundant rows and columns sharing the same support.
  FeasibilityProblem<double> p(30);
  for (int r = 0; r < 12; ++r) {
    std::vector<double> row(30, 0.0);
    for (int j = 0; j < 30; ++j) row[j] = ((j + r) % 3 == 0) ? 1.0 : 0.0;
    p.add_equality(row, 0.0);
  }
  std::vector<double> total(30, 1.0);
  p.add_equality(total, 1.0);
  const auto v = solve_feasibility(p, 1e-9);
  CHECK(v.status == FeasibilityStatus::Infeasible);
}

TEST_CASE("row length is checked") {
  FeasibilityProblem<double> p(3);
  CHECK_THROWS_AS(p.add_equality({1.0, 2.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_feasibility(p, 0.0), std::invalid_argument);
}
