#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "steer/rational.hpp"

namespace steer {

enum class FeasibilityStatus { Feasible, Infeasible, Undecided };

std::string to_string(FeasibilityStatus s);

/// Raised when a solver invariant breaks (pivot budget exhausted, a
/// certificate that fails re-verification in exact arithmetic).
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// { x >= 0 : A x = b }, stored row by row.
template <class T>
class FeasibilityProblem {
 public:
  explicit FeasibilityProblem(std::size_t variables) : variables_(variables) {}

  void add_equality(std::vector<T> coefficients, T rhs);

  std::size_t variables() const { return variables_; }
  std::size_t constraints() const { return rows_.size(); }
  const std::vector<T>& row(std::size_t i) const { return rows_[i]; }
  const T& rhs(std::size_t i) const { return rhs_[i]; }

 private:
  std::size_t variables_;
  std::vector<std::vector<T>> rows_;
  std::vector<T> rhs_;
};

template <class T>
struct FeasibilityVerdict {
  FeasibilityStatus status = FeasibilityStatus::Undecided;
  /// Nonnegative solution of A x = b (Feasible only).
  std::vector<T> model;
  /// Farkas vector c with A^T c >= 0 and b.c < 0 (Infeasible only).
  std::vector<T> certificate;
  /// Optimal phase-one objective: sum of artificial variables.
  T residual{};
  /// Floating mode: the band (tol, 100 tol) in which the residual fell when Undecided.
  double gap_low = 0.0;
  double gap_high = 0.0;
  std::size_t pivots = 0;
};

/// Exact two-phase simplex (phase one only) with Bland's rule. Never Undecided.
FeasibilityVerdict<Rational> solve_feasibility(const FeasibilityProblem<Rational>& problem);

/// Floating-point version. Residual <= tol gives Feasible, residual > 100 tol
/// gives Infeasible, anything between is Undecided. Verdicts are re-verified
/// by substitution (within 10 tol); one that fails is downgraded to Undecided.
FeasibilityVerdict<double> solve_feasibility(const FeasibilityProblem<double>& problem, double tol);

/// max_i |(A x - b)_i|.
template <class T>
T constraint_violation(const FeasibilityProblem<T>& problem, const std::vector<T>& x);

/// Checks the Farkas conditions: min_j (A^T c)_j >= -slack and b.c < -slack.
template <class T>
bool verify_certificate(const FeasibilityProblem<T>& problem, const std::vector<T>& c, const T& slack);

}  // namespace steer
