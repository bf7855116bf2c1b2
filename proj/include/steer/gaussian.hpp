#pragma once

#include <array>
#include <string>
#include <vector>

namespace steer {

/// Two-mode covariance matrix over (x_A, p_A, x_B, p_B) with vacuum variance 1/2.
class CovarianceMatrix {
 public:
  using Entries = std::array<std::array<double, 4>, 4>;

  /// Throws std::invalid_argument unless symmetric and CM + (i/2) Omega >= 0 (within 1e-9).
  explicit CovarianceMatrix(const Entries& entries);

  double operator()(int i, int j) const { return m_[i][j]; }
  const Entries& entries() const { return m_; }

 private:
  Entries m_;
};

/// Two-mode squeezed vacuum: diagonal blocks cosh(2r)/2 I, off-diagonal block
/// sinh(2r)/2 diag(1, -1).
CovarianceMatrix tmsv_covariance(double r);
/// Product of two thermal modes with quadrature variance `variance` (>= 1/2).
CovarianceMatrix thermal_covariance(double variance);
/// Symmetric loss on both modes: eta CM + (1 - eta)/2 I.
CovarianceMatrix apply_symmetric_loss(const CovarianceMatrix& cm, double eta);

/// Symplectic eigenvalues (ascending): moduli of the eigenvalues of i Omega CM.
std::array<double, 2> symplectic_eigenvalues(const CovarianceMatrix& cm);

struct InferredVariances {
  double var_x = 0.0;
  double var_p = 0.0;
  /// Non-empty when Alice's quadrature variance vanished and the
  /// unconditioned Bob variance was reported instead.
  std::vector<std::string> warnings;
};

/// Conditional variances of Bob's quadratures given the optimal linear
/// estimate from Alice's: V(q_B) - C_q^2 / V(q_A).
InferredVariances inferred_variances(const CovarianceMatrix& cm);
/// Same computation on raw second moments (e.g. estimated from data), which
/// need not be bona fide and may have a vanishing Alice variance.
InferredVariances inferred_variances(const CovarianceMatrix::Entries& moments);

struct ReidResult {
  double product = 0.0;  // sqrt(var_x) sqrt(var_p)
  bool steering = false;  // product < 1/2
};

/// Throws std::invalid_argument on negative variances.
ReidResult reid_check(double var_x, double var_p);

}  // namespace steer
