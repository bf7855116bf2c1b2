#include "steer/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "steer/linalg.hpp"

namespace steer {

namespace {

ComplexMatrix as_matrix(const CovarianceMatrix::Entries& e) {
  ComplexMatrix m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = e[i][j];
  return m;
}

/// Symplectic form for (x_A, p_A, x_B, p_B).
ComplexMatrix omega() {
  ComplexMatrix w(4, 4);
  w(0, 1) = 1.0;
  w(1, 0) = -1.0;
  w(2, 3) = 1.0;
  w(3, 2) = -1.0;
  return w;
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(const Entries& entries) : m_(entries) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (std::abs(m_[i][j] - m_[j][i]) > 1e-12) throw std::invalid_argument("CovarianceMatrix: not symmetric");
  const HermitianMatrix bona_fide(as_matrix(m_) + omega() * Complex{0.0, 0.5});
  if (!psd_check(bona_fide, 1e-9)) throw std::invalid_argument("CovarianceMatrix: violates CM + (i/2) Omega >= 0");
}

CovarianceMatrix tmsv_covariance(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("tmsv_covariance: squeezing must be >= 0");
  const double c = std::cosh(2.0 * r) / 2.0;
  const double s = std::sinh(2.0 * r) / 2.0;
  return CovarianceMatrix({{{c, 0, s, 0}, {0, c, 0, -s}, {s, 0, c, 0}, {0, -s, 0, c}}});
}

CovarianceMatrix thermal_covariance(double variance) {
  const double v = variance;
  return CovarianceMatrix({{{v, 0, 0, 0}, {0, v, 0, 0}, {0, 0, v, 0}, {0, 0, 0, v}}});
}

CovarianceMatrix apply_symmetric_loss(const CovarianceMatrix& cm, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("apply_symmetric_loss: eta outside [0,1]");
  CovarianceMatrix::Entries e = cm.entries();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e[i][j] = eta * e[i][j] + (i == j ? (1.0 - eta) / 2.0 : 0.0);
  return CovarianceMatrix(e);
}

std::array<double, 2> symplectic_eigenvalues(const CovarianceMatrix& cm) {
  // i Omega CM is similar to the Hermitian CM^{1/2} (i Omega) CM^{1/2}.
  const HermitianMatrix v(as_matrix(cm.entries()));
  const ComplexMatrix root = sqrt_psd(v);
  const HermitianMatrix h(root * (omega() * Complex{0.0, 1.0}) * root, 1e-9);
  auto ev = eigenvalues(h);
  for (auto& x : ev) x = std::abs(x);
  std::sort(ev.begin(), ev.end());
  // Moduli come in equal pairs.
  return {0.5 * (ev[0] + ev[1]), 0.5 * (ev[2] + ev[3])};
}

InferredVariances inferred_variances(const CovarianceMatrix& cm) { return inferred_variances(cm.entries()); }

InferredVariances inferred_variances(const CovarianceMatrix::Entries& cm) {
  InferredVariances out;
  auto conditional = [&](int alice, int bob, const char* name) {
    const double va = cm[alice][alice];
    const double vb = cm[bob][bob];
    const double c = cm[alice][bob];
    if (va <= 0.0) {
      out.warnings.push_back(std::string("V(") + name + "_A) = 0; reporting the unconditioned variance of " + name + "_B");
      return vb;
    }
    return vb - c * c / va;
  };
  out.var_x = conditional(0, 2, "x");
  out.var_p = conditional(1, 3, "p");
  return out;
}

ReidResult reid_check(double var_x, double var_p) {
  if (var_x < 0.0 || var_p < 0.0) throw std::invalid_argument("reid_check: variances must be >= 0");
  const double product = std::sqrt(var_x * var_p);
  return {product, product < 0.5};
}

}  // namespace steer
