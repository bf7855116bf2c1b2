#include "steer/random.hpp"

#include <cmath>
#include <stdexcept>

namespace steer {

namespace {

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

void orthonormalize_columns(ComplexMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i) proj += std::conj(m(i, k)) * m(i, j);
      for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) -= proj * m(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) norm += std::norm(m(i, j));
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw std::runtime_error("orthonormalize_columns: degenerate sample");
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) /= norm;
  }
}

}  // namespace

ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  if (rows < cols || cols == 0) throw std::invalid_argument("random_isometry: need rows >= cols > 0");
  ComplexMatrix g = gaussian_matrix(rows, cols, rng);
  orthonormalize_columns(g);
  return g;
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) { return random_isometry(dim, dim, rng); }

DensityMatrix random_density_matrix(std::size_t dim, Rng& rng, std::size_t rank) {
  const ComplexMatrix g = gaussian_matrix(dim, rank == 0 ? dim : rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho = rho * Complex(1.0 / rho.trace().real());
  return DensityMatrix(rho);
}

Povm random_povm(std::size_t dim, std::size_t outcomes, Rng& rng, std::string label) {
  if (outcomes == 0) throw std::invalid_argument("random_povm: need at least one outcome");
  std::vector<ComplexMatrix> a;
  ComplexMatrix s = ComplexMatrix::zero(dim, dim);
  for (std::size_t k = 0; k < outcomes; ++k) {
    const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
    a.push_back(g * g.adjoint());
    s = s + a.back();
  }
  const ComplexMatrix inv_sqrt = hermitian_function(HermitianMatrix(s), [](double x) { return 1.0 / std::sqrt(x); });
  std::vector<ComplexMatrix> effects;
  for (const auto& ak : a) {
    ComplexMatrix e = inv_sqrt * ak * inv_sqrt;
    // Symmetrize away rounding so the effect passes the hermiticity check.
    effects.push_back((e + e.adjoint()) * Complex(0.5));
  }
  return Povm(std::move(label), std::move(effects));
}

Instrument random_instrument(const Povm& povm, std::size_t kraus_per_outcome, Rng& rng) {
  if (kraus_per_outcome == 0) throw std::invalid_argument("random_instrument: need at least one Kraus operator");
  const std::size_t d = povm.dim();
  std::vector<std::vector<ComplexMatrix>> sets;
  for (std::size_t a = 0; a < povm.outcomes(); ++a) {
    const ComplexMatrix root = sqrt_psd(povm.effect(a));
    const ComplexMatrix v = random_isometry(d * kraus_per_outcome, d, rng);
    std::vector<ComplexMatrix> ks;
    for (std::size_t mu = 0; mu < kraus_per_outcome; ++mu) {
      ComplexMatrix block(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) block(i, j) = v(mu * d + i, j);
      ks.push_back(block * root);
    }
    sets.push_back(std::move(ks));
  }
  return Instrument(povm.label(), std::move(sets));
}

}  // namespace steer
