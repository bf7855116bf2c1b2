#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace steer {

using Complex = std::complex<double>;

/// Max-norm tolerance under which a matrix counts as Hermitian.
inline constexpr double kHermiticityTol = 1e-10;
/// Default slack on the smallest eigenvalue in PSD checks.
inline constexpr double kPsdTol = 1e-9;

/// Dense complex matrix, row-major. Sizes in this toolkit stay below ~64.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Complex>& entries() const { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermiticityTol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out the first tensor factor of an operator on C^dimA (x) C^dimB.
ComplexMatrix partial_trace_A(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b);
/// Trace out the second tensor factor.
ComplexMatrix partial_trace_B(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b);

/// Square matrix verified Hermitian (within kHermiticityTol) at construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(ComplexMatrix m, double tol = kHermiticityTol);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

 private:
  ComplexMatrix m_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors, same order as values
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
EigenDecomposition eigh(const HermitianMatrix& m);
std::vector<double> eigenvalues(const HermitianMatrix& m);

/// True iff the smallest eigenvalue is >= -tol.
bool psd_check(const HermitianMatrix& m, double tol = kPsdTol);

/// f applied on the spectrum: V f(D) V^dagger.
ComplexMatrix hermitian_function(const HermitianMatrix& m, double (*f)(double));
/// Principal square root of a PSD matrix; eigenvalues slightly below zero are clipped.
ComplexMatrix sqrt_psd(const HermitianMatrix& m);

/// Expectation tr[A B] for Hermitian A, B (real part).
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
/// n.sigma for a 3-vector n.
ComplexMatrix along(double nx, double ny, double nz);
}  // namespace pauli

std::string to_string(const ComplexMatrix& m, int precision = 6);

}  // namespace steer
