#include "steer/lp.hpp"

#include <algorithm>
#include <cmath>

namespace steer {

std::string to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::Feasible: return "Feasible";
    case FeasibilityStatus::Infeasible: return "Infeasible";
    case FeasibilityStatus::Undecided: return "Undecided";
  }
  return "?";
}

template <class T>
void FeasibilityProblem<T>::add_equality(std::vector<T> coefficients, T rhs) {
  if (coefficients.size() != variables_) {
    throw std::invalid_argument("FeasibilityProblem: row has " + std::to_string(coefficients.size()) +
                                " coefficients, expected " + std::to_string(variables_));
  }
  rows_.push_back(std::move(coefficients));
  rhs_.push_back(std::move(rhs));
}

namespace {

template <class T>
struct Arith;

template <>
struct Arith<Rational> {
  static constexpr bool exact = true;
  explicit Arith(double) {}
  bool negative(const Rational& v) const { return sgn(v) < 0; }
  bool pivotable(const Rational& v) const { return sgn(v) > 0; }
  bool less(const Rational& a, const Rational& b) const { return a < b; }
  void clean(Rational&) const {}
  bool positive(const Rational& v) const { return sgn(v) > 0; }
  bool nonzero(const Rational& v) const { return sgn(v) != 0; }
};

template <>
struct Arith<double> {
  // Pivot and pricing thresholds; independent of the feasibility tolerance.
  double eps = 1e-11;
  static constexpr bool exact = false;
  explicit Arith(double) {}
  bool negative(double v) const { return v < -eps; }
  bool pivotable(double v) const { return v > 1e-9; }
  bool less(double a, double b) const { return a < b - 1e-12; }
  void clean(double& v) const {
    if (std::abs(v) < 1e-14) v = 0.0;
  }
  bool positive(double v) const { return v > eps; }
  bool nonzero(double v) const { return std::abs(v) > 1e-15; }
};

/// Phase-one tableau over [x | artificials].
template <class T>
class PhaseOne {
 public:
  explicit PhaseOne(const FeasibilityProblem<T>& p)
      : m_(p.constraints()), n_(p.variables()), cols_(n_ + m_), tab_(m_ * cols_), rhs_(m_),
        sign_(m_, 1), basis_(m_), cost_(cols_), arith_(0.0) {
    for (std::size_t i = 0; i < m_; ++i) {
      const bool flip = p.rhs(i) < T(0);
      sign_[i] = flip ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = flip ? T(-p.row(i)[j]) : p.row(i)[j];
      at(i, n_ + i) = T(1);
      rhs_[i] = flip ? T(-p.rhs(i)) : p.rhs(i);
      basis_[i] = n_ + i;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      T s(0);
      for (std::size_t i = 0; i < m_; ++i) s -= at(i, j);
      cost_[j] = s;
    }
    for (std::size_t i = 0; i < m_; ++i) objective_ += rhs_[i];
  }

  void run() {
    const std::size_t budget = 50 * cols_ + 10000;
    // Exact arithmetic uses Bland's rule throughout. Floating point prices by
    // the most negative reduced cost and drops to Bland only while stalled on
    // degenerate pivots, where rounding noise can otherwise cycle.
    bool bland = arith_.exact;
    std::size_t stalled = 0;
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!arith_.negative(cost_[j])) continue;
        if (enter == cols_ || (!bland && cost_[j] < cost_[enter])) enter = j;
        if (bland) break;
      }
      if (enter == cols_) return;

      std::size_t leave = m_;
      T best{};
      for (std::size_t i = 0; i < m_; ++i) {
        if (!arith_.pivotable(at(i, enter))) continue;
        T ratio = rhs_[i] / at(i, enter);
        if (leave == m_ || arith_.less(ratio, best)) {
          leave = i;
          best = ratio;
        } else if (!arith_.less(best, ratio)) {
          const bool take = bland ? basis_[i] < basis_[leave] : at(leave, enter) < at(i, enter);
          if (take) {
            leave = i;
            best = ratio;
          }
        }
      }
      // Unbounded descent cannot happen: the objective is bounded below by 0.
      if (leave == m_) throw InternalError("phase-one simplex: unbounded ray in a bounded problem");
      pivot(leave, enter);
      if (++pivots_ > budget) throw InternalError("phase-one simplex: pivot budget exhausted (cycling guard)");
      if (!arith_.exact) {
        if (arith_.positive(best)) {
          stalled = 0;
          bland = false;
        } else if (++stalled > 2 * m_) {
          bland = true;
        }
      }
    }
  }

  /// Sum of the artificial variables still in the basis; recomputed rather
  /// than read from the running objective so floating drift does not leak in.
  T objective() const {
    T z(0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) z += rhs_[i];
    return z;
  }
  std::size_t pivots() const { return pivots_; }

  std::vector<T> model() const {
    std::vector<T> x(n_, T(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
    return x;
  }

  /// Duals of the phase-one LP recovered from artificial reduced costs,
  /// mapped back through the row sign flips.
  std::vector<T> certificate() const {
    std::vector<T> c(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      T u = T(1) - cost_[n_ + i];
      c[i] = sign_[i] > 0 ? T(-u) : u;
    }
    return c;
  }

 private:
  T& at(std::size_t i, std::size_t j) { return tab_[i * cols_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return tab_[i * cols_ + j]; }

  void pivot(std::size_t r, std::size_t c) {
    const T inv = T(1) / at(r, c);
    for (std::size_t j = 0; j < cols_; ++j)
      if (arith_.nonzero(at(r, j))) at(r, j) *= inv;
    at(r, c) = T(1);
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const T f = at(i, c);
      if (!arith_.nonzero(f)) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (arith_.nonzero(at(r, j))) at(i, j) -= f * at(r, j);
      at(i, c) = T(0);
      rhs_[i] -= f * rhs_[r];
      arith_.clean(rhs_[i]);
      if (rhs_[i] < T(0)) rhs_[i] = T(0);
    }
    const T d = cost_[c];
    for (std::size_t j = 0; j < cols_; ++j)
      if (arith_.nonzero(at(r, j))) cost_[j] -= d * at(r, j);
    cost_[c] = T(0);
    objective_ += d * rhs_[r];
    basis_[r] = c;
  }

  std::size_t m_, n_, cols_;
  std::vector<T> tab_;
  std::vector<T> rhs_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
  std::vector<T> cost_;
  T objective_{0};
  std::size_t pivots_ = 0;
  Arith<T> arith_;
};

}  // namespace

template <class T>
T constraint_violation(const FeasibilityProblem<T>& problem, const std::vector<T>& x) {
  T worst(0);
  for (std::size_t i = 0; i < problem.constraints(); ++i) {
    T s = -problem.rhs(i);
    for (std::size_t j = 0; j < problem.variables(); ++j) s += problem.row(i)[j] * x[j];
    T a = s < T(0) ? T(-s) : s;
    if (worst < a) worst = a;
  }
  return worst;
}

template <class T>
bool verify_certificate(const FeasibilityProblem<T>& problem, const std::vector<T>& c, const T& slack) {
  if (c.size() != problem.constraints()) return false;
  for (std::size_t j = 0; j < problem.variables(); ++j) {
    T s(0);
    for (std::size_t i = 0; i < problem.constraints(); ++i) s += c[i] * problem.row(i)[j];
    if (s < T(-slack)) return false;
  }
  T bc(0);
  for (std::size_t i = 0; i < problem.constraints(); ++i) bc += c[i] * problem.rhs(i);
  return bc < T(-slack);
}

FeasibilityVerdict<Rational> solve_feasibility(const FeasibilityProblem<Rational>& problem) {
  PhaseOne<Rational> lp(problem);
  lp.run();
  FeasibilityVerdict<Rational> v;
  v.residual = lp.objective();
  v.pivots = lp.pivots();
  if (sgn(v.residual) == 0) {
    v.status = FeasibilityStatus::Feasible;
    v.model = lp.model();
    if (sgn(constraint_violation(problem, v.model)) != 0)
      throw InternalError("exact simplex: model fails substitution check");
  } else {
    v.status = FeasibilityStatus::Infeasible;
    v.certificate = lp.certificate();
    if (!verify_certificate(problem, v.certificate, Rational(0)))
      throw InternalError("exact simplex: Farkas certificate fails verification");
  }
  return v;
}

FeasibilityVerdict<double> solve_feasibility(const FeasibilityProblem<double>& problem, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_feasibility: tolerance must be positive");
  PhaseOne<double> lp(problem);
  lp.run();
  FeasibilityVerdict<double> v;
  v.residual = std::max(lp.objective(), 0.0);
  v.pivots = lp.pivots();
  if (v.residual <= tol) {
    v.model = lp.model();
    for (auto& x : v.model) x = std::max(x, 0.0);
    if (constraint_violation(problem, v.model) <= 10.0 * tol) {
      v.status = FeasibilityStatus::Feasible;
      return v;
    }
    v.model.clear();
  } else if (v.residual > 100.0 * tol) {
    v.certificate = lp.certificate();
    if (verify_certificate(problem, v.certificate, 10.0 * tol)) {
      v.status = FeasibilityStatus::Infeasible;
      return v;
    }
    v.certificate.clear();
  }
  v.status = FeasibilityStatus::Undecided;
  v.gap_low = tol;
  v.gap_high = 100.0 * tol;
  return v;
}

template class FeasibilityProblem<double>;
template class FeasibilityProblem<Rational>;
template double constraint_violation(const FeasibilityProblem<double>&, const std::vector<double>&);
template Rational constraint_violation(const FeasibilityProblem<Rational>&, const std::vector<Rational>&);
template bool verify_certificate(const FeasibilityProblem<double>&, const std::vector<double>&, const double&);
template bool verify_certificate(const FeasibilityProblem<Rational>&, const std::vector<Rational>&, const Rational&);

}  // namespace steer
