#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "steer/linalg.hpp"

namespace steer {

/// Probability below which a context counts as never occurring; the
/// normalized conditional state is not formed for such contexts.
inline constexpr double kZeroProbability = 1e-12;
/// Default tolerance for "unit probability" in predictability scans.
inline constexpr double kCertaintyTol = 1e-9;
/// Tolerance for assemblage normalization and marginal agreement.
inline constexpr double kAssemblageTol = 1e-9;
/// Tolerance for effects summing to the identity.
inline constexpr double kCompletenessTol = 1e-10;

/// Positive semidefinite, unit-trace operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix rho, double tol = kPsdTol);

  std::size_t dim() const { return rho_.dim(); }
  const ComplexMatrix& matrix() const { return rho_.matrix(); }
  const HermitianMatrix& hermitian() const { return rho_; }

 private:
  HermitianMatrix rho_;
};

/// Measurement given by its effects. Effect a is outcome a.
class Povm {
 public:
  Povm(std::string label, std::vector<HermitianMatrix> effects);
  Povm(std::string label, std::vector<ComplexMatrix> effects);

  /// Sharp qubit measurement along n; outcome a carries eigenvalue (-1)^a,
  /// so effect 0 projects onto the +1 eigenvector of n.sigma.
  static Povm pauli(std::string label, std::array<double, 3> n);
  /// Unbiased noisy version of pauli(): effects (I + (-1)^a eta n.sigma)/2.
  static Povm noisy_pauli(std::string label, std::array<double, 3> n, double eta);

  const std::string& label() const { return label_; }
  std::size_t dim() const { return effects_.front().dim(); }
  std::size_t outcomes() const { return effects_.size(); }
  const HermitianMatrix& effect(std::size_t a) const { return effects_.at(a); }
  const std::vector<HermitianMatrix>& effects() const { return effects_; }

 private:
  std::string label_;
  std::vector<HermitianMatrix> effects_;
};

/// Local instrument on Alice: for each outcome a, a Kraus set {K_{a mu}}.
class Instrument {
 public:
  Instrument(std::string label, std::vector<std::vector<ComplexMatrix>> kraus_sets);

  /// One Kraus operator per outcome, K_a = sqrt(M_a).
  static Instrument lueders(const Povm& povm);

  const std::string& label() const { return label_; }
  std::size_t dim() const { return dim_; }
  std::size_t outcomes() const { return kraus_.size(); }
  const std::vector<ComplexMatrix>& kraus(std::size_t a) const { return kraus_.at(a); }
  /// sum_mu K^dagger K for outcome a.
  ComplexMatrix effect(std::size_t a) const;
  Povm to_povm() const;

 private:
  std::string label_;
  std::size_t dim_ = 0;
  std::vector<std::vector<ComplexMatrix>> kraus_;
};

/// Bob's subnormalized conditional states sigma_{a|x}, indexed [x][a].
///
/// Construction only checks shapes and hermiticity so that deliberately broken
/// assemblages can be represented; use validate_assemblage() and
/// check_no_signalling() for the physical invariants.
class Assemblage {
 public:
  Assemblage(std::size_t dim_b, std::vector<std::vector<HermitianMatrix>> sigma);

  std::size_t settings() const { return sigma_.size(); }
  std::size_t outcomes() const { return sigma_.front().size(); }
  std::size_t dim_b() const { return dim_b_; }

  const HermitianMatrix& sigma(std::size_t x, std::size_t a) const { return sigma_.at(x).at(a); }
  /// p(a|x) = tr sigma_{a|x}.
  double probability(std::size_t x, std::size_t a) const;
  /// omega_{B|a,x}; empty when p(a|x) <= kZeroProbability.
  std::optional<ComplexMatrix> conditional_state(std::size_t x, std::size_t a) const;
  /// sum_a sigma_{a|x}.
  ComplexMatrix marginal(std::size_t x) const;

 private:
  std::size_t dim_b_;
  std::vector<std::vector<HermitianMatrix>> sigma_;
};

struct NoSignallingReport {
  bool pass = false;
  double max_deviation = 0.0;
};

struct AssemblageValidity {
  bool psd = false;
  double normalization_deviation = 0.0;  // max_x |sum_a tr sigma_{a|x} - 1|
  NoSignallingReport no_signalling;
  bool ok() const { return psd && normalization_deviation <= kAssemblageTol && no_signalling.pass; }
};

struct PredictabilityRecord {
  std::size_t x = 0;
  std::size_t a = 0;
  std::size_t y = 0;
  std::size_t b = 0;
  double probability = 0.0;
};

/// sigma_{a|x} = tr_A[(M_{a|x} (x) I) rho].
Assemblage assemblage_from_povms(const DensityMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                                 std::span<const Povm> alice);

/// sigma_{a|x} = sum_mu tr_A[(K (x) I) rho (K^dagger (x) I)].
Assemblage assemblage_from_instruments(const DensityMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                                       std::span<const Instrument> alice);

NoSignallingReport check_no_signalling(const Assemblage& asm_, double tol = kAssemblageTol);
AssemblageValidity validate_assemblage(const Assemblage& asm_, double tol = kAssemblageTol);

/// All (x,a,y,b) with p(a|x) > 0 and tr[E_{b|y} omega_{B|a,x}] >= 1 - eps.
std::vector<PredictabilityRecord> scan_predictability(const Assemblage& asm_, std::span<const Povm> bob,
                                                      double eps = kCertaintyTol);

/// Bell vectors in the fixed order Phi+, Phi-, Psi+, Psi- (4x1 columns).
std::array<ComplexMatrix, 4> bell_basis();
DensityMatrix singlet_state();
/// p |Psi-><Psi-| + (1 - p) I/4.
DensityMatrix werner_state(double p);

/// lambda * first + (1 - lambda) * second, elementwise.
Assemblage mix(const Assemblage& first, const Assemblage& second, double lambda);
/// Relabel Alice's outcomes through `outcome_map` (old outcome -> new outcome)
/// and sum the merged elements. The new outcome count is max(map) + 1.
Assemblage coarse_grain(const Assemblage& asm_, std::span<const std::size_t> outcome_map);

/// Pauli observables sigma_x, sigma_y, sigma_z as POVMs labelled "x", "y", "z".
std::vector<Povm> pauli_povms(std::size_t count);

}  // namespace steer
