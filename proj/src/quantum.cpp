#include "steer/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace steer {

namespace {

std::vector<HermitianMatrix> to_hermitian(std::vector<ComplexMatrix> ms) {
  std::vector<HermitianMatrix> out;
  out.reserve(ms.size());
  for (auto& m : ms) out.emplace_back(std::move(m));
  return out;
}

ComplexMatrix projector(const ComplexMatrix& ket) { return ket * ket.adjoint(); }

void require_state_dims(const DensityMatrix& rho, std::size_t dim_a, std::size_t dim_b) {
  if (rho.dim() != dim_a * dim_b) {
    std::ostringstream os;
    os << "state has dimension " << rho.dim() << " but dimA*dimB = " << dim_a * dim_b;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix rho, double tol) : rho_(std::move(rho)) {
  if (std::abs(rho_.trace() - 1.0) > kAssemblageTol) throw std::invalid_argument("DensityMatrix: trace is not 1");
  if (!psd_check(rho_, tol)) throw std::invalid_argument("DensityMatrix: operator is not positive semidefinite");
}

Povm::Povm(std::string label, std::vector<HermitianMatrix> effects)
    : label_(std::move(label)), effects_(std::move(effects)) {
  if (effects_.empty()) throw std::invalid_argument("Povm '" + label_ + "': no effects");
  const std::size_t d = effects_.front().dim();
  ComplexMatrix total(d, d);
  for (std::size_t a = 0; a < effects_.size(); ++a) {
    if (effects_[a].dim() != d) throw std::invalid_argument("Povm '" + label_ + "': effects differ in dimension");
    if (!psd_check(effects_[a])) {
      throw std::invalid_argument("Povm '" + label_ + "': effect " + std::to_string(a) + " is not PSD");
    }
    total += effects_[a].matrix();
  }
  if (max_abs_diff(total, ComplexMatrix::identity(d)) > kCompletenessTol) {
    throw std::invalid_argument("Povm '" + label_ + "': effects do not sum to the identity");
  }
}

Povm::Povm(std::string label, std::vector<ComplexMatrix> effects)
    : Povm(std::move(label), to_hermitian(std::move(effects))) {}

Povm Povm::pauli(std::string label, std::array<double, 3> n) { return noisy_pauli(std::move(label), n, 1.0); }

Povm Povm::noisy_pauli(std::string label, std::array<double, 3> n, double eta) {
  const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (norm == 0.0) throw std::invalid_argument("Povm::noisy_pauli: zero direction");
  if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("Povm::noisy_pauli: eta outside [0,1]");
  const ComplexMatrix obs = pauli::along(n[0] / norm, n[1] / norm, n[2] / norm);
  const ComplexMatrix id = pauli::I();
  return Povm(std::move(label), std::vector<ComplexMatrix>{(id + obs * eta) * 0.5, (id - obs * eta) * 0.5});
}

Instrument::Instrument(std::string label, std::vector<std::vector<ComplexMatrix>> kraus_sets)
    : label_(std::move(label)), kraus_(std::move(kraus_sets)) {
  if (kraus_.empty()) throw std::invalid_argument("Instrument '" + label_ + "': no outcomes");
  for (const auto& set : kraus_) {
    for (const auto& k : set) {
      if (!k.is_square()) throw std::invalid_argument("Instrument '" + label_ + "': Kraus operator not square");
      if (dim_ == 0) dim_ = k.rows();
      if (k.rows() != dim_) throw std::invalid_argument("Instrument '" + label_ + "': Kraus dimensions differ");
    }
  }
  if (dim_ == 0) throw std::invalid_argument("Instrument '" + label_ + "': no Kraus operators");
  ComplexMatrix total(dim_, dim_);
  for (std::size_t a = 0; a < kraus_.size(); ++a) total += effect(a);
  if (max_abs_diff(total, ComplexMatrix::identity(dim_)) > kCompletenessTol) {
    throw std::invalid_argument("Instrument '" + label_ + "': Kraus set is incomplete");
  }
}

Instrument Instrument::lueders(const Povm& povm) {
  std::vector<std::vector<ComplexMatrix>> sets;
  for (const auto& e : povm.effects()) sets.push_back({sqrt_psd(e)});
  return Instrument(povm.label(), std::move(sets));
}

ComplexMatrix Instrument::effect(std::size_t a) const {
  ComplexMatrix m(dim_, dim_);
  for (const auto& k : kraus_.at(a)) m += k.adjoint() * k;
  return m;
}

Povm Instrument::to_povm() const {
  std::vector<ComplexMatrix> effects;
  for (std::size_t a = 0; a < outcomes(); ++a) effects.push_back(effect(a));
  return Povm(label_, std::move(effects));
}

Assemblage::Assemblage(std::size_t dim_b, std::vector<std::vector<HermitianMatrix>> sigma)
    : dim_b_(dim_b), sigma_(std::move(sigma)) {
  if (sigma_.empty() || sigma_.front().empty()) throw std::invalid_argument("Assemblage: empty");
  const std::size_t outcomes = sigma_.front().size();
  for (const auto& row : sigma_) {
    if (row.size() != outcomes) throw std::invalid_argument("Assemblage: settings differ in outcome count");
    for (const auto& s : row)
      if (s.dim() != dim_b_) throw std::invalid_argument("Assemblage: element has wrong dimension");
  }
}

double Assemblage::probability(std::size_t x, std::size_t a) const { return sigma(x, a).trace(); }

std::optional<ComplexMatrix> Assemblage::conditional_state(std::size_t x, std::size_t a) const {
  const double p = probability(x, a);
  if (p <= kZeroProbability) return std::nullopt;
  return sigma(x, a).matrix() * (1.0 / p);
}

ComplexMatrix Assemblage::marginal(std::size_t x) const {
  ComplexMatrix m(dim_b_, dim_b_);
  for (const auto& s : sigma_.at(x)) m += s.matrix();
  return m;
}

Assemblage assemblage_from_povms(const DensityMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                                 std::span<const Povm> alice) {
  require_state_dims(rho, dim_a, dim_b);
  if (alice.empty()) throw std::invalid_argument("assemblage_from_povms: no Alice measurements");
  const ComplexMatrix id_b = ComplexMatrix::identity(dim_b);
  std::vector<std::vector<HermitianMatrix>> sigma;
  for (const auto& m : alice) {
    if (m.dim() != dim_a) throw std::invalid_argument("assemblage_from_povms: POVM '" + m.label() + "' acts on wrong dimension");
    std::vector<HermitianMatrix> row;
    for (const auto& e : m.effects()) {
      ComplexMatrix s = partial_trace_A(kron(e.matrix(), id_b) * rho.matrix(), dim_a, dim_b);
      // tr_A[(M (x) I) rho] is Hermitian; symmetrize away rounding.
      s = (s + s.adjoint()) * 0.5;
      row.emplace_back(std::move(s));
    }
    sigma.push_back(std::move(row));
  }
  return Assemblage(dim_b, std::move(sigma));
}

Assemblage assemblage_from_instruments(const DensityMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                                       std::span<const Instrument> alice) {
  require_state_dims(rho, dim_a, dim_b);
  if (alice.empty()) throw std::invalid_argument("assemblage_from_instruments: no Alice instruments");
  const ComplexMatrix id_b = ComplexMatrix::identity(dim_b);
  std::vector<std::vector<HermitianMatrix>> sigma;
  for (const auto& inst : alice) {
    if (inst.dim() != dim_a) throw std::invalid_argument("assemblage_from_instruments: instrument '" + inst.label() + "' acts on wrong dimension");
    std::vector<HermitianMatrix> row;
    for (std::size_t a = 0; a < inst.outcomes(); ++a) {
      ComplexMatrix s(dim_b, dim_b);
      for (const auto& k : inst.kraus(a)) {
        const ComplexMatrix kb = kron(k, id_b);
        s += partial_trace_A(kb * rho.matrix() * kb.adjoint(), dim_a, dim_b);
      }
      s = (s + s.adjoint()) * 0.5;
      row.emplace_back(std::move(s));
    }
    sigma.push_back(std::move(row));
  }
  return Assemblage(dim_b, std::move(sigma));
}

NoSignallingReport check_no_signalling(const Assemblage& asm_, double tol) {
  NoSignallingReport r;
  std::vector<ComplexMatrix> marginals;
  for (std::size_t x = 0; x < asm_.settings(); ++x) marginals.push_back(asm_.marginal(x));
  for (std::size_t x = 0; x < marginals.size(); ++x)
    for (std::size_t x2 = x + 1; x2 < marginals.size(); ++x2)
      r.max_deviation = std::max(r.max_deviation, max_abs_diff(marginals[x], marginals[x2]));
  r.pass = r.max_deviation <= tol;
  return r;
}

AssemblageValidity validate_assemblage(const Assemblage& asm_, double tol) {
  AssemblageValidity v;
  v.psd = true;
  for (std::size_t x = 0; x < asm_.settings(); ++x) {
    double total = 0.0;
    for (std::size_t a = 0; a < asm_.outcomes(); ++a) {
      v.psd = v.psd && psd_check(asm_.sigma(x, a));
      total += asm_.probability(x, a);
    }
    v.normalization_deviation = std::max(v.normalization_deviation, std::abs(total - 1.0));
  }
  v.no_signalling = check_no_signalling(asm_, tol);
  return v;
}

std::vector<PredictabilityRecord> scan_predictability(const Assemblage& asm_, std::span<const Povm> bob,
                                                      double eps) {
  std::vector<PredictabilityRecord> out;
  for (const auto& povm : bob)
    if (povm.dim() != asm_.dim_b()) throw std::invalid_argument("scan_predictability: Bob POVM '" + povm.label() + "' has wrong dimension");
  for (std::size_t x = 0; x < asm_.settings(); ++x) {
    for (std::size_t a = 0; a < asm_.outcomes(); ++a) {
      const auto omega = asm_.conditional_state(x, a);
      if (!omega) continue;
      for (std::size_t y = 0; y < bob.size(); ++y) {
        for (std::size_t b = 0; b < bob[y].outcomes(); ++b) {
          const double prob = trace_product(bob[y].effect(b).matrix(), *omega);
          if (prob >= 1.0 - eps) out.push_back({x, a, y, b, std::min(prob, 1.0)});
        }
      }
    }
  }
  return out;
}

std::array<ComplexMatrix, 4> bell_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  auto ket = [](double c00, double c01, double c10, double c11) {
    return ComplexMatrix(4, 1, {c00, c01, c10, c11});
  };
  return {ket(h, 0, 0, h), ket(h, 0, 0, -h), ket(0, h, h, 0), ket(0, h, -h, 0)};
}

DensityMatrix singlet_state() { return DensityMatrix(projector(bell_basis()[3])); }

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("werner_state: p outside [0,1]");
  return DensityMatrix(projector(bell_basis()[3]) * p + ComplexMatrix::identity(4) * ((1.0 - p) / 4.0));
}

Assemblage mix(const Assemblage& first, const Assemblage& second, double lambda) {
  if (first.settings() != second.settings() || first.outcomes() != second.outcomes() ||
      first.dim_b() != second.dim_b()) {
    throw std::invalid_argument("mix: assemblages have different shapes");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("mix: weight outside [0,1]");
  std::vector<std::vector<HermitianMatrix>> sigma(first.settings());
  for (std::size_t x = 0; x < first.settings(); ++x)
    for (std::size_t a = 0; a < first.outcomes(); ++a)
      sigma[x].emplace_back(first.sigma(x, a).matrix() * lambda + second.sigma(x, a).matrix() * (1.0 - lambda));
  return Assemblage(first.dim_b(), std::move(sigma));
}

Assemblage coarse_grain(const Assemblage& asm_, std::span<const std::size_t> outcome_map) {
  if (outcome_map.size() != asm_.outcomes()) throw std::invalid_argument("coarse_grain: map size differs from outcome count");
  const std::size_t n_new = *std::max_element(outcome_map.begin(), outcome_map.end()) + 1;
  std::vector<std::vector<HermitianMatrix>> sigma(asm_.settings());
  for (std::size_t x = 0; x < asm_.settings(); ++x) {
    std::vector<ComplexMatrix> merged(n_new, ComplexMatrix(asm_.dim_b(), asm_.dim_b()));
    for (std::size_t a = 0; a < asm_.outcomes(); ++a) merged[outcome_map[a]] += asm_.sigma(x, a).matrix();
    for (auto& m : merged) sigma[x].emplace_back(std::move(m));
  }
  return Assemblage(asm_.dim_b(), std::move(sigma));
}

std::vector<Povm> pauli_povms(std::size_t count) {
  switch (count) {
    case 1: return {Povm::pauli("z", {0, 0, 1})};
    case 2: return {Povm::pauli("x", {1, 0, 0}), Povm::pauli("z", {0, 0, 1})};
    case 3: return {Povm::pauli("x", {1, 0, 0}), Povm::pauli("y", {0, 1, 0}), Povm::pauli("z", {0, 0, 1})};
    default: throw std::invalid_argument("pauli_povms: count must be 1, 2 or 3");
  }
}

}  // namespace steer
