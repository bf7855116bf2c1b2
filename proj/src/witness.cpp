#include "steer/witness.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace steer {

CorrelatorSet::CorrelatorSet(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("CorrelatorSet: need at least one correlator");
  for (double v : values_)
    if (!(std::abs(v) <= 1.0 + 1e-12)) throw std::invalid_argument("CorrelatorSet: correlator outside [-1, 1]");
}

CorrelatorSet correlators_from_assemblage(const Assemblage& asm_, std::span<const HermitianMatrix> bob_obs) {
  if (bob_obs.size() != asm_.settings()) {
    throw std::invalid_argument("correlators_from_assemblage: " + std::to_string(bob_obs.size()) +
                                " observables for " + std::to_string(asm_.settings()) + " settings");
  }
  std::vector<double> values;
  for (std::size_t x = 0; x < asm_.settings(); ++x) {
    const auto& obs = bob_obs[x];
    if (obs.dim() != asm_.dim_b()) throw std::invalid_argument("correlators_from_assemblage: observable dimension mismatch");
    for (double ev : eigenvalues(obs))
      if (std::abs(std::abs(ev) - 1.0) > 1e-9) throw std::invalid_argument("correlators_from_assemblage: observable spectrum is not +-1");
    double c = 0.0;
    for (std::size_t a = 0; a < asm_.outcomes(); ++a) {
      const double sign = (a % 2 == 0) ? 1.0 : -1.0;
      c += sign * trace_product(obs.matrix(), asm_.sigma(x, a).matrix());
    }
    values.push_back(c);
  }
  return CorrelatorSet(std::move(values));
}

CorrelatorSet correlators_from_joint(const JointDistribution<double>& joint) {
  const std::size_t m = std::min(joint.alice_inputs(), joint.bob_inputs());
  std::vector<double> values;
  for (std::size_t x = 0; x < m; ++x) {
    double c = 0.0;
    for (std::size_t a = 0; a < joint.alice_outputs(); ++a)
      for (std::size_t b = 0; b < joint.bob_outputs(); ++b) c += ((a + b) % 2 == 0 ? 1.0 : -1.0) * joint(a, b, x, x);
    values.push_back(c);
  }
  return CorrelatorSet(std::move(values));
}

double s_m(const CorrelatorSet& c) {
  double s = 0.0;
  for (double v : c.values()) s += v;
  return s / static_cast<double>(c.m());
}

CjwrResult cjwr(const CorrelatorSet& c) {
  double s = 0.0;
  for (double v : c.values()) s += v;
  const double f = std::abs(s) / std::sqrt(static_cast<double>(c.m()));
  return {f, f > 1.0};
}

double cjwr_crossing(std::size_t m) {
  if (m == 0) throw std::invalid_argument("cjwr_crossing: m must be >= 1");
  return 1.0 / std::sqrt(static_cast<double>(m));
}

}  // namespace steer
