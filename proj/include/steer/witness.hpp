#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "steer/boxworld.hpp"
#include "steer/quantum.hpp"

namespace steer {

/// Matched-setting correlators <A_x B_x>, each in [-1, 1].
class CorrelatorSet {
 public:
  explicit CorrelatorSet(std::vector<double> values);

  std::size_t m() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// <A_x B_x> = sum_a (-1)^a tr[B_x sigma_{a|x}]. Each observable must have
/// spectrum in {-1, +1}, and there must be one per Alice setting.
CorrelatorSet correlators_from_assemblage(const Assemblage& asm_, std::span<const HermitianMatrix> bob_obs);
/// <A_x B_x> = sum_{a,b} (-1)^(a+b) p(a,b|x,x) for the diagonal settings of a joint.
CorrelatorSet correlators_from_joint(const JointDistribution<double>& joint);

/// S_m = (1/m) sum_x <A_x B_x>.
double s_m(const CorrelatorSet& c);

struct CjwrResult {
  double value = 0.0;      // F = |sum_x <A_x B_x>| / sqrt(m)
  bool violated = false;   // F > 1, the LHS bound
};

CjwrResult cjwr(const CorrelatorSet& c);

/// Parameter at which F crosses the LHS bound when every correlator has
/// magnitude p: sqrt(m) p = 1.
double cjwr_crossing(std::size_t m);

}  // namespace steer
