#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "steer/bloch_mesh.hpp"
#include "steer/boxworld.hpp"
#include "steer/lp.hpp"
#include "steer/quantum.hpp"

namespace steer {

/// Largest number of deterministic response functions the engine will enumerate.
inline constexpr std::size_t kStrategyCap = 4096;
inline constexpr double kDefaultLpTol = 1e-9;

/// Deterministic response function: responses[x] is the outcome on setting x.
struct DeterministicStrategy {
  std::vector<std::size_t> responses;
  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

/// All |A|^|X| strategies in lexicographic order of the response vector.
/// Throws std::invalid_argument for zero counts or when the count exceeds `cap`.
std::vector<DeterministicStrategy> enumerate_strategies(std::size_t num_settings, std::size_t num_outcomes,
                                                        std::size_t cap = kStrategyCap);

/// One hidden variable of a qubit model: a response function and a Bloch
/// vector. For LHS models the vector is the hidden state omega_lambda; for
/// parent POVMs it describes the effect weight * (I + r.sigma).
struct QubitHiddenState {
  double weight = 0.0;
  std::vector<std::size_t> responses;
  Vec3 bloch{};
};

struct QubitVerdict {
  FeasibilityStatus status = FeasibilityStatus::Undecided;
  std::size_t mesh_size = 0;
  double tol = kDefaultLpTol;
  /// Which LP produced the decision: "inner", "outer" or "exact-states".
  std::string decided_by;
  std::vector<QubitHiddenState> model;      // Feasible
  std::vector<double> certificate;          // Infeasible: Farkas vector over constraint rows
  double witness_value = 0.0;               // functional evaluated on the target
  double witness_bound = 0.0;               // its maximum over all LP columns
  double inner_residual = 0.0;              // phase-one residual of the inner LP
  double outer_residual = 0.0;              // phase-one residual of the outer LP
  std::size_t columns = 0;
};

struct QubitCheckOptions {
  std::size_t mesh_size = 162;
  double tol = kDefaultLpTol;
  /// Bob's test family. Empty means full tomography: the LP matches every
  /// component of sigma_{a|x} in the basis {I, sigma_x, sigma_y, sigma_z}.
  std::vector<Povm> tests;
};

/// LHS membership of a qubit assemblage via inner/outer Bloch polytopes.
/// Inner LP feasible gives Feasible with a genuine model; outer LP infeasible
/// gives Infeasible with a steering functional; otherwise Undecided.
QubitVerdict lhs_feasibility_qubit(const Assemblage& asm_, const QubitCheckOptions& options = {});

/// Predetermined-values model on options.tests: the LHS LP with hidden states
/// restricted to states deterministic on every test. For qubits these are
/// finitely many pure states, so they are used exactly instead of filtered
/// from a mesh.
QubitVerdict pv_feasibility_qubit(const Assemblage& asm_, const QubitCheckOptions& options);

/// Joint measurability of qubit POVMs: a parent POVM G_lambda with
/// deterministic post-processing, M_{a|x} = sum_lambda D(a|x,lambda) G_lambda.
QubitVerdict joint_measurability(std::span<const Povm> povms, std::size_t mesh_size = 162,
                                 double tol = kDefaultLpTol);

struct BoxHiddenState {
  Rational weight;
  std::vector<std::size_t> alice_responses;
  std::vector<std::size_t> bob_responses;  // deterministic Bob table
};

struct BoxVerdict {
  FeasibilityStatus status = FeasibilityStatus::Undecided;
  std::vector<BoxHiddenState> model;
  std::vector<Rational> certificate;
  Rational witness_value;
  Rational witness_bound;
  std::size_t columns = 0;
};

/// Exact LHS membership in box world: hidden states range over deterministic
/// Bob tables, which are exactly the vertices of Bob's state space.
BoxVerdict lhs_feasibility_boxworld(const GptAssemblage& asm_);
/// Predetermined values on the Bob inputs `tests`. Box-world vertices are
/// already deterministic, so this is the LHS LP restricted to those inputs.
BoxVerdict pv_feasibility_boxworld(const GptAssemblage& asm_, std::span<const std::size_t> tests);

/// Re-checks an Infeasible box verdict from its certificate alone. The
/// certificate is indexed by (x, a, t, b), t running over `tests`, and read as
/// the functional W = -c; the check is that W on the assemblage strictly
/// exceeds W on every deterministic (Alice strategy, Bob table) pair.
bool verify_box_certificate(const GptAssemblage& asm_, std::span<const std::size_t> tests, const BoxVerdict& v);

/// Coarse-grained effect sum_{b in outcomes} e_{b|povm} and the value given to it.
struct CoarseGrainedValue {
  std::size_t povm = 0;
  std::vector<std::size_t> outcomes;
  int value = 0;
};

struct ValueAssignment {
  std::vector<std::vector<int>> effect_values;  // [povm][outcome]
  std::vector<CoarseGrainedValue> coarse;
};

/// Context-free value assignment check: values in {0,1}, exactly one 1 per
/// POVM, coarse-grained effects valued additively, and operator-identical
/// effects (across POVMs or coarse-grainings) valued identically.
bool check_value_assignment(std::span<const Povm> effect_groups, const ValueAssignment& assignment);

/// Raised by threshold_scan when a Feasible verdict appears above an Infeasible one.
class NonMonotoneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ThresholdProbe {
  double parameter = 0.0;
  FeasibilityStatus status = FeasibilityStatus::Undecided;
};

struct ThresholdBracket {
  std::optional<double> feasible_max;
  std::optional<double> infeasible_min;
  std::vector<ThresholdProbe> probes;
  double width() const;
};

/// Locates the Feasible/Infeasible transition of a family that is Feasible
/// for small parameters. A coarse grid is probed first, then both edges of
/// the transition are bisected to `tol`. Undecided verdicts narrow the bracket
/// from the inside instead of stopping the search.
ThresholdBracket threshold_scan(const std::function<FeasibilityStatus(double)>& checker, double lo, double hi,
                                double tol, std::size_t grid_points = 5);

}  // namespace steer
