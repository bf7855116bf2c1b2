#include "steer/steering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace steer {

std::vector<DeterministicStrategy> enumerate_strategies(std::size_t num_settings, std::size_t num_outcomes,
                                                        std::size_t cap) {
  if (num_settings == 0 || num_outcomes == 0) throw std::invalid_argument("enumerate_strategies: counts must be >= 1");
  std::size_t count = 1;
  for (std::size_t x = 0; x < num_settings; ++x) {
    if (count > cap / num_outcomes) {
      throw std::invalid_argument("enumerate_strategies: " + std::to_string(num_outcomes) + "^" +
                                  std::to_string(num_settings) + " strategies exceed the cap of " + std::to_string(cap));
    }
    count *= num_outcomes;
  }
  std::vector<DeterministicStrategy> out;
  out.reserve(count);
  std::vector<std::size_t> r(num_settings, 0);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back({r});
    // Odometer with the last setting varying fastest gives lexicographic order.
    for (std::size_t x = num_settings; x-- > 0;) {
      if (++r[x] < num_outcomes) break;
      r[x] = 0;
    }
  }
  return out;
}

namespace {

/// Coefficients of omega -> tr[F omega] on Bloch coordinates:
/// tr[F (I + r.sigma)/2] = c0 + cx rx + cy ry + cz rz.
struct Functional {
  double c0, cx, cy, cz;
  double at(const Vec3& r) const { return c0 + cx * r[0] + cy * r[1] + cz * r[2]; }
};

Functional functional_of(const ComplexMatrix& f) {
  return {0.5 * f.trace().real(), 0.5 * trace_product(f, pauli::X()), 0.5 * trace_product(f, pauli::Y()),
          0.5 * trace_product(f, pauli::Z())};
}

Vec3 bloch_of(const ComplexMatrix& omega) {
  return {trace_product(omega, pauli::X()), trace_product(omega, pauli::Y()), trace_product(omega, pauli::Z())};
}

constexpr double kDeterminismTol = 1e-9;

void require_qubit(std::size_t dim, const char* who) {
  if (dim != 2) throw std::invalid_argument(std::string(who) + ": Bob system must be a qubit");
}

/// Hermitian operators whose expectations the LHS LP must match.
std::vector<ComplexMatrix> feature_operators(const std::vector<Povm>& tests) {
  if (tests.empty()) return {pauli::I(), pauli::X(), pauli::Y(), pauli::Z()};
  std::vector<ComplexMatrix> ops;
  for (const auto& t : tests) {
    require_qubit(t.dim(), "test family");
    for (const auto& e : t.effects()) ops.push_back(e.matrix());
  }
  return ops;
}

/// Pure eigenstates of every effect; valid states that make good extra inner vertices.
std::vector<Vec3> effect_eigenstates(std::span<const Povm> povms) {
  std::vector<Vec3> out;
  for (const auto& m : povms) {
    for (const auto& e : m.effects()) {
      const auto ed = eigh(e);
      if (ed.values.back() - ed.values.front() < kDeterminismTol) continue;  // multiple of identity
      for (std::size_t k = 0; k < 2; ++k) {
        ComplexMatrix ket(2, 1, {ed.vectors(0, k), ed.vectors(1, k)});
        out.push_back(bloch_of(ket * ket.adjoint()));
      }
    }
  }
  return out;
}

/// Pure states on which every test in `tests` has a deterministic outcome.
/// Returns nullopt when no test constrains the state (all tests trivial).
std::optional<std::vector<Vec3>> deterministic_states(const std::vector<Povm>& tests) {
  std::optional<std::vector<Vec3>> candidates;
  for (const auto& t : tests) {
    bool trivial = false;
    std::vector<Vec3> det;
    for (const auto& e : t.effects()) {
      const auto ed = eigh(e);
      if (ed.values.front() >= 1.0 - kDeterminismTol) {
        trivial = true;
        break;
      }
      if (ed.values.back() >= 1.0 - kDeterminismTol) {
        ComplexMatrix ket(2, 1, {ed.vectors(0, 1), ed.vectors(1, 1)});
        det.push_back(bloch_of(ket * ket.adjoint()));
      }
    }
    if (!trivial) {
      candidates = std::move(det);
      break;
    }
  }
  if (!candidates) return std::nullopt;
  std::vector<Vec3> out;
  for (const auto& r : *candidates) {
    bool ok = true;
    for (const auto& t : tests)
      for (const auto& e : t.effects()) {
        const double p = functional_of(e.matrix()).at(r);
        ok = ok && (std::abs(p) <= kDeterminismTol || std::abs(p - 1.0) <= kDeterminismTol);
      }
    if (ok) out.push_back(r);
  }
  return out;
}

struct Column {
  std::size_t strategy;
  Vec3 point;
};

struct QubitLp {
  FeasibilityProblem<double> problem{0};
  std::vector<Column> columns;
};

/// Rows (x, a, k): sum_{lambda, v} [lambda(x) = a] w f_k(v) = target(x, a, k).
QubitLp build_qubit_lp(const std::vector<DeterministicStrategy>& strategies, std::span<const Vec3> points,
                       const std::vector<Functional>& features,
                       const std::vector<std::vector<std::vector<double>>>& target) {
  QubitLp lp;
  for (std::size_t s = 0; s < strategies.size(); ++s)
    for (const auto& p : points) lp.columns.push_back({s, p});
  lp.problem = FeasibilityProblem<double>(lp.columns.size());
  std::vector<std::vector<double>> feat_values(features.size(), std::vector<double>(points.size()));
  for (std::size_t k = 0; k < features.size(); ++k)
    for (std::size_t v = 0; v < points.size(); ++v) feat_values[k][v] = features[k].at(points[v]);

  for (std::size_t x = 0; x < target.size(); ++x) {
    for (std::size_t a = 0; a < target[x].size(); ++a) {
      for (std::size_t k = 0; k < features.size(); ++k) {
        std::vector<double> row(lp.columns.size(), 0.0);
        for (std::size_t j = 0; j < lp.columns.size(); ++j) {
          if (strategies[lp.columns[j].strategy].responses[x] != a) continue;
          row[j] = feat_values[k][j % points.size()];
        }
        lp.problem.add_equality(std::move(row), target[x][a][k]);
      }
    }
  }
  return lp;
}

/// Steering functional -c: its value on the target minus its maximum over columns.
void attach_witness(QubitVerdict& out, const FeasibilityProblem<double>& problem,
                    const std::vector<double>& certificate) {
  out.certificate = certificate;
  double value = 0.0;
  for (std::size_t i = 0; i < problem.constraints(); ++i) value -= certificate[i] * problem.rhs(i);
  double bound = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < problem.variables(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < problem.constraints(); ++i) s -= certificate[i] * problem.row(i)[j];
    bound = std::max(bound, s);
  }
  if (problem.variables() == 0) bound = 0.0;
  out.witness_value = value;
  out.witness_bound = bound;
}

void attach_model(QubitVerdict& out, const QubitLp& lp, const std::vector<double>& x,
                  const std::vector<DeterministicStrategy>& strategies) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] <= 0.0) continue;
    out.model.push_back({x[j], strategies[lp.columns[j].strategy].responses, lp.columns[j].point});
  }
}

/// Inner/outer decision shared by the LHS and joint-measurability checks.
QubitVerdict decide_with_polytopes(const std::vector<DeterministicStrategy>& strategies, const BlochMesh& mesh,
                                   std::span<const Vec3> anchors, const std::vector<Functional>& features,
                                   const std::vector<std::vector<std::vector<double>>>& target, double tol) {
  QubitVerdict out;
  out.mesh_size = mesh.size;
  out.tol = tol;

  std::vector<Vec3> inner = mesh.inner.vertices;
  inner.insert(inner.end(), anchors.begin(), anchors.end());
  const QubitLp inner_lp = build_qubit_lp(strategies, inner, features, target);
  const auto inner_v = solve_feasibility(inner_lp.problem, tol);
  out.inner_residual = inner_v.residual;
  out.columns = inner_lp.columns.size();
  if (inner_v.status == FeasibilityStatus::Feasible) {
    out.status = FeasibilityStatus::Feasible;
    out.decided_by = "inner";
    attach_model(out, inner_lp, inner_v.model, strategies);
    return out;
  }

  const QubitLp outer_lp = build_qubit_lp(strategies, mesh.outer.vertices, features, target);
  const auto outer_v = solve_feasibility(outer_lp.problem, tol);
  out.outer_residual = outer_v.residual;
  out.columns += outer_lp.columns.size();
  if (outer_v.status == FeasibilityStatus::Infeasible) {
    attach_witness(out, outer_lp.problem, outer_v.certificate);
    if (out.witness_value > out.witness_bound) {
      out.status = FeasibilityStatus::Infeasible;
      out.decided_by = "outer";
      return out;
    }
    out.certificate.clear();
  }
  out.status = FeasibilityStatus::Undecided;
  out.decided_by = "gap";
  return out;
}

std::vector<std::vector<std::vector<double>>> assemblage_targets(const Assemblage& asm_,
                                                                 const std::vector<ComplexMatrix>& ops) {
  std::vector<std::vector<std::vector<double>>> target(asm_.settings());
  for (std::size_t x = 0; x < asm_.settings(); ++x) {
    target[x].resize(asm_.outcomes());
    for (std::size_t a = 0; a < asm_.outcomes(); ++a)
      for (const auto& f : ops) target[x][a].push_back(trace_product(f, asm_.sigma(x, a).matrix()));
  }
  return target;
}

std::vector<Functional> functionals(const std::vector<ComplexMatrix>& ops) {
  std::vector<Functional> out;
  for (const auto& f : ops) out.push_back(functional_of(f));
  return out;
}

}  // namespace

QubitVerdict lhs_feasibility_qubit(const Assemblage& asm_, const QubitCheckOptions& options) {
  require_qubit(asm_.dim_b(), "lhs_feasibility_qubit");
  const auto strategies = enumerate_strategies(asm_.settings(), asm_.outcomes());
  const auto mesh = make_bloch_mesh(options.mesh_size);
  const auto ops = feature_operators(options.tests);
  const auto anchors = effect_eigenstates(options.tests);
  return decide_with_polytopes(strategies, mesh, anchors, functionals(ops), assemblage_targets(asm_, ops),
                               options.tol);
}

QubitVerdict pv_feasibility_qubit(const Assemblage& asm_, const QubitCheckOptions& options) {
  require_qubit(asm_.dim_b(), "pv_feasibility_qubit");
  if (options.tests.empty()) throw std::invalid_argument("pv_feasibility_qubit: the test family must not be empty");
  const auto states = deterministic_states(options.tests);
  if (!states) return lhs_feasibility_qubit(asm_, options);

  const auto strategies = enumerate_strategies(asm_.settings(), asm_.outcomes());
  const auto ops = feature_operators(options.tests);
  const QubitLp lp = build_qubit_lp(strategies, *states, functionals(ops), assemblage_targets(asm_, ops));
  const auto v = solve_feasibility(lp.problem, options.tol);

  QubitVerdict out;
  out.mesh_size = options.mesh_size;
  out.tol = options.tol;
  out.decided_by = "exact-states";
  out.columns = lp.columns.size();
  out.inner_residual = out.outer_residual = v.residual;
  out.status = v.status;
  if (v.status == FeasibilityStatus::Feasible) attach_model(out, lp, v.model, strategies);
  if (v.status == FeasibilityStatus::Infeasible) {
    attach_witness(out, lp.problem, v.certificate);
    if (!(out.witness_value > out.witness_bound)) {
      out.status = FeasibilityStatus::Undecided;
      out.certificate.clear();
    }
  }
  return out;
}

QubitVerdict joint_measurability(std::span<const Povm> povms, std::size_t mesh_size, double tol) {
  if (povms.empty()) throw std::invalid_argument("joint_measurability: no measurements");
  const std::size_t outcomes = povms.front().outcomes();
  for (const auto& m : povms) {
    require_qubit(m.dim(), "joint_measurability");
    if (m.outcomes() != outcomes) throw std::invalid_argument("joint_measurability: POVMs differ in outcome count");
  }
  const auto strategies = enumerate_strategies(povms.size(), outcomes);
  const auto mesh = make_bloch_mesh(mesh_size);
  const auto anchors = effect_eigenstates(povms);

  // Parent effects are w (I + r.sigma) = 2 w omega_r, so each functional is
  // doubled relative to the state form.
  const std::vector<ComplexMatrix> ops{pauli::I(), pauli::X(), pauli::Y(), pauli::Z()};
  std::vector<Functional> feats;
  for (const auto& f : ops) {
    auto g = functional_of(f);
    feats.push_back({2 * g.c0, 2 * g.cx, 2 * g.cy, 2 * g.cz});
  }
  // One extra pseudo-setting whose single "outcome" collects every strategy
  // encodes completeness: sum_lambda G_lambda = I.
  std::vector<DeterministicStrategy> padded = strategies;
  for (auto& s : padded) s.responses.push_back(0);
  std::vector<std::vector<std::vector<double>>> target(povms.size() + 1);
  for (std::size_t x = 0; x < povms.size(); ++x) {
    target[x].resize(outcomes);
    for (std::size_t a = 0; a < outcomes; ++a)
      for (const auto& f : ops) target[x][a].push_back(trace_product(f, povms[x].effect(a).matrix()));
  }
  target.back().resize(1);
  for (const auto& f : ops) target.back()[0].push_back(f.trace().real());

  QubitVerdict v = decide_with_polytopes(padded, mesh, anchors, feats, target, tol);
  for (auto& h : v.model) h.responses.pop_back();
  return v;
}

namespace {

BoxVerdict box_lp(const GptAssemblage& asm_, std::span<const std::size_t> tests) {
  for (auto y : tests)
    if (y >= asm_.bob_inputs()) throw std::invalid_argument("pv_feasibility_boxworld: Bob input out of range");
  const auto alice = enumerate_strategies(asm_.settings(), asm_.outcomes());
  const auto bob = enumerate_strategies(tests.size(), asm_.bob_outputs());
  const std::size_t n = alice.size() * bob.size();

  FeasibilityProblem<Rational> problem(n);
  for (std::size_t x = 0; x < asm_.settings(); ++x)
    for (std::size_t a = 0; a < asm_.outcomes(); ++a)
      for (std::size_t t = 0; t < tests.size(); ++t)
        for (std::size_t b = 0; b < asm_.bob_outputs(); ++b) {
          std::vector<Rational> row(n, Rational(0));
          for (std::size_t i = 0; i < alice.size(); ++i) {
            if (alice[i].responses[x] != a) continue;
            for (std::size_t k = 0; k < bob.size(); ++k)
              if (bob[k].responses[t] == b) row[i * bob.size() + k] = 1;
          }
          problem.add_equality(std::move(row), asm_.subnormalized(x, a, tests[t], b));
        }

  const auto v = solve_feasibility(problem);
  BoxVerdict out;
  out.status = v.status;
  out.columns = n;
  if (v.status == FeasibilityStatus::Feasible) {
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(v.model[j]) == 0) continue;
      const auto& bs = bob[j % bob.size()].responses;
      // Bob's table is recorded on the full input alphabet; inputs outside
      // `tests` are unconstrained and reported as outcome 0.
      std::vector<std::size_t> table(asm_.bob_inputs(), 0);
      for (std::size_t t = 0; t < tests.size(); ++t) table[tests[t]] = bs[t];
      out.model.push_back({v.model[j], alice[j / bob.size()].responses, table});
    }
  } else {
    out.certificate = v.certificate;
    Rational value(0);
    for (std::size_t i = 0; i < problem.constraints(); ++i) value -= v.certificate[i] * problem.rhs(i);
    Rational bound(0);
    bool first = true;
    for (std::size_t j = 0; j < n; ++j) {
      Rational s(0);
      for (std::size_t i = 0; i < problem.constraints(); ++i) s -= v.certificate[i] * problem.row(i)[j];
      if (first || s > bound) bound = s;
      first = false;
    }
    out.witness_value = value;
    out.witness_bound = bound;
  }
  return out;
}

}  // namespace

BoxVerdict lhs_feasibility_boxworld(const GptAssemblage& asm_) {
  std::vector<std::size_t> all(asm_.bob_inputs());
  for (std::size_t y = 0; y < all.size(); ++y) all[y] = y;
  return box_lp(asm_, all);
}

BoxVerdict pv_feasibility_boxworld(const GptAssemblage& asm_, std::span<const std::size_t> tests) {
  if (tests.empty()) throw std::invalid_argument("pv_feasibility_boxworld: the test family must not be empty");
  return box_lp(asm_, tests);
}

bool verify_box_certificate(const GptAssemblage& asm_, std::span<const std::size_t> tests, const BoxVerdict& v) {
  const std::size_t nx = asm_.settings(), na = asm_.outcomes(), nt = tests.size(), nb = asm_.bob_outputs();
  if (v.status != FeasibilityStatus::Infeasible || v.certificate.size() != nx * na * nt * nb) return false;
  auto w = [&](std::size_t x, std::size_t a, std::size_t t, std::size_t b) -> Rational {
    return -v.certificate[((x * na + a) * nt + t) * nb + b];
  };
  Rational value(0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t t = 0; t < nt; ++t)
        for (std::size_t b = 0; b < nb; ++b) value += w(x, a, t, b) * asm_.subnormalized(x, a, tests[t], b);
  for (const auto& alice : enumerate_strategies(nx, na))
    for (const auto& bob : enumerate_strategies(nt, nb)) {
      Rational s(0);
      for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t t = 0; t < nt; ++t) s += w(x, alice.responses[x], t, bob.responses[t]);
      if (s >= value) return false;
    }
  return true;
}

bool check_value_assignment(std::span<const Povm> effect_groups, const ValueAssignment& assignment) {
  if (assignment.effect_values.size() != effect_groups.size())
    throw std::invalid_argument("check_value_assignment: one value list per POVM required");

  struct Valued {
    ComplexMatrix op;
    int value;
  };
  std::vector<Valued> valued;
  for (std::size_t y = 0; y < effect_groups.size(); ++y) {
    const auto& vals = assignment.effect_values[y];
    if (vals.size() != effect_groups[y].outcomes())
      throw std::invalid_argument("check_value_assignment: POVM " + std::to_string(y) + " has unassigned effects");
    int ones = 0;
    for (std::size_t b = 0; b < vals.size(); ++b) {
      if (vals[b] != 0 && vals[b] != 1) return false;
      ones += vals[b];
      valued.push_back({effect_groups[y].effect(b).matrix(), vals[b]});
    }
    if (ones != 1) return false;
  }
  for (const auto& cg : assignment.coarse) {
    if (cg.povm >= effect_groups.size()) throw std::invalid_argument("check_value_assignment: coarse-graining of unknown POVM");
    if (cg.value != 0 && cg.value != 1) return false;
    const auto& povm = effect_groups[cg.povm];
    ComplexMatrix op(povm.dim(), povm.dim());
    int sum = 0;
    for (auto b : cg.outcomes) {
      if (b >= povm.outcomes()) throw std::invalid_argument("check_value_assignment: coarse-graining of unknown outcome");
      op += povm.effect(b).matrix();
      sum += assignment.effect_values[cg.povm][b];
    }
    if (sum != cg.value) return false;
    valued.push_back({std::move(op), cg.value});
  }
  // Context-freeness: an effect gets one value whichever POVM it appears in.
  for (std::size_t i = 0; i < valued.size(); ++i)
    for (std::size_t j = i + 1; j < valued.size(); ++j)
      if (valued[i].op.rows() == valued[j].op.rows() &&
          max_abs_diff(valued[i].op, valued[j].op) <= kHermiticityTol && valued[i].value != valued[j].value)
        return false;
  return true;
}

double ThresholdBracket::width() const {
  if (!feasible_max || !infeasible_min) return std::numeric_limits<double>::infinity();
  return *infeasible_min - *feasible_max;
}

ThresholdBracket threshold_scan(const std::function<FeasibilityStatus(double)>& checker, double lo, double hi,
                                double tol, std::size_t grid_points) {
  if (!(lo < hi)) throw std::invalid_argument("threshold_scan: need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("threshold_scan: tolerance must be positive");
  ThresholdBracket out;

  auto probe = [&](double p) {
    const FeasibilityStatus s = checker(p);
    out.probes.push_back({p, s});
    if (s == FeasibilityStatus::Feasible) {
      if (out.infeasible_min && p >= *out.infeasible_min) {
        std::ostringstream os;
        os << "non-monotone family: Feasible at " << p << " above Infeasible at " << *out.infeasible_min;
        throw NonMonotoneError(os.str());
      }
      if (!out.feasible_max || p > *out.feasible_max) out.feasible_max = p;
    } else if (s == FeasibilityStatus::Infeasible) {
      if (out.feasible_max && p <= *out.feasible_max) {
        std::ostringstream os;
        os << "non-monotone family: Infeasible at " << p << " below Feasible at " << *out.feasible_max;
        throw NonMonotoneError(os.str());
      }
      if (!out.infeasible_min || p < *out.infeasible_min) out.infeasible_min = p;
    }
    return s;
  };

  for (std::size_t i = 0; i <= grid_points + 1; ++i)
    probe(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points + 1));

  // Nearest probed point strictly above `p` (or below) with a verdict other than `s`.
  auto neighbour_above = [&](double p, FeasibilityStatus s) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pr : out.probes)
      if (pr.parameter > p && pr.status != s) best = std::min(best, pr.parameter);
    return best;
  };
  auto neighbour_below = [&](double p, FeasibilityStatus s) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& pr : out.probes)
      if (pr.parameter < p && pr.status != s) best = std::max(best, pr.parameter);
    return best;
  };

  // Upper edge of the Feasible region.
  if (out.feasible_max) {
    double a = *out.feasible_max;
    double b = neighbour_above(a, FeasibilityStatus::Feasible);
    while (std::isfinite(b) && b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (probe(mid) == FeasibilityStatus::Feasible) a = mid;
      else b = mid;
    }
  }
  // Lower edge of the Infeasible region.
  if (out.infeasible_min) {
    double b = *out.infeasible_min;
    double a = std::max(neighbour_below(b, FeasibilityStatus::Infeasible),
                        out.feasible_max.value_or(-std::numeric_limits<double>::infinity()));
    while (std::isfinite(a) && b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (probe(mid) == FeasibilityStatus::Infeasible) b = mid;
      else a = mid;
    }
  }
  return out;
}

}  // namespace steer
