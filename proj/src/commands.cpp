#include "steer/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "steer/gaussian.hpp"
#include "steer/random.hpp"
#include "steer/witness.hpp"

namespace steer {

using nlohmann::json;

namespace {

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json metadata(const std::string& mode, std::optional<std::size_t> mesh = std::nullopt,
              std::optional<double> tol = std::nullopt) {
  json m{{"version", kVersion}, {"mode", mode}};
  if (mesh) m["mesh"] = *mesh;
  if (tol) m["tol"] = *tol;
  return m;
}

VerdictSummary summary(const std::string& name, const QubitVerdict& v) {
  return {name, to_string(v.status), verdict_detail(v)};
}

VerdictSummary summary(const std::string& name, const GptAssemblage& asm_, std::span<const std::size_t> tests,
                       const BoxVerdict& v) {
  json detail = verdict_detail(v);
  if (v.status == FeasibilityStatus::Infeasible) detail["certificate_verified"] = verify_box_certificate(asm_, tests, v);
  return {name, to_string(v.status), detail};
}

void require_mesh(std::size_t mesh, const std::string& where) {
  if (std::find(kMeshSizes.begin(), kMeshSizes.end(), mesh) == kMeshSizes.end())
    throw InputError(where, "mesh size must be one of 12, 42, 162, 642, 2562");
}

void require_tol(double tol, const std::string& where) {
  if (!(tol > 0.0) || !(tol < 1e-2)) throw InputError(where, "tolerance must lie in (0, 0.01)");
}

std::string family_name(std::span<const Povm> tests) {
  std::string s = "{";
  for (std::size_t i = 0; i < tests.size(); ++i) s += (i ? "," : "") + tests[i].label();
  return s + "}";
}

json records_json(const std::vector<PredictabilityRecord>& records, std::span<const Povm> alice,
                  std::span<const Povm> bob) {
  json out = json::array();
  for (const auto& r : records) {
    out.push_back({{"x", r.x},
                   {"a", r.a},
                   {"y", r.y},
                   {"b", r.b},
                   {"alice", alice[r.x].label()},
                   {"bob", bob[r.y].label()},
                   {"probability", r.probability}});
  }
  return out;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

/// PV on `tests` next to LHS restricted to the same statistics, so the
/// PV => LHS implication compares like with like.
void pv_pair(RunReport& report, const Assemblage& asm_, const std::vector<Povm>& tests, std::size_t mesh,
             double tol) {
  const std::string fam = family_name(tests);
  const QubitCheckOptions opts{mesh, tol, tests};
  const QubitVerdict pv = pv_feasibility_qubit(asm_, opts);
  const QubitVerdict lhs = lhs_feasibility_qubit(asm_, opts);
  report.verdicts.push_back(summary("pv" + fam, pv));
  report.verdicts.push_back(summary("lhs" + fam, lhs));
  const bool violated = pv.status == FeasibilityStatus::Feasible && lhs.status == FeasibilityStatus::Infeasible;
  report.findings["pv_implies_lhs"][fam] = !violated;
  if (violated) report.messages.push_back("PV Feasible but LHS Infeasible on " + fam);
}

std::size_t check_settings(std::size_t settings) {
  if (settings != 2 && settings != 3) throw InputError("--settings", "settings must be 2 or 3");
  return settings;
}

double werner_f(const std::vector<Povm>& paulis, const std::vector<HermitianMatrix>& obs, double p) {
  return cjwr(correlators_from_assemblage(assemblage_from_povms(werner_state(p), 2, 2, paulis), obs)).value;
}

}  // namespace

std::vector<HermitianMatrix> binary_observables(std::span<const Povm> povms) {
  std::vector<HermitianMatrix> out;
  for (const auto& p : povms) {
    if (p.outcomes() != 2) throw std::invalid_argument("binary_observables: POVM '" + p.label() + "' is not binary");
    out.emplace_back(p.effect(0).matrix() - p.effect(1).matrix());
  }
  return out;
}

RunReport cmd_singlet_cjwr(std::size_t settings, std::size_t mesh, double tol, std::optional<double> werner_p) {
  check_settings(settings);
  require_mesh(mesh, "--mesh");
  require_tol(tol, "--tol");
  if (werner_p && !(*werner_p >= 0.0 && *werner_p <= 1.0)) throw InputError("--werner-p", "p must lie in [0, 1]");
  const Timer timer;
  RunReport r;
  r.command = "singlet-cjwr";
  r.inputs = {{"settings", settings}, {"mesh", mesh}, {"tol", tol}};
  r.inputs["state"] = werner_p ? json{{"kind", "werner"}, {"p", *werner_p}} : json{{"kind", "singlet"}};
  r.metadata = metadata("float", mesh, tol);

  const DensityMatrix rho = werner_p ? werner_state(*werner_p) : singlet_state();
  const auto paulis = pauli_povms(settings);
  const Assemblage asm_ = assemblage_from_povms(rho, 2, 2, paulis);

  const auto ns = check_no_signalling(asm_);
  r.verdicts.push_back({"no_signalling", ns.pass ? "Pass" : "Fail", {{"max_deviation", ns.max_deviation}}});

  const auto corr = correlators_from_assemblage(asm_, binary_observables(paulis));
  const auto cj = cjwr(corr);
  r.findings["correlators"] = corr.values();
  r.findings["cjwr_violated"] = cj.violated;
  r.add_witness("S_m", s_m(corr));
  r.add_witness("F", cj.value);
  r.add_witness("F_lhs_bound", 1.0);

  const auto records = scan_predictability(asm_, paulis, kCertaintyTol);
  r.findings["rrc_contexts"] = records_json(records, paulis, paulis);
  r.findings["rrc_context_count"] = records.size();
  r.findings["rrc_eps"] = kCertaintyTol;

  r.verdicts.push_back(summary("lhs", lhs_feasibility_qubit(asm_, {mesh, tol, {}})));
  pv_pair(r, asm_, paulis, mesh, tol);
  for (const auto& test : paulis) pv_pair(r, asm_, {test}, mesh, tol);

  r.timing_ms = timer.ms();
  return r;
}

RunReport cmd_werner_scan(std::size_t settings, ScanMode mode, std::size_t mesh, double tol,
                          std::size_t grid_points) {
  check_settings(settings);
  require_mesh(mesh, "--mesh");
  require_tol(tol, "--tol");
  if (mode == ScanMode::Grid && grid_points < 2) throw InputError("--points", "a grid needs at least 2 points");
  const Timer timer;
  RunReport r;
  r.command = "werner-scan";
  const char* mode_name = mode == ScanMode::Bisect ? "bisect" : mode == ScanMode::Grid ? "grid" : "witness";
  r.inputs = {{"settings", settings}, {"scan", mode_name}, {"mesh", mesh}, {"tol", tol}};
  if (mode == ScanMode::Grid) r.inputs["points"] = grid_points;
  r.metadata = metadata("float", mesh, tol);

  const auto paulis = pauli_povms(settings);
  const auto obs = binary_observables(paulis);

  // F is linear in p, so the crossing F = 1 sits at 1 / F(1).
  const double f1 = werner_f(paulis, obs, 1.0);
  const double crossing = 1.0 / f1;
  r.add_witness("F(1)", f1);
  r.add_witness("witness_crossing", crossing);
  r.add_witness("witness_crossing_analytic", cjwr_crossing(settings));
  r.table_columns = {"p", "F", "verdict"};

  if (mode == ScanMode::WitnessOnly) {
    r.timing_ms = timer.ms();
    return r;
  }

  auto check = [&](double p) {
    return lhs_feasibility_qubit(assemblage_from_povms(werner_state(p), 2, 2, paulis), {mesh, tol, {}}).status;
  };
  ThresholdBracket bracket;
  if (mode == ScanMode::Bisect) {
    bracket = threshold_scan(check, 0.0, 1.0, 1e-3, 9);
  } else {
    for (std::size_t i = 0; i < grid_points; ++i) {
      const double p = static_cast<double>(i) / static_cast<double>(grid_points - 1);
      const auto s = check(p);
      bracket.probes.push_back({p, s});
      if (s == FeasibilityStatus::Feasible) bracket.feasible_max = p;
      if (s == FeasibilityStatus::Infeasible && !bracket.infeasible_min) bracket.infeasible_min = p;
    }
    if (bracket.feasible_max && bracket.infeasible_min && *bracket.feasible_max > *bracket.infeasible_min)
      throw NonMonotoneError("werner-scan: Feasible verdict above an Infeasible one");
  }

  auto probes = bracket.probes;
  std::sort(probes.begin(), probes.end(),
            [](const ThresholdProbe& a, const ThresholdProbe& b) { return a.parameter < b.parameter; });
  for (const auto& pr : probes)
    r.table_rows.push_back({format_real(pr.parameter), format_real(werner_f(paulis, obs, pr.parameter)),
                            to_string(pr.status)});

  const bool contains = bracket.feasible_max && bracket.infeasible_min && *bracket.feasible_max <= crossing &&
                        crossing <= *bracket.infeasible_min;
  r.findings["bracket"] = {{"feasible_max", optional_json(bracket.feasible_max)},
                           {"infeasible_min", optional_json(bracket.infeasible_min)},
                           {"contains_witness_crossing", contains},
                           {"probes", bracket.probes.size()}};
  if (bracket.feasible_max && bracket.infeasible_min) {
    r.findings["bracket"]["width"] = bracket.width();
    r.add_witness("bracket_low", *bracket.feasible_max);
    r.add_witness("bracket_high", *bracket.infeasible_min);
  }
  r.timing_ms = timer.ms();
  return r;
}

RunReport cmd_prbox() {
  const Timer timer;
  RunReport r;
  r.command = "prbox";
  r.metadata = metadata("exact");

  const GptAssemblage asm_ = prbox_assemblage();
  r.verdicts.push_back({"no_signalling", no_signalling_exact(asm_) ? "Pass" : "Fail", {{"arithmetic", "exact"}}});
  json marginal = json::array();
  for (const auto& row : asm_.marginal(0)) {
    json cells = json::array();
    for (const auto& q : row) cells.push_back(to_string(q));
    marginal.push_back(cells);
  }
  r.findings["bob_marginal"] = marginal;

  const Rational chsh = chsh_value(joint_from_assemblage(asm_));
  r.findings["chsh_exact"] = to_string(chsh);
  r.add_witness("CHSH", to_double(chsh));
  r.add_witness("local_bound", 2.0);
  r.add_witness("tsirelson_bound", 2.0 * std::sqrt(2.0));
  r.messages.push_back("CHSH " + to_string(chsh) + " > 2 (local bound)");
  r.messages.push_back("CHSH " + to_string(chsh) + " > 2√2 ≈ 2.8284 (quantum bound)");

  const std::vector<std::size_t> tests{0, 1};
  r.verdicts.push_back(summary("lhs", asm_, tests, lhs_feasibility_boxworld(asm_)));
  r.verdicts.push_back(summary("pv{y=0,y=1}", asm_, tests, pv_feasibility_boxworld(asm_, tests)));
  r.timing_ms = timer.ms();
  return r;
}

RunReport cmd_reid(double r_value, std::optional<SweepRange> sweep) {
  const Timer timer;
  RunReport r;
  r.command = "reid";
  r.metadata = metadata("float");
  r.table_columns = {"r", "var_x_inf", "var_p_inf", "product", "steering_flag"};

  auto row = [&r](double sq) {
    const auto iv = inferred_variances(tmsv_covariance(sq));
    const auto rc = reid_check(iv.var_x, iv.var_p);
    r.table_rows.push_back({format_real(sq), format_real(iv.var_x), format_real(iv.var_p), format_real(rc.product),
                            rc.steering ? "1" : "0"});
    for (const auto& w : iv.warnings) r.messages.push_back(w);
    return std::pair{iv, rc};
  };

  if (sweep) {
    if (!(sweep->lo >= 0.0)) throw InputError("--sweep", "r must be non-negative");
    if (!(sweep->step > 0.0) || !(sweep->hi >= sweep->lo)) throw InputError("--sweep", "need lo <= hi and step > 0");
    r.inputs = {{"sweep", {{"lo", sweep->lo}, {"hi", sweep->hi}, {"step", sweep->step}}}};
    const auto n = static_cast<std::size_t>(std::floor((sweep->hi - sweep->lo) / sweep->step + 1e-9)) + 1;
    if (n > 100000) throw InputError("--sweep", "too many sweep points");
    for (std::size_t i = 0; i < n; ++i) row(sweep->lo + static_cast<double>(i) * sweep->step);
    r.timing_ms = timer.ms();
    return r;
  }

  if (!(r_value >= 0.0)) throw InputError("--r", "squeezing parameter must be non-negative");
  r.inputs = {{"r", r_value}};
  const auto [iv, rc] = row(r_value);
  r.add_witness("var_x_inf", iv.var_x);
  r.add_witness("var_p_inf", iv.var_p);
  r.add_witness("delta_x_inf", std::sqrt(iv.var_x));
  r.add_witness("delta_p_inf", std::sqrt(iv.var_p));
  r.add_witness("product", rc.product);
  r.add_witness("reid_bound", 0.5);
  r.add_witness("closed_form_var", 1.0 / (2.0 * std::cosh(2.0 * r_value)));
  r.verdicts.push_back({"reid", rc.steering ? "Steering" : "NoSteering", {{"product", rc.product}}});
  r.timing_ms = timer.ms();
  return r;
}

namespace {

const std::set<std::string> kQuantumChecks{"no_signalling", "predictability", "lhs", "pv", "cjwr", "chsh", "jm"};
const std::set<std::string> kBoxChecks{"no_signalling", "chsh", "lhs", "pv"};

std::set<std::string> requested(const std::vector<std::string>& checks, const std::set<std::string>& allowed) {
  if (checks.empty()) return allowed;
  std::set<std::string> out;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (!allowed.count(checks[i])) throw InputError("checks[" + std::to_string(i) + "]", "unknown check '" + checks[i] + "'");
    out.insert(checks[i]);
  }
  return out;
}

bool all_binary(std::span<const Povm> ps) {
  return std::all_of(ps.begin(), ps.end(), [](const Povm& p) { return p.outcomes() == 2; });
}

bool sharp_binary(std::span<const Povm> ps) {
  if (!all_binary(ps)) return false;
  for (const auto& p : ps) {
    const auto ev = eigenvalues(HermitianMatrix(p.effect(0).matrix() - p.effect(1).matrix()));
    for (double e : ev)
      if (std::abs(std::abs(e) - 1.0) > 1e-9) return false;
  }
  return true;
}

void check_quantum(RunReport& r, const QuantumScenario& q, const CheckOverrides& o) {
  if (o.mode && *o.mode == "exact")
    throw InputError("--mode", "quantum scenarios are decided in floating point; exact mode is for box scenarios");
  const std::size_t mesh = o.mesh.value_or(q.mesh);
  const double tol = o.tol.value_or(q.tol);
  require_mesh(mesh, o.mesh ? "--mesh" : "mesh");
  require_tol(tol, o.tol ? "--tol" : "tol");
  r.metadata = metadata("float", mesh, tol);
  const auto checks = requested(q.checks, kQuantumChecks);

  const Assemblage asm_ = assemblage_from_povms(q.density_matrix(), q.dim_a, q.dim_b, q.alice);
  const auto valid = validate_assemblage(asm_);
  if (checks.count("no_signalling")) {
    r.verdicts.push_back({"no_signalling", valid.no_signalling.pass ? "Pass" : "Fail",
                          {{"max_deviation", valid.no_signalling.max_deviation},
                           {"psd", valid.psd},
                           {"normalization_deviation", valid.normalization_deviation}}});
  }

  std::vector<Povm> tests;
  if (q.pv_tests.empty()) {
    tests = q.bob;
  } else {
    for (auto y : q.pv_tests) tests.push_back(q.bob[y]);
  }

  if (checks.count("predictability")) {
    if (q.bob.empty()) {
      r.messages.push_back("predictability skipped: no Bob measurements");
    } else {
      const auto records = scan_predictability(asm_, q.bob, q.eps);
      r.findings["rrc_contexts"] = records_json(records, q.alice, q.bob);
      r.findings["rrc_context_count"] = records.size();
    }
  }

  const bool qubit_b = q.dim_b == 2;
  if (checks.count("lhs")) {
    if (qubit_b) r.verdicts.push_back(summary("lhs", lhs_feasibility_qubit(asm_, {mesh, tol, {}})));
    else r.messages.push_back("lhs skipped: the polytope method needs a qubit on Bob's side");
  }
  if (checks.count("pv")) {
    if (!qubit_b) r.messages.push_back("pv skipped: the polytope method needs a qubit on Bob's side");
    else if (tests.empty()) r.messages.push_back("pv skipped: no Bob tests");
    else pv_pair(r, asm_, tests, mesh, tol);
  }
  if (checks.count("cjwr")) {
    if (q.bob.size() == q.alice.size() && all_binary(q.alice) && sharp_binary(q.bob)) {
      const auto corr = correlators_from_assemblage(asm_, binary_observables(q.bob));
      const auto cj = cjwr(corr);
      r.findings["correlators"] = corr.values();
      r.findings["cjwr_violated"] = cj.violated;
      r.add_witness("S_m", s_m(corr));
      r.add_witness("F", cj.value);
    } else {
      r.messages.push_back("cjwr skipped: needs one sharp binary Bob observable per binary Alice setting");
    }
  }
  if (checks.count("chsh")) {
    if (q.alice.size() == 2 && q.bob.size() == 2 && all_binary(q.alice) && all_binary(q.bob))
      r.add_witness("CHSH", chsh_value(joint_from_quantum(asm_, q.bob)));
    else r.messages.push_back("chsh skipped: needs two binary settings on each side");
  }
  if (checks.count("jm")) {
    if (q.dim_a == 2) r.verdicts.push_back(summary("jm_alice", joint_measurability(q.alice, mesh, tol)));
    else r.messages.push_back("jm skipped: Alice is not a qubit");
  }
}

void check_box(RunReport& r, const BoxScenario& b, const CheckOverrides& o) {
  if (o.mode && *o.mode == "float")
    throw InputError("--mode", "box scenarios are decided exactly; float mode is for quantum scenarios");
  r.metadata = metadata("exact");
  const auto checks = requested(b.checks, kBoxChecks);
  const auto& asm_ = b.assemblage;
  if (checks.count("no_signalling"))
    r.verdicts.push_back({"no_signalling", no_signalling_exact(asm_) ? "Pass" : "Fail", {{"arithmetic", "exact"}}});
  if (checks.count("chsh")) {
    if (asm_.settings() == 2 && asm_.outcomes() == 2 && asm_.bob_inputs() == 2 && asm_.bob_outputs() == 2) {
      const Rational chsh = chsh_value(joint_from_assemblage(asm_));
      r.findings["chsh_exact"] = to_string(chsh);
      r.add_witness("CHSH", to_double(chsh));
    } else {
      r.messages.push_back("chsh skipped: needs two binary inputs per party");
    }
  }
  std::vector<std::size_t> all(asm_.bob_inputs());
  for (std::size_t y = 0; y < all.size(); ++y) all[y] = y;
  if (checks.count("lhs")) r.verdicts.push_back(summary("lhs", asm_, all, lhs_feasibility_boxworld(asm_)));
  if (checks.count("pv")) {
    const auto& tests = b.pv_tests.empty() ? all : b.pv_tests;
    std::string fam = "{";
    for (std::size_t i = 0; i < tests.size(); ++i) fam += (i ? ",y=" : "y=") + std::to_string(tests[i]);
    r.verdicts.push_back(summary("pv" + fam + "}", asm_, tests, pv_feasibility_boxworld(asm_, tests)));
  }
}

}  // namespace

RunReport cmd_check(const Scenario& scenario, const CheckOverrides& overrides) {
  const Timer timer;
  RunReport r;
  r.command = "check";
  try {
    if (const auto* q = std::get_if<QuantumScenario>(&scenario)) {
      r.inputs = {{"scenario", to_json(*q)}};
      check_quantum(r, *q, overrides);
    } else {
      const auto& b = std::get<BoxScenario>(scenario);
      r.inputs = {{"scenario", to_json(b)}};
      check_box(r, b, overrides);
    }
  } catch (const std::invalid_argument& e) {
    // Physics violations surfacing from the constructors are input problems.
    throw InputError("scenario", e.what());
  }
  r.timing_ms = timer.ms();
  return r;
}

RunReport cmd_check(const std::filesystem::path& file, const CheckOverrides& overrides) {
  RunReport r = cmd_check(load_scenario(file), overrides);
  r.inputs["file"] = file.string();
  return r;
}

RunReport cmd_pushthrough(std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw InputError("--samples", "need at least one sample");
  const Timer timer;
  RunReport r;
  r.command = "pushthrough";
  r.inputs = {{"samples", samples}, {"seed", seed}};
  r.metadata = metadata("float");
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> outcomes(2, 3), kraus(1, 3);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const DensityMatrix rho = random_density_matrix(4, rng);
    std::vector<Povm> povms;
    std::vector<Instrument> instruments;
    const std::size_t n = outcomes(rng);
    for (std::size_t x = 0; x < 2; ++x) {
      povms.push_back(random_povm(2, n, rng, "m" + std::to_string(x)));
      instruments.push_back(random_instrument(povms.back(), kraus(rng), rng));
    }
    const Assemblage a = assemblage_from_povms(rho, 2, 2, povms);
    const Assemblage b = assemblage_from_instruments(rho, 2, 2, instruments);
    for (std::size_t x = 0; x < a.settings(); ++x)
      for (std::size_t k = 0; k < povms[x].outcomes(); ++k)
        worst = std::max(worst, max_abs_diff(a.sigma(x, k).matrix(), b.sigma(x, k).matrix()));
  }
  r.add_witness("max_deviation", worst);
  r.verdicts.push_back({"pushthrough", worst <= 1e-10 ? "Pass" : "Fail", {{"max_deviation", worst}, {"bound", 1e-10}}});
  r.timing_ms = timer.ms();
  return r;
}

}  // namespace steer
