// Acceptance run: one PASS/FAIL line per criterion. Tolerances and runtime
// budgets are fixed here; the exit status is nonzero if any line fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "steer/commands.hpp"
#include "steer/gaussian.hpp"
#include "steer/random.hpp"
#include "steer/steering.hpp"
#include "steer/witness.hpp"

using namespace steer;

namespace {

constexpr double kWitnessTol = 1e-12;
constexpr double kBracketWidth = 0.03;
constexpr double kReidTol = 1e-12;
constexpr double kPushthroughTol = 1e-10;
constexpr double kCommonInterval = 0.05;
constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) o.require(false, "runtime " + format_real(secs) + " s over budget");
  if (!o.pass) ++failures;
  std::printf("[%s] %d %s (%.2f s / %.0f s) %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, budget_s,
              o.detail.c_str());
  std::fflush(stdout);
}

std::string num(double v) { return format_real(v); }

void werner_threshold(Outcome& o, std::size_t m) {
  const double target = 1.0 / std::sqrt(static_cast<double>(m));
  const auto w = cmd_werner_scan(m, ScanMode::WitnessOnly);
  const double crossing = w.witness_values.at("witness_crossing");
  o.require(std::abs(crossing - target) <= kWitnessTol, "witness crossing " + num(crossing));
  const auto b = cmd_werner_scan(m, ScanMode::Bisect, 642);
  if (!b.witness_values.count("bracket_low") || !b.witness_values.count("bracket_high")) {
    o.require(false, "no bracket");
    return;
  }
  const double lo = b.witness_values.at("bracket_low"), hi = b.witness_values.at("bracket_high");
  const double probe = m == 2 ? 0.70711 : 0.57735;
  o.require(hi - lo <= kBracketWidth, "bracket width " + num(hi - lo));
  o.require(lo <= probe && probe <= hi, "bracket misses " + num(probe));
  o.note("crossing " + num(crossing) + ", bracket [" + num(lo) + ", " + num(hi) + "]");
}

std::string status_of(const RunReport& r, const std::string& name) {
  const auto* v = r.find_verdict(name);
  return v ? v->status : "<missing>";
}

bool pv_implies_lhs(FeasibilityStatus pv, FeasibilityStatus lhs) {
  return !(pv == FeasibilityStatus::Feasible && lhs == FeasibilityStatus::Infeasible);
}

std::array<double, 3> random_direction(Rng& rng) {
  std::normal_distribution<double> g;
  std::array<double, 3> n{g(rng), g(rng), g(rng)};
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  for (auto& c : n) c /= len;
  return n;
}

}  // namespace

int main() {
  criterion(1, "Werner two-setting threshold", 30, [](Outcome& o) { werner_threshold(o, 2); });
  criterion(2, "Werner three-setting threshold", 60, [](Outcome& o) { werner_threshold(o, 3); });

  criterion(3, "singlet counterexample pipeline", 10, [](Outcome& o) {
    const auto r = cmd_singlet_cjwr(2, 162);
    const std::size_t contexts = r.findings.at("rrc_context_count").get<std::size_t>();
    o.require(contexts == 4, "context count " + std::to_string(contexts));
    const double f = r.witness_values.at("F");
    o.require(std::abs(f - std::sqrt(2.0)) <= kWitnessTol, "F = " + num(f));
    o.require(status_of(r, "lhs") == "Infeasible", "LHS " + status_of(r, "lhs"));
    o.require(status_of(r, "pv{x,z}") == "Infeasible", "PV{x,z} " + status_of(r, "pv{x,z}"));
    o.require(status_of(r, "pv{z}") == "Feasible", "PV{z} " + status_of(r, "pv{z}"));
    o.note("contexts 4, F " + num(f));
  });

  criterion(4, "PR box", 5, [](Outcome& o) {
    const auto r = cmd_prbox();
    o.require(status_of(r, "no_signalling") == "Pass", "no-signalling");
    o.require(r.findings.at("chsh_exact") == "4", "CHSH exact value");
    const auto asm_ = prbox_assemblage();
    const std::vector<std::size_t> tests{0, 1};
    const auto lhs = lhs_feasibility_boxworld(asm_);
    const auto pv = pv_feasibility_boxworld(asm_, tests);
    o.require(lhs.status == FeasibilityStatus::Infeasible && verify_box_certificate(asm_, tests, lhs),
              "LHS certificate");
    o.require(pv.status == FeasibilityStatus::Infeasible && verify_box_certificate(asm_, tests, pv),
              "PV certificate");
    const bool line = std::find(r.messages.begin(), r.messages.end(), "CHSH 4 > 2√2 ≈ 2.8284 (quantum bound)") !=
                      r.messages.end();
    o.require(line, "comparison line");
    o.note("CHSH 4, witness " + to_string(lhs.witness_value) + " > " + to_string(lhs.witness_bound));
  });

  criterion(5, "Reid inferred variances", 1, [](Outcome& o) {
    const auto r = cmd_reid(0.69);
    const double expect = std::sqrt(1.0 / (2.0 * std::cosh(1.38)));
    const double dx = r.witness_values.at("delta_x_inf"), dp = r.witness_values.at("delta_p_inf");
    const double product = r.witness_values.at("product");
    o.require(std::abs(dx - expect) <= kReidTol && std::abs(dp - expect) <= kReidTol, "delta " + num(dx));
    o.require(product < 0.5, "product " + num(product));
    o.require(std::round(dx * 1000) == 486 && std::round(product * 1000) == 237, "3-decimal rounding");
    o.note("delta " + num(dx) + ", product " + num(product));
  });

  criterion(6, "push-through", 10, [](Outcome& o) {
    const auto r = cmd_pushthrough(200, kSeed);
    const double worst = r.witness_values.at("max_deviation");
    o.require(worst <= kPushthroughTol, "max deviation " + num(worst));
    o.note("max deviation " + num(worst));
  });

  criterion(7, "predetermined values imply LHS", 60, [](Outcome& o) {
    std::size_t cases = 0;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(STEER_SCENARIOS)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      const Scenario s = load_scenario(file);
      if (const auto* q = std::get_if<QuantumScenario>(&s)) {
        std::vector<Povm> tests;
        if (q->pv_tests.empty()) tests = q->bob;
        else for (auto y : q->pv_tests) tests.push_back(q->bob[y]);
        if (tests.empty() || q->dim_b != 2) continue;
        const auto asm_ = assemblage_from_povms(q->density_matrix(), q->dim_a, q->dim_b, q->alice);
        const QubitCheckOptions opts{q->mesh, q->tol, tests};
        o.require(pv_implies_lhs(pv_feasibility_qubit(asm_, opts).status, lhs_feasibility_qubit(asm_, opts).status),
                  file.filename().string());
      } else {
        const auto& b = std::get<BoxScenario>(s);
        std::vector<std::size_t> all(b.assemblage.bob_inputs());
        for (std::size_t y = 0; y < all.size(); ++y) all[y] = y;
        o.require(pv_implies_lhs(pv_feasibility_boxworld(b.assemblage, all).status,
                              lhs_feasibility_boxworld(b.assemblage).status),
                  file.filename().string());
      }
      ++cases;
    }
    Rng rng(kSeed + 7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto paulis = pauli_povms(3);
    for (int i = 0; i < 50; ++i) {
      const double p = unit(rng);
      std::vector<Povm> alice;
      for (int x = 0; x < 2; ++x)
        alice.push_back(Povm::noisy_pauli("a" + std::to_string(x), random_direction(rng), 0.5 + 0.5 * unit(rng)));
      std::vector<Povm> tests;
      for (const auto& t : paulis)
        if (unit(rng) < 0.6) tests.push_back(t);
      if (tests.empty()) tests.push_back(paulis[i % 3]);
      const auto asm_ = assemblage_from_povms(werner_state(p), 2, 2, alice);
      const QubitCheckOptions opts{162, kDefaultLpTol, tests};
      o.require(pv_implies_lhs(pv_feasibility_qubit(asm_, opts).status, lhs_feasibility_qubit(asm_, opts).status),
                "random case " + std::to_string(i));
      ++cases;
    }
    o.note(std::to_string(cases) + " cases");
  });

  criterion(8, "joint measurability vs Werner steering", 120, [](Outcome& o) {
    auto jm = [](double eta) {
      const std::vector<Povm> pair{Povm::noisy_pauli("x", {1, 0, 0}, eta), Povm::noisy_pauli("z", {0, 0, 1}, eta)};
      return joint_measurability(pair, 642).status;
    };
    const auto jb = threshold_scan(jm, 0.0, 1.0, 1e-3, 9);
    const auto w = cmd_werner_scan(2, ScanMode::Bisect, 642);
    if (!jb.feasible_max || !jb.infeasible_min || !w.witness_values.count("bracket_low")) {
      o.require(false, "missing bracket");
      return;
    }
    const double wl = w.witness_values.at("bracket_low"), wh = w.witness_values.at("bracket_high");
    const double lo = std::min(*jb.feasible_max, wl), hi = std::max(*jb.infeasible_min, wh);
    const bool overlap = std::max(*jb.feasible_max, wl) <= std::min(*jb.infeasible_min, wh);
    o.require(hi - lo <= kCommonInterval, "common interval width " + num(hi - lo));
    o.note("JM [" + num(*jb.feasible_max) + ", " + num(*jb.infeasible_min) + "], Werner [" + num(wl) + ", " +
           num(wh) + "], common width " + num(hi - lo) + (overlap ? ", overlapping" : ", disjoint"));
  });

  criterion(9, "convexity and coarse-graining", 60, [](Outcome& o) {
    Rng rng(kSeed + 9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    auto feasible = [](const Assemblage& a) {
      return lhs_feasibility_qubit(a, {642, kDefaultLpTol, {}}).status == FeasibilityStatus::Feasible;
    };
    for (int i = 0; i < 50; ++i) {
      std::vector<Povm> alice;
      for (int x = 0; x < 2; ++x) alice.push_back(random_povm(2, 3, rng, "m" + std::to_string(x)));
      const auto first = assemblage_from_povms(werner_state(0.3 * unit(rng)), 2, 2, alice);
      if (!feasible(first)) {
        o.require(false, "source " + std::to_string(i) + " not Feasible");
        continue;
      }
      Assemblage derived = first;
      if (i % 2 == 0) {
        std::vector<Povm> other;
        for (int x = 0; x < 2; ++x) other.push_back(random_povm(2, 3, rng, "n" + std::to_string(x)));
        const auto second = assemblage_from_povms(werner_state(0.3 * unit(rng)), 2, 2, other);
        if (!feasible(second)) {
          o.require(false, "source " + std::to_string(i) + "b not Feasible");
          continue;
        }
        derived = mix(first, second, unit(rng));
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, 1);
        const std::vector<std::size_t> map{pick(rng), pick(rng), pick(rng)};
        derived = coarse_grain(first, map);
      }
      o.require(feasible(derived), "derived " + std::to_string(i) + " not Feasible");
      ++checked;
    }
    o.note(std::to_string(checked) + " derived assemblages");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
