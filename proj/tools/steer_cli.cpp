// Command-line front end. Exit codes: 0 ran, 1 input error, 2 internal error.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "steer/commands.hpp"

namespace {

struct Output {
  std::string out;
  std::string csv;
};

void add_output_flags(CLI::App* cmd, Output& o) {
  cmd->add_option("--out", o.out, "write the JSON report here instead of stdout");
  cmd->add_option("--csv", o.csv, "write the report table as CSV");
}

void emit(const steer::RunReport& report, const Output& o) {
  const std::string text = steer::to_json(report).dump(2);
  if (o.out.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream f(o.out);
    if (!(f << text << '\n')) throw steer::InputError("--out", "cannot write " + o.out);
    std::cout << report.command << ": report written to " << o.out << '\n';
  }
  if (!o.csv.empty()) {
    if (report.table_columns.empty()) throw steer::InputError("--csv", report.command + " produces no table");
    std::ofstream f(o.csv);
    if (!(f << steer::to_csv(report))) throw steer::InputError("--csv", "cannot write " + o.csv);
  }
}

void float_only(const std::string& mode) {
  if (!mode.empty() && mode != "float") throw steer::InputError("--mode", "this command runs in floating point");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steering certification toolkit"};
  app.require_subcommand(1);
  Output o;
  std::string mode;
  std::size_t settings = 2;
  std::size_t mesh = 0;
  double tol = steer::kDefaultLpTol;

  auto* singlet = app.add_subcommand("singlet-cjwr", "singlet (or Werner) assemblage with matched Pauli settings");
  std::optional<double> werner_p;
  singlet->add_option("--settings", settings, "number of Pauli settings (2 or 3)");
  singlet->add_option("--mesh", mesh, "Bloch mesh size (default 162)");
  singlet->add_option("--tol", tol, "LP tolerance");
  singlet->add_option("--werner-p", werner_p, "use the Werner state with this visibility");
  singlet->add_option("--mode", mode, "float");
  add_output_flags(singlet, o);

  auto* scan = app.add_subcommand("werner-scan", "Werner visibility threshold scan");
  std::string scan_kind = "bisect";
  std::size_t points = 21;
  scan->add_option("--settings", settings, "number of Pauli settings (2 or 3)");
  scan->add_option("--mesh", mesh, "Bloch mesh size (default 642)");
  scan->add_option("--tol", tol, "LP tolerance");
  scan->add_option("--scan", scan_kind, "bisect | grid | witness");
  scan->add_option("--points", points, "grid points for --scan grid");
  scan->add_option("--mode", mode, "float");
  add_output_flags(scan, o);

  auto* prbox = app.add_subcommand("prbox", "PR-box assemblage, exact arithmetic");
  prbox->add_option("--mode", mode, "exact");
  add_output_flags(prbox, o);

  auto* reid = app.add_subcommand("reid", "Reid criterion on the two-mode squeezed vacuum");
  double r = 0.69;
  std::vector<double> sweep;
  reid->add_option("--r", r, "squeezing parameter");
  reid->add_option("--sweep", sweep, "LO HI STEP")->expected(3);
  reid->add_option("--mode", mode, "float");
  add_output_flags(reid, o);

  auto* check = app.add_subcommand("check", "run the checks of a scenario file");
  std::string file;
  check->add_option("file", file, "scenario JSON")->required();
  check->add_option("--mesh", mesh, "override the scenario mesh size");
  check->add_option("--tol", tol, "override the scenario LP tolerance");
  check->add_option("--mode", mode, "exact (box scenarios) | float (quantum scenarios)");
  add_output_flags(check, o);

  auto* push = app.add_subcommand("pushthrough", "instrument vs POVM assemblages on random qubit triples");
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  push->add_option("--samples", samples, "number of random triples");
  push->add_option("--seed", seed, "RNG seed")->required();
  add_output_flags(push, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    steer::RunReport report;
    if (singlet->parsed()) {
      float_only(mode);
      report = steer::cmd_singlet_cjwr(settings, mesh ? mesh : 162, tol, werner_p);
    } else if (scan->parsed()) {
      float_only(mode);
      steer::ScanMode kind;
      if (scan_kind == "bisect") kind = steer::ScanMode::Bisect;
      else if (scan_kind == "grid") kind = steer::ScanMode::Grid;
      else if (scan_kind == "witness") kind = steer::ScanMode::WitnessOnly;
      else throw steer::InputError("--scan", "expected bisect, grid or witness");
      report = steer::cmd_werner_scan(settings, kind, mesh ? mesh : 642, tol, points);
    } else if (prbox->parsed()) {
      if (!mode.empty() && mode != "exact") throw steer::InputError("--mode", "box-world verdicts are exact");
      report = steer::cmd_prbox();
    } else if (reid->parsed()) {
      float_only(mode);
      std::optional<steer::SweepRange> range;
      if (!sweep.empty()) range = steer::SweepRange{sweep[0], sweep[1], sweep[2]};
      report = steer::cmd_reid(r, range);
    } else if (check->parsed()) {
      steer::CheckOverrides ov;
      if (mesh) ov.mesh = mesh;
      if (check->count("--tol")) ov.tol = tol;
      if (!mode.empty()) {
        if (mode != "exact" && mode != "float") throw steer::InputError("--mode", "expected exact or float");
        ov.mode = mode;
      }
      report = steer::cmd_check(std::filesystem::path(file), ov);
    } else if (push->parsed()) {
      report = steer::cmd_pushthrough(samples, seed);
    }
    emit(report, o);
    return 0;
  } catch (const steer::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
