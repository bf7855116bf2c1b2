#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "steer/report.hpp"
#include "steer/scenario_io.hpp"

namespace steer {

enum class ScanMode { Bisect, Grid, WitnessOnly };

struct SweepRange {
  double lo = 0.0;
  double hi = 2.0;
  double step = 0.1;
};

/// Singlet (or Werner p) with matched Pauli settings on both sides.
RunReport cmd_singlet_cjwr(std::size_t settings, std::size_t mesh = 162, double tol = kDefaultLpTol,
                           std::optional<double> werner_p = std::nullopt);

/// Werner visibility scan. Every mode reports the analytic witness crossing;
/// Bisect and Grid add LP verdicts and the threshold bracket.
RunReport cmd_werner_scan(std::size_t settings, ScanMode mode = ScanMode::Bisect, std::size_t mesh = 642,
                          double tol = kDefaultLpTol, std::size_t grid_points = 21);

RunReport cmd_prbox();

/// Two-mode squeezed vacuum Reid check at r, or a CSV sweep over a range.
RunReport cmd_reid(double r, std::optional<SweepRange> sweep = std::nullopt);

struct CheckOverrides {
  std::optional<std::size_t> mesh;
  std::optional<double> tol;
  std::optional<std::string> mode;  // "exact" | "float"
};

RunReport cmd_check(const Scenario& scenario, const CheckOverrides& overrides = {});
RunReport cmd_check(const std::filesystem::path& file, const CheckOverrides& overrides = {});

/// Instrument and POVM assemblages of random qubit triples compared in max-norm.
RunReport cmd_pushthrough(std::size_t samples, std::uint64_t seed);

/// Bob observables B = E_0 - E_1 of binary POVMs.
std::vector<HermitianMatrix> binary_observables(std::span<const Povm> povms);

}  // namespace steer
