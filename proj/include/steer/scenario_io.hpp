#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "steer/boxworld.hpp"
#include "steer/quantum.hpp"

namespace steer {

using nlohmann::json;

/// Bad scenario input: malformed JSON, schema violations, or physically
/// invalid objects (non-PSD effects and the like). Carries a location such as
/// "line 4" or "alice_povms[1].effects[0]".
class InputError : public std::runtime_error {
 public:
  InputError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct StateSpec {
  std::string kind;                  // "werner" | "singlet" | "explicit"
  double p = 1.0;                    // werner only
  std::optional<ComplexMatrix> rho;  // explicit only
};

struct QuantumScenario {
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;
  StateSpec state;
  std::vector<Povm> alice;
  std::vector<Povm> bob;
  std::vector<std::string> checks;  // empty: run everything applicable
  std::vector<std::size_t> pv_tests;  // indices into bob; empty: all of bob
  std::size_t mesh = 162;
  double eps = kCertaintyTol;
  double tol = 1e-9;

  DensityMatrix density_matrix() const;
};

struct BoxScenario {
  GptAssemblage assemblage;
  std::vector<std::size_t> pv_tests;  // empty: every Bob input
  std::vector<std::string> checks;
};

using Scenario = std::variant<QuantumScenario, BoxScenario>;

Scenario parse_scenario(const json& doc);
/// Parses text, reporting JSON syntax errors with their line number.
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

json to_json(const QuantumScenario& s);
json to_json(const BoxScenario& s);

/// Complex matrices as rows of [re, im] pairs.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j, const std::string& where);

}  // namespace steer
