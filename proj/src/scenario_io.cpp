#include "steer/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace steer {

namespace {

std::string at_index(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }
std::string at_field(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where, "missing field '" + key + "'");
  return *it;
}

std::size_t as_count(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw InputError(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

double as_real(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where, "expected a number");
  return j.get<double>();
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where, "expected an array");
  return j;
}

std::vector<std::string> string_list(const json& obj, const std::string& key, const std::string& where) {
  std::vector<std::string> out;
  if (!obj.contains(key)) return out;
  const std::string w = at_field(where, key);
  const json& arr = as_array(obj.at(key), w);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) throw InputError(at_index(w, i), "expected a string");
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

std::vector<std::size_t> index_list(const json& obj, const std::string& key, const std::string& where) {
  std::vector<std::size_t> out;
  if (!obj.contains(key)) return out;
  const std::string w = at_field(where, key);
  const json& arr = as_array(obj.at(key), w);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_count(arr[i], at_index(w, i)));
  return out;
}

Povm povm_from_json(const json& j, std::size_t dim, const std::string& where, std::size_t index) {
  std::string label = std::to_string(index);
  const json* effects = &j;
  std::string ew = where;
  if (j.is_object()) {
    if (j.contains("label")) {
      if (!j.at("label").is_string()) throw InputError(at_field(where, "label"), "expected a string");
      label = j.at("label").get<std::string>();
    }
    effects = &require(j, "effects", where);
    ew = at_field(where, "effects");
  }
  as_array(*effects, ew);
  if (effects->empty()) throw InputError(ew, "a POVM needs at least one effect");
  std::vector<ComplexMatrix> ms;
  for (std::size_t b = 0; b < effects->size(); ++b) {
    ComplexMatrix m = matrix_from_json((*effects)[b], at_index(ew, b));
    if (m.rows() != dim) {
      throw InputError(at_index(ew, b), "effect is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                            ", expected dimension " + std::to_string(dim));
    }
    ms.push_back(std::move(m));
  }
  try {
    return Povm(label, std::move(ms));
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

std::vector<Povm> povm_list(const json& doc, const std::string& key, std::size_t dim) {
  const json& arr = as_array(require(doc, key, ""), key);
  std::vector<Povm> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(povm_from_json(arr[i], dim, at_index(key, i), i));
  return out;
}

json povm_to_json(const Povm& p) {
  json effects = json::array();
  for (const auto& e : p.effects()) effects.push_back(matrix_to_json(e.matrix()));
  return {{"label", p.label()}, {"effects", effects}};
}

Rational rational_from_json(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
  throw InputError(where, "expected a rational as a \"num/den\" string");
}

QuantumScenario parse_quantum(const json& doc) {
  QuantumScenario s;
  s.dim_a = as_count(require(doc, "dimA", ""), "dimA");
  s.dim_b = as_count(require(doc, "dimB", ""), "dimB");
  if (s.dim_a == 0 || s.dim_b == 0) throw InputError("dimA", "dimensions must be positive");

  const json& st = require(doc, "state", "");
  const json& kind = require(st, "kind", "state");
  if (!kind.is_string()) throw InputError("state.kind", "expected a string");
  s.state.kind = kind.get<std::string>();
  if (s.state.kind == "werner") {
    s.state.p = as_real(require(st, "p", "state"), "state.p");
  } else if (s.state.kind == "explicit") {
    s.state.rho = matrix_from_json(require(st, "rho", "state"), "state.rho");
  } else if (s.state.kind != "singlet") {
    throw InputError("state.kind", "unknown state kind '" + s.state.kind + "' (werner, singlet, explicit)");
  }
  if (s.state.kind != "explicit" && (s.dim_a != 2 || s.dim_b != 2))
    throw InputError("state.kind", "'" + s.state.kind + "' is a two-qubit state; dimA and dimB must be 2");

  s.alice = povm_list(doc, "alice_povms", s.dim_a);
  if (s.alice.empty()) throw InputError("alice_povms", "at least one Alice measurement is required");
  if (doc.contains("bob_povms")) s.bob = povm_list(doc, "bob_povms", s.dim_b);
  s.checks = string_list(doc, "checks", "");
  s.pv_tests = index_list(doc, "pv_tests", "");
  for (std::size_t i = 0; i < s.pv_tests.size(); ++i)
    if (s.pv_tests[i] >= s.bob.size()) throw InputError(at_index("pv_tests", i), "index past the end of bob_povms");
  if (doc.contains("mesh")) s.mesh = as_count(doc.at("mesh"), "mesh");
  if (doc.contains("eps")) s.eps = as_real(doc.at("eps"), "eps");
  if (doc.contains("tol")) s.tol = as_real(doc.at("tol"), "tol");
  try {
    (void)s.density_matrix();
  } catch (const std::invalid_argument& e) {
    throw InputError("state", e.what());
  }
  return s;
}

BoxScenario parse_box(const json& doc) {
  const json& arr = as_array(require(doc, "assemblage", ""), "assemblage");
  std::vector<std::vector<GptEntry>> entries;
  for (std::size_t x = 0; x < arr.size(); ++x) {
    const std::string wx = at_index("assemblage", x);
    const json& row = as_array(arr[x], wx);
    std::vector<GptEntry> out_row;
    for (std::size_t a = 0; a < row.size(); ++a) {
      const std::string wa = at_index(wx, a);
      const Rational weight = rational_from_json(require(row[a], "weight", wa), at_field(wa, "weight"));
      const std::string wt = at_field(wa, "table");
      const json& table = as_array(require(row[a], "table", wa), wt);
      std::vector<std::vector<Rational>> t;
      for (std::size_t y = 0; y < table.size(); ++y) {
        const json& probs = as_array(table[y], at_index(wt, y));
        std::vector<Rational> r;
        for (std::size_t b = 0; b < probs.size(); ++b)
          r.push_back(rational_from_json(probs[b], at_index(at_index(wt, y), b)));
        t.push_back(std::move(r));
      }
      try {
        out_row.push_back({weight, GptState(std::move(t))});
      } catch (const std::invalid_argument& e) {
        throw InputError(wt, e.what());
      }
    }
    entries.push_back(std::move(out_row));
  }
  try {
    BoxScenario s{GptAssemblage(std::move(entries)), index_list(doc, "pv_tests", ""), string_list(doc, "checks", "")};
    for (std::size_t i = 0; i < s.pv_tests.size(); ++i)
      if (s.pv_tests[i] >= s.assemblage.bob_inputs()) throw InputError(at_index("pv_tests", i), "no such Bob input");
    return s;
  } catch (const std::invalid_argument& e) {
    throw InputError("assemblage", e.what());
  }
}

}  // namespace

DensityMatrix QuantumScenario::density_matrix() const {
  if (state.kind == "werner") return werner_state(state.p);
  if (state.kind == "singlet") return singlet_state();
  if (!state.rho) throw std::invalid_argument("explicit state without a matrix");
  if (state.rho->rows() != dim_a * dim_b || !state.rho->is_square())
    throw std::invalid_argument("explicit state must be (dimA*dimB) square");
  return DensityMatrix(*state.rho);
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
  as_array(j, where);
  if (j.empty()) throw InputError(where, "empty matrix");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Complex> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string wr = at_index(where, i);
    const json& row = as_array(j[i], wr);
    if (i == 0) cols = row.size();
    if (row.size() != cols) throw InputError(wr, "ragged matrix");
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::string we = at_index(wr, k);
      const json& z = row[k];
      if (z.is_number()) {
        entries.emplace_back(z.get<double>(), 0.0);
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
        entries.emplace_back(z[0].get<double>(), z[1].get<double>());
      } else {
        throw InputError(we, "expected [re, im] or a real number");
      }
    }
  }
  if (rows != cols) throw InputError(where, "matrix must be square");
  return ComplexMatrix(rows, cols, std::move(entries));
}

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw InputError("", "scenario must be a JSON object");
  std::string kind = "quantum";
  if (doc.contains("kind")) {
    if (!doc.at("kind").is_string()) throw InputError("kind", "expected a string");
    kind = doc.at("kind").get<std::string>();
  }
  if (kind == "quantum") return parse_quantum(doc);
  if (kind == "box") return parse_box(doc);
  throw InputError("kind", "unknown scenario kind '" + kind + "' (quantum, box)");
}

Scenario parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw InputError("line " + std::to_string(line), "malformed JSON");
  }
  return parse_scenario(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string(), "cannot open scenario file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

json to_json(const QuantumScenario& s) {
  json state{{"kind", s.state.kind}};
  if (s.state.kind == "werner") state["p"] = s.state.p;
  if (s.state.rho) state["rho"] = matrix_to_json(*s.state.rho);
  json alice = json::array(), bob = json::array();
  for (const auto& p : s.alice) alice.push_back(povm_to_json(p));
  for (const auto& p : s.bob) bob.push_back(povm_to_json(p));
  return {{"kind", "quantum"}, {"dimA", s.dim_a}, {"dimB", s.dim_b}, {"state", state},
          {"alice_povms", alice}, {"bob_povms", bob}, {"checks", s.checks}, {"pv_tests", s.pv_tests},
          {"mesh", s.mesh}, {"eps", s.eps}, {"tol", s.tol}};
}

json to_json(const BoxScenario& s) {
  json arr = json::array();
  for (std::size_t x = 0; x < s.assemblage.settings(); ++x) {
    json row = json::array();
    for (std::size_t a = 0; a < s.assemblage.outcomes(); ++a) {
      const auto& e = s.assemblage.entry(x, a);
      json table = json::array();
      for (const auto& r : e.state.table()) {
        json probs = json::array();
        for (const auto& q : r) probs.push_back(to_string(q));
        table.push_back(probs);
      }
      row.push_back({{"weight", to_string(e.weight)}, {"table", table}});
    }
    arr.push_back(row);
  }
  return {{"kind", "box"}, {"assemblage", arr}, {"pv_tests", s.pv_tests}, {"checks", s.checks}};
}

}  // namespace steer
