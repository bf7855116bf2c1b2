#include "steer/boxworld.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace steer {

GptState::GptState(std::vector<std::vector<Rational>> table) : table_(std::move(table)) {
  if (table_.empty() || table_.front().empty()) throw std::invalid_argument("GptState: empty table");
  for (std::size_t y = 0; y < table_.size(); ++y) {
    if (table_[y].size() != table_.front().size()) throw std::invalid_argument("GptState: ragged table");
    Rational total(0);
    for (const auto& p : table_[y]) {
      if (p < 0 || p > 1) throw std::invalid_argument("GptState: probability outside [0,1]");
      total += p;
    }
    if (total != 1) throw std::invalid_argument("GptState: row " + std::to_string(y) + " does not sum to 1");
  }
}

GptState GptState::uniform(std::size_t inputs, std::size_t outputs) {
  return GptState(std::vector<std::vector<Rational>>(inputs, std::vector<Rational>(outputs, Rational(1, outputs))));
}

GptState GptState::deterministic(std::span<const std::size_t> responses, std::size_t outputs) {
  std::vector<std::vector<Rational>> t(responses.size(), std::vector<Rational>(outputs, Rational(0)));
  for (std::size_t y = 0; y < responses.size(); ++y) t[y].at(responses[y]) = 1;
  return GptState(std::move(t));
}

GptAssemblage::GptAssemblage(std::vector<std::vector<GptEntry>> entries) : entries_(std::move(entries)) {
  if (entries_.empty() || entries_.front().empty()) throw std::invalid_argument("GptAssemblage: empty");
  const std::size_t outcomes = entries_.front().size();
  const std::size_t yin = entries_.front().front().state.inputs();
  const std::size_t bout = entries_.front().front().state.outputs();
  for (std::size_t x = 0; x < entries_.size(); ++x) {
    if (entries_[x].size() != outcomes) throw std::invalid_argument("GptAssemblage: settings differ in outcome count");
    Rational total(0);
    for (const auto& e : entries_[x]) {
      if (e.state.inputs() != yin || e.state.outputs() != bout)
        throw std::invalid_argument("GptAssemblage: Bob tables differ in shape");
      if (e.weight < 0) throw std::invalid_argument("GptAssemblage: negative weight");
      total += e.weight;
    }
    if (total != 1) throw std::invalid_argument("GptAssemblage: weights for x=" + std::to_string(x) + " do not sum to 1");
  }
}

Rational GptAssemblage::subnormalized(std::size_t x, std::size_t a, std::size_t y, std::size_t b) const {
  const auto& e = entry(x, a);
  return e.weight * e.state.prob(y, b);
}

std::vector<std::vector<Rational>> GptAssemblage::marginal(std::size_t x) const {
  std::vector<std::vector<Rational>> m(bob_inputs(), std::vector<Rational>(bob_outputs(), Rational(0)));
  for (std::size_t a = 0; a < outcomes(); ++a)
    for (std::size_t y = 0; y < bob_inputs(); ++y)
      for (std::size_t b = 0; b < bob_outputs(); ++b) m[y][b] += subnormalized(x, a, y, b);
  return m;
}

bool no_signalling_exact(const GptAssemblage& asm_) {
  const auto first = asm_.marginal(0);
  for (std::size_t x = 1; x < asm_.settings(); ++x)
    if (asm_.marginal(x) != first) return false;
  return true;
}

GptAssemblage prbox_assemblage() {
  std::vector<std::vector<GptEntry>> entries(2);
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t a = 0; a < 2; ++a) {
      std::vector<std::size_t> responses(2);
      for (std::size_t y = 0; y < 2; ++y) responses[y] = a ^ (x & y);
      entries[x].push_back({Rational(1, 2), GptState::deterministic(responses, 2)});
    }
  }
  return GptAssemblage(std::move(entries));
}

GptAssemblage uniform_noise_assemblage(std::size_t settings, std::size_t outcomes, std::size_t bob_inputs,
                                       std::size_t bob_outputs) {
  std::vector<std::vector<GptEntry>> entries(settings);
  for (auto& row : entries)
    for (std::size_t a = 0; a < outcomes; ++a)
      row.push_back({Rational(1, outcomes), GptState::uniform(bob_inputs, bob_outputs)});
  return GptAssemblage(std::move(entries));
}

GptAssemblage mix(const GptAssemblage& first, const GptAssemblage& second, const Rational& lambda) {
  if (first.settings() != second.settings() || first.outcomes() != second.outcomes() ||
      first.bob_inputs() != second.bob_inputs() || first.bob_outputs() != second.bob_outputs()) {
    throw std::invalid_argument("mix: box assemblages have different shapes");
  }
  if (lambda < 0 || lambda > 1) throw std::invalid_argument("mix: weight outside [0,1]");
  const Rational rest = 1 - lambda;
  std::vector<std::vector<GptEntry>> entries(first.settings());
  for (std::size_t x = 0; x < first.settings(); ++x) {
    for (std::size_t a = 0; a < first.outcomes(); ++a) {
      const Rational w = lambda * first.entry(x, a).weight + rest * second.entry(x, a).weight;
      if (w == 0) {
        // Never-occurring context: any normalized table represents it.
        entries[x].push_back({w, GptState::uniform(first.bob_inputs(), first.bob_outputs())});
        continue;
      }
      std::vector<std::vector<Rational>> t(first.bob_inputs(), std::vector<Rational>(first.bob_outputs()));
      for (std::size_t y = 0; y < first.bob_inputs(); ++y)
        for (std::size_t b = 0; b < first.bob_outputs(); ++b)
          t[y][b] = (lambda * first.subnormalized(x, a, y, b) + rest * second.subnormalized(x, a, y, b)) / w;
      entries[x].push_back({w, GptState(std::move(t))});
    }
  }
  return GptAssemblage(std::move(entries));
}

JointDistribution<Rational> joint_from_assemblage(const GptAssemblage& asm_) {
  JointDistribution<Rational> j(asm_.outcomes(), asm_.bob_outputs(), asm_.settings(), asm_.bob_inputs());
  for (std::size_t x = 0; x < asm_.settings(); ++x)
    for (std::size_t y = 0; y < asm_.bob_inputs(); ++y)
      for (std::size_t a = 0; a < asm_.outcomes(); ++a)
        for (std::size_t b = 0; b < asm_.bob_outputs(); ++b) j(a, b, x, y) = asm_.subnormalized(x, a, y, b);
  return j;
}

JointDistribution<double> joint_from_quantum(const Assemblage& asm_, std::span<const Povm> bob) {
  if (bob.empty()) throw std::invalid_argument("joint_from_quantum: no Bob measurements");
  const std::size_t bout = bob.front().outcomes();
  for (const auto& m : bob) {
    if (m.outcomes() != bout) throw std::invalid_argument("joint_from_quantum: Bob POVMs differ in outcome count");
    if (m.dim() != asm_.dim_b()) throw std::invalid_argument("joint_from_quantum: Bob POVM '" + m.label() + "' has wrong dimension");
  }
  JointDistribution<double> j(asm_.outcomes(), bout, asm_.settings(), bob.size());
  for (std::size_t x = 0; x < asm_.settings(); ++x)
    for (std::size_t y = 0; y < bob.size(); ++y)
      for (std::size_t a = 0; a < asm_.outcomes(); ++a)
        for (std::size_t b = 0; b < bout; ++b)
          j(a, b, x, y) = trace_product(bob[y].effect(b).matrix(), asm_.sigma(x, a).matrix());
  return j;
}

namespace {

template <class T>
void require_binary(const JointDistribution<T>& j) {
  if (j.alice_outputs() != 2 || j.bob_outputs() != 2 || j.alice_inputs() != 2 || j.bob_inputs() != 2)
    throw std::invalid_argument("chsh_value: CHSH needs two binary inputs per party");
}

template <class T, class Normalized>
T chsh_impl(const JointDistribution<T>& j, Normalized is_normalized) {
  require_binary(j);
  T value(0);
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      T slice(0), corr(0);
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          slice += j(a, b, x, y);
          if (a == b) corr += j(a, b, x, y);
          else corr -= j(a, b, x, y);
        }
      if (!is_normalized(slice)) {
        throw std::invalid_argument("chsh_value: slice (x=" + std::to_string(x) + ", y=" + std::to_string(y) +
                                    ") is not normalized");
      }
      if (x == 1 && y == 1) value -= corr;
      else value += corr;
    }
  }
  return value;
}

}  // namespace

Rational chsh_value(const JointDistribution<Rational>& joint) {
  return chsh_impl(joint, [](const Rational& s) { return s == 1; });
}

double chsh_value(const JointDistribution<double>& joint) {
  return chsh_impl(joint, [](double s) { return std::abs(s - 1.0) <= 1e-9; });
}

Assemblage to_float_assemblage(const GptAssemblage& asm_) {
  const std::size_t yin = asm_.bob_inputs();
  const std::size_t bout = asm_.bob_outputs();
  std::vector<std::vector<HermitianMatrix>> sigma(asm_.settings());
  for (std::size_t x = 0; x < asm_.settings(); ++x) {
    for (std::size_t a = 0; a < asm_.outcomes(); ++a) {
      std::vector<double> diag(yin * bout);
      for (std::size_t y = 0; y < yin; ++y)
        for (std::size_t b = 0; b < bout; ++b)
          diag[y * bout + b] = to_double(asm_.subnormalized(x, a, y, b)) / static_cast<double>(yin);
      sigma[x].emplace_back(ComplexMatrix::diagonal(diag));
    }
  }
  return Assemblage(yin * bout, std::move(sigma));
}

}  // namespace steer
