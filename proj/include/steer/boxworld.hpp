#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "steer/quantum.hpp"
#include "steer/rational.hpp"

namespace steer {

/// Bob's box-world state: a conditional table p(b|y).
class GptState {
 public:
  /// `table[y][b]`; every row must be a probability vector (exactly).
  explicit GptState(std::vector<std::vector<Rational>> table);

  static GptState uniform(std::size_t inputs, std::size_t outputs);
  /// Deterministic table answering responses[y] on input y.
  static GptState deterministic(std::span<const std::size_t> responses, std::size_t outputs);

  std::size_t inputs() const { return table_.size(); }
  std::size_t outputs() const { return table_.front().size(); }
  const Rational& prob(std::size_t y, std::size_t b) const { return table_.at(y).at(b); }
  const std::vector<std::vector<Rational>>& table() const { return table_; }

  friend bool operator==(const GptState&, const GptState&) = default;

 private:
  std::vector<std::vector<Rational>> table_;
};

struct GptEntry {
  Rational weight;  // p(a|x)
  GptState state;   // omega_{B|a,x}
};

/// Box-world assemblage sigma_{a|x} = p(a|x) omega_{B|a,x}, indexed [x][a].
/// Construction checks shapes and that p(.|x) sums to 1 for every x; the
/// marginal condition is checked separately by no_signalling_exact().
class GptAssemblage {
 public:
  explicit GptAssemblage(std::vector<std::vector<GptEntry>> entries);

  std::size_t settings() const { return entries_.size(); }
  std::size_t outcomes() const { return entries_.front().size(); }
  std::size_t bob_inputs() const { return entries_.front().front().state.inputs(); }
  std::size_t bob_outputs() const { return entries_.front().front().state.outputs(); }

  const GptEntry& entry(std::size_t x, std::size_t a) const { return entries_.at(x).at(a); }
  /// p(a|x) p(b|y;a,x).
  Rational subnormalized(std::size_t x, std::size_t a, std::size_t y, std::size_t b) const;
  /// sum_a sigma_{a|x} as a table [y][b].
  std::vector<std::vector<Rational>> marginal(std::size_t x) const;

 private:
  std::vector<std::vector<GptEntry>> entries_;
};

/// Exact x-independence of Bob's marginal.
bool no_signalling_exact(const GptAssemblage& asm_);

/// Popescu-Rohrlich rule b = a xor (x y) with p(a|x) = 1/2.
GptAssemblage prbox_assemblage();
/// p(a|x) = 1/|A| with uniform Bob tables.
GptAssemblage uniform_noise_assemblage(std::size_t settings, std::size_t outcomes, std::size_t bob_inputs,
                                       std::size_t bob_outputs);
/// Subnormalized mixture lambda * first + (1 - lambda) * second.
GptAssemblage mix(const GptAssemblage& first, const GptAssemblage& second, const Rational& lambda);

/// p(a,b|x,y) over finite alphabets, stored densely.
template <class T>
class JointDistribution {
 public:
  JointDistribution(std::size_t a_out, std::size_t b_out, std::size_t x_in, std::size_t y_in)
      : a_(a_out), b_(b_out), x_(x_in), y_(y_in), p_(a_out * b_out * x_in * y_in, T(0)) {}

  std::size_t alice_outputs() const { return a_; }
  std::size_t bob_outputs() const { return b_; }
  std::size_t alice_inputs() const { return x_; }
  std::size_t bob_inputs() const { return y_; }

  T& operator()(std::size_t a, std::size_t b, std::size_t x, std::size_t y) { return p_[index(a, b, x, y)]; }
  const T& operator()(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
    return p_[index(a, b, x, y)];
  }

 private:
  std::size_t index(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
    return ((x * y_ + y) * a_ + a) * b_ + b;
  }
  std::size_t a_, b_, x_, y_;
  std::vector<T> p_;
};

/// p(a,b|x,y) = p(a|x) e_{b|y}(omega_{B|a,x}).
JointDistribution<Rational> joint_from_assemblage(const GptAssemblage& asm_);
/// p(a,b|x,y) = tr[E_{b|y} sigma_{a|x}].
JointDistribution<double> joint_from_quantum(const Assemblage& asm_, std::span<const Povm> bob);

/// E00 + E01 + E10 - E11 with A_x = (-1)^a, B_y = (-1)^b. Binary scenarios only;
/// throws if some (x,y) slice does not sum to 1 (exactly / within 1e-9).
Rational chsh_value(const JointDistribution<Rational>& joint);
double chsh_value(const JointDistribution<double>& joint);

/// Embeds a box-world assemblage as diagonal matrices diag(p(b|y)/|Y|) so the
/// floating-point assemblage checks apply to it.
Assemblage to_float_assemblage(const GptAssemblage& asm_);

}  // namespace steer
