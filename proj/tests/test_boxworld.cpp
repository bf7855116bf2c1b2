#include <doctest.h>

#include <cmath>

#include "steer/boxworld.hpp"
#include "steer/quantum.hpp"

using namespace steer;

TEST_CASE("PR-box entries") {
  const auto pr = prbox_assemblage();
  CHECK(pr.entry(0, 0).weight == Rational(1, 2));
  CHECK(pr.entry(0, 0).state.prob(0, 0) == 1);
  CHECK(pr.entry(0, 0).state.prob(1, 0) == 1);
  CHECK(pr.entry(1, 0).state.prob(0, 0) == 1);
  CHECK(pr.entry(1, 0).state.prob(1, 1) == 1);
  for (std::size_t x = 0; x < 2; ++x)
    for (const auto& row : pr.marginal(x))
      for (const auto& q : row) CHECK(q == Rational(1, 2));
  CHECK(no_signalling_exact(pr));
}

TEST_CASE("GptState validation is exact") {
  CHECK_THROWS_AS(GptState({{Rational(1, 3), Rational(1, 3)}}), std::invalid_argument);
  CHECK_THROWS_AS(GptState({{Rational(3, 2), Rational(-1, 2)}}), std::invalid_argument);
  CHECK_NOTHROW(GptState({{Rational(1, 3), Rational(2, 3)}}));
}

TEST_CASE("signalling box is detected exactly") {
  // x = 0 always sends b = a; x = 1 always sends b = 0: marginals differ.
  std::vector<std::vector<GptEntry>> e(2);
  const std::vector<std::size_t> zero{0, 0}, one{1, 1};
  e[0] = {{Rational(1, 2), GptState::deterministic(zero, 2)}, {Rational(1, 2), GptState::deterministic(one, 2)}};
  e[1] = {{Rational(1, 2), GptState::deterministic(zero, 2)}, {Rational(1, 2), GptState::deterministic(zero, 2)}};
  CHECK_FALSE(no_signalling_exact(GptAssemblage(e)));
}

TEST_CASE("joint distributions") {
  const auto j = joint_from_assemblage(prbox_assemblage());
  CHECK(j(0, 0, 0, 0) == Rational(1, 2));
  CHECK(j(0, 1, 0, 0) == 0);
  const auto u = joint_from_assemblage(uniform_noise_assemblage(2, 2, 2, 2));
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) CHECK(u(a, b, 1, 1) == Rational(1, 4));
}

TEST_CASE("CHSH values") {
  CHECK(chsh_value(joint_from_assemblage(prbox_assemblage())) == 4);
  const std::vector<std::size_t> zero{0, 0};
  std::vector<std::vector<GptEntry>> local(2);
  for (auto& row : local) row = {{Rational(1), GptState::deterministic(zero, 2)}, {Rational(0), GptState::deterministic(zero, 2)}};
  CHECK(chsh_value(joint_from_assemblage(GptAssemblage(local))) == 2);
}

TEST_CASE("CHSH is affine under mixing") {
  const auto pr = prbox_assemblage();
  const auto noise = uniform_noise_assemblage(2, 2, 2, 2);
  const Rational cp = chsh_value(joint_from_assemblage(pr));
  const Rational cn = chsh_value(joint_from_assemblage(noise));
  for (int k = 0; k <= 8; ++k) {
    Rational lam(k, 8);
    lam.canonicalize();
    const Rational expected = lam * cp + (1 - lam) * cn;
    CHECK(chsh_value(joint_from_assemblage(mix(pr, noise, lam))) == expected);
  }
}

TEST_CASE("CHSH-optimal singlet measurements reach 2 sqrt 2") {
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<Povm> alice{Povm::pauli("z", {0, 0, 1}), Povm::pauli("x", {1, 0, 0})};
  const std::vector<Povm> bob{Povm::pauli("b0", {-s, 0, -s}), Povm::pauli("b1", {s, 0, -s})};
  const Assemblage asm_ = assemblage_from_povms(singlet_state(), 2, 2, alice);
  CHECK(std::abs(chsh_value(joint_from_quantum(asm_, bob)) - 2.0 * std::sqrt(2.0)) <= 1e-9);
}

TEST_CASE("unnormalized slice is rejected") {
  JointDistribution<Rational> j(2, 2, 2, 2);
  CHECK_THROWS_AS(chsh_value(j), std::invalid_argument);
  JointDistribution<double> d(2, 2, 3, 2);
  CHECK_THROWS_AS(chsh_value(d), std::invalid_argument);
}

TEST_CASE("float embedding keeps the no-signalling property") {
  const Assemblage a = to_float_assemblage(prbox_assemblage());
  CHECK(check_no_signalling(a).pass);
  CHECK(validate_assemblage(a).ok());
}
