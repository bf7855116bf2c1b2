#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "steer/quantum.hpp"
#include "steer/random.hpp"

using namespace steer;

namespace {

ComplexMatrix projector(const ComplexMatrix& ket) { return ket * ket.adjoint(); }

double max_sigma_diff(const Assemblage& a, const Assemblage& b) {
  double worst = 0.0;
  for (std::size_t x = 0; x < a.settings(); ++x)
    for (std::size_t k = 0; k < a.outcomes(); ++k)
      worst = std::max(worst, max_abs_diff(a.sigma(x, k).matrix(), b.sigma(x, k).matrix()));
  return worst;
}

double matched_correlator(const Assemblage& asm_, std::size_t x, const Povm& bob) {
  const ComplexMatrix obs = bob.effect(0).matrix() - bob.effect(1).matrix();
  return trace_product(obs, asm_.sigma(x, 0).matrix()) - trace_product(obs, asm_.sigma(x, 1).matrix());
}

}  // namespace

TEST_CASE("POVM validation") {
  CHECK_NOTHROW(Povm::pauli("z", {0, 0, 1}));
  CHECK_THROWS_AS(Povm("bad", std::vector<ComplexMatrix>{ComplexMatrix::identity(2), ComplexMatrix::identity(2)}),
                  std::invalid_argument);
  const std::vector<double> neg{1.2, -0.2}, rest{-0.2, 1.2};
  CHECK_THROWS_AS(Povm("neg", std::vector<ComplexMatrix>{ComplexMatrix::diagonal(neg), ComplexMatrix::diagonal(rest)}),
                  std::invalid_argument);
}

TEST_CASE("Pauli outcome 0 is the +1 eigenvector") {
  const Povm z = Povm::pauli("z", {0, 0, 1});
  CHECK(z.effect(0).matrix()(0, 0).real() == doctest::Approx(1.0));
  CHECK(z.effect(1).matrix()(1, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("Werner state") {
  const auto bell = bell_basis();
  CHECK(max_abs_diff(werner_state(1.0).matrix(), projector(bell[3])) <= 1e-15);
  CHECK(max_abs_diff(werner_state(0.0).matrix(), ComplexMatrix::identity(4) * Complex(0.25)) <= 1e-15);
  auto ev = eigenvalues(werner_state(0.5).hermitian());
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(ev[2] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(ev[3] == doctest::Approx(0.625).epsilon(1e-12));
  CHECK_THROWS_AS(werner_state(1.1), std::invalid_argument);
  CHECK_THROWS_AS(werner_state(-0.1), std::invalid_argument);
}

TEST_CASE("Bell basis is orthonormal in the fixed order") {
  const auto bell = bell_basis();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex ip = (bell[i].adjoint() * bell[j])(0, 0);
      CHECK(std::abs(ip - Complex(i == j ? 1.0 : 0.0)) <= 1e-15);
    }
  // Psi- = (|01> - |10>)/sqrt 2 sits last.
  CHECK(bell[3](1, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(bell[3](2, 0).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("singlet steering by sigma_z") {
  const auto z = pauli_povms(1);
  const Assemblage asm_ = assemblage_from_povms(singlet_state(), 2, 2, z);
  // Alice +1 leaves Bob in the -1 eigenstate with weight 1/2.
  CHECK(max_abs_diff(asm_.sigma(0, 0).matrix(), z[0].effect(1).matrix() * Complex(0.5)) <= 1e-15);
  CHECK(max_abs_diff(asm_.sigma(0, 1).matrix(), z[0].effect(0).matrix() * Complex(0.5)) <= 1e-15);
}

TEST_CASE("product state factorizes") {
  Rng rng(41);
  const auto ra = random_density_matrix(2, rng);
  const auto rb = random_density_matrix(2, rng);
  const DensityMatrix rho(kron(ra.matrix(), rb.matrix()));
  const Povm m = random_povm(2, 3, rng);
  const Assemblage asm_ = assemblage_from_povms(rho, 2, 2, std::vector<Povm>{m});
  for (std::size_t a = 0; a < 3; ++a) {
    const double p = trace_product(m.effect(a).matrix(), ra.matrix());
    CHECK(max_abs_diff(asm_.sigma(0, a).matrix(), rb.matrix() * Complex(p)) <= 1e-14);
  }
}

TEST_CASE("Werner matched correlators equal -p") {
  Rng rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto paulis = pauli_povms(3);
  for (int t = 0; t < 100; ++t) {
    const double p = u(rng);
    const Assemblage asm_ = assemblage_from_povms(werner_state(p), 2, 2, paulis);
    for (std::size_t x = 0; x < 3; ++x) CHECK(std::abs(matched_correlator(asm_, x, paulis[x]) + p) <= 1e-12);
  }
}

TEST_CASE("assemblage invariants on random states and POVMs") {
  Rng rng(47);
  for (int t = 0; t < 30; ++t) {
    const auto rho = random_density_matrix(6, rng);
    const std::vector<Povm> alice{random_povm(3, 2, rng, "a"), random_povm(3, 2, rng, "b")};
    const Assemblage asm_ = assemblage_from_povms(rho, 3, 2, alice);
    const auto v = validate_assemblage(asm_);
    CHECK(v.ok());
    CHECK(v.no_signalling.max_deviation <= 1e-12);
  }
}

TEST_CASE("no-signalling detects a rescaled element") {
  const Assemblage good = assemblage_from_povms(singlet_state(), 2, 2, pauli_povms(2));
  std::vector<std::vector<HermitianMatrix>> sigma(2);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t a = 0; a < 2; ++a) {
      const double s = (x == 1 && a == 0) ? 1.1 : 1.0;
      sigma[x].emplace_back(good.sigma(x, a).matrix() * Complex(s));
    }
  const auto rep = check_no_signalling(Assemblage(2, sigma));
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_deviation == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(check_no_signalling(good).pass);
}

TEST_CASE("instrument and POVM assemblages agree") {
  Rng rng(53);
  SUBCASE("projective single-Kraus case is exact") {
    const auto paulis = pauli_povms(2);
    std::vector<Instrument> ins;
    for (const auto& p : paulis) ins.push_back(Instrument("p", {{p.effect(0).matrix()}, {p.effect(1).matrix()}}));
    const auto rho = werner_state(0.7);
    CHECK(max_sigma_diff(assemblage_from_povms(rho, 2, 2, paulis), assemblage_from_instruments(rho, 2, 2, ins)) <=
          1e-15);
  }
  SUBCASE("Lueders square roots of noisy Pauli effects") {
    const std::vector<Povm> noisy{Povm::noisy_pauli("x", {1, 0, 0}, 0.6), Povm::noisy_pauli("z", {0, 0, 1}, 0.3)};
    // sqrt((1 +- eta)/2) on the eigenbasis, from the 2x2 closed form.
    for (const auto& p : noisy) {
      const auto k = Instrument::lueders(p);
      CHECK(max_abs_diff(k.kraus(0).front() * k.kraus(0).front(), p.effect(0).matrix()) <= 1e-14);
    }
    std::vector<Instrument> ins{Instrument::lueders(noisy[0]), Instrument::lueders(noisy[1])};
    const auto rho = random_density_matrix(4, rng);
    CHECK(max_sigma_diff(assemblage_from_povms(rho, 2, 2, noisy), assemblage_from_instruments(rho, 2, 2, ins)) <=
          1e-12);
  }
  SUBCASE("random Kraus decompositions of one POVM agree with each other") {
    for (int t = 0; t < 30; ++t) {
      const auto rho = random_density_matrix(4, rng);
      const Povm m = random_povm(2, 3, rng);
      const std::vector<Instrument> i1{random_instrument(m, 1, rng)}, i2{random_instrument(m, 3, rng)};
      CHECK(max_sigma_diff(assemblage_from_instruments(rho, 2, 2, i1), assemblage_from_instruments(rho, 2, 2, i2)) <=
            1e-10);
    }
  }
  SUBCASE("incomplete Kraus set is rejected") {
    CHECK_THROWS_AS(Instrument("half", {{ComplexMatrix::identity(2) * Complex(0.5)}}), std::invalid_argument);
  }
}

TEST_CASE("predictability scan") {
  SUBCASE("singlet with matched x and z finds four contexts") {
    const auto paulis = pauli_povms(2);
    const auto recs = scan_predictability(assemblage_from_povms(singlet_state(), 2, 2, paulis), paulis, 1e-9);
    REQUIRE(recs.size() == 4);
    for (const auto& r : recs) {
      CHECK(r.x == r.y);
      CHECK(r.b == 1 - r.a);
      CHECK(r.probability == doctest::Approx(1.0));
    }
  }
  SUBCASE("Werner 0.9 has no certain predictions") {
    const auto paulis = pauli_povms(3);
    CHECK(scan_predictability(assemblage_from_povms(werner_state(0.9), 2, 2, paulis), paulis, 1e-6).empty());
  }
  SUBCASE("product state predicts only when Bob sits in an eigenstate") {
    const ComplexMatrix up = Povm::pauli("z", {0, 0, 1}).effect(0).matrix();
    const ComplexMatrix half = ComplexMatrix::identity(2) * Complex(0.5);
    const auto paulis = pauli_povms(2);
    const auto recs = scan_predictability(
        assemblage_from_povms(DensityMatrix(kron(half, up)), 2, 2, paulis), paulis, 1e-9);
    CHECK(recs.size() == 4);  // every (x, a), test z, outcome 0
    for (const auto& r : recs) CHECK((r.y == 1 && r.b == 0));
    CHECK(scan_predictability(assemblage_from_povms(DensityMatrix(kron(half, half)), 2, 2, paulis), paulis, 1e-9)
              .empty());
  }
  SUBCASE("zero-probability contexts are skipped") {
    const ComplexMatrix up = Povm::pauli("z", {0, 0, 1}).effect(0).matrix();
    const auto z = pauli_povms(1);
    const Assemblage asm_ = assemblage_from_povms(DensityMatrix(kron(up, up)), 2, 2, z);
    CHECK_FALSE(asm_.conditional_state(0, 1).has_value());
    const auto recs = scan_predictability(asm_, z, 1e-9);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].a == 0);
  }
}

TEST_CASE("mixing and coarse-graining keep the invariants") {
  const auto paulis = pauli_povms(2);
  const Assemblage a = assemblage_from_povms(werner_state(0.3), 2, 2, paulis);
  const Assemblage b = assemblage_from_povms(werner_state(0.9), 2, 2, paulis);
  const Assemblage m = mix(a, b, 0.25);
  CHECK(validate_assemblage(m).ok());
  const std::vector<std::size_t> merge{0, 0};
  const Assemblage c = coarse_grain(m, merge);
  CHECK(c.outcomes() == 1);
  CHECK(c.probability(0, 0) == doctest::Approx(1.0));
}
