#include <doctest.h>

#include "steer/commands.hpp"

using namespace steer;

TEST_CASE("reports round-trip through JSON text") {
  for (const RunReport& r : {cmd_singlet_cjwr(2), cmd_prbox(), cmd_reid(0.69), cmd_reid(0.0, SweepRange{0.0, 1.0, 0.25}),
                             cmd_werner_scan(2, ScanMode::Grid, 42, 1e-9, 6)}) {
    const auto text = to_json(r).dump();
    const RunReport back = report_from_json(nlohmann::json::parse(text));
    CHECK(back == r);
    CHECK(to_json(back).dump() == text);
  }
}

TEST_CASE("non-finite witness values are refused") {
  RunReport r;
  CHECK_THROWS_AS(r.add_witness("bad", 1.0 / 0.0), std::invalid_argument);
}

TEST_CASE("format_real round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 0.7071067811865476, 1e-300, 123456.789}) CHECK(std::stod(format_real(v)) == v);
}

TEST_CASE("CSV output") {
  const auto r = cmd_reid(0.0, SweepRange{0.0, 0.2, 0.1});
  const auto csv = to_csv(r);
  CHECK(csv.rfind("r,var_x_inf,var_p_inf,product,steering_flag\n", 0) == 0);
  CHECK(r.table_rows.size() == 3);
  CHECK(r.table_rows[0][4] == "0");
  CHECK(r.table_rows[1][4] == "1");
}

TEST_CASE("canned commands") {
  SUBCASE("singlet with two settings") {
    const auto r = cmd_singlet_cjwr(2);
    CHECK(r.witness_values.at("F") == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.findings.at("rrc_context_count") == 4);
    CHECK(r.find_verdict("lhs")->status == "Infeasible");
    CHECK(r.find_verdict("pv{x,z}")->status == "Infeasible");
    CHECK(r.find_verdict("pv{z}")->status == "Feasible");
    CHECK(r.metadata.at("version") == kVersion);
  }
  SUBCASE("singlet with three settings") {
    const auto r = cmd_singlet_cjwr(3);
    CHECK(r.witness_values.at("F") == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(r.find_verdict("lhs")->status == "Infeasible");
  }
  SUBCASE("maximally mixed override") {
    const auto r = cmd_singlet_cjwr(2, 162, 1e-9, 0.0);
    CHECK(r.witness_values.at("F") == doctest::Approx(0.0));
    CHECK(r.find_verdict("lhs")->status == "Feasible");
    CHECK(r.find_verdict("pv{x}")->status == "Feasible");
    CHECK(r.find_verdict("pv{z}")->status == "Feasible");
  }
  SUBCASE("PR box") {
    const auto r = cmd_prbox();
    CHECK(r.findings.at("chsh_exact") == "4");
    CHECK(r.find_verdict("no_signalling")->status == "Pass");
    CHECK(r.find_verdict("lhs")->detail.at("certificate_verified") == true);
    CHECK(std::find(r.messages.begin(), r.messages.end(), "CHSH 4 > 2√2 ≈ 2.8284 (quantum bound)") != r.messages.end());
  }
  SUBCASE("Reid sweep is monotone") {
    const auto r = cmd_reid(0.0, SweepRange{0.0, 2.0, 0.1});
    REQUIRE(r.table_rows.size() == 21);
    for (std::size_t i = 1; i < r.table_rows.size(); ++i)
      CHECK(std::stod(r.table_rows[i][3]) < std::stod(r.table_rows[i - 1][3]));
  }
  SUBCASE("input errors") {
    CHECK_THROWS_AS(cmd_reid(-1.0), InputError);
    CHECK_THROWS_AS(cmd_singlet_cjwr(4), InputError);
    CHECK_THROWS_AS(cmd_werner_scan(2, ScanMode::Bisect, 100), InputError);
  }
}
