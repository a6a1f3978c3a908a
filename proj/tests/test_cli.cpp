#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "orbita/json_io.hpp"
#include "support.hpp"

using namespace orbita;
using testsupport::run_cli;

namespace {

std::string fixture(const std::string& name) { return std::string(ORBITA_FIXTURES) + "/" + name; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("hohmann") {
    std::string out;
    REQUIRE(run_cli("hohmann --r0 1 --r2 2", &out) == 0);
    const Json j = Json::parse(out);
    CHECK(j["f1"].get<double>() == doctest::Approx(testsupport::classical_hohmann(1.0, 2.0)).epsilon(1e-12));
    CHECK(j["branch"] == "coplanar");
    const TransferPlan p = plan_from_json(j["plan"]);
    CHECK(validate_plan(p, 1e-12).valid);

    REQUIRE(run_cli("hohmann --r0 1 --r2 1 --dir2 -1 --all-branches", &out) == 0);
    CHECK(Json::parse(out)["candidates"].size() >= 3);
    CHECK(run_cli("hohmann --r0 -1 --r2 2") == 64);
    CHECK(run_cli("hohmann --r0 1") == 64);
    CHECK(run_cli("") == 64);
  }

  TEST_CASE("eval-plan") {
    std::string out;
    REQUIRE(run_cli("eval-plan " + fixture("hohmann_1_2.json"), &out) == 0);
    const double hoh = Json::parse(out)["cost"]["f1"].get<double>();
    CHECK(hoh == doctest::Approx(testsupport::classical_hohmann(1.0, 2.0)).epsilon(1e-12));

    REQUIRE(run_cli("eval-plan " + fixture("same_orbit.json"), &out) == 0);
    CHECK(Json::parse(out)["cost"]["f1"].get<double>() == 0.0);

    REQUIRE(run_cli("eval-plan " + fixture("bielliptic_1_15_80.json"), &out) == 0);
    const double bi = Json::parse(out)["cost"]["f1"].get<double>();
    CHECK(bi == doctest::Approx(testsupport::classical_bielliptic(1.0, 15.0, 80.0)).epsilon(1e-12));
    REQUIRE(run_cli("hohmann --r0 1 --r2 15", &out) == 0);
    CHECK(bi < Json::parse(out)["f1"].get<double>());

    CHECK(run_cli("eval-plan " + fixture("malformed.json")) == 2);
    CHECK(run_cli("eval-plan " + fixture("does_not_exist.json")) == 2);
    // Burn point off the unit sphere: exit 2 naming the constraint.
    REQUIRE(run_cli("eval-plan " + fixture("off_sphere.json"), &out) == 2);
    CHECK(Json::parse(out)["validation"]["first_violation"] == "burn[0].unit_norm");
  }

  TEST_CASE("lambert") {
    std::string out;
    REQUIRE(run_cli("lambert " + fixture("lambert_symmetric.json"), &out) == 0);
    const Json j = Json::parse(out);
    bool flagged = false;
    for (const auto& c : j["candidates"])
      if (c["is_minimum"].get<bool>()) {
        flagged = true;
        CHECK(c["f2"].get<double>() < 1e-12);
      }
    CHECK(flagged);
  }

  TEST_CASE("rotated") {
    std::string out;
    REQUIRE(run_cli("rotated --e 0.5 --alpha 180 --case 2a", &out) == 0);
    const Json j = Json::parse(out);
    CHECK(j["winner"]["case"] == "case2a_axis");
    CHECK(j["winner"]["f1"].get<double>() == doctest::Approx(2 * std::abs(0.5 - std::sqrt(0.5))).epsilon(1e-14));
    CHECK(j["input"]["s0x_exact"] == "1/2");
    CHECK(run_cli("rotated --e 1.5 --alpha 90") == 64);
    CHECK(run_cli("rotated --e 0.5 --alpha 90 --case 3") == 64);
  }

  TEST_CASE("sweep csv schema") {
    const std::string path = "cli_sweep_test.csv";
    REQUIRE(run_cli("sweep-rotated --e 0.3 --alpha 60,180 --out " + path) == 0);
    std::ifstream in(path);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) rows.push_back(split(line, ','));
    std::remove(path.c_str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"e", "alpha", "a", "b", "best_f1", "best_case", "separation_deg",
                                              "apogee_f1", "ratio_pct", "case1_found", "case2b_best_f1"});
    CHECK(rows[1][1] == "60");
    CHECK(rows[1][5] == "case2a_general");
    CHECK(rows[2][1] == "180");
    CHECK(rows[2][5] == "case2a_axis");
    CHECK(rows[2][8] == "100");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      REQUIRE(rows[i].size() == 11);
      const double ratio = std::stod(rows[i][8]);
      CHECK(ratio > 0.0);
      CHECK(ratio <= 100.0);
      CHECK(std::stod(rows[i][4]) == doctest::Approx(std::stod(rows[i][7]) * ratio / 100.0).epsilon(1e-10));
      // 12 significant digits at most.
      std::string digits;
      for (char c : rows[i][4])
        if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
      CHECK(digits.size() <= 13);
    }
    CHECK(run_cli("sweep-rotated --e 0.3:0.1 --alpha 5") == 64);
  }

  TEST_CASE("oracle-check") {
    std::string out;
    REQUIRE(run_cli("oracle-check --grid 16 hohmann --r0 1 --r2 2", &out) == 0);
    const Json j = Json::parse(out);
    CHECK(std::abs(j["discrepancy"]["difference"].get<double>()) < 1e-6);
  }
}
