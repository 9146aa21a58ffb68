#include "generators.hpp"
#include "su11/cli_io.hpp"
#include "su11/displacement.hpp"
#include "su11/verify.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace su11;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "su11");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("doubles are written with 17 significant digits") {
  CHECK(cli::format_double(0.1) == "0.10000000000000001");
  CHECK(cli::format_double(1.0) == "1.0");
  CHECK(cli::format_double(-2.5) == "-2.5");
  CHECK(cli::format_double(1e-300) == "1e-300");
  CHECK(cli::format_double(1.0 / 3.0) == "0.33333333333333331");
  CHECK(cli::format_double(3.0) == "3.0");
}

TEST_CASE("formatted doubles round-trip exactly") {
  testing::Sampler gen(0x5eed0c);
  for (int trial = 0; trial < 2000; ++trial) {
    const double x = gen.uniform(-1.0, 1.0) * std::pow(10.0, gen.integer(-300, 300));
    const std::string s = cli::format_double(x);
    CHECK(s.find(',') == std::string::npos);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
}

TEST_CASE("state of the zero displacement is a single amplitude") {
  const Run r = run({"state", "--k", "1", "--n", "0", "--tau", "0"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["amplitudes"].size() == 1);
  CHECK(j["amplitudes"][0]["n"] == 0);
  CHECK(j["amplitudes"][0]["re"].get<double>() == 1.0);
  CHECK(j["amplitudes"][0]["im"].get<double>() == 0.0);
  CHECK(j["amplitudes"][0]["abs2"].get<double>() == 1.0);
  for (const char* key : {"k", "n_source", "zeta_re", "zeta_im", "eta", "tail_mass",
                          "series_terms"}) {
    CHECK(j["meta"].contains(key));
  }
}

TEST_CASE("state at tau = 1 follows the standard coherent state") {
  const Run r = run({"state", "--k", "1", "--n", "0", "--tau", "1", "--phi", "0"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["meta"]["zeta_re"].get<double>() ==
        doctest::Approx(-0.46211715726000975850).epsilon(1e-15));
  CHECK(j["meta"]["eta"].get<double>() ==
        doctest::Approx(-0.24022901391655504926).epsilon(1e-15));
  const double expected[] = {0.78644773296592741015, -0.51396903602302462785,
                             0.29089394296882150914, -0.15522302394534292945};
  for (int s = 0; s < 4; ++s) {
    CHECK(j["amplitudes"][s]["n"] == s);
    CHECK(j["amplitudes"][s]["re"].get<double>() ==
          doctest::Approx(expected[s]).epsilon(1e-14));
  }
}

TEST_CASE("state JSON carries the computed doubles bit for bit") {
  const Run r = run({"state", "--k", "1.5", "--n", "2", "--tau", "0.7", "--phi", "1.3",
                     "--dim", "96"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const PncsResult direct =
      pncs_series(BargmannIndex(1.5), 2, make_params(0.7, 1.3), 96, 1e-16,
                  TruncationPolicy::Report);
  for (const auto& a : j["amplitudes"]) {
    const int n = a["n"];
    CHECK(a["re"].get<double>() == direct.state[n].real());
    CHECK(a["im"].get<double>() == direct.state[n].imag());
  }
  // Re-serializing the parsed document and parsing again is the identity.
  CHECK(json::parse(j.dump()) == j);
}

TEST_CASE("output is deterministic and goes to --output when given") {
  const std::string path = "cli_io_state_test.json";
  std::remove(path.c_str());
  const Run a = run({"state", "--tau", "0.4", "--output", path});
  REQUIRE(a.code == 0);
  CHECK(a.out.empty());
  std::ifstream f(path);
  std::stringstream content;
  content << f.rdbuf();
  const Run b = run({"state", "--tau", "0.4"});
  CHECK(content.str() == b.out);
  std::remove(path.c_str());
}

TEST_CASE("state CSV") {
  const Run r = run({"state", "--tau", "0", "--n", "3", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "n,re,im,abs2");
  CHECK(rows[1] == "3,1.0,0.0,1.0");
}

TEST_CASE("spectrum CSV") {
  SUBCASE("free oscillator, m = 0") {
    const Run r = run({"spectrum", "--omega", "1", "--chi", "0", "--m", "0", "--n-max", "4",
                       "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "n,m,omega,chi,energy");
    for (int n = 0; n <= 4; ++n) {
      const auto cells = split(rows[n + 1]);
      REQUIRE(cells.size() == 5);
      CHECK(std::stod(cells[4]) == doctest::Approx(2.0 * n).epsilon(1e-15));
    }
  }
  SUBCASE("pumped, with the free reference rows") {
    const Run r = run({"spectrum", "--omega", "1", "--chi", "0.6", "--m", "2", "--n-max", "3",
                       "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 1 + 4 + 4);
    const auto level1 = split(rows[2]);
    CHECK(level1[0] == "1");
    CHECK(std::stod(level1[3]) == 0.6);
    CHECK(std::stod(level1[4]) == doctest::Approx(3.0).epsilon(1e-15));
    const auto ref1 = split(rows[6]);
    CHECK(std::stod(ref1[3]) == 0.0);
    CHECK(std::stod(ref1[4]) == doctest::Approx(4.0).epsilon(1e-15));
  }
}

TEST_CASE("spectrum JSON") {
  const Run r = run({"spectrum", "--omega", "2", "--chi", "1.2", "--m", "1"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["levels"].size() == 11);
  CHECK(j["reference"].size() == 11);
  CHECK(j["meta"]["omega_eff"].get<double>() == doctest::Approx(3.2).epsilon(1e-15));
}

TEST_CASE("above threshold is a domain error") {
  CHECK(run({"spectrum", "--omega", "1", "--chi", "1"}).code == cli::kDomainError);
  CHECK(run({"evolve", "--omega", "1", "--chi", "1.5"}).code == cli::kDomainError);
  CHECK(run({"wavefunction", "--omega", "1", "--chi", "2"}).code == cli::kDomainError);
}

TEST_CASE("wavefunction samples") {
  SUBCASE("row count is radial x angular") {
    const Run r = run({"wavefunction", "--tau", "0.8", "--phi", "0.4", "--m", "1", "--n", "2",
                       "--radial-points", "7", "--angular-points", "3", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    CHECK(rows.size() == 1 + 21);
    CHECK(split(rows[0]).size() == 14);
    // The printed closed form disagrees with the series; every row says so
    // except those where both vanish.
    int flagged = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto cells = split(rows[i]);
      if (cells.back() == "mismatch") ++flagged;
      CHECK(std::stod(cells[12]) < 1e-8);
    }
    CHECK(flagged > 0);
  }
  SUBCASE("zero displacement has a zero difference column") {
    const Run r = run({"wavefunction", "--tau", "0", "--m", "2", "--n", "3", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    CHECK(rows.size() == 1 + 32 * 8);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto cells = split(rows[i]);
      CHECK(std::stod(cells[8]) < 1e-15);
      CHECK(cells.back() == "agree");
    }
  }
  SUBCASE("singular sigma falls back to the series with a flag") {
    const std::string tau = cli::format_double(2.0 * std::atanh(0.5));
    const Run r = run({"wavefunction", "--tau", tau, "--phi", "0", "--n", "1",
                       "--radial-points", "4", "--angular-points", "2"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["samples"].size() == 8);
    CHECK(j["meta"]["singular_points"] == 8);
    for (const auto& s : j["samples"]) {
      CHECK(s["flag"] == "singular");
      CHECK(s["closed_re"].is_null());
      CHECK(s["series_re"].is_number());
    }
  }
  SUBCASE("amplifier parameters select the tilt") {
    const Run r = run({"wavefunction", "--omega", "1", "--chi", "0.5", "--radial-points", "2",
                       "--angular-points", "1"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["meta"]["tau"].get<double>() == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
  }
}

TEST_CASE("evolution trace, Omega = sqrt 3") {
  const Run r = run({"evolve", "--k", "1", "--n", "0", "--omega", "1", "--chi", "0.5", "--t",
                     "1", "--steps", "4"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["trace"].size() == 5);
  CHECK(j["meta"]["omega_eff"].get<double>() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  const auto& first = j["trace"][0];
  CHECK(first["t"].get<double>() == 0.0);
  CHECK(first["analytic_phase"].get<double>() == 0.0);
  const auto& last = j["trace"][4];
  CHECK(last["analytic_phase"].get<double>() ==
        doctest::Approx(-1.7320508075688772).epsilon(1e-14));
  for (const auto& row : j["trace"]) {
    CHECK(std::abs(row["overlap_modulus"].get<double>() - 1.0) < 1e-12);
    CHECK(std::abs(row["phase_difference"].get<double>()) < 1e-8);
  }
}

TEST_CASE("evolution CSV header") {
  const Run r = run({"evolve", "--t", "0", "--format", "csv", "--steps", "1"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] ==
        "t,analytic_phase,oracle_phase,phase_difference,overlap_modulus,state_difference");
}

TEST_CASE("invalid arguments exit with code 2") {
  CHECK(run({}).code == cli::kInvalidArguments);
  CHECK(run({"bogus"}).code == cli::kInvalidArguments);
  CHECK(run({"state", "--k", "-1"}).code == cli::kInvalidArguments);
  CHECK(run({"state", "--k", "abc"}).code == cli::kInvalidArguments);
  CHECK(run({"state", "--format", "xml"}).code == cli::kInvalidArguments);
  CHECK(run({"state", "--n", "200", "--dim", "128"}).code == cli::kInvalidArguments);
  CHECK(run({"state", "--dim", "2"}).code == cli::kInvalidArguments);
  CHECK(run({"state", "--tol", "0"}).code == cli::kInvalidArguments);
  CHECK(run({"spectrum", "--chi", "-0.1"}).code == cli::kInvalidArguments);
  CHECK(run({"wavefunction", "--tau", "0.5", "--chi", "0.2"}).code ==
        cli::kInvalidArguments);
  CHECK(run({"wavefunction", "--radial-points", "0"}).code == cli::kInvalidArguments);
  CHECK(run({"state", "--output", "/nonexistent-dir/x.json"}).code ==
        cli::kInvalidArguments);
  const Run r = run({"state", "--k", "-1"});
  CHECK(r.err.find("--k") != std::string::npos);
}

TEST_CASE("window too small for the state is reported, not truncated silently") {
  const Run r = run({"state", "--tau", "3", "--dim", "8"});
  CHECK(r.code == cli::kInvalidArguments);
  CHECK(r.err.find("--dim") != std::string::npos);
}

TEST_CASE("verification subsets") {
  SUBCASE("amplifier and realization criteria pass at defaults") {
    const VerifyReport rep = run_verification(VerifyConfig{}, {8, 10});
    CHECK(rep.passed());
    CHECK(rep.criterion_passed(8));
    CHECK(rep.criterion_passed(10));
    CHECK_FALSE(rep.criterion_passed(3));
  }
  SUBCASE("a tolerance below rounding level produces failures") {
    VerifyConfig cfg;
    cfg.tol_override = 1e-15;
    const VerifyReport rep = run_verification(cfg, {7});
    CHECK_FALSE(rep.passed());
    for (const auto& c : rep.checks) CHECK(c.tolerance == 1e-15);
  }
  SUBCASE("a small window downgrades truncation-sensitive checks") {
    VerifyConfig cfg;
    cfg.dim = 16;
    const VerifyReport rep = run_verification(cfg, {5, 6});
    bool warned = false;
    for (const auto& c : rep.checks) {
      CHECK(c.status != CheckStatus::Fail);
      if (c.status == CheckStatus::Warn) {
        warned = true;
        CHECK(c.truncation_sensitive);
      }
    }
    CHECK(warned);
  }
}
