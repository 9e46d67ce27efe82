// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aapt/faithfulness.hpp"
#include "aapt/geometry.hpp"
#include "aapt/io.hpp"
#include "aapt/states.hpp"
#include "aapt/tomography.hpp"

using namespace aapt;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "aapt-cli-tests";
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

fs::path scratch_file(const std::string& name) { return scratch_dir() / name; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Run the installed binary with the given argument string, capturing both
/// streams.  AAPT_CLI_PATH is injected by the build.
CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch_file("stdout." + std::to_string(counter));
  const fs::path err = scratch_file("stderr." + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string(AAPT_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

double tau_entry(const DensityMatrix& rho, std::size_t i, std::size_t j) {
  return tau_from_rho(rho)(i, j);
}

}  // namespace

TEST_CASE("state documents round-trip through the loaders") {
  const LoadedState w = load_state(werner_json(0.7));
  CHECK(w.family == "werner");
  CHECK(tau_entry(w.rho, 1, 1) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(tau_entry(w.rho, 2, 2) == doctest::Approx(-0.7).epsilon(1e-12));

  const LoadedState x = load_state(x_json(0.5, 0.3, -0.2));
  CHECK(x.family == "x");
  CHECK(tau_entry(x.rho, 1, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tau_entry(x.rho, 3, 3) == doctest::Approx(-0.2).scale(1).epsilon(1e-12));

  const SeparableSpec spec = optimal_tetrahedral_spec();
  const LoadedState sep = load_state(separable_spec_json(spec));
  CHECK(sep.family == "separable");
  CHECK(sinisterness(tau_from_rho(sep.rho)) ==
        doctest::Approx(-1.0 / 27.0).scale(1).epsilon(1e-10));
}

TEST_CASE("bell and raw state documents") {
  const LoadedState bell = load_state({{"kind", "bell"}, {"variant", "psi_minus"}});
  CHECK(bell.family == "bell");
  CHECK(tau_entry(bell.rho, 1, 1) == doctest::Approx(-1.0).epsilon(1e-12));

  // The same state via an explicit matrix: |psi-><psi-| has entries +-1/2 in
  // the middle block.
  const json raw = {
      {"kind", "raw"},
      {"matrix",
       json::array({json::array({0.0, 0.0, 0.0, 0.0}),
                    json::array({0.0, 0.5, -0.5, 0.0}),
                    json::array({0.0, -0.5, 0.5, 0.0}),
                    json::array({0.0, 0.0, 0.0, 0.0})})}};
  const LoadedState loaded = load_state(raw);
  CHECK(loaded.family == "raw");
  CHECK(sinisterness(tau_from_rho(loaded.rho)) == doctest::Approx(-1.0).epsilon(1e-10));

  // Complex entries use [re, im] pairs.
  const json imag = {
      {"kind", "raw"},
      {"matrix",
       json::array({json::array({0.5, 0.0, 0.0, json::array({0.0, -0.5})}),
                    json::array({0.0, 0.0, 0.0, 0.0}),
                    json::array({0.0, 0.0, 0.0, 0.0}),
                    json::array({json::array({0.0, 0.5}), 0.0, 0.0, 0.5})})}};
  CHECK_NOTHROW(load_state(imag));
}

TEST_CASE("seeded random state documents are deterministic") {
  for (const char* kind : {"random_pure", "random_separable", "random_mixed"}) {
    const json doc = {{"kind", kind}, {"seed", 321}};
    const LoadedState a = load_state(doc);
    const LoadedState b = load_state(doc);
    const TauMatrix ta = tau_from_rho(a.rho), tb = tau_from_rho(b.rho);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) CHECK(ta(i, j) == tb(i, j));
    }
    const LoadedState c = load_state({{"kind", kind}, {"seed", 322}});
    CHECK(frobenius_norm(ta.matrix() - tau_from_rho(c.rho).matrix()) > 1e-6);
  }
}

TEST_CASE("malformed documents raise ParseError, unphysical ones NotAStateError") {
  CHECK_THROWS_AS(load_state(json::array({1, 2, 3})), ParseError);
  CHECK_THROWS_AS(load_state({{"kind", "unheard_of"}}), ParseError);
  CHECK_THROWS_AS(load_state({{"kind", "werner"}}), ParseError);  // p missing
  CHECK_THROWS_AS(load_state({{"kind", "x"}, {"s", json::array({1, 2})}}), ParseError);
  CHECK_THROWS_AS(load_state({{"kind", "x"}, {"s", json::array({1, 1, 1})}}),
                  NotAStateError);
  CHECK_THROWS_AS(load_state({{"kind", "werner"}, {"p", 1.5}}), ValidationError);

  CHECK_THROWS_AS(load_channel({{"kind", "warp"}}), ParseError);
  CHECK_THROWS_AS(load_channel({{"kind", "bit_flip"}}), ParseError);
  CHECK_THROWS_AS(load_channel({{"kind", "bit_flip"}, {"p", 2.0}}), ValidationError);

  CHECK_THROWS_AS(read_json_file("/nonexistent/nowhere.json"), ParseError);
  const fs::path bad = scratch_file("bad.json");
  spit(bad, "{ not json");
  CHECK_THROWS_AS(read_json_file(bad.string()), ParseError);
}

TEST_CASE("channel documents load every kind") {
  CHECK_NOTHROW(load_channel({{"kind", "identity"}}));
  CHECK_NOTHROW(load_channel({{"kind", "depolarizing"}, {"p", 0.3}}));
  CHECK_NOTHROW(load_channel({{"kind", "amplitude_damping"}, {"gamma", 0.4}}));
  CHECK_NOTHROW(load_channel({{"kind", "phase_damping"}, {"lambda", 0.2}}));
  CHECK_NOTHROW(load_channel({{"kind", "phase_flip"}, {"p", 0.1}}));
  CHECK_NOTHROW(load_channel(
      {{"kind", "rotation"}, {"axis", json::array({0, 0, 1})}, {"angle", 0.5}}));

  const Channel r1 = load_channel({{"kind", "random"}, {"seed", 5}});
  const Channel r2 = load_channel({{"kind", "random"}, {"seed", 5}});
  CHECK(frobenius_norm(chi_tilde_direct(r1).matrix() - chi_tilde_direct(r2).matrix()) ==
        0.0);

  // Explicit Kraus set: the bit flip at p = 0.5.
  const double s = std::sqrt(0.5);
  const json kraus = {
      {"kind", "kraus"},
      {"operators",
       json::array({json::array({json::array({s, 0.0}), json::array({0.0, s})}),
                    json::array({json::array({0.0, s}), json::array({s, 0.0})})})}};
  const Channel ch = load_channel(kraus);
  const RealMatrix ct = chi_tilde_direct(ch).matrix();
  CHECK(ct(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ct(2, 2) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(ct(3, 3) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
}

TEST_CASE("report serialization uses the inf convention") {
  const FaithfulnessReport rep = analyze(tau_from_rho(werner_state(0.0)));
  const json doc = report_json(rep, kFaithfulTol);
  CHECK(doc["schema"] == "faithfulness_report/v1");
  CHECK(doc["faithful"] == false);
  CHECK(doc["kappa"] == "inf");
  CHECK(doc["adjugate_measure"] == "inf");
  CHECK(doc["sinisterness"].is_number());

  const json fine = report_json(analyze(tau_from_rho(bell_state(BellKind::PhiPlus))),
                                kFaithfulTol);
  CHECK(fine["faithful"] == true);
  CHECK(fine["kappa"].is_number());
  CHECK(fine["kappa"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("analyze command classifies and exits accordingly") {
  const fs::path bell = scratch_file("bell.json");
  spit(bell, json({{"kind", "bell"}, {"variant", "phi_plus"}}).dump());
  const CliResult good = run_cli("analyze " + bell.string());
  CHECK(good.exit_code == 0);
  const json rep = json::parse(good.out);
  CHECK(rep["faithful"] == true);
  CHECK(rep["family"] == "bell");
  CHECK(rep["sinisterness"].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(rep["kappa"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));

  // Maximally mixed: unfaithful, exit 2, but the report is still emitted.
  const fs::path mixed = scratch_file("mixed.json");
  spit(mixed, json({{"kind", "werner"}, {"p", 0.0}}).dump());
  const CliResult flat = run_cli("analyze " + mixed.string());
  CHECK(flat.exit_code == 2);
  CHECK(json::parse(flat.out)["faithful"] == false);

  // Missing or malformed files are reported on stderr with exit 1.
  const CliResult missing = run_cli("analyze /nonexistent/state.json");
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("error") != std::string::npos);

  // --output writes the same document to a file.
  const fs::path out = scratch_file("report.json");
  const CliResult filed =
      run_cli("analyze " + bell.string() + " --output " + out.string());
  CHECK(filed.exit_code == 0);
  CHECK(json::parse(slurp(out))["faithful"] == true);
}

TEST_CASE("construct command emits loadable optimum states") {
  const fs::path tetra = scratch_file("tetra.json");
  CHECK(run_cli("construct --kind tetra-optimal --output " + tetra.string())
            .exit_code == 0);
  const CliResult analyzed = run_cli("analyze " + tetra.string());
  CHECK(analyzed.exit_code == 0);
  const json rep = json::parse(analyzed.out);
  CHECK(std::abs(rep["sinisterness"].get<double>() + 1.0 / 27.0) < 1e-10);
  // The constructed optimum attains the best possible conditioning.
  CHECK(std::abs(rep["kappa"].get<double>() - 3.0) < 1e-6);

  const fs::path w = scratch_file("werner1.json");
  CHECK(run_cli("construct --kind werner --p 1 --output " + w.string()).exit_code == 0);
  const json wrep = json::parse(run_cli("analyze " + w.string()).out);
  CHECK(wrep["sinisterness"].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));

  const fs::path x = scratch_file("xopt.json");
  CHECK(run_cli("construct --kind x --s 0.333333333333333 0.333333333333333 "
                "0.333333333333333 --output " +
                x.string())
            .exit_code == 0);
  const json xrep = json::parse(run_cli("analyze " + x.string()).out);
  CHECK(std::abs(xrep["kappa"].get<double>() - 3.0) < 1e-6);

  // Unphysical corners are rejected before anything is written.
  const fs::path never = scratch_file("never.json");
  const CliResult bad =
      run_cli("construct --kind x --s 1 1 1 --output " + never.string());
  CHECK(bad.exit_code == 1);
  CHECK_FALSE(fs::exists(never));
}

TEST_CASE("tomography command reconstructs and reports") {
  const fs::path bell = scratch_file("tbell.json");
  spit(bell, json({{"kind", "bell"}, {"variant", "phi_plus"}}).dump());
  const fs::path depol = scratch_file("depol.json");
  spit(depol, json({{"kind", "depolarizing"}, {"p", 0.3}}).dump());

  const CliResult run =
      run_cli("tomography " + bell.string() + " " + depol.string() +
              " --sigma 0 --runs 2");
  CHECK(run.exit_code == 0);
  const json doc = json::parse(run.out);
  CHECK(doc["schema"] == "tomography/v1");
  CHECK(doc["kappa"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  const auto& ct = doc["reconstruction"]["chi_tilde_hat"];
  CHECK(ct[0][0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ct[1][1].get<double>() == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(ct[3][3].get<double>() == doctest::Approx(0.7).epsilon(1e-12));
  REQUIRE(doc["per_run"].size() == 2);
  for (const auto& r : doc["per_run"]) {
    CHECK(r["chi_tilde_error"].get<double>() < 1e-12);
  }
  CHECK(doc["summary"]["runs"] == 2);

  // Unfaithful input: exit 2, stderr explains with the determinant.
  const fs::path prod = scratch_file("prod.json");
  spit(prod, json({{"kind", "werner"}, {"p", 0.0}}).dump());
  const CliResult refused =
      run_cli("tomography " + prod.string() + " " + depol.string());
  CHECK(refused.exit_code == 2);
  CHECK(refused.err.find("unfaithful") != std::string::npos);

  // Noise makes runs differ but seeds make them reproducible.
  const CliResult n1 = run_cli("tomography " + bell.string() + " " + depol.string() +
                               " --sigma 0.01 --seed 9 --runs 5");
  const CliResult n2 = run_cli("tomography " + bell.string() + " " + depol.string() +
                               " --sigma 0.01 --seed 9 --runs 5");
  CHECK(n1.exit_code == 0);
  CHECK(n1.out == n2.out);
  const json noisy = json::parse(n1.out);
  CHECK(noisy["summary"]["mean_chi_tilde_error"].get<double>() > 1e-5);
}

TEST_CASE("sweep command is reproducible byte for byte") {
  const fs::path config = scratch_file("sweep.json");
  spit(config, json({{"schema", "sweep/v1"},
                     {"family", "pure"},
                     {"samples", 64},
                     {"seed", 7}})
                   .dump());

  const fs::path csv1 = scratch_file("sweep1.csv");
  const fs::path csv2 = scratch_file("sweep2.csv");
  CHECK(run_cli("sweep " + config.string() + " --output " + csv1.string()).exit_code ==
        0);
  CHECK(run_cli("sweep " + config.string() + " --output " + csv2.string()).exit_code ==
        0);
  const std::string body1 = slurp(csv1);
  CHECK(body1 == slurp(csv2));
  CHECK(body1.rfind("index,family,sinisterness,concurrence,kappa,kappa_lower_bound,"
                    "error_ratio,reconstruction_error\n",
                    0) == 0);

  // Pure rows satisfy det = -C^4.
  std::istringstream lines(body1);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');  // index
    std::getline(cells, cell, ',');  // family
    CHECK(cell == "pure");
    std::getline(cells, cell, ',');
    const double det = std::stod(cell);
    std::getline(cells, cell, ',');
    const double conc = std::stod(cell);
    CHECK(det == doctest::Approx(-std::pow(conc, 4)).scale(1).epsilon(1e-9));
    ++rows;
  }
  CHECK(rows == 64);

  // A --seed override changes the sample set deterministically.
  const fs::path csv3 = scratch_file("sweep3.csv");
  CHECK(run_cli("sweep " + config.string() + " --seed 8 --output " + csv3.string())
            .exit_code == 0);
  CHECK(slurp(csv3) != body1);
}

TEST_CASE("scaling command prints the diagonal table") {
  const CliResult run = run_cli("scaling --max-n 3");
  CHECK(run.exit_code == 0);
  std::istringstream lines(run.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,m,kappa,log10_det_abs");
  std::getline(lines, line);
  CHECK(line.rfind("1,4,3,", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("2,16,15,", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("3,64,63,", 0) == 0);
  CHECK_FALSE(std::getline(lines, line));

  // The cap is enforced by argument validation.
  CHECK(run_cli("scaling --max-n 12").exit_code == 1);
  CHECK(run_cli("scaling --max-n 0").exit_code == 1);
}

TEST_CASE("help and bad invocations") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("analyze").exit_code == 1);           // missing positional
  CHECK(run_cli("no_such_command").exit_code == 1);   // unknown subcommand
  CHECK(run_cli("construct --kind nonsense").exit_code == 1);
}
