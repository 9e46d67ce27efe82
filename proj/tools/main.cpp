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

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aapt/faithfulness.hpp"
#include "aapt/geometry.hpp"
#include "aapt/io.hpp"
#include "aapt/rng.hpp"
#include "aapt/states.hpp"
#include "aapt/sweep.hpp"
#include "aapt/tomography.hpp"

namespace {

using namespace aapt;

// Exit codes, documented in docs/formats.md: 0 success/faithful,
// 1 parse or validation failure, 2 unfaithful input state.
constexpr int kExitError = 1;
constexpr int kExitUnfaithful = 2;

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(output_path, text);
  }
}

int run_analyze(const std::string& state_path, double tol, const std::string& output) {
  const LoadedState loaded = load_state_file(state_path);
  const FaithfulnessReport report = analyze(tau_from_rho(loaded.rho), tol);
  nlohmann::json doc = report_json(report, tol);
  doc["family"] = loaded.family;
  emit(doc.dump(2) + "\n", output);
  return report.faithful ? 0 : kExitUnfaithful;
}

int run_tomography(const std::string& state_path, const std::string& channel_path,
                   double sigma, std::uint64_t seed, unsigned runs, double tol,
                   const std::string& output) {
  const LoadedState loaded = load_state_file(state_path);
  const Channel ch = load_channel_file(channel_path);
  const TauMatrix tau_in = tau_from_rho(loaded.rho);
  const ChiTilde truth = chi_tilde_from_chi(chi_from_kraus(ch));

  std::vector<ReconstructionResult> results;
  results.reserve(runs);
  for (unsigned r = 0; r < runs; ++r) {
    const NoiseModel noise{sigma, CounterRng::derive(seed, r).next_u64()};
    results.push_back(aapt::aapt(tau_in, ch, noise, tol));
  }
  const ErrorStats stats = error_stats(truth, results);

  nlohmann::json doc;
  doc["schema"] = "tomography/v1";
  doc["family"] = loaded.family;
  doc["sigma"] = sigma;
  doc["seed"] = seed;
  doc["kappa"] = json_number(results.front().kappa_used);
  doc["reconstruction"] = reconstruction_json(results.front());
  nlohmann::json per_run = nlohmann::json::array();
  for (const ReconstructionResult& result : results) {
    const ReconstructionResult one[] = {result};
    const ErrorStats single = error_stats(truth, one);
    per_run.push_back({{"chi_tilde_error", result.error_vs_truth},
                       {"ratio", single.max_ratio}});
  }
  doc["per_run"] = per_run;
  doc["summary"] = error_stats_json(stats);
  emit(doc.dump(2) + "\n", output);
  return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& output,
                  bool seed_given, std::uint64_t seed) {
  SweepConfig config = parse_sweep_config(read_json_file(config_path));
  if (seed_given) config.seed = seed;
  if (!output.empty()) config.output = output;
  emit(sweep_csv(run_sweep(config)), config.output);
  return 0;
}

int run_scaling(unsigned max_n, const std::string& output) {
  emit(scaling_csv(max_n), output);
  return 0;
}

int run_construct(const std::string& kind, double p, const std::vector<double>& s,
                  const std::string& output) {
  nlohmann::json doc;
  if (kind == "tetra-optimal") {
    doc = separable_spec_json(optimal_tetrahedral_spec());
  } else if (kind == "werner") {
    doc = werner_json(p);
  } else if (kind == "x") {
    if (s.size() != 3) {
      throw ValidationError("construct --kind x needs --s with three values");
    }
    doc = x_json(s[0], s[1], s[2]);
  } else {
    throw ValidationError("unknown construct kind \"" + kind + "\"");
  }
  load_state(doc);  // reject unphysical parameters before emitting anything
  emit(doc.dump(2) + "\n", output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Process tomography with entangled or separable two-qubit inputs"};
  app.require_subcommand(1);

  std::string state_path, channel_path, config_path, output, kind;
  double sigma = 0.0;
  double tol = kFaithfulTol;
  double p = 1.0;
  std::uint64_t seed = 0;
  unsigned runs = 1;
  unsigned max_n = 5;
  std::vector<double> s_params;

  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "Faithfulness report for a state (JSON to stdout)");
  analyze_cmd->add_option("state", state_path, "state JSON file")->required();
  analyze_cmd->add_option("--tol", tol, "faithfulness cutoff on |det tau|");
  analyze_cmd->add_option("--output", output, "write the report here instead of stdout");

  CLI::App* tomo_cmd = app.add_subcommand(
      "tomography", "Reconstruct a channel through a bipartite input state");
  tomo_cmd->add_option("state", state_path, "input state JSON file")->required();
  tomo_cmd->add_option("channel", channel_path, "channel JSON file")->required();
  tomo_cmd->add_option("--sigma", sigma, "measurement noise level");
  tomo_cmd->add_option("--seed", seed, "master seed for noise streams");
  tomo_cmd->add_option("--runs", runs, "number of independent noisy runs")
      ->check(CLI::PositiveNumber);
  tomo_cmd->add_option("--tol", tol, "faithfulness cutoff on |det tau|");
  tomo_cmd->add_option("--output", output, "write results here instead of stdout");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Monte Carlo / grid sweep driven by a config file");
  sweep_cmd->add_option("config", config_path, "sweep config JSON file")->required();
  CLI::Option* sweep_seed =
      sweep_cmd->add_option("--seed", seed, "override the config seed");
  sweep_cmd->add_option("--output", output, "override the config output path");

  CLI::App* scaling_cmd =
      app.add_subcommand("scaling", "Diagonal-input scaling table for 1..N qubits");
  scaling_cmd->add_option("--max-n", max_n, "largest qubit count")
      ->check(CLI::Range(1u, 10u));
  scaling_cmd->add_option("--output", output, "write the CSV here instead of stdout");

  CLI::App* construct_cmd =
      app.add_subcommand("construct", "Emit a named input-state JSON file");
  construct_cmd
      ->add_option("--kind", kind, "one of: tetra-optimal, werner, x")
      ->required();
  construct_cmd->add_option("--p", p, "werner mixing weight");
  construct_cmd->add_option("--s", s_params, "x-state diagonal (three values)")
      ->expected(3);
  construct_cmd->add_option("--output", output, "write the state here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (analyze_cmd->parsed()) return run_analyze(state_path, tol, output);
    if (tomo_cmd->parsed())
      return run_tomography(state_path, channel_path, sigma, seed, runs, tol, output);
    if (sweep_cmd->parsed())
      return run_sweep_cmd(config_path, output, sweep_seed->count() > 0, seed);
    if (scaling_cmd->parsed()) return run_scaling(max_n, output);
    if (construct_cmd->parsed()) return run_construct(kind, p, s_params, output);
  } catch (const UnfaithfulStateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnfaithful;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
