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

#include "aapt/sweep.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <thread>

#include "aapt/geometry.hpp"
#include "aapt/io.hpp"
#include "aapt/tomography.hpp"

namespace aapt {

namespace {

constexpr std::uint64_t kStreamSweepState = 0x73777374;
constexpr std::uint64_t kStreamSweepNoise = 0x73776e6f;
constexpr std::uint64_t kStreamSweepChannel = 0x73776368;

// Fixed-format float used everywhere in CSV output so files are
// byte-identical across runs and platforms.
std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_cell(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

SweepFamily parse_family(const std::string& name) {
  if (name == "pure") return SweepFamily::Pure;
  if (name == "separable") return SweepFamily::Separable;
  if (name == "mixed") return SweepFamily::Mixed;
  if (name == "werner-grid") return SweepFamily::WernerGrid;
  if (name == "x-grid") return SweepFamily::XGrid;
  throw ParseError("unknown sweep family \"" + name + "\"");
}

struct SamplePlan {
  std::string family;
  TauMatrix tau;
  std::optional<double> concurrence;
  bool physical = true;
};

// The per-sample state, derived deterministically from (seed, index).
std::optional<SamplePlan> make_sample(const SweepConfig& config, std::size_t index,
                                      std::size_t axis_points) {
  switch (config.family) {
    case SweepFamily::Pure: {
      CounterRng rng = CounterRng::derive(config.seed ^ kStreamSweepState, index);
      const DensityMatrix rho = random_pure(rng);
      return SamplePlan{"pure", tau_from_rho(rho), concurrence_pure(rho), true};
    }
    case SweepFamily::Separable: {
      CounterRng rng = CounterRng::derive(config.seed ^ kStreamSweepState, index);
      const SeparableSpec spec = random_separable(rng);
      return SamplePlan{"separable", tau_from_rho(separable_from_spec(spec)),
                        std::nullopt, true};
    }
    case SweepFamily::Mixed: {
      CounterRng rng = CounterRng::derive(config.seed ^ kStreamSweepState, index);
      return SamplePlan{"mixed", tau_from_rho(random_mixed(rng)), std::nullopt, true};
    }
    case SweepFamily::WernerGrid: {
      const double t = axis_points > 1
                           ? static_cast<double>(index) / static_cast<double>(axis_points - 1)
                           : 0.0;
      const double p = config.p_min + t * (config.p_max - config.p_min);
      char label[48];
      std::snprintf(label, sizeof(label), "werner(p=%.9g)", p);
      return SamplePlan{label, tau_from_rho(werner_state(p)), std::nullopt, true};
    }
    case SweepFamily::XGrid: {
      const std::size_t n = axis_points;
      const std::size_t i = index / (n * n);
      const std::size_t j = (index / n) % n;
      const std::size_t k = index % n;
      auto coord = [n](std::size_t idx) {
        return n > 1 ? -1.0 + 2.0 * static_cast<double>(idx) / static_cast<double>(n - 1)
                     : 0.0;
      };
      const double s1 = coord(i), s2 = coord(j), s3 = coord(k);
      char label[64];
      std::snprintf(label, sizeof(label), "x(%.9g,%.9g,%.9g)", s1, s2, s3);
      try {
        const DensityMatrix rho = x_state(s1, s2, s3);
        return SamplePlan{label, tau_from_rho(rho), std::nullopt, true};
      } catch (const NotAStateError&) {
        return std::nullopt;  // outside the physical tetrahedron; no row
      }
    }
  }
  throw std::logic_error("unreachable sweep family");
}

SweepRow evaluate_sample(const SweepConfig& config, std::size_t row_index,
                         const SamplePlan& plan) {
  SweepRow row;
  row.index = row_index;
  row.family = plan.family;
  row.concurrence = plan.concurrence;

  const FaithfulnessReport report = analyze(plan.tau, config.tol);
  row.sinisterness = report.sinisterness;
  row.kappa = report.kappa;
  row.kappa_lower_bound = report.kappa_lower_bound;

  if (config.channel && report.faithful) {
    const Channel ch = [&] {
      const nlohmann::json& doc = *config.channel;
      if (doc.contains("kind") && doc["kind"] == "random" && !doc.contains("seed")) {
        // Channel varies per sample, derived from the sweep seed.
        CounterRng rng = CounterRng::derive(config.seed ^ kStreamSweepChannel, row_index);
        return random_channel(rng);
      }
      return load_channel(doc);
    }();
    NoiseModel noise{config.sigma,
                     CounterRng::derive(config.seed ^ kStreamSweepNoise, row_index).next_u64()};
    const ReconstructionResult result = aapt(plan.tau, ch, noise, config.tol);
    row.reconstruction_error = result.error_vs_truth;
    if (config.sigma > 0.0) {
      const ChiTilde truth = chi_tilde_from_chi(chi_from_kraus(ch));
      const ReconstructionResult batch[] = {result};
      row.error_ratio = error_stats(truth, batch).max_ratio;
    }
  }
  return row;
}

}  // namespace

SweepConfig parse_sweep_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("sweep config must be a JSON object");
  if (!doc.contains("schema") || doc["schema"] != "sweep/v1") {
    throw ParseError("sweep config must declare \"schema\": \"sweep/v1\"");
  }
  SweepConfig config;
  if (!doc.contains("family") || !doc["family"].is_string()) {
    throw ParseError("sweep config needs a \"family\" string");
  }
  config.family = parse_family(doc["family"].get<std::string>());
  const auto is_nonneg_integer = [](const nlohmann::json& v) {
    return v.is_number_unsigned() ||
           (v.is_number_integer() && v.get<std::int64_t>() >= 0);
  };
  if (!doc.contains("samples") || !is_nonneg_integer(doc["samples"]) ||
      doc["samples"].get<std::uint64_t>() < 1) {
    throw ParseError("sweep config needs \"samples\" >= 1");
  }
  config.samples = doc["samples"].get<std::size_t>();
  if (doc.contains("sigma")) {
    config.sigma = doc["sigma"].get<double>();
    if (!(config.sigma >= 0.0) || !std::isfinite(config.sigma)) {
      throw ParseError("\"sigma\" must be finite and nonnegative");
    }
  }
  if (doc.contains("seed")) {
    if (!is_nonneg_integer(doc["seed"])) {
      throw ParseError("\"seed\" must be a nonnegative integer");
    }
    config.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("tol")) config.tol = doc["tol"].get<double>();
  if (doc.contains("channel")) config.channel = doc["channel"];
  if (doc.contains("output")) config.output = doc["output"].get<std::string>();
  if (doc.contains("p_min")) config.p_min = doc["p_min"].get<double>();
  if (doc.contains("p_max")) config.p_max = doc["p_max"].get<double>();
  return config;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  const std::size_t axis_points = config.samples;
  const std::size_t total = config.family == SweepFamily::XGrid
                                ? axis_points * axis_points * axis_points
                                : config.samples;

  std::vector<std::optional<SweepRow>> slots(total);
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), 16);

  auto work = [&](std::size_t first, std::size_t step) {
    for (std::size_t i = first; i < total; i += step) {
      const std::optional<SamplePlan> plan = make_sample(config, i, axis_points);
      if (plan) slots[i] = evaluate_sample(config, i, *plan);
    }
  };

  if (workers <= 1 || total < 32) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (std::thread& t : pool) t.join();
  }

  // Grid samples skipped as unphysical leave gaps; rows keep their sample
  // index so the grid position stays recoverable.
  std::vector<SweepRow> rows;
  rows.reserve(total);
  for (std::optional<SweepRow>& slot : slots) {
    if (slot) rows.push_back(std::move(*slot));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "index,family,sinisterness,concurrence,kappa,kappa_lower_bound,"
      "error_ratio,reconstruction_error\n";
  for (const SweepRow& row : rows) {
    out += std::to_string(row.index);
    out += ',';
    out += row.family;
    out += ',';
    out += format_number(row.sinisterness);
    out += ',';
    out += format_cell(row.concurrence);
    out += ',';
    out += format_number(row.kappa);
    out += ',';
    out += format_number(row.kappa_lower_bound);
    out += ',';
    out += format_cell(row.error_ratio);
    out += ',';
    out += format_cell(row.reconstruction_error);
    out += '\n';
  }
  return out;
}

std::string scaling_csv(unsigned max_n) {
  std::string out = "n,m,kappa,log10_det_abs\n";
  for (unsigned n = 1; n <= max_n; ++n) {
    const ScalingReport report = optimal_diagonal_scaling(n);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%u,%" PRIu64 ",%.12g,%.12g\n", report.n_qubits,
                  static_cast<std::uint64_t>(report.m), report.kappa,
                  report.log10_det_abs);
    out += buf;
  }
  return out;
}

}  // namespace aapt
