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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aapt/faithfulness.hpp"

namespace aapt {

enum class SweepFamily { Pure, Separable, Mixed, WernerGrid, XGrid };

/// Monte Carlo / grid sweep description.  Parsed from a versioned JSON
/// document ("schema": "sweep/v1"); docs/formats.md has the full schema.
struct SweepConfig {
  SweepFamily family = SweepFamily::Pure;
  std::size_t samples = 1;     // grid families: points per axis
  double sigma = 0.0;          // measurement noise for reconstruction columns
  std::uint64_t seed = 0;
  double tol = kFaithfulTol;
  std::optional<nlohmann::json> channel;  // when set, run AAPT per sample
  std::string output;                     // optional CSV path ("" = stdout)
  double p_min = 0.0;                     // werner-grid range
  double p_max = 1.0;
};

/// One CSV row.  Empty optionals serialize as blank cells: concurrence is
/// pure-family only; the reconstruction columns need a channel and a
/// faithful state; error_ratio additionally needs sigma > 0.
struct SweepRow {
  std::size_t index = 0;
  std::string family;
  double sinisterness = 0.0;
  std::optional<double> concurrence;
  double kappa = 0.0;
  double kappa_lower_bound = 0.0;
  std::optional<double> error_ratio;
  std::optional<double> reconstruction_error;
};

SweepConfig parse_sweep_config(const nlohmann::json& doc);

/// Evaluates all samples (concurrently; rows are ordered by index and the
/// output is bit-reproducible for a fixed seed regardless of thread count).
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// Fixed column set:
/// index,family,sinisterness,concurrence,kappa,kappa_lower_bound,error_ratio,reconstruction_error
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Scaling table for N = 1..max_n: columns n,m,kappa,log10_det_abs.
std::string scaling_csv(unsigned max_n);

}  // namespace aapt
