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

#include <string>

#include <json.hpp>

#include "aapt/channels.hpp"
#include "aapt/faithfulness.hpp"
#include "aapt/states.hpp"
#include "aapt/tomography.hpp"

namespace aapt {

/// Thrown on malformed or semantically invalid input documents.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state plus the family label that produced it (used for reporting).
struct LoadedState {
  DensityMatrix rho;
  std::string family;
};

/// State documents: {"kind": "bell"|"werner"|"x"|"separable"|"raw"|
/// "random_pure"|"random_separable"|"random_mixed", ...params}.
/// Schemas are documented in docs/formats.md.  Physicality failures surface
/// as NotAStateError, structural problems as ParseError.
LoadedState load_state(const nlohmann::json& doc);
LoadedState load_state_file(const std::string& path);

/// Channel documents: {"kind": "identity"|"rotation"|"bit_flip"|"phase_flip"|
/// "depolarizing"|"amplitude_damping"|"phase_damping"|"random"|"kraus", ...}.
Channel load_channel(const nlohmann::json& doc);
Channel load_channel_file(const std::string& path);

nlohmann::json separable_spec_json(const SeparableSpec& spec);
nlohmann::json werner_json(double p);
nlohmann::json x_json(double s1, double s2, double s3);

nlohmann::json report_json(const FaithfulnessReport& report, double tol);
nlohmann::json reconstruction_json(const ReconstructionResult& result);
nlohmann::json error_stats_json(const ErrorStats& stats);

/// Infinity-safe number encoding used across all emitted JSON: finite values
/// stay numbers, infinities become the string "inf".
nlohmann::json json_number(double v);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace aapt
