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
#include <span>
#include <vector>

#include "aapt/channels.hpp"
#include "aapt/faithfulness.hpp"
#include "aapt/states.hpp"

namespace aapt {

/// Additive Gaussian uncertainty on measured correlation entries; stands in
/// for finite measurement statistics (sigma ~ 1/sqrt(shots)).  sigma = 0
/// means exact measurement.
struct NoiseModel {
  double sigma = 0.0;
  std::uint64_t seed = 0;

  static NoiseModel none() { return {}; }
  bool enabled() const { return sigma > 0.0; }
};

/// Raised when an input state's tau is singular to tolerance: such a state
/// cannot distinguish all channels and reconstruction is refused.
class UnfaithfulStateError : public SingularMatrixError {
 public:
  using SingularMatrixError::SingularMatrixError;
};

/// Probe set for standard process tomography: four single-qubit states whose
/// Bloch 4-vectors (1, a) form an invertible matrix.
struct SqptInputSet {
  std::vector<DensityMatrix> probes;
  RealMatrix a_in;  // column l = (1, a^(l))

  /// Throws ValidationError unless there are four probes and |det a_in| > 1e-6.
  static SqptInputSet from_probes(std::vector<DensityMatrix> probes);

  /// {|0>, |1>, |+>, |+i>} — the standard well-conditioned choice.
  static SqptInputSet canonical();
};

struct ReconstructionResult {
  ChiTilde chi_tilde_hat;
  ChiMatrix chi_hat;
  RealMatrix tau_out_observed;  // measured output data (tau or a_out columns)
  RealMatrix input_matrix;      // tau_in or a_in actually inverted
  double error_vs_truth = 0.0;  // ||chi_tilde_hat - chi_tilde(channel)||_F
  double kappa_used = 0.0;      // condition number of input_matrix
};

/// Aggregates over repeated noisy reconstructions.  Ratios follow the
/// error-amplification bound: each per-run ratio is at most kappa_used.
struct ErrorStats {
  std::size_t runs = 0;
  double mean_chi_tilde_error = 0.0;  // mean of (1/4)||chi_tilde_hat - truth||_F
  double mean_tau_error = 0.0;        // mean of (1/4)||observed - truth * input||_F
  double mean_ratio = 0.0;            // mean of relative-error amplification
  double max_ratio = 0.0;
};

/// tau of rho with i.i.d. Gaussian(0, sigma) added to every entry except
/// (0,0), which stays exactly 1 (lossless normalization).
RealMatrix simulate_measurement(const DensityMatrix& rho, const NoiseModel& noise);

/// Standard process tomography: measure a_out columns for each probe, then
/// chi_tilde_hat = a_out a_in^-1.
ReconstructionResult sqpt(const Channel& ch, const SqptInputSet& inputs,
                          const NoiseModel& noise);

/// Ancilla-assisted process tomography: prepare the joint state of tau_in,
/// push the system half through the channel, measure tau_out (noisy), and
/// invert: chi_tilde_hat = tau_out tau_in^-1.
///
/// Throws UnfaithfulStateError when |sinisterness(tau_in)| <= tol — the
/// operational faithfulness test.  The same cutoff drives analyze(), so the
/// report verdict and reconstruction success always agree.
ReconstructionResult aapt(const TauMatrix& tau_in, const Channel& ch,
                          const NoiseModel& noise, double tol = kFaithfulTol);

/// Per-run errors and amplification ratios against the known true transfer
/// matrix.  Throws ValidationError on an empty batch.
ErrorStats error_stats(const ChiTilde& truth, std::span<const ReconstructionResult> runs);

}  // namespace aapt
