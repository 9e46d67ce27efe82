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

#include "aapt/tomography.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace aapt {

namespace {

constexpr std::uint64_t kStreamMeasurement = 0x6d656173;

double matrix_condition(const RealMatrix& m) {
  const SvdResult dec = svd(m);
  const double lo = dec.singular_values.back();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return dec.singular_values.front() / lo;
}

}  // namespace

SqptInputSet SqptInputSet::from_probes(std::vector<DensityMatrix> probes) {
  if (probes.size() != 4) {
    throw ValidationError("standard tomography needs exactly four probe states");
  }
  RealMatrix a_in(4, 4);
  for (std::size_t l = 0; l < 4; ++l) {
    if (probes[l].dim() != 2) {
      throw ValidationError("probe states must be single qubits");
    }
    const BlochVector a = bloch_from_qubit(probes[l]);
    a_in(0, l) = 1.0;
    a_in(1, l) = a.x;
    a_in(2, l) = a.y;
    a_in(3, l) = a.z;
  }
  if (std::abs(determinant(a_in)) <= 1e-6) {
    throw ValidationError("probe Bloch vectors are not linearly independent");
  }
  return SqptInputSet{std::move(probes), std::move(a_in)};
}

SqptInputSet SqptInputSet::canonical() {
  return from_probes({
      qubit_from_bloch({0.0, 0.0, 1.0}),   // |0>
      qubit_from_bloch({0.0, 0.0, -1.0}),  // |1>
      qubit_from_bloch({1.0, 0.0, 0.0}),   // |+>
      qubit_from_bloch({0.0, 1.0, 0.0}),   // |+i>
  });
}

RealMatrix simulate_measurement(const DensityMatrix& rho, const NoiseModel& noise) {
  RealMatrix tau = tau_from_rho(rho).matrix();
  if (noise.enabled()) {
    CounterRng rng(noise.seed, kStreamMeasurement);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        if (i == 0 && j == 0) continue;
        tau(i, j) += noise.sigma * rng.normal();
      }
    }
  }
  return tau;
}

ReconstructionResult sqpt(const Channel& ch, const SqptInputSet& inputs,
                          const NoiseModel& noise) {
  RealMatrix a_out(4, 4);
  CounterRng rng(noise.seed, kStreamMeasurement);
  for (std::size_t l = 0; l < 4; ++l) {
    const BlochVector a = bloch_from_qubit(apply(ch, inputs.probes[l]));
    a_out(0, l) = 1.0;
    a_out(1, l) = a.x;
    a_out(2, l) = a.y;
    a_out(3, l) = a.z;
    if (noise.enabled()) {
      for (std::size_t i = 1; i < 4; ++i) a_out(i, l) += noise.sigma * rng.normal();
    }
  }

  const RealMatrix chi_tilde_hat = a_out * invert(inputs.a_in, 1e-12);
  ChiTilde estimate = ChiTilde::from_matrix(chi_tilde_hat);
  ChiMatrix chi_hat = chi_from_chi_tilde(estimate);
  const ChiTilde truth = chi_tilde_from_chi(chi_from_kraus(ch));
  const double error = frobenius_norm(estimate.matrix() - truth.matrix());
  const double kappa = matrix_condition(inputs.a_in);
  return ReconstructionResult{std::move(estimate), std::move(chi_hat), std::move(a_out),
                              inputs.a_in, error, kappa};
}

ReconstructionResult aapt(const TauMatrix& tau_in, const Channel& ch,
                          const NoiseModel& noise, double tol) {
  const double det = sinisterness(tau_in);
  if (std::abs(det) <= tol) {
    throw UnfaithfulStateError(
        "input state is unfaithful: |det tau| = " + std::to_string(std::abs(det)) +
            " is at or below tolerance " + std::to_string(tol),
        std::abs(det));
  }

  const DensityMatrix rho_in = rho_from_tau(tau_in);
  const DensityMatrix rho_out = apply(ch, rho_in);
  RealMatrix tau_out = simulate_measurement(rho_out, noise);

  // The gate above is the only faithfulness decision; past it, invert with a
  // bare zero guard so gate and inversion can never disagree.
  const RealMatrix chi_tilde_hat = tau_out * invert(tau_in.matrix(), 0.0);
  ChiTilde estimate = ChiTilde::from_matrix(chi_tilde_hat);
  ChiMatrix chi_hat = chi_from_chi_tilde(estimate);
  const ChiTilde truth = chi_tilde_from_chi(chi_from_kraus(ch));
  const double error = frobenius_norm(estimate.matrix() - truth.matrix());
  const double kappa = condition_number(tau_in);
  return ReconstructionResult{std::move(estimate), std::move(chi_hat), std::move(tau_out),
                              tau_in.matrix(), error, kappa};
}

ErrorStats error_stats(const ChiTilde& truth, std::span<const ReconstructionResult> runs) {
  if (runs.empty()) throw ValidationError("error_stats: no runs given");

  ErrorStats stats;
  stats.runs = runs.size();
  const double truth_norm = frobenius_norm(truth.matrix());
  for (const ReconstructionResult& run : runs) {
    const double chi_err = frobenius_norm(run.chi_tilde_hat.matrix() - truth.matrix());
    const RealMatrix tau_out_true = truth.matrix() * run.input_matrix;
    const double tau_err = frobenius_norm(run.tau_out_observed - tau_out_true);
    stats.mean_chi_tilde_error += 0.25 * chi_err;
    stats.mean_tau_error += 0.25 * tau_err;
    if (tau_err > 0.0 && truth_norm > 0.0) {
      const double ratio =
          (chi_err / truth_norm) / (tau_err / frobenius_norm(tau_out_true));
      stats.mean_ratio += ratio;
      stats.max_ratio = std::max(stats.max_ratio, ratio);
    }
  }
  stats.mean_chi_tilde_error /= static_cast<double>(stats.runs);
  stats.mean_tau_error /= static_cast<double>(stats.runs);
  stats.mean_ratio /= static_cast<double>(stats.runs);
  return stats;
}

}  // namespace aapt
