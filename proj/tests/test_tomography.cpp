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

#include <cmath>
#include <string>
#include <vector>

#include "aapt/channels.hpp"
#include "aapt/rng.hpp"
#include "aapt/states.hpp"
#include "aapt/tomography.hpp"

using namespace aapt;

namespace {

double frob_diff(const RealMatrix& a, const RealMatrix& b) {
  return frobenius_norm(a - b);
}

std::vector<Channel> reference_channels() {
  return {identity_channel(),
          bit_flip_channel(0.3),
          phase_flip_channel(0.15),
          depolarizing_channel(0.5),
          amplitude_damping_channel(0.36),
          phase_damping_channel(0.2),
          rotation_channel({0.0, 0.0, 1.0}, 0.7),
          random_channel(909, 2),
          random_channel(910, 4)};
}

}  // namespace

TEST_CASE("canonical probe set spans the Bloch 4-space") {
  const SqptInputSet inputs = SqptInputSet::canonical();
  REQUIRE(inputs.probes.size() == 4);
  REQUIRE(inputs.a_in.rows() == 4);
  REQUIRE(inputs.a_in.cols() == 4);

  // Columns: |0>, |1>, |+>, |+i>.
  const double expected[4][4] = {{1.0, 1.0, 1.0, 1.0},
                                 {0.0, 0.0, 1.0, 0.0},
                                 {0.0, 0.0, 0.0, 1.0},
                                 {1.0, -1.0, 0.0, 0.0}};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t l = 0; l < 4; ++l) {
      CHECK(inputs.a_in(i, l) == doctest::Approx(expected[i][l]).scale(1).epsilon(1e-12));
    }
  }
  CHECK(std::abs(determinant(inputs.a_in)) > 1e-6);
}

TEST_CASE("probe sets that do not span are rejected") {
  std::vector<DensityMatrix> three(3, qubit_from_bloch({0.0, 0.0, 1.0}));
  CHECK_THROWS_AS(SqptInputSet::from_probes(three), ValidationError);

  // Four copies of the same probe: a_in is rank one.
  std::vector<DensityMatrix> same(4, qubit_from_bloch({0.0, 0.0, 1.0}));
  CHECK_THROWS_AS(SqptInputSet::from_probes(same), ValidationError);

  // Any four probes with independent Bloch 4-vectors are accepted.
  std::vector<DensityMatrix> tilted{
      qubit_from_bloch({0.0, 0.0, 1.0}), qubit_from_bloch({0.6, 0.0, -0.8}),
      qubit_from_bloch({-0.3, 0.5, 0.1}), qubit_from_bloch({0.0, -0.9, 0.0})};
  CHECK_NOTHROW(SqptInputSet::from_probes(tilted));
}

TEST_CASE("measurement simulation is exact at sigma zero and pinned at (0,0)") {
  const DensityMatrix rho = werner_state(0.62);
  const TauMatrix tau = tau_from_rho(rho);

  const RealMatrix exact = simulate_measurement(rho, NoiseModel::none());
  CHECK(frob_diff(exact, tau.matrix()) == 0.0);

  const RealMatrix noisy = simulate_measurement(rho, {0.05, 77});
  CHECK(noisy(0, 0) == 1.0);
  CHECK(frob_diff(noisy, tau.matrix()) > 1e-4);

  // Same noise model, same data; a different seed decorrelates.
  const RealMatrix again = simulate_measurement(rho, {0.05, 77});
  CHECK(frob_diff(noisy, again) == 0.0);
  const RealMatrix other = simulate_measurement(rho, {0.05, 78});
  CHECK(frob_diff(noisy, other) > 1e-6);
}

TEST_CASE("measurement noise is unbiased") {
  const DensityMatrix rho = werner_state(0.5);
  const TauMatrix tau = tau_from_rho(rho);
  double acc = 0.0;
  const int n = 20000;
  for (int r = 0; r < n; ++r) {
    acc += simulate_measurement(rho, {0.1, static_cast<std::uint64_t>(r)})(1, 1);
  }
  // Mean of n draws has deviation ~ sigma/sqrt(n) ~ 7e-4; allow 5 sigma.
  CHECK(acc / n == doctest::Approx(tau(1, 1)).scale(1).epsilon(4e-3));
}

TEST_CASE("noiseless standard tomography recovers every reference channel") {
  const SqptInputSet inputs = SqptInputSet::canonical();
  for (const Channel& ch : reference_channels()) {
    const ReconstructionResult r = sqpt(ch, inputs, NoiseModel::none());
    const RealMatrix truth = chi_tilde_direct(ch).matrix();
    CHECK(frob_diff(r.chi_tilde_hat.matrix(), truth) < 1e-10);
    CHECK(r.error_vs_truth < 1e-10);
    CHECK(frobenius_norm(r.chi_hat.matrix() - chi_from_kraus(ch).matrix()) < 1e-9);
    CHECK(r.input_matrix.rows() == 4);
    CHECK(r.kappa_used > 0.0);
  }
}

TEST_CASE("noiseless ancilla-assisted tomography recovers every reference channel") {
  const std::vector<TauMatrix> states{
      tau_from_rho(bell_state(BellKind::PhiPlus)),
      tau_from_rho(werner_state(1.0 / 3.0)),
      tau_from_rho(random_mixed(2024)),
  };
  for (const TauMatrix& tau_in : states) {
    for (const Channel& ch : reference_channels()) {
      const ReconstructionResult r = aapt::aapt(tau_in, ch, NoiseModel::none());
      const RealMatrix truth = chi_tilde_direct(ch).matrix();
      CHECK(frob_diff(r.chi_tilde_hat.matrix(), truth) < 1e-10);
      CHECK(r.error_vs_truth < 1e-10);
      CHECK(frobenius_norm(r.chi_hat.matrix() - chi_from_kraus(ch).matrix()) < 1e-9);
      CHECK(frob_diff(r.input_matrix, tau_in.matrix()) == 0.0);
    }
  }
}

TEST_CASE("reconstructed process matrices stay physical without noise") {
  for (const Channel& ch : reference_channels()) {
    const ReconstructionResult r =
        aapt::aapt(tau_from_rho(bell_state(BellKind::PsiMinus)), ch, NoiseModel::none());
    CHECK(r.chi_hat.matrix().hermiticity_defect() < 1e-10);
    CHECK(r.chi_hat.psd_defect() < 1e-8);
    CHECK(r.chi_hat.tp_defect() < 1e-8);
  }
}

TEST_CASE("kappa_used reports the input condition number") {
  const ReconstructionResult bell =
      aapt::aapt(tau_from_rho(bell_state(BellKind::PhiPlus)), identity_channel(),
           NoiseModel::none());
  CHECK(bell.kappa_used == doctest::Approx(1.0).epsilon(1e-10));

  const ReconstructionResult werner =
      aapt::aapt(tau_from_rho(werner_state(1.0 / 3.0)), identity_channel(), NoiseModel::none());
  CHECK(werner.kappa_used == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("unfaithful inputs are refused with the measured determinant") {
  // Maximally mixed input: tau = e_00 e_00^T, determinant zero.
  const TauMatrix mixed = tau_from_rho(werner_state(0.0));
  CHECK_THROWS_AS(aapt::aapt(mixed, depolarizing_channel(0.1), NoiseModel::none()),
                  UnfaithfulStateError);

  // Product state: rank-one correlation block.
  SeparableSpec product;
  product.weights = {1.0, 0.0, 0.0, 0.0};
  product.system_vertices[0] = {0.6, 0.0, 0.8};
  product.ancilla_vertices[0] = {0.0, -0.8, 0.6};
  const TauMatrix tau_prod = tau_from_rho(separable_from_spec(product));
  try {
    aapt::aapt(tau_prod, identity_channel(), NoiseModel::none());
    FAIL("expected UnfaithfulStateError");
  } catch (const UnfaithfulStateError& e) {
    CHECK(e.abs_det() <= kFaithfulTol);
    CHECK(std::string(e.what()).find("unfaithful") != std::string::npos);
  }

  // A loosened tolerance reclassifies nearly singular inputs.
  const TauMatrix weak = tau_from_rho(werner_state(0.01));
  CHECK_NOTHROW(aapt::aapt(weak, identity_channel(), NoiseModel::none()));
  CHECK_THROWS_AS(aapt::aapt(weak, identity_channel(), NoiseModel::none(), 1e-4),
                  UnfaithfulStateError);
}

TEST_CASE("noisy reconstruction is reproducible under a fixed seed") {
  const TauMatrix tau_in = tau_from_rho(bell_state(BellKind::PhiPlus));
  const Channel ch = amplitude_damping_channel(0.25);
  const ReconstructionResult a = aapt::aapt(tau_in, ch, {0.02, 4242});
  const ReconstructionResult b = aapt::aapt(tau_in, ch, {0.02, 4242});
  CHECK(frob_diff(a.chi_tilde_hat.matrix(), b.chi_tilde_hat.matrix()) == 0.0);
  CHECK(a.error_vs_truth == b.error_vs_truth);
  CHECK(a.error_vs_truth > 1e-4);

  const ReconstructionResult c = aapt::aapt(tau_in, ch, {0.02, 4243});
  CHECK(frob_diff(a.chi_tilde_hat.matrix(), c.chi_tilde_hat.matrix()) > 1e-6);
}

TEST_CASE("per-run error amplification never exceeds the condition number") {
  const TauMatrix tau_in = tau_from_rho(werner_state(1.0 / 3.0));
  const Channel ch = depolarizing_channel(0.3);
  const ChiTilde truth = chi_tilde_direct(ch);

  std::vector<ReconstructionResult> runs;
  runs.reserve(200);
  for (std::uint64_t r = 0; r < 200; ++r) {
    runs.push_back(aapt::aapt(tau_in, ch, {0.01, CounterRng::derive(11, r).next_u64()}));
  }
  const ErrorStats stats = error_stats(truth, runs);
  CHECK(stats.runs == 200);
  const double kappa = runs.front().kappa_used;
  CHECK(kappa == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(stats.max_ratio <= kappa * (1.0 + 1e-6));
  CHECK(stats.mean_ratio <= kappa);
  CHECK(stats.mean_ratio > 0.0);
  CHECK(stats.mean_chi_tilde_error > 0.0);
  CHECK(stats.mean_tau_error > 0.0);
}

TEST_CASE("aggregate statistics validate their input") {
  const ChiTilde truth = chi_tilde_direct(identity_channel());
  CHECK_THROWS_AS(error_stats(truth, {}), ValidationError);

  // A perfect run contributes zero error and (by convention) no ratio.
  const ReconstructionResult exact =
      aapt::aapt(tau_from_rho(bell_state(BellKind::PhiPlus)), identity_channel(),
           NoiseModel::none());
  const std::vector<ReconstructionResult> one{exact};
  const ErrorStats stats = error_stats(truth, one);
  CHECK(stats.runs == 1);
  CHECK(stats.mean_chi_tilde_error < 1e-12);
}

TEST_CASE("both reconstruction routes agree on the same channel") {
  // AAPT with a Bell input and SQPT with canonical probes are different
  // experiments but estimate the same transfer matrix.
  CounterRng rng(888);
  for (int rep = 0; rep < 50; ++rep) {
    const Channel ch = random_channel(rng, 1 + rng.next_u64() % 4);
    const ReconstructionResult via_aapt =
        aapt::aapt(tau_from_rho(bell_state(BellKind::PhiPlus)), ch, NoiseModel::none());
    const ReconstructionResult via_sqpt =
        sqpt(ch, SqptInputSet::canonical(), NoiseModel::none());
    CHECK(frob_diff(via_aapt.chi_tilde_hat.matrix(), via_sqpt.chi_tilde_hat.matrix()) <
          1e-9);
  }
}
