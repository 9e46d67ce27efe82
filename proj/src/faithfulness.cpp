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

#include "aapt/faithfulness.hpp"

#include <cmath>
#include <limits>

namespace aapt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RealMatrix core_matrix(const TauMatrix& tau) {
  RealMatrix c(3, 3);
  for (std::size_t i = 1; i < 4; ++i) {
    for (std::size_t j = 1; j < 4; ++j) {
      c(i - 1, j - 1) = tau(i, j) - tau(i, 0) * tau(0, j);
    }
  }
  return c;
}

}  // namespace

double sinisterness(const TauMatrix& tau) {
  return determinant(core_matrix(tau));
}

double condition_number(const TauMatrix& tau) {
  const SvdResult dec = svd(tau.matrix());
  const double lo = dec.singular_values.back();
  if (lo <= 0.0) return kInf;
  return dec.singular_values.front() / lo;
}

double optimal_x_kappa(double det_abs, std::size_t m) {
  if (m < 2) throw ValidationError("optimal_x_kappa: dimension must be at least 2");
  if (!(det_abs >= 0.0 && det_abs <= 1.0 + 1e-12)) {
    throw ValidationError("optimal_x_kappa: |det| must lie in [0, 1]");
  }
  if (det_abs == 0.0) return kInf;
  return std::pow(det_abs, -1.0 / static_cast<double>(m - 1));
}

double kappa_lower_bound(const TauMatrix& tau) {
  const double det_abs = std::abs(determinant(tau.matrix()));
  if (det_abs == 0.0) return kInf;
  const SvdResult dec = svd(tau.matrix());
  const double lmax = dec.singular_values.front();
  return std::pow(lmax, 4.0 / 3.0) / std::cbrt(det_abs);
}

XReduction x_reduce(const TauMatrix& tau) {
  XReduction red;
  red.core = core_matrix(tau);
  SvdResult dec = svd(red.core);

  // SVD factors are orthogonal but can be improper.  Push each factor's
  // orientation sign into its last column so both become proper rotations
  // (realizable as local unitaries); the combined sign lands on the last
  // singular value, so U diag(s) V^T still reconstructs the core exactly and
  // s1 s2 s3 = det(core).
  const double eu = (determinant(dec.left_vectors) < 0.0) ? -1.0 : 1.0;
  const double ev = (determinant(dec.right_vectors) < 0.0) ? -1.0 : 1.0;
  red.s = {dec.singular_values[0], dec.singular_values[1],
           eu * ev * dec.singular_values[2]};
  for (std::size_t i = 0; i < 3; ++i) {
    dec.left_vectors(i, 2) *= eu;
    dec.right_vectors(i, 2) *= ev;
  }

  red.left_rotation = dec.left_vectors;
  red.right_rotation = dec.right_vectors;

  const BlochVector a = tau.system_bloch();
  const BlochVector b = tau.ancilla_bloch();
  const RealMatrix& u = red.left_rotation;
  const RealMatrix& v = red.right_rotation;
  red.a = {u(0, 0) * a.x + u(1, 0) * a.y + u(2, 0) * a.z,
           u(0, 1) * a.x + u(1, 1) * a.y + u(2, 1) * a.z,
           u(0, 2) * a.x + u(1, 2) * a.y + u(2, 2) * a.z};
  red.b = {v(0, 0) * b.x + v(1, 0) * b.y + v(2, 0) * b.z,
           v(0, 1) * b.x + v(1, 1) * b.y + v(2, 1) * b.z,
           v(0, 2) * b.x + v(1, 2) * b.y + v(2, 2) * b.z};
  return red;
}

FrobeniusIdentity frobenius_identity_check(const TauMatrix& tau) {
  const XReduction red = x_reduce(tau);
  const double norm = frobenius_norm(tau.matrix());

  FrobeniusIdentity out;
  out.lhs = norm * norm;
  const double x_norm_sq =
      1.0 + red.s[0] * red.s[0] + red.s[1] * red.s[1] + red.s[2] * red.s[2];
  const double a_sq = red.a.dot(red.a);
  const double b_sq = red.b.dot(red.b);
  const double cross =
      red.a.x * red.b.x * red.s[0] + red.a.y * red.b.y * red.s[1] + red.a.z * red.b.z * red.s[2];
  out.rhs = x_norm_sq + a_sq + b_sq + a_sq * b_sq + 2.0 * cross;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

double frobenius_measure(const TauMatrix& tau) {
  const double norm = frobenius_norm(tau.matrix());
  return norm * norm;
}

double adjugate_measure(const TauMatrix& tau) {
  const double det = determinant(tau.matrix());
  if (det == 0.0) return kInf;
  return frobenius_norm(adjugate(tau.matrix())) / std::abs(det);
}

double min_frobenius_at_fixed_det(double det_abs) {
  if (!(det_abs >= 0.0 && det_abs <= 1.0 + 1e-12)) {
    throw ValidationError("min_frobenius_at_fixed_det: |det| must lie in [0, 1]");
  }
  return 1.0 + 3.0 * std::pow(det_abs, 2.0 / 3.0);
}

FaithfulnessReport analyze(const TauMatrix& tau, double tol) {
  FaithfulnessReport report;
  report.sinisterness = sinisterness(tau);

  const SvdResult dec = svd(tau.matrix());
  for (std::size_t i = 0; i < 4; ++i) report.singular_values[i] = dec.singular_values[i];
  const double lo = dec.singular_values.back();
  report.kappa = lo > 0.0 ? dec.singular_values.front() / lo : kInf;

  const double det_abs = std::abs(report.sinisterness);
  report.kappa_lower_bound =
      det_abs > 0.0 ? std::pow(dec.singular_values.front(), 4.0 / 3.0) / std::cbrt(det_abs)
                    : kInf;
  report.optimal_x_kappa = det_abs > 0.0 ? std::pow(det_abs, -1.0 / 3.0) : kInf;
  report.frobenius_measure = frobenius_measure(tau);
  report.adjugate_measure = adjugate_measure(tau);
  report.faithful = det_abs > tol;
  return report;
}

}  // namespace aapt
