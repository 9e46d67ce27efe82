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

#include <array>

#include "aapt/matrix.hpp"
#include "aapt/states.hpp"

namespace aapt {

/// Default |sinisterness| cutoff below which a state is declared unfaithful.
/// Chosen far below any physically reachable noise floor; CLI-overridable.
inline constexpr double kFaithfulTol = 1e-12;

/// Everything the error analysis needs to know about one input state.
/// kappa and the bounds are +infinity for singular tau; the report stays
/// emittable for unfaithful states.
struct FaithfulnessReport {
  double sinisterness = 0.0;
  std::array<double, 4> singular_values{};  // descending
  double kappa = 0.0;
  double kappa_lower_bound = 0.0;
  double optimal_x_kappa = 0.0;
  double frobenius_measure = 0.0;  // squared Frobenius norm, sum of lambda^2
  double adjugate_measure = 0.0;   // ||adj(tau)||_F / |det| = ||tau^-1||_F
  bool faithful = false;
};

/// Canonical form of tau under local orthogonal rotations.  With
/// a_i = tau(i,0), b_j = tau(0,j) and the correlation block T, the core is
/// C = T - a b^T and tau reduces to the X form diag(1, s1, s2, s3):
/// left_rotation * diag(s) * right_rotation^T = core, with s1, s2 >= 0 and
/// s3 carrying sgn(det C), so s1 s2 s3 = det(C) = sinisterness.
/// a and b are stored in the rotated bases (a -> U^T a, b -> V^T b).
struct XReduction {
  std::array<double, 3> s{};
  BlochVector a;
  BlochVector b;
  RealMatrix left_rotation;
  RealMatrix right_rotation;
  RealMatrix core;
};

struct FrobeniusIdentity {
  double lhs = 0.0;  // ||tau||_F^2
  double rhs = 0.0;  // ||tau_x||_F^2 + |a|^2 + |b|^2 + |a|^2|b|^2 + 2 sum a_i b_i s_i
  double residual = 0.0;
};

/// det(tau), computed as det of the 3x3 core C = T - a b^T (the two are
/// equal: eliminating the Bloch rows/columns is a determinant-1 operation).
/// Range [-1, 1/27] for physical two-qubit states; zero iff unfaithful.
double sinisterness(const TauMatrix& tau);

/// sigma_max / sigma_min of tau; +infinity when the smallest singular value
/// is zero (or the ratio overflows).
double condition_number(const TauMatrix& tau);

/// Smallest condition number any m x m correlation matrix with the given
/// |det| can have: det_abs^(-1/(m-1)), attained by the balanced X form.
/// det_abs = 0 maps to +infinity.
double optimal_x_kappa(double det_abs, std::size_t m = 4);

/// lambda_max^(m/(m-1)) / |det|^(1/(m-1)) <= kappa, tight for balanced
/// singular values.  +infinity for singular tau.
double kappa_lower_bound(const TauMatrix& tau);

XReduction x_reduce(const TauMatrix& tau);

/// Both sides of the norm decomposition identity evaluated through x_reduce;
/// the residual is the absolute difference.
FrobeniusIdentity frobenius_identity_check(const TauMatrix& tau);

/// F(tau) = sum of squared singular values = squared Frobenius norm.
double frobenius_measure(const TauMatrix& tau);

/// ||tau^-1||_F evaluated without inverting: ||adj(tau)||_F / |det(tau)|.
/// +infinity for singular tau.
double adjugate_measure(const TauMatrix& tau);

/// Minimum of F over states with lambda_1 = 1 pinned and |det| fixed:
/// 1 + 3 det_abs^(2/3), attained when the three free values are equal.
double min_frobenius_at_fixed_det(double det_abs);

FaithfulnessReport analyze(const TauMatrix& tau, double tol = kFaithfulTol);

}  // namespace aapt
