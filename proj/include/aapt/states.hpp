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
#include <cstdint>
#include <stdexcept>

#include "aapt/matrix.hpp"
#include "aapt/rng.hpp"

namespace aapt {

/// Thrown when a matrix fails the density-operator checks (Hermitian, unit
/// trace, positive semidefinite) or a correlation matrix has no physical
/// preimage.
class NotAStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when construction parameters are outside their documented ranges.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
  BlochVector cross(const BlochVector& o) const;
  BlochVector scaled(double f) const { return {f * x, f * y, f * z}; }
  BlochVector operator+(const BlochVector& o) const { return {x + o.x, y + o.y, z + o.z}; }
  BlochVector operator-(const BlochVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
};

/// Validated density operator: Hermitian within 1e-10, unit trace within
/// 1e-10, smallest eigenvalue >= -psd_tol.  Dimension 2 or 4.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const ComplexMatrix& m, double psd_tol = 1e-9);

  const ComplexMatrix& matrix() const { return mat_; }
  std::size_t dim() const { return mat_.rows(); }
  double purity() const;

 private:
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

/// Pauli correlation matrix of a two-qubit state:
///
///   tau_ij = Tr[rho (sigma_i (x) sigma_j)],    rho = (1/4) sum tau_ij sigma_i (x) sigma_j.
///
/// With this normalization tau(0,0) = Tr[rho] = 1 and every entry lies in
/// [-1, 1].  Invertibility of tau is exactly the faithfulness condition for
/// ancilla-assisted tomography.
class TauMatrix {
 public:
  static TauMatrix from_matrix(const RealMatrix& m, double tol = 1e-9);

  const RealMatrix& matrix() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// Local Bloch vectors: system a_i = tau(i,0), ancilla b_j = tau(0,j).
  BlochVector system_bloch() const { return {m_(1, 0), m_(2, 0), m_(3, 0)}; }
  BlochVector ancilla_bloch() const { return {m_(0, 1), m_(0, 2), m_(0, 3)}; }

 private:
  explicit TauMatrix(RealMatrix m) : m_(std::move(m)) {}
  RealMatrix m_;
};

/// Rank-4 separable decomposition rho = sum_n P_n rho_A(a_n) (x) rho_B(b_n)
/// with pure product components given by unit Bloch vectors.  Four terms is
/// the maximal cardinality needed for two qubits, and the minimum for a
/// faithful separable state.
struct SeparableSpec {
  std::array<double, 4> weights{};
  std::array<BlochVector, 4> system_vertices{};
  std::array<BlochVector, 4> ancilla_vertices{};

  /// Throws ValidationError unless weights are nonnegative, sum to 1 within
  /// 1e-12, and every vertex is unit within 1e-10.
  void validate() const;
};

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Single-qubit state (I + a.sigma)/2; requires |a| <= 1 + 1e-10.
DensityMatrix qubit_from_bloch(const BlochVector& a);
BlochVector bloch_from_qubit(const DensityMatrix& rho);

TauMatrix tau_from_rho(const DensityMatrix& rho);

/// Inverse map; throws NotAStateError when the result is not PSD (the given
/// tau is unphysical, e.g. diag(1,1,1,1)).
DensityMatrix rho_from_tau(const TauMatrix& tau);

DensityMatrix bell_state(BellKind kind);

/// p |Bell><Bell| + (1-p) I/4.  For the PhiPlus anchor tau = diag(1, p, -p, p).
DensityMatrix werner_state(double p, BellKind kind = BellKind::PhiPlus);

/// State with tau = diag(1, s1, s2, s3); throws NotAStateError when the
/// (s1,s2,s3) triple falls outside the physical tetrahedron.
DensityMatrix x_state(double s1, double s2, double s3);

DensityMatrix separable_from_spec(const SeparableSpec& spec);

/// Haar-uniform two-qubit pure state.
DensityMatrix random_pure(CounterRng& rng);
DensityMatrix random_pure(std::uint64_t seed);

/// Uniform simplex weights, vertices uniform on the unit sphere.
SeparableSpec random_separable(CounterRng& rng);
SeparableSpec random_separable(std::uint64_t seed);

/// Hilbert-Schmidt (Ginibre) random mixed two-qubit state.
DensityMatrix random_mixed(CounterRng& rng);
DensityMatrix random_mixed(std::uint64_t seed);

/// C = 2|ad - bc| for the state's amplitudes (a,b,c,d) in the computational
/// basis.  Requires purity 1 within purity_tol; throws NotAStateError
/// otherwise.  Satisfies det(tau) = -C^4.
double concurrence_pure(const DensityMatrix& rho, double purity_tol = 1e-8);

}  // namespace aapt
