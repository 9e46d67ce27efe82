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

#include "aapt/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aapt/pauli.hpp"

namespace aapt {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;

// Stream tags keep the different samplers decorrelated under a shared seed.
constexpr std::uint64_t kStreamPure = 0x70757265;
constexpr std::uint64_t kStreamSeparable = 0x73657061;
constexpr std::uint64_t kStreamMixed = 0x6d697865;

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Tr[a b] without forming the product.
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      t += a(i, k) * b(k, i);
    }
  }
  return t;
}

BlochVector random_unit_vector(CounterRng& rng) {
  // Normalized Gaussian triple: uniform on the sphere.
  for (;;) {
    const BlochVector v{rng.normal(), rng.normal(), rng.normal()};
    const double n = v.norm();
    if (n > 1e-6) return v.scaled(1.0 / n);
  }
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector BlochVector::cross(const BlochVector& o) const {
  return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m, double psd_tol) {
  if (!m.is_square() || (m.rows() != 2 && m.rows() != 4)) {
    throw NotAStateError("density matrix must be 2x2 or 4x4");
  }
  if (!m.all_finite()) throw NotAStateError("density matrix has non-finite entries");
  if (m.hermiticity_defect() > kHermitianTol) {
    throw NotAStateError("density matrix is not Hermitian");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    throw NotAStateError("density matrix trace is not 1");
  }
  const std::vector<double> eigs = hermitian_eigenvalues(m);
  if (eigs.front() < -psd_tol) {
    throw NotAStateError("density matrix has negative eigenvalue " +
                         std::to_string(eigs.front()));
  }
  return DensityMatrix(m);
}

double DensityMatrix::purity() const {
  return trace_product(mat_, mat_).real();
}

TauMatrix TauMatrix::from_matrix(const RealMatrix& m, double tol) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw NotAStateError("tau matrix must be 4x4");
  }
  if (!m.all_finite()) throw NotAStateError("tau matrix has non-finite entries");
  if (std::abs(m(0, 0) - 1.0) > tol) {
    throw NotAStateError("tau(0,0) must be 1 (lossless normalization)");
  }
  if (m.max_abs() > 1.0 + tol) {
    throw NotAStateError("tau entries must lie in [-1, 1]");
  }
  RealMatrix fixed = m;
  fixed(0, 0) = 1.0;
  return TauMatrix(std::move(fixed));
}

void SeparableSpec::validate() const {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("separable weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("separable weights must sum to 1");
  }
  // Zero-weight components never enter the mixture (or the volume formula),
  // so their vertices may be left unset.
  for (const auto* set : {&system_vertices, &ancilla_vertices}) {
    for (std::size_t n = 0; n < 4; ++n) {
      if (weights[n] == 0.0) continue;
      if (std::abs((*set)[n].norm() - 1.0) > 1e-10) {
        throw ValidationError("separable vertices must be unit Bloch vectors");
      }
    }
  }
}

DensityMatrix qubit_from_bloch(const BlochVector& a) {
  if (a.norm() > 1.0 + 1e-10) {
    throw NotAStateError("Bloch vector norm exceeds 1");
  }
  ComplexMatrix m(2, 2);
  m(0, 0) = Complex(0.5 * (1.0 + a.z), 0.0);
  m(1, 1) = Complex(0.5 * (1.0 - a.z), 0.0);
  m(0, 1) = Complex(0.5 * a.x, -0.5 * a.y);
  m(1, 0) = Complex(0.5 * a.x, 0.5 * a.y);
  return DensityMatrix::from_matrix(m);
}

BlochVector bloch_from_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionError("bloch_from_qubit: need a single qubit");
  BlochVector a;
  a.x = trace_product(rho.matrix(), pauli(1)).real();
  a.y = trace_product(rho.matrix(), pauli(2)).real();
  a.z = trace_product(rho.matrix(), pauli(3)).real();
  return a;
}

TauMatrix tau_from_rho(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("tau_from_rho: need a two-qubit state");
  RealMatrix tau(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      tau(i, j) = trace_product(rho.matrix(), pauli_pair(i, j)).real();
    }
  }
  return TauMatrix::from_matrix(tau, 1e-8);
}

DensityMatrix rho_from_tau(const TauMatrix& tau) {
  ComplexMatrix rho(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double t = tau(i, j);
      if (t == 0.0) continue;
      rho = rho + pauli_pair(i, j).scaled(Complex(0.25 * t, 0.0));
    }
  }
  return DensityMatrix::from_matrix(rho);
}

DensityMatrix bell_state(BellKind kind) {
  // Amplitudes over |00>, |01>, |10>, |11>.
  const double r = 1.0 / std::sqrt(2.0);
  std::array<Complex, 4> psi{};
  switch (kind) {
    case BellKind::PhiPlus:
      psi[0] = r;
      psi[3] = r;
      break;
    case BellKind::PhiMinus:
      psi[0] = r;
      psi[3] = -r;
      break;
    case BellKind::PsiPlus:
      psi[1] = r;
      psi[2] = r;
      break;
    case BellKind::PsiMinus:
      psi[1] = r;
      psi[2] = -r;
      break;
  }
  ComplexMatrix rho(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      rho(i, j) = psi[i] * std::conj(psi[j]);
    }
  }
  return DensityMatrix::from_matrix(rho);
}

DensityMatrix werner_state(double p, BellKind kind) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("werner_state: p must lie in [0, 1]");
  }
  const DensityMatrix bell = bell_state(kind);
  ComplexMatrix m = bell.matrix().scaled(Complex(p, 0.0)) +
                    ComplexMatrix::identity(4).scaled(Complex(0.25 * (1.0 - p), 0.0));
  return DensityMatrix::from_matrix(m);
}

DensityMatrix x_state(double s1, double s2, double s3) {
  RealMatrix tau(4, 4);
  tau(0, 0) = 1.0;
  tau(1, 1) = s1;
  tau(2, 2) = s2;
  tau(3, 3) = s3;
  return rho_from_tau(TauMatrix::from_matrix(tau));
}

DensityMatrix separable_from_spec(const SeparableSpec& spec) {
  spec.validate();
  ComplexMatrix rho(4, 4);
  for (std::size_t n = 0; n < 4; ++n) {
    if (spec.weights[n] == 0.0) continue;
    const ComplexMatrix term = kron(qubit_from_bloch(spec.system_vertices[n]).matrix(),
                                    qubit_from_bloch(spec.ancilla_vertices[n]).matrix());
    rho = rho + term.scaled(Complex(spec.weights[n], 0.0));
  }
  return DensityMatrix::from_matrix(rho);
}

DensityMatrix random_pure(CounterRng& rng) {
  std::array<Complex, 4> psi;
  double norm_sq = 0.0;
  for (auto& c : psi) {
    c = Complex(rng.normal(), rng.normal());
    norm_sq += std::norm(c);
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  ComplexMatrix rho(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      rho(i, j) = psi[i] * std::conj(psi[j]) * (inv * inv);
    }
  }
  return DensityMatrix::from_matrix(rho);
}

DensityMatrix random_pure(std::uint64_t seed) {
  CounterRng rng(seed, kStreamPure);
  return random_pure(rng);
}

SeparableSpec random_separable(CounterRng& rng) {
  SeparableSpec spec;
  // Exponential spacings normalized: uniform (Dirichlet) on the simplex.
  double sum = 0.0;
  for (double& w : spec.weights) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    w = -std::log(u);
    sum += w;
  }
  for (double& w : spec.weights) w /= sum;
  for (auto& v : spec.system_vertices) v = random_unit_vector(rng);
  for (auto& v : spec.ancilla_vertices) v = random_unit_vector(rng);
  return spec;
}

SeparableSpec random_separable(std::uint64_t seed) {
  CounterRng rng(seed, kStreamSeparable);
  return random_separable(rng);
}

DensityMatrix random_mixed(CounterRng& rng) {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix g(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      g(i, j) = Complex(rng.normal() * r, rng.normal() * r);
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho = rho.scaled(Complex(1.0 / tr, 0.0));
  // Re-symmetrize the rounding noise so validation tolerances never trip.
  rho = (rho + rho.adjoint()).scaled(Complex(0.5, 0.0));
  return DensityMatrix::from_matrix(rho);
}

DensityMatrix random_mixed(std::uint64_t seed) {
  CounterRng rng(seed, kStreamMixed);
  return random_mixed(rng);
}

double concurrence_pure(const DensityMatrix& rho, double purity_tol) {
  if (rho.dim() != 4) throw DimensionError("concurrence_pure: need a two-qubit state");
  if (std::abs(rho.purity() - 1.0) > purity_tol) {
    throw NotAStateError("concurrence_pure: state is not pure");
  }
  // Recover the state vector from the dominant column of rho = |psi><psi|.
  std::size_t best = 0;
  for (std::size_t j = 1; j < 4; ++j) {
    if (rho.matrix()(j, j).real() > rho.matrix()(best, best).real()) best = j;
  }
  const double scale = 1.0 / std::sqrt(rho.matrix()(best, best).real());
  std::array<Complex, 4> psi;
  for (std::size_t i = 0; i < 4; ++i) psi[i] = rho.matrix()(i, best) * scale;
  return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

}  // namespace aapt
