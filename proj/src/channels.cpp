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

#include "aapt/channels.hpp"

#include <cmath>
#include <string>

#include "aapt/pauli.hpp"

namespace aapt {

namespace {

constexpr std::uint64_t kStreamChannel = 0x6368616e;

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      t += a(i, k) * b(k, i);
    }
  }
  return t;
}

ComplexMatrix apply_kraus(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& rho) {
  ComplexMatrix out(rho.rows(), rho.cols());
  for (const ComplexMatrix& a : ops) {
    out = out + a * rho * a.adjoint();
  }
  return out;
}

// Raw contraction shared by chi_tilde_from_chi and the linear-solve setup,
// where the input is a plain Hermitian-parameter basis element rather than a
// validated ChiMatrix.
void contract_chi(const ComplexMatrix& chi, RealMatrix& out_real, double& max_imag) {
  const BTensor& b = b_tensor();
  max_imag = 0.0;
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t i = 0; i < 4; ++i) {
      Complex acc(0.0, 0.0);
      for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex c = chi(j, k);
          if (c == Complex(0.0, 0.0)) continue;
          acc += c * b(j, i, k, m);
        }
      }
      acc *= 0.5;
      out_real(m, i) = acc.real();
      max_imag = std::max(max_imag, std::abs(acc.imag()));
    }
  }
}

// Hermitian basis element alpha of the 16-parameter chi space: 4 diagonal
// units, then (E_jk + E_kj) and i(E_jk - E_kj) for each j < k.
ComplexMatrix hermitian_basis_element(std::size_t alpha) {
  ComplexMatrix h(4, 4);
  if (alpha < 4) {
    h(alpha, alpha) = Complex(1.0, 0.0);
    return h;
  }
  static constexpr std::size_t pair_j[6] = {0, 0, 0, 1, 1, 2};
  static constexpr std::size_t pair_k[6] = {1, 2, 3, 2, 3, 3};
  const std::size_t idx = (alpha - 4) % 6;
  const std::size_t j = pair_j[idx];
  const std::size_t k = pair_k[idx];
  if (alpha < 10) {
    h(j, k) = Complex(1.0, 0.0);
    h(k, j) = Complex(1.0, 0.0);
  } else {
    h(j, k) = Complex(0.0, 1.0);
    h(k, j) = Complex(0.0, -1.0);
  }
  return h;
}

// Inverse of the real-linear map (Hermitian chi parameters) -> vec(chi_tilde),
// built and checked once.  The map is a bijection for a single qubit.
const RealMatrix& contraction_inverse() {
  static const RealMatrix inv = [] {
    RealMatrix forward(16, 16);
    RealMatrix image(4, 4);
    double imag = 0.0;
    for (std::size_t alpha = 0; alpha < 16; ++alpha) {
      contract_chi(hermitian_basis_element(alpha), image, imag);
      for (std::size_t m = 0; m < 4; ++m) {
        for (std::size_t i = 0; i < 4; ++i) {
          forward(m * 4 + i, alpha) = image(m, i);
        }
      }
    }
    const SvdResult dec = svd(forward);
    const double cond = dec.singular_values.front() / dec.singular_values.back();
    if (!(cond < 1e8)) {
      throw std::logic_error("chi extraction map is ill-conditioned");
    }
    return invert(forward);
  }();
  return inv;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

Channel Channel::from_kraus(std::vector<ComplexMatrix> ops, double tol) {
  if (ops.empty()) throw ValidationError("channel needs at least one Kraus operator");
  ComplexMatrix sum(2, 2);
  for (const ComplexMatrix& a : ops) {
    if (a.rows() != 2 || a.cols() != 2) {
      throw DimensionError("Kraus operators must be 2x2");
    }
    if (!a.all_finite()) throw ValidationError("Kraus operator has non-finite entries");
    sum = sum + a.adjoint() * a;
  }
  const ComplexMatrix defect = sum - ComplexMatrix::identity(2);
  if (frobenius_norm(defect) > tol) {
    throw ValidationError("Kraus operators do not satisfy sum A^dag A = I");
  }
  return Channel(std::move(ops));
}

ChiMatrix ChiMatrix::from_matrix(const ComplexMatrix& m, double hermitian_tol) {
  if (m.rows() != 4 || m.cols() != 4) throw DimensionError("chi must be 4x4");
  if (!m.all_finite()) throw ValidationError("chi has non-finite entries");
  if (m.hermiticity_defect() > hermitian_tol) {
    throw ValidationError("chi is not Hermitian");
  }
  // Store the exactly-Hermitian average so downstream algebra sees clean input.
  ComplexMatrix h = (m + m.adjoint()).scaled(Complex(0.5, 0.0));
  return ChiMatrix(std::move(h));
}

double ChiMatrix::psd_defect() const {
  const std::vector<double> eigs = hermitian_eigenvalues(m_);
  return eigs.front() < 0.0 ? -eigs.front() : 0.0;
}

double ChiMatrix::tp_defect() const {
  ComplexMatrix sum(2, 2);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = 0; k < 4; ++k) {
      const Complex c = m_(j, k);
      if (c == Complex(0.0, 0.0)) continue;
      sum = sum + (pauli(k) * pauli(j)).scaled(c);
    }
  }
  return frobenius_norm(sum - ComplexMatrix::identity(2));
}

ChiTilde ChiTilde::from_matrix(const RealMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw DimensionError("chi-tilde must be 4x4");
  if (!m.all_finite()) throw ValidationError("chi-tilde has non-finite entries");
  return ChiTilde(m);
}

double ChiTilde::tp_row_defect() const {
  double d = std::abs(m_(0, 0) - 1.0);
  for (std::size_t j = 1; j < 4; ++j) d = std::max(d, std::abs(m_(0, j)));
  return d;
}

BTensor::BTensor() : entries_(256) {
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t m = 0; m < 4; ++m) {
          entries_[((j * 4 + i) * 4 + k) * 4 + m] =
              trace_product(pauli(j) * pauli(i), pauli(k) * pauli(m));
        }
      }
    }
  }
}

const BTensor& b_tensor() {
  static const BTensor t;
  return t;
}

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho) {
  if (rho.dim() == 2) {
    return DensityMatrix::from_matrix(apply_kraus(ch.kraus(), rho.matrix()));
  }
  if (rho.dim() == 4) {
    std::vector<ComplexMatrix> lifted;
    lifted.reserve(ch.kraus().size());
    const ComplexMatrix eye = ComplexMatrix::identity(2);
    for (const ComplexMatrix& a : ch.kraus()) lifted.push_back(kron(a, eye));
    return DensityMatrix::from_matrix(apply_kraus(lifted, rho.matrix()));
  }
  throw DimensionError("apply: state must be one or two qubits");
}

ChiMatrix chi_from_kraus(const Channel& ch) {
  // A_i = sum_j c_ij sigma_j with c_ij = Tr[sigma_j A_i] / 2.
  ComplexMatrix chi(4, 4);
  for (const ComplexMatrix& a : ch.kraus()) {
    std::array<Complex, 4> c;
    for (std::size_t j = 0; j < 4; ++j) {
      c[j] = trace_product(pauli(j), a) * 0.5;
    }
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t k = 0; k < 4; ++k) {
        chi(j, k) += c[j] * std::conj(c[k]);
      }
    }
  }
  return ChiMatrix::from_matrix(chi);
}

ChiTilde chi_tilde_from_chi(const ChiMatrix& chi) {
  RealMatrix out(4, 4);
  double imag = 0.0;
  contract_chi(chi.matrix(), out, imag);
  if (imag > 1e-8) {
    throw ValidationError("chi contraction left an imaginary residue: chi inconsistent");
  }
  return ChiTilde::from_matrix(out);
}

ChiMatrix chi_from_chi_tilde(const ChiTilde& ct) {
  const RealMatrix& inv = contraction_inverse();
  RealMatrix vec(16, 1);
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t i = 0; i < 4; ++i) {
      vec(m * 4 + i, 0) = ct(m, i);
    }
  }
  const RealMatrix params = inv * vec;
  ComplexMatrix chi(4, 4);
  for (std::size_t alpha = 0; alpha < 16; ++alpha) {
    const double p = params(alpha, 0);
    if (p == 0.0) continue;
    chi = chi + hermitian_basis_element(alpha).scaled(Complex(p, 0.0));
  }
  return ChiMatrix::from_matrix(chi);
}

ChiTilde chi_tilde_direct(const Channel& ch) {
  RealMatrix out(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const ComplexMatrix image = apply_kraus(ch.kraus(), pauli(i));
    for (std::size_t m = 0; m < 4; ++m) {
      out(m, i) = 0.5 * trace_product(pauli(m), image).real();
    }
  }
  return ChiTilde::from_matrix(out);
}

Channel identity_channel() {
  return Channel::from_kraus({ComplexMatrix::identity(2)});
}

Channel rotation_channel(const BlochVector& axis, double angle) {
  const double n = axis.norm();
  if (n < 1e-12) throw ValidationError("rotation axis must be nonzero");
  const BlochVector u = axis.scaled(1.0 / n);
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  ComplexMatrix unitary = ComplexMatrix::identity(2).scaled(Complex(c, 0.0));
  const ComplexMatrix generator =
      pauli(1).scaled(Complex(u.x, 0.0)) + pauli(2).scaled(Complex(u.y, 0.0)) +
      pauli(3).scaled(Complex(u.z, 0.0));
  unitary = unitary + generator.scaled(Complex(0.0, -s));
  return Channel::from_kraus({unitary});
}

Channel bit_flip_channel(double p) {
  check_probability(p, "bit flip probability");
  return Channel::from_kraus({ComplexMatrix::identity(2).scaled(Complex(std::sqrt(1.0 - p), 0.0)),
                              pauli(1).scaled(Complex(std::sqrt(p), 0.0))});
}

Channel phase_flip_channel(double p) {
  check_probability(p, "phase flip probability");
  return Channel::from_kraus({ComplexMatrix::identity(2).scaled(Complex(std::sqrt(1.0 - p), 0.0)),
                              pauli(3).scaled(Complex(std::sqrt(p), 0.0))});
}

Channel depolarizing_channel(double p) {
  check_probability(p, "depolarizing probability");
  std::vector<ComplexMatrix> ops;
  ops.push_back(ComplexMatrix::identity(2).scaled(Complex(std::sqrt(1.0 - 0.75 * p), 0.0)));
  const double w = std::sqrt(0.25 * p);
  if (w > 0.0) {
    for (std::size_t i = 1; i < 4; ++i) ops.push_back(pauli(i).scaled(Complex(w, 0.0)));
  }
  return Channel::from_kraus(std::move(ops));
}

Channel amplitude_damping_channel(double gamma) {
  check_probability(gamma, "damping rate");
  ComplexMatrix a0(2, 2);
  a0(0, 0) = Complex(1.0, 0.0);
  a0(1, 1) = Complex(std::sqrt(1.0 - gamma), 0.0);
  ComplexMatrix a1(2, 2);
  a1(0, 1) = Complex(std::sqrt(gamma), 0.0);
  return Channel::from_kraus({a0, a1});
}

Channel phase_damping_channel(double lambda) {
  check_probability(lambda, "damping rate");
  ComplexMatrix a0(2, 2);
  a0(0, 0) = Complex(1.0, 0.0);
  a0(1, 1) = Complex(std::sqrt(1.0 - lambda), 0.0);
  ComplexMatrix a1(2, 2);
  a1(1, 1) = Complex(std::sqrt(lambda), 0.0);
  return Channel::from_kraus({a0, a1});
}

Channel random_channel(CounterRng& rng, std::size_t kraus_count) {
  if (kraus_count < 1 || kraus_count > 4) {
    throw ValidationError("random channel environment dimension must be 1..4");
  }
  // Random isometry V: C^2 -> C^env (x) C^2 from Gaussian columns, twice
  // Gram-Schmidt orthonormalized; Kraus blocks are the environment slices.
  const std::size_t rows = 2 * kraus_count;
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<std::vector<Complex>> cols(2, std::vector<Complex>(rows));
  for (auto& col : cols) {
    for (auto& entry : col) entry = Complex(rng.normal() * r, rng.normal() * r);
  }
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t c = 0; c < 2; ++c) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        Complex overlap(0.0, 0.0);
        for (std::size_t i = 0; i < rows; ++i) {
          overlap += std::conj(cols[prev][i]) * cols[c][i];
        }
        for (std::size_t i = 0; i < rows; ++i) {
          cols[c][i] -= overlap * cols[prev][i];
        }
      }
      double norm_sq = 0.0;
      for (const Complex& v : cols[c]) norm_sq += std::norm(v);
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (Complex& v : cols[c]) v *= inv;
    }
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(kraus_count);
  for (std::size_t e = 0; e < kraus_count; ++e) {
    ComplexMatrix a(2, 2);
    for (std::size_t row = 0; row < 2; ++row) {
      for (std::size_t col = 0; col < 2; ++col) {
        a(row, col) = cols[col][e * 2 + row];
      }
    }
    ops.push_back(a);
  }
  return Channel::from_kraus(std::move(ops));
}

Channel random_channel(std::uint64_t seed, std::size_t kraus_count) {
  CounterRng rng(seed, kStreamChannel);
  return random_channel(rng, kraus_count);
}

}  // namespace aapt
