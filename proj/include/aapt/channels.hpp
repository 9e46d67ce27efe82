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
#include <vector>

#include "aapt/matrix.hpp"
#include "aapt/rng.hpp"
#include "aapt/states.hpp"

namespace aapt {

/// Single-qubit CPTP map in Kraus form, E(rho) = sum_i A_i rho A_i^dag with
/// the completeness constraint sum_i A_i^dag A_i = I.
class Channel {
 public:
  static Channel from_kraus(std::vector<ComplexMatrix> ops, double tol = 1e-10);

  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  explicit Channel(std::vector<ComplexMatrix> ops) : kraus_(std::move(ops)) {}
  std::vector<ComplexMatrix> kraus_;
};

/// Process matrix chi in the Pauli basis: E(rho) = sum_jk chi_jk sigma_j rho sigma_k.
/// Hermitian by construction; PSD and trace-preserving for physical channels
/// (query psd_defect / tp_defect — noisy reconstructions may violate both).
class ChiMatrix {
 public:
  static ChiMatrix from_matrix(const ComplexMatrix& m, double hermitian_tol = 1e-9);

  const ComplexMatrix& matrix() const { return m_; }

  /// Most negative eigenvalue clamped to 0 for PSD input.
  double psd_defect() const;

  /// Frobenius distance of sum_jk chi_jk sigma_k sigma_j from the identity
  /// (zero exactly for trace-preserving channels).
  double tp_defect() const;

 private:
  explicit ChiMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Pauli transfer matrix chi-tilde: the 4x4 real map a_out = chi_tilde a_in
/// on Pauli coefficient vectors, equivalently chi_tilde_mi = (1/2) Tr[sigma_m E(sigma_i)].
/// For trace-preserving channels the first row is (1,0,0,0); noisy estimates
/// carry a small defect there, so it is a query, not an invariant.
class ChiTilde {
 public:
  static ChiTilde from_matrix(const RealMatrix& m);

  const RealMatrix& matrix() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double tp_row_defect() const;

 private:
  explicit ChiTilde(RealMatrix m) : m_(std::move(m)) {}
  RealMatrix m_;
};

/// The Pauli structure tensor B_jikm = Tr[sigma_j sigma_i sigma_k sigma_m];
/// every entry is 0, +/-2, or +/-2i.  Links chi to chi-tilde.
class BTensor {
 public:
  BTensor();
  Complex operator()(std::size_t j, std::size_t i, std::size_t k, std::size_t m) const {
    return entries_[((j * 4 + i) * 4 + k) * 4 + m];
  }

 private:
  std::vector<Complex> entries_;
};

/// Shared read-only instance, built once.
const BTensor& b_tensor();

/// Apply the channel: 2x2 input -> E(rho); 4x4 input -> (E (x) I)(rho) with
/// the channel acting on the system (first) qubit.
DensityMatrix apply(const Channel& ch, const DensityMatrix& rho);

/// chi_jk = sum_i c_ij conj(c_ik) with c_ij = Tr[sigma_j A_i] / 2.
ChiMatrix chi_from_kraus(const Channel& ch);

/// Contraction chi_tilde_mi = (1/2) sum_jk chi_jk B_jikm.  The imaginary part
/// must cancel for Hermitian chi; a residue above 1e-8 throws.
ChiTilde chi_tilde_from_chi(const ChiMatrix& chi);

/// Inverse of chi_tilde_from_chi: solves the (precomputed) 16x16 real linear
/// system over the Hermitian degrees of freedom of chi.
ChiMatrix chi_from_chi_tilde(const ChiTilde& ct);

/// Direct transfer matrix by applying the Kraus set to each Pauli:
/// chi_tilde_mi = (1/2) Tr[sigma_m E(sigma_i)].  Independent of the B-tensor
/// path; the two must agree for every channel.
ChiTilde chi_tilde_direct(const Channel& ch);

Channel identity_channel();
/// Unitary rotation exp(-i angle/2 axis.sigma); axis need not be normalized.
Channel rotation_channel(const BlochVector& axis, double angle);
Channel bit_flip_channel(double p);
Channel phase_flip_channel(double p);
/// E(rho) = (1-p) rho + p I/2.
Channel depolarizing_channel(double p);
Channel amplitude_damping_channel(double gamma);
Channel phase_damping_channel(double lambda);

/// Random CPTP map via Stinespring dilation: a Haar-ish random isometry into
/// system (x) environment, environment traced out.  kraus_count is the
/// environment dimension (1..4).
Channel random_channel(CounterRng& rng, std::size_t kraus_count = 4);
Channel random_channel(std::uint64_t seed, std::size_t kraus_count = 4);

}  // namespace aapt
