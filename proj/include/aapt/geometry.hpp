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

#include "aapt/states.hpp"

namespace aapt {

/// n+1 points in R^n.  Vertices are unit vectors when sphere-inscribed.
struct Simplex {
  std::size_t dimension = 0;
  std::vector<std::vector<double>> vertices;
};

/// Diagonal-tau scaling numbers for an N-qubit system with ancilla:
/// M = 4^N, the optimal faithful separable construction has
/// tau = diag(1, 1/(M-1), ..., 1/(M-1)), kappa = M-1 and
/// |det| = (M-1)^-(M-1).  det_abs underflows to 0 for large N; the exact
/// value lives in log10_det_abs.
struct ScalingReport {
  unsigned n_qubits = 0;
  std::uint64_t m = 0;
  double kappa = 0.0;
  double det_abs = 0.0;
  double log10_det_abs = 0.0;
  std::vector<double> tau_diagonal;
};

struct SeparableSearchResult {
  SeparableSpec spec;
  double det = 0.0;
};

/// Signed tetrahedron volume det[v2-v1, v3-v1, v4-v1] / 6.  The sign carries
/// orientation; swapping two vertices flips it.
double tetra_volume_signed(const BlochVector& v1, const BlochVector& v2,
                           const BlochVector& v3, const BlochVector& v4);

/// Closed-form determinant of a rank-4 separable decomposition:
/// det(tau) = 36 P1 P2 P3 P4 V(a1..a4) V(b1..b4) with signed volumes.
/// Agrees with the density-matrix pipeline; bounded by |det| <= 1/27.
double separable_sinisterness(const SeparableSpec& spec);

/// n+1 unit vertices in R^n with pairwise dot -1/n and centroid at the
/// origin (Helmert-basis construction).
Simplex regular_simplex(std::size_t n);

/// sqrt(det Gram) / n! over the edge vectors from vertex 0.
double simplex_volume(const Simplex& s);

/// Condition number and determinant of the optimal diagonal n-qubit input;
/// n is capped at 10 (the diagonal alone has 4^n entries).
ScalingReport optimal_diagonal_scaling(unsigned n_qubits);

/// Random-restart coordinate ascent over vertex sets (weights pinned at the
/// provably optimal 1/4) maximizing the separable determinant.  Converges to
/// regular tetrahedra with det within 1e-4 of the 1/27 bound given >= 10
/// restarts.
SeparableSearchResult maximize_separable_det(std::uint64_t seed, unsigned restarts);

/// Exact optimum: regular tetrahedron on the system side, the ancilla copy
/// oriented to give det = sign/27.  sign must be +1 or -1; -1 (the sinister
/// orientation, mirroring entangled states) is the default.
SeparableSpec optimal_tetrahedral_spec(int sign = -1);

}  // namespace aapt
