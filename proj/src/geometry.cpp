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

#include "aapt/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "aapt/matrix.hpp"
#include "aapt/rng.hpp"

namespace aapt {

namespace {

constexpr std::uint64_t kStreamSearch = 0x73726368;

double volume_of(const std::array<BlochVector, 4>& v) {
  return tetra_volume_signed(v[0], v[1], v[2], v[3]);
}

// One pass of vertex updates for one side of the decomposition.  The volume
// is affine in each vertex, so the exact constrained maximizer of
// other_side_volume * volume over the unit ball is the unit vector along the
// gradient, signed to match the other side's orientation.  Every update is
// monotone in the product, so the ascent cannot cycle.  Returns the side's
// volume after the sweep.
double ascend_vertices(std::array<BlochVector, 4>& v, double other_side_volume) {
  const double want = other_side_volume >= 0.0 ? 1.0 : -1.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const BlochVector saved = v[k];
    v[k] = {0.0, 0.0, 0.0};
    const double base = volume_of(v);
    v[k] = {1.0, 0.0, 0.0};
    const double gx = volume_of(v) - base;
    v[k] = {0.0, 1.0, 0.0};
    const double gy = volume_of(v) - base;
    v[k] = {0.0, 0.0, 1.0};
    const double gz = volume_of(v) - base;
    const BlochVector grad{gx, gy, gz};
    const double len = grad.norm();
    if (len < 1e-30) {
      v[k] = saved;  // degenerate face; leave the vertex alone
      continue;
    }
    v[k] = grad.scaled(want / len);
  }
  return volume_of(v);
}

}  // namespace

double tetra_volume_signed(const BlochVector& v1, const BlochVector& v2,
                           const BlochVector& v3, const BlochVector& v4) {
  const BlochVector e1 = v2 - v1;
  const BlochVector e2 = v3 - v1;
  const BlochVector e3 = v4 - v1;
  return e1.dot(e2.cross(e3)) / 6.0;
}

double separable_sinisterness(const SeparableSpec& spec) {
  spec.validate();
  const double p = spec.weights[0] * spec.weights[1] * spec.weights[2] * spec.weights[3];
  const double va = volume_of(spec.system_vertices);
  const double vb = volume_of(spec.ancilla_vertices);
  return 36.0 * p * va * vb;
}

Simplex regular_simplex(std::size_t n) {
  if (n < 1) throw ValidationError("regular_simplex: dimension must be >= 1");
  // Helmert basis rows are orthonormal and orthogonal to (1,...,1), so the
  // centered identity columns land in R^n with all the regular-simplex
  // symmetries intact; scaling restores unit circumradius.
  Simplex s;
  s.dimension = n;
  s.vertices.assign(n + 1, std::vector<double>(n, 0.0));
  const double scale = std::sqrt(static_cast<double>(n + 1) / static_cast<double>(n));
  for (std::size_t vertex = 0; vertex <= n; ++vertex) {
    for (std::size_t k = 1; k <= n; ++k) {
      const double denom = std::sqrt(static_cast<double>(k) * static_cast<double>(k + 1));
      double h = 0.0;
      if (vertex < k) {
        h = 1.0 / denom;
      } else if (vertex == k) {
        h = -static_cast<double>(k) / denom;
      }
      s.vertices[vertex][k - 1] = h * scale;
    }
  }
  return s;
}

double simplex_volume(const Simplex& s) {
  const std::size_t n = s.dimension;
  if (s.vertices.size() != n + 1) {
    throw ValidationError("simplex must have n+1 vertices");
  }
  RealMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        dot += (s.vertices[i + 1][c] - s.vertices[0][c]) *
               (s.vertices[j + 1][c] - s.vertices[0][c]);
      }
      gram(i, j) = dot;
    }
  }
  const double det = determinant(gram);
  if (det <= 0.0) return 0.0;  // degenerate within rounding
  double factorial = 1.0;
  for (std::size_t k = 2; k <= n; ++k) factorial *= static_cast<double>(k);
  return std::sqrt(det) / factorial;
}

ScalingReport optimal_diagonal_scaling(unsigned n_qubits) {
  if (n_qubits < 1) throw DimensionError("scaling: qubit count must be >= 1");
  if (n_qubits > 10) {
    throw DimensionError("scaling: capped at 10 qubits (diagonal has 4^N entries)");
  }
  ScalingReport report;
  report.n_qubits = n_qubits;
  report.m = std::uint64_t(1) << (2 * n_qubits);
  const double m_minus_1 = static_cast<double>(report.m - 1);
  report.kappa = m_minus_1;
  report.log10_det_abs = -m_minus_1 * std::log10(m_minus_1);
  report.det_abs = std::pow(10.0, report.log10_det_abs);
  report.tau_diagonal.assign(report.m, 1.0 / m_minus_1);
  report.tau_diagonal[0] = 1.0;
  return report;
}

SeparableSearchResult maximize_separable_det(std::uint64_t seed, unsigned restarts) {
  if (restarts < 1) throw ValidationError("maximize_separable_det: need >= 1 restart");

  SeparableSearchResult best;
  best.det = -2.0;
  for (unsigned r = 0; r < restarts; ++r) {
    CounterRng rng = CounterRng::derive(seed ^ kStreamSearch, r);
    SeparableSpec spec = random_separable(rng);
    spec.weights = {0.25, 0.25, 0.25, 0.25};  // provably optimal by AM-GM

    double previous = -2.0;
    for (int sweep = 0; sweep < 200; ++sweep) {
      const double vb = volume_of(spec.ancilla_vertices);
      const double va = ascend_vertices(spec.system_vertices, vb);
      ascend_vertices(spec.ancilla_vertices, va);
      const double det = separable_sinisterness(spec);
      if (det - previous < 1e-15) break;
      previous = det;
    }
    const double det = separable_sinisterness(spec);
    if (det > best.det) {
      best.det = det;
      best.spec = spec;
    }
  }
  return best;
}

SeparableSpec optimal_tetrahedral_spec(int sign) {
  if (sign != 1 && sign != -1) {
    throw ValidationError("optimal tetrahedral orientation must be +1 or -1");
  }
  const double r = 1.0 / std::sqrt(3.0);
  SeparableSpec spec;
  spec.weights = {0.25, 0.25, 0.25, 0.25};
  spec.system_vertices = {BlochVector{r, r, r}, BlochVector{r, -r, -r},
                          BlochVector{-r, r, -r}, BlochVector{-r, -r, r}};
  for (std::size_t n = 0; n < 4; ++n) {
    const BlochVector& a = spec.system_vertices[n];
    spec.ancilla_vertices[n] = sign > 0 ? a : a.scaled(-1.0);
  }
  return spec;
}

}  // namespace aapt
