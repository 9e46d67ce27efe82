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

#include "aapt/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aapt {

namespace {

constexpr std::size_t kMaxDim = 32;

void require_square(const RealMatrix& m, const char* op) {
  if (!m.is_square() || m.rows() == 0) {
    throw DimensionError(std::string(op) + ": matrix must be square and non-empty");
  }
  if (m.rows() > kMaxDim) {
    throw DimensionError(std::string(op) + ": dimension exceeds supported maximum");
  }
}

}  // namespace

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::diagonal(std::span<const double> entries) {
  RealMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

RealMatrix RealMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  RealMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("from_rows: ragged rows");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RealMatrix RealMatrix::operator*(const RealMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionError("matrix product: inner dimensions differ");
  RealMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        out(i, j) += a * rhs(k, j);
      }
    }
  }
  return out;
}

RealMatrix RealMatrix::operator+(const RealMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("matrix sum: shapes differ");
  }
  RealMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
  return out;
}

RealMatrix RealMatrix::operator-(const RealMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("matrix difference: shapes differ");
  }
  RealMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
  return out;
}

RealMatrix RealMatrix::scaled(double factor) const {
  RealMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * factor;
  return out;
}

std::vector<double> RealMatrix::col(std::size_t j) const {
  std::vector<double> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<double> RealMatrix::row(std::size_t i) const {
  std::vector<double> v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

double RealMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool RealMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

RealMatrix SvdResult::reconstruct() const {
  RealMatrix s(singular_values.size(), singular_values.size());
  for (std::size_t i = 0; i < singular_values.size(); ++i) s(i, i) = singular_values[i];
  return left_vectors * s * right_vectors.transpose();
}

double determinant(const RealMatrix& m) {
  require_square(m, "determinant");
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (n == 3) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }

  RealMatrix a = m;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        pivot = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      det = -det;
    }
    det *= a(k, k);
    const double inv_pivot = 1.0 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = a(i, k) * inv_pivot;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return det;
}

namespace {

// Gram-Schmidt completion used when the input matrix is rank deficient:
// fills columns [rank, n) of u with an orthonormal basis of the orthogonal
// complement of the non-null columns.
void complete_basis(RealMatrix& u, std::size_t rank) {
  const std::size_t n = u.rows();
  std::size_t next = rank;
  for (std::size_t e = 0; e < n && next < n; ++e) {
    std::vector<double> v(n, 0.0);
    v[e] = 1.0;
    for (std::size_t j = 0; j < next; ++j) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += u(i, j) * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= dot * u(i, j);
    }
    double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (norm < 1e-8) continue;
    for (std::size_t i = 0; i < n; ++i) u(i, next) = v[i] / norm;
    ++next;
  }
}

}  // namespace

SvdResult svd(const RealMatrix& m) {
  require_square(m, "svd");
  const std::size_t n = m.rows();

  // One-sided Jacobi: rotate column pairs of a working copy until all pairs
  // are orthogonal; the column norms are then the singular values and the
  // accumulated rotations form the right factor.
  RealMatrix a = m;
  RealMatrix v = RealMatrix::identity(n);
  const double eps = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          app += a(i, p) * a(i, p);
          aqq += a(i, q) * a(i, q);
          apq += a(i, p) * a(i, q);
        }
        off = std::max(off, std::abs(apq) / (std::sqrt(app * aqq) + 1e-300));
        if (std::abs(apq) <= eps * std::sqrt(app * aqq)) continue;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const double ap = a(i, p), aq = a(i, q);
          a(i, p) = c * ap - s * aq;
          a(i, q) = s * ap + c * aq;
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (off < eps) break;
  }

  std::vector<double> sigma(n);
  RealMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm_sq += a(i, j) * a(i, j);
    sigma[j] = std::sqrt(norm_sq);
  }

  // Descending order; stable so that repeated singular values keep the
  // rotation ordering and results stay deterministic.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SvdResult out;
  out.singular_values.resize(n);
  out.left_vectors = RealMatrix(n, n);
  out.right_vectors = RealMatrix(n, n);
  const double rank_tol = 1e-13 * std::max(1.0, sigma.empty() ? 0.0 : sigma[order[0]]);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.singular_values[j] = sigma[src];
    for (std::size_t i = 0; i < n; ++i) out.right_vectors(i, j) = v(i, src);
    if (sigma[src] > rank_tol) {
      for (std::size_t i = 0; i < n; ++i) {
        out.left_vectors(i, j) = a(i, src) / sigma[src];
      }
      ++rank;
    }
  }
  if (rank < n) complete_basis(out.left_vectors, rank);

  // Canonical signs: first non-negligible entry of each left vector positive.
  // The matching right vector flips with it so the product is unchanged.
  for (std::size_t j = 0; j < n; ++j) {
    double lead = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(out.left_vectors(i, j)) > 1e-12) {
        lead = out.left_vectors(i, j);
        break;
      }
    }
    if (lead < 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        out.left_vectors(i, j) = -out.left_vectors(i, j);
        out.right_vectors(i, j) = -out.right_vectors(i, j);
      }
    }
  }
  return out;
}

RealMatrix invert(const RealMatrix& m, double tol) {
  require_square(m, "invert");
  const double det = determinant(m);
  if (std::abs(det) <= tol) {
    throw SingularMatrixError("invert: matrix is singular to tolerance", std::abs(det));
  }

  const std::size_t n = m.rows();
  RealMatrix a = m;
  RealMatrix inv = RealMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        pivot = i;
      }
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(pivot, j));
        std::swap(inv(k, j), inv(pivot, j));
      }
    }
    const double inv_pivot = 1.0 / a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) *= inv_pivot;
      inv(k, j) *= inv_pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double factor = a(i, k);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= factor * a(k, j);
        inv(i, j) -= factor * inv(k, j);
      }
    }
  }
  return inv;
}

double frobenius_norm(const RealMatrix& m) {
  double sum = 0.0;
  for (double v : m.data()) sum += v * v;
  return std::sqrt(sum);
}

double spectral_norm(const RealMatrix& m) {
  const SvdResult dec = svd(m);
  return dec.singular_values.empty() ? 0.0 : dec.singular_values.front();
}

RealMatrix adjugate(const RealMatrix& m) {
  require_square(m, "adjugate");
  const std::size_t n = m.rows();
  if (n == 1) {
    RealMatrix out(1, 1);
    out(0, 0) = 1.0;
    return out;
  }
  RealMatrix out(n, n);
  RealMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t mi = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::size_t mj = 0;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mi, mj) = m(r, c);
          ++mj;
        }
        ++mi;
      }
      const double cofactor = (((i + j) % 2 == 0) ? 1.0 : -1.0) * determinant(minor);
      out(j, i) = cofactor;  // transposed on the fly
    }
  }
  return out;
}

std::vector<double> symmetric_eigenvalues(const RealMatrix& m) {
  if (!m.is_square() || m.rows() == 0) {
    throw DimensionError("symmetric_eigenvalues: matrix must be square and non-empty");
  }
  const std::size_t n = m.rows();
  RealMatrix a = m;
  // Symmetrize first so tiny asymmetries from upstream arithmetic cannot
  // stall convergence.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = avg;
      a(j, i) = avg;
    }
  }

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (off < 1e-30 * std::max(1.0, frobenius_norm(a))) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const double app = a(p, p), aqq = a(q, q), apq = a(p, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(p, i) = a(i, p);
          a(i, q) = s * aip + c * aiq;
          a(q, i) = a(i, q);
        }
      }
    }
  }

  std::vector<double> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = a(i, i);
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("from_rows: ragged rows");
    std::size_t j = 0;
    for (Complex v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionError("matrix product: inner dimensions differ");
  ComplexMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = (*this)(i, k);
      if (a == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        out(i, j) += a * rhs(k, j);
      }
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("matrix sum: shapes differ");
  }
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("matrix difference: shapes differ");
  }
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
  return out;
}

ComplexMatrix ComplexMatrix::scaled(Complex factor) const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * factor;
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace: matrix must be square");
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](Complex v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) throw DimensionError("hermiticity_defect: matrix must be square");
  double defect = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      defect = std::max(defect, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return defect;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex f = a(i, j);
      if (f == Complex(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = f * b(k, l);
        }
      }
    }
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      sum += std::norm(m(i, j));
    }
  }
  return std::sqrt(sum);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.is_square() || m.rows() == 0) {
    throw DimensionError("hermitian_eigenvalues: matrix must be square and non-empty");
  }
  const std::size_t n = m.rows();
  RealMatrix embed(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex v = m(i, j);
      embed(i, j) = v.real();
      embed(i + n, j + n) = v.real();
      embed(i, j + n) = -v.imag();
      embed(i + n, j) = v.imag();
    }
  }
  const std::vector<double> doubled = symmetric_eigenvalues(embed);
  std::vector<double> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = doubled[2 * i];
  return eigs;
}

}  // namespace aapt
