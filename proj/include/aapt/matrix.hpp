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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aapt {

using Complex = std::complex<double>;

/// Default cutoff below which a determinant is treated as zero.
inline constexpr double kSingularTol = 1e-12;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a matrix inversion is requested but |det| is at or below
/// the caller's tolerance.  Carries the offending |det|.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double abs_det)
      : std::runtime_error(what), abs_det_(abs_det) {}
  double abs_det() const { return abs_det_; }

 private:
  double abs_det_;
};

/// Dense row-major real matrix.  All problem sizes here are tiny
/// (2x2 up to 16x16), so everything is stored and computed densely.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static RealMatrix identity(std::size_t n);
  static RealMatrix diagonal(std::span<const double> entries);
  static RealMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> data() const { return data_; }

  RealMatrix transpose() const;
  RealMatrix operator*(const RealMatrix& rhs) const;
  RealMatrix operator+(const RealMatrix& rhs) const;
  RealMatrix operator-(const RealMatrix& rhs) const;
  RealMatrix scaled(double factor) const;

  std::vector<double> col(std::size_t j) const;
  std::vector<double> row(std::size_t i) const;

  /// Largest absolute entry; 0 for empty matrices.
  double max_abs() const;

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Singular value decomposition m = left * diag(singular_values) * right^T.
/// Singular values are sorted descending; ties and sign ambiguities are
/// resolved by making the first non-negligible entry of each left vector
/// positive, so results are reproducible.
struct SvdResult {
  RealMatrix left_vectors;
  std::vector<double> singular_values;
  RealMatrix right_vectors;

  RealMatrix reconstruct() const;
};

/// LU determinant with partial pivoting (direct formulas below 4x4).
/// Sign is preserved exactly; dimension must be <= 16.
double determinant(const RealMatrix& m);

/// One-sided Jacobi SVD.  Accurate to machine precision at these sizes.
SvdResult svd(const RealMatrix& m);

/// Gauss-Jordan inverse with partial pivoting.
/// Throws SingularMatrixError if |det(m)| <= tol.
RealMatrix invert(const RealMatrix& m, double tol = kSingularTol);

double frobenius_norm(const RealMatrix& m);

/// Largest singular value.
double spectral_norm(const RealMatrix& m);

/// Classical adjugate (transposed cofactor matrix): m * adjugate(m) = det(m) * I.
/// Well-defined for singular m, unlike the inverse.
RealMatrix adjugate(const RealMatrix& m);

/// Eigenvalues of a real symmetric matrix, ascending (cyclic Jacobi).
std::vector<double> symmetric_eigenvalues(const RealMatrix& m);

/// Dense row-major complex matrix for density operators and Kraus sets.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  Complex operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix scaled(Complex factor) const;

  Complex trace() const;
  bool all_finite() const;

  /// Largest |entry| deviation from the adjoint, 0 for exactly Hermitian.
  double hermiticity_defect() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& m);

/// Eigenvalues of a Hermitian matrix, ascending.  Computed through the
/// real-symmetric embedding [[Re, -Im], [Im, Re]], whose spectrum is the
/// Hermitian spectrum doubled.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace aapt
