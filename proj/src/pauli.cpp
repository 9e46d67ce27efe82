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

#include "aapt/pauli.hpp"

#include <array>

namespace aapt {

namespace {

std::array<ComplexMatrix, 4> make_paulis() {
  const Complex i(0.0, 1.0);
  return {
      ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}}),
      ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}),
      ComplexMatrix::from_rows({{0.0, -i}, {i, 0.0}}),
      ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}),
  };
}

}  // namespace

const ComplexMatrix& pauli(std::size_t i) {
  static const std::array<ComplexMatrix, 4> sigmas = make_paulis();
  return sigmas.at(i);
}

const ComplexMatrix& pauli_pair(std::size_t i, std::size_t j) {
  static const std::array<ComplexMatrix, 16> pairs = [] {
    std::array<ComplexMatrix, 16> out;
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b) {
        out[a * 4 + b] = kron(pauli(a), pauli(b));
      }
    }
    return out;
  }();
  if (i > 3 || j > 3) throw DimensionError("pauli_pair: index out of range");
  return pairs[i * 4 + j];
}

}  // namespace aapt
