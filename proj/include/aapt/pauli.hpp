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

#include <cstddef>

#include "aapt/matrix.hpp"

namespace aapt {

/// Pauli basis element: pauli(0) = I, pauli(1) = X, pauli(2) = Y, pauli(3) = Z.
const ComplexMatrix& pauli(std::size_t i);

/// Two-qubit basis element sigma_i (x) sigma_j, cached.
const ComplexMatrix& pauli_pair(std::size_t i, std::size_t j);

}  // namespace aapt
