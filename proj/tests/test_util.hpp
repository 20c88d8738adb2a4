// Copyright 2026 The qmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMIX_TESTS_TEST_UTIL_HPP
#define QMIX_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmix_test {

using CV = std::vector<std::complex<double>>;

inline double max_abs_diff(const CV& a, const CV& b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

/// For a unitary that permutes basis states: the row index the given
/// column maps to. Throws if the column is not a basis state.
inline std::size_t mapped_basis(const CV& u, std::size_t dim,
                                std::size_t col, double tol = 1e-9) {
  std::size_t hit = dim;
  for (std::size_t r = 0; r < dim; ++r) {
    const double m = std::abs(u[r * dim + col]);
    if (m > tol) {
      if (hit != dim || std::abs(m - 1.0) > tol)
        throw std::runtime_error("column is not a basis state");
      hit = r;
    }
  }
  if (hit == dim) throw std::runtime_error("zero column");
  return hit;
}

inline std::string fixture(const char* name) {
  return std::string(QMIX_FIXTURE_DIR) + "/" + name;
}

}  // namespace qmix_test

#endif  // QMIX_TESTS_TEST_UTIL_HPP
