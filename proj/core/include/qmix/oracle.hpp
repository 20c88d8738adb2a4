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

#ifndef QMIX_ORACLE_HPP
#define QMIX_ORACLE_HPP

#include <complex>
#include <vector>

#include "qmix/problem.hpp"

namespace qmix {

/// Reference implementation of the mixer unitary exp(-i beta B), where B
/// is the adjacency matrix of the feasible graph (entry 1 between feasible
/// bitstrings at Hamming distance 1, 0 elsewhere). Built once from an
/// eigendecomposition of B restricted to the feasible set; infeasible
/// basis states are left untouched. Guarded at n <= 14.
class ExactMixer {
 public:
  explicit ExactMixer(const Problem& problem);

  /// Applies exp(-i beta B) in place to a 2^n statevector (x0 in bit 0).
  void apply(std::vector<std::complex<double>>& state, double beta) const;

  const FeasibleSet& feasible() const { return feasible_; }
  int num_vars() const { return n_; }

 private:
  int n_;
  FeasibleSet feasible_;
  std::vector<int> index_;   // basis state -> feasible index, or -1
  std::vector<double> vals_;  // eigenvalues of B restricted to the set
  std::vector<double> vecs_;  // row-major |F| x |F|, column k = eigenvector k
};

/// Equal-amplitude superposition over the feasible set, as a 2^n
/// statevector.
std::vector<std::complex<double>> uniform_feasible_state(
    const Problem& problem);

/// Dense 2^n x 2^n adjacency matrix of the feasible graph, row-major.
/// Guarded at n <= 12; intended for tests and small experiments.
std::vector<double> adjacency_matrix(const Problem& problem);

}  // namespace qmix

#endif  // QMIX_ORACLE_HPP
