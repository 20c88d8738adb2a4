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

#include "qmix/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace qmix {

ExactMixer::ExactMixer(const Problem& problem)
    : n_(problem.num_vars()), feasible_(enumerate_feasible(problem)) {
  if (n_ > 14)
    throw std::invalid_argument("ExactMixer is guarded at n <= 14");
  const std::size_t dim = std::size_t{1} << n_;
  const std::size_t f = feasible_.bitstrings.size();
  index_.assign(dim, -1);
  for (std::size_t k = 0; k < f; ++k)
    index_[feasible_.bitstrings[k]] = static_cast<int>(k);

  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(f),
                                            static_cast<Eigen::Index>(f));
  for (const auto& [u, v] : feasible_.adjacency) {
    const int iu = index_[u], iv = index_[v];
    b(iu, iv) = 1.0;
    b(iv, iu) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  vals_.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + f);
  vecs_.resize(f * f);
  for (std::size_t r = 0; r < f; ++r)
    for (std::size_t c = 0; c < f; ++c)
      vecs_[r * f + c] = solver.eigenvectors()(static_cast<Eigen::Index>(r),
                                               static_cast<Eigen::Index>(c));
}

void ExactMixer::apply(std::vector<std::complex<double>>& state,
                       double beta) const {
  const std::size_t dim = std::size_t{1} << n_;
  if (state.size() != dim)
    throw std::invalid_argument("state dimension mismatch");
  const std::size_t f = feasible_.bitstrings.size();

  // a' = V diag(exp(-i beta lambda)) V^T a on the feasible block.
  std::vector<std::complex<double>> a(f), c(f, 0.0);
  for (std::size_t k = 0; k < f; ++k) a[k] = state[feasible_.bitstrings[k]];
  for (std::size_t col = 0; col < f; ++col) {
    std::complex<double> acc = 0.0;
    for (std::size_t r = 0; r < f; ++r) acc += vecs_[r * f + col] * a[r];
    c[col] = acc * std::exp(std::complex<double>(0.0, -beta * vals_[col]));
  }
  for (std::size_t r = 0; r < f; ++r) {
    std::complex<double> acc = 0.0;
    for (std::size_t col = 0; col < f; ++col) acc += vecs_[r * f + col] * c[col];
    state[feasible_.bitstrings[r]] = acc;
  }
}

std::vector<std::complex<double>> uniform_feasible_state(
    const Problem& problem) {
  if (problem.num_vars() > 24)
    throw std::invalid_argument("uniform_feasible_state is guarded at n <= 24");
  const FeasibleSet fs = enumerate_feasible(problem);
  if (fs.bitstrings.empty())
    throw std::invalid_argument("problem has no feasible solutions");
  const std::size_t dim = std::size_t{1} << problem.num_vars();
  std::vector<std::complex<double>> state(dim, 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(fs.bitstrings.size()));
  for (Bitstring y : fs.bitstrings) state[y] = amp;
  return state;
}

std::vector<double> adjacency_matrix(const Problem& problem) {
  if (problem.num_vars() > 12)
    throw std::invalid_argument("adjacency_matrix is guarded at n <= 12");
  const std::size_t dim = std::size_t{1} << problem.num_vars();
  const FeasibleSet fs = enumerate_feasible(problem);
  std::vector<double> b(dim * dim, 0.0);
  for (const auto& [u, v] : fs.adjacency) {
    b[static_cast<std::size_t>(u) * dim + v] = 1.0;
    b[static_cast<std::size_t>(v) * dim + u] = 1.0;
  }
  return b;
}

}  // namespace qmix
