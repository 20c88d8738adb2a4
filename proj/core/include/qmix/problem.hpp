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

#ifndef QMIX_PROBLEM_HPP
#define QMIX_PROBLEM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qmix {

/// Bitstring over n binary variables, stored with x0 in bit 0.
/// Variable indices j are 1-based (bit j of the spec is x_{j-1}).
using Bitstring = std::uint32_t;

/// A linear range constraint a <= sum_k c_k * x_k <= b with positive
/// integer coefficients.
struct LinearConstraint {
  std::vector<long> coeffs;
  long lower = 0;
  long upper = 0;

  long coeff_sum() const;
  long max_coeff() const;
};

/// A constrained binary problem: n variables plus one or more linear
/// range constraints.
class Problem {
 public:
  Problem(int n, std::vector<LinearConstraint> constraints);

  int num_vars() const { return n_; }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<LinearConstraint>& constraints() const {
    return constraints_;
  }
  const LinearConstraint& constraint(int i) const;

  /// Value of constraint i's linear function at y.
  long evaluate_linear(int constraint_index, Bitstring y) const;

  bool is_feasible(Bitstring y) const;

  /// Sufficient condition for a connected feasible graph:
  /// b - a >= 2 * max coefficient, for every constraint.
  bool satisfies_width_condition() const;

 private:
  int n_;
  std::vector<LinearConstraint> constraints_;
};

/// Flip bit j (1-based) of y.
Bitstring neighbor(Bitstring y, int j, int n);

/// All feasible bitstrings plus the Hamming-distance-1 edges among them.
struct FeasibleSet {
  std::vector<Bitstring> bitstrings;
  std::vector<std::pair<Bitstring, Bitstring>> adjacency;
};

/// Brute-force enumeration over all 2^n assignments. Guarded at n <= 24.
FeasibleSet enumerate_feasible(const Problem& problem);

struct ConnectivityResult {
  bool connected = false;
  // On disconnect, two feasible solutions with no path between them.
  std::optional<std::pair<Bitstring, Bitstring>> witness;
};

/// Breadth-first traversal of the feasible graph. Throws on an empty
/// feasible set.
ConnectivityResult check_connectivity(const Problem& problem);

/// Parses the plain-text problem format: a line `n=<int>` followed by one
/// line per constraint `a <= c1 c2 ... cn <= b`.
Problem parse_problem(const std::string& text);
Problem load_problem_file(const std::string& path);

std::string to_bit_string(Bitstring y, int n);
Bitstring from_bit_string(const std::string& s);

}  // namespace qmix

#endif  // QMIX_PROBLEM_HPP
