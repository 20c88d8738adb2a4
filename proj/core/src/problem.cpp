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

#include "qmix/problem.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qmix {

long LinearConstraint::coeff_sum() const {
  return std::accumulate(coeffs.begin(), coeffs.end(), 0L);
}

long LinearConstraint::max_coeff() const {
  return *std::max_element(coeffs.begin(), coeffs.end());
}

Problem::Problem(int n, std::vector<LinearConstraint> constraints)
    : n_(n), constraints_(std::move(constraints)) {
  if (n_ < 1) throw std::invalid_argument("problem needs at least one variable");
  if (constraints_.empty())
    throw std::invalid_argument("problem needs at least one constraint");
  for (const auto& c : constraints_) {
    if (static_cast<int>(c.coeffs.size()) != n_)
      throw std::invalid_argument("constraint coefficient count != n");
    for (long l : c.coeffs)
      if (l <= 0) throw std::invalid_argument("coefficients must be positive");
    if (c.lower > c.upper)
      throw std::invalid_argument("constraint lower bound exceeds upper bound");
  }
}

const LinearConstraint& Problem::constraint(int i) const {
  if (i < 0 || i >= num_constraints())
    throw std::invalid_argument("constraint index out of range");
  return constraints_[static_cast<std::size_t>(i)];
}

long Problem::evaluate_linear(int constraint_index, Bitstring y) const {
  const auto& c = constraint(constraint_index);
  long v = 0;
  for (int k = 0; k < n_; ++k)
    if ((y >> k) & 1u) v += c.coeffs[static_cast<std::size_t>(k)];
  return v;
}

bool Problem::is_feasible(Bitstring y) const {
  for (int i = 0; i < num_constraints(); ++i) {
    long v = evaluate_linear(i, y);
    if (v < constraints_[static_cast<std::size_t>(i)].lower ||
        v > constraints_[static_cast<std::size_t>(i)].upper)
      return false;
  }
  return true;
}

bool Problem::satisfies_width_condition() const {
  for (const auto& c : constraints_)
    if (c.upper - c.lower < 2 * c.max_coeff()) return false;
  return true;
}

Bitstring neighbor(Bitstring y, int j, int n) {
  if (j < 1 || j > n) throw std::invalid_argument("neighbor index out of range");
  return y ^ (Bitstring{1} << (j - 1));
}

FeasibleSet enumerate_feasible(const Problem& problem) {
  const int n = problem.num_vars();
  if (n > 24) throw std::length_error("enumeration guard: n > 24");
  FeasibleSet out;
  std::vector<bool> feasible(std::size_t{1} << n, false);
  for (Bitstring y = 0; y < (Bitstring{1} << n); ++y) {
    if (problem.is_feasible(y)) {
      feasible[y] = true;
      out.bitstrings.push_back(y);
    }
  }
  for (Bitstring y : out.bitstrings) {
    for (int j = 1; j <= n; ++j) {
      Bitstring z = neighbor(y, j, n);
      if (z > y && feasible[z]) out.adjacency.emplace_back(y, z);
    }
  }
  return out;
}

ConnectivityResult check_connectivity(const Problem& problem) {
  FeasibleSet fs = enumerate_feasible(problem);
  if (fs.bitstrings.empty())
    throw std::domain_error("empty feasible set");
  const int n = problem.num_vars();
  std::vector<bool> feasible(std::size_t{1} << n, false);
  for (Bitstring y : fs.bitstrings) feasible[y] = true;

  std::vector<bool> seen(std::size_t{1} << n, false);
  std::deque<Bitstring> queue{fs.bitstrings.front()};
  seen[fs.bitstrings.front()] = true;
  while (!queue.empty()) {
    Bitstring y = queue.front();
    queue.pop_front();
    for (int j = 1; j <= n; ++j) {
      Bitstring z = neighbor(y, j, n);
      if (feasible[z] && !seen[z]) {
        seen[z] = true;
        queue.push_back(z);
      }
    }
  }
  for (Bitstring y : fs.bitstrings) {
    if (!seen[y])
      return {false, std::make_pair(fs.bitstrings.front(), y)};
  }
  return {true, std::nullopt};
}

Problem parse_problem(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::vector<LinearConstraint> constraints;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (n < 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos || line.substr(first, eq - first).find('n') == std::string::npos)
        throw std::invalid_argument("expected leading 'n=<int>' line");
      n = std::stoi(line.substr(eq + 1));
      continue;
    }
    // `a <= c1 c2 ... cn <= b`
    std::string cleaned = line;
    std::size_t pos;
    while ((pos = cleaned.find("<=")) != std::string::npos)
      cleaned.replace(pos, 2, " ");
    std::istringstream ls(cleaned);
    std::vector<long> nums;
    long v;
    while (ls >> v) nums.push_back(v);
    if (static_cast<int>(nums.size()) != n + 2)
      throw std::invalid_argument("constraint line has wrong number of fields");
    LinearConstraint c;
    c.lower = nums.front();
    c.upper = nums.back();
    c.coeffs.assign(nums.begin() + 1, nums.end() - 1);
    constraints.push_back(std::move(c));
  }
  if (n < 0) throw std::invalid_argument("missing 'n=' line");
  return Problem(n, std::move(constraints));
}

Problem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string to_bit_string(Bitstring y, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k)
    if ((y >> k) & 1u) s[static_cast<std::size_t>(k)] = '1';
  return s;
}

Bitstring from_bit_string(const std::string& s) {
  Bitstring y = 0;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k] == '1') y |= Bitstring{1} << k;
  return y;
}

}  // namespace qmix
