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

#include "qmix/arith.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmix {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

int accumulator_width(long coeff_sum) {
  if (coeff_sum < 1) throw std::invalid_argument("coefficient sum must be >= 1");
  int bits = 0;
  while ((1L << bits) < coeff_sum + 1) ++bits;
  return bits + 1;  // sign bit
}

void append_qft(Circuit& c, const std::vector<int>& q) {
  const int w = static_cast<int>(q.size());
  for (int j = w - 1; j >= 0; --j) {
    c.h(q[static_cast<std::size_t>(j)]);
    for (int k = j - 1; k >= 0; --k)
      c.cphase(q[static_cast<std::size_t>(k)], q[static_cast<std::size_t>(j)],
               kPi / static_cast<double>(1L << (j - k)));
  }
  for (int k = 0; k < w / 2; ++k)
    c.swap(q[static_cast<std::size_t>(k)],
           q[static_cast<std::size_t>(w - 1 - k)]);
}

void append_iqft(Circuit& c, const std::vector<int>& q) {
  Circuit tmp(c.layout());
  append_qft(tmp, q);
  c.append(inverse(tmp));
}

void append_fourier_const(Circuit& c, const std::vector<int>& q, long k,
                          const std::vector<Control>& controls) {
  const int w = static_cast<int>(q.size());
  const long mod = 1L << w;
  long r = ((k % mod) + mod) % mod;
  if (r == 0) return;
  for (int j = 0; j < w; ++j) {
    // 2*pi * r * 2^j / 2^w, reduced mod 2*pi.
    const long num = (r << j) % mod;
    if (num == 0) continue;
    const double angle = 2.0 * kPi * static_cast<double>(num) /
                         static_cast<double>(mod);
    Gate g{GateKind::Phase, angle, {q[static_cast<std::size_t>(j)]}, controls};
    c.append(std::move(g));
  }
}

void append_const_adder(Circuit& c, const std::vector<int>& q, long k,
                        const std::vector<Control>& controls) {
  append_qft(c, q);
  append_fourier_const(c, q, k, controls);
  append_iqft(c, q);
}

void append_weighted_adder(Circuit& c, const std::vector<int>& x,
                           const std::vector<int>& q,
                           const std::vector<long>& coeffs) {
  if (x.size() != coeffs.size())
    throw std::invalid_argument("weighted adder: coefficient count mismatch");
  append_qft(c, q);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (coeffs[j] == 0) continue;
    append_fourier_const(c, q, coeffs[j], {{x[j], 1}});
  }
  append_iqft(c, q);
}

int comparator_flag_count(long a, long b, long coeff_sum) {
  return (a > 0 ? 1 : 0) + (b < coeff_sum ? 1 : 0);
}

void append_range_comparator(Circuit& c, const std::vector<int>& q, long a,
                             long b, long coeff_sum,
                             const std::vector<int>& flags) {
  const bool low = a > 0;
  const bool high = b < coeff_sum;
  if (static_cast<int>(flags.size()) != (low ? 1 : 0) + (high ? 1 : 0))
    throw std::invalid_argument("comparator: wrong flag count");
  if (!low && !high) return;
  const int sign = q.back();
  std::size_t f = 0;

  long offset = 0;  // value currently added to the register
  if (low) {
    // p - a >= 0 <=> sign bit clear.
    append_const_adder(c, q, -a);
    offset = -a;
    c.append({GateKind::X, 0.0, {flags[f++]}, {{sign, 0}}});
  }
  if (high) {
    // p - b - 1 < 0 <=> sign bit set.
    append_const_adder(c, q, -b - 1 - offset);
    offset = -b - 1;
    c.append({GateKind::X, 0.0, {flags[f++]}, {{sign, 1}}});
  }
  append_const_adder(c, q, -offset);
}

}  // namespace qmix
