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

#ifndef QMIX_ARITH_HPP
#define QMIX_ARITH_HPP

#include <vector>

#include "qmix/circuit.hpp"
#include "qmix/problem.hpp"

namespace qmix {

/// Two's-complement register width that holds every partial sum of a
/// constraint with the given coefficient total, plus a sign bit.
int accumulator_width(long coeff_sum);

/// Quantum Fourier transform on the given qubits (q[0] is the least
/// significant bit), including the final reversal swaps, so that the
/// block equals the DFT matrix exactly.
void append_qft(Circuit& c, const std::vector<int>& q);
void append_iqft(Circuit& c, const std::vector<int>& q);

/// Phase block that adds the constant k (mod 2^w) to a register already
/// in the Fourier basis: phase 2*pi*k*2^j / 2^w on qubit q[j]. Controls,
/// if any, gate the whole addition.
void append_fourier_const(Circuit& c, const std::vector<int>& q, long k,
                          const std::vector<Control>& controls = {});

/// Computational-basis constant adder: QFT, phase block, inverse QFT.
/// Only the phase block carries the controls.
void append_const_adder(Circuit& c, const std::vector<int>& q, long k,
                        const std::vector<Control>& controls = {});

/// Adds sum_j coeffs[j] * x_j into the accumulator register q, where
/// x[j] are the variable qubits. Zero coefficients emit nothing;
/// negative coefficients subtract.
void append_weighted_adder(Circuit& c, const std::vector<int>& x,
                           const std::vector<int>& q,
                           const std::vector<long>& coeffs);

/// Number of flag qubits the range check a <= p <= b needs, given that
/// p ranges over [0, coeff_sum]. A vacuous side costs nothing.
int comparator_flag_count(long a, long b, long coeff_sum);

/// Range comparator: raises flags[...] for the non-vacuous checks
/// p >= a and p <= b, leaving the accumulator restored to p. Expects
/// exactly comparator_flag_count() flag qubits (low check first).
void append_range_comparator(Circuit& c, const std::vector<int>& q, long a,
                             long b, long coeff_sum,
                             const std::vector<int>& flags);

}  // namespace qmix

#endif  // QMIX_ARITH_HPP
