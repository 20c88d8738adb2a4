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

#ifndef QMIX_TRANSPILE_HPP
#define QMIX_TRANSPILE_HPP

#include "qmix/circuit.hpp"

namespace qmix {

/// True for gates in the hardware basis set: X, SX, RZ and CX.
bool is_basis_gate(const Gate& g);

/// Peephole pass over an arbitrary gate list. Cancels adjacent inverse
/// pairs (X/H/Swap/CX and friends), merges rotation runs on the same
/// target, and rewrites SX.SX as X. Two gates count as adjacent when no
/// gate between them touches any of their qubits. Runs to a fixpoint.
Circuit simplify(const Circuit& c);

/// Rewrites every gate into the {X, SX, RZ, CX} basis. Single-qubit
/// unitaries go through ZYZ synthesis (at most two SX per gate),
/// controlled phases cost 2 CX + 3 RZ, and wider control lists use the
/// square-root recursion. Global phase is tracked exactly.
Circuit decompose_to_basis(const Circuit& c);

/// simplify -> decompose_to_basis -> simplify.
Circuit transpile(const Circuit& c);

/// Gate count, qubit-frontier depth and layout width.
CircuitMetrics metrics(const Circuit& c);

}  // namespace qmix

#endif  // QMIX_TRANSPILE_HPP
