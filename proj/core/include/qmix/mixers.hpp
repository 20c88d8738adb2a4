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

#ifndef QMIX_MIXERS_HPP
#define QMIX_MIXERS_HPP

#include <string>
#include <vector>

#include "qmix/circuit.hpp"
#include "qmix/problem.hpp"

namespace qmix {

/// The three mixer constructions. The standard methods re-evaluate the
/// constraint values with weighted adders inside every block; the
/// modified method computes them once and maintains them with controlled
/// constant adders.
enum class MixerMethod { kStandardSequential, kStandardParallel, kModified };

/// CLI-facing names: "std-seq", "std-par", "mod".
std::string method_name(MixerMethod m);
MixerMethod parse_method(const std::string& s);  // throws invalid_argument

/// Qubit plan for a problem/method pair: the n variable qubits, one
/// accumulator register per constraint (a single shared one for the
/// sequential method), and one flag qubit per nontrivial bound.
/// Constraints whose bounds are both trivial contribute nothing.
struct MixerLayout {
  RegisterLayout regs;
  std::vector<int> constraint_ids;      // active constraints, in order
  std::vector<std::vector<int>> acc;    // accumulator qubits per active
  std::vector<std::vector<int>> flags;  // flag qubits per active
  std::vector<int> all_flags;           // flattened, in constraint order

  int x_qubit(int j) const;  // variable x_j, 1-based j
};

MixerLayout mixer_layout(const Problem& problem, MixerMethod method);

/// One Trotter factor of the standard method: flips x_j, evaluates every
/// constraint into the flags (V = L†CL, register-shared or parallel),
/// flips back, applies RX(2*theta) on x_j controlled on all flags, then
/// uncomputes.
Circuit build_UBj_standard(const Problem& problem, const MixerLayout& layout,
                           int j, double theta, MixerMethod approach);

/// One Trotter factor of the modified method. Expects the accumulators to
/// hold the constraint values of the current x; maintains that invariant
/// using controlled constant adders only.
Circuit build_UBj_modified(const Problem& problem, const MixerLayout& layout,
                           int j, double theta);

/// The value loader L of the modified method: weighted adders filling
/// every accumulator with its constraint value.
Circuit build_value_loader(const Problem& problem, const MixerLayout& layout);

struct MixerConfig {
  MixerMethod method = MixerMethod::kModified;
  double beta = 3.0;
  int r = 1;
};

struct MixerCircuit {
  Circuit circuit;
  MixerLayout layout;
  MixerConfig config;
};

/// Full second-order Trotter mixer: r repetitions of a forward sweep
/// j=1..n followed by a backward sweep j=n..1, each factor at angle
/// beta/(2r). The modified method is wrapped as L ... L† so all methods
/// share the ancillas-in-zero external contract.
MixerCircuit build_mixer(const Problem& problem, const MixerConfig& config);

}  // namespace qmix

#endif  // QMIX_MIXERS_HPP
