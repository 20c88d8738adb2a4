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

#ifndef QMIX_SIM_HPP
#define QMIX_SIM_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "qmix/circuit.hpp"

namespace qmix {

using Statevector = std::vector<std::complex<double>>;
/// Row-major 2^w x 2^w matrix.
using DensityMatrix = std::vector<std::complex<double>>;

/// Noise placement rule: one channel application after every 1-qubit and
/// 2-qubit basis gate, on the qubits the gate acted upon.
///  - depolarizing: 1q (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z);
///    2q (1-p) rho + p/15 * sum over the 15 nontrivial Pauli pairs.
///  - damping: amplitude damping (gamma = p) then phase damping
///    (lambda = p), per acted qubit.
struct NoiseModel {
  enum class Kind { kNone, kDepolarizing, kDamping };
  Kind kind = Kind::kNone;
  double p = 0.0;

  static NoiseModel none() { return {Kind::kNone, 0.0}; }
  static NoiseModel depolarizing(double p);
  static NoiseModel damping(double p);
};

/// Applies one gate (any kind, any controls) to a 2^width statevector.
void apply_gate(const Gate& g, std::complex<double>* state, int width);

/// Noiseless statevector evolution. Guarded at width <= 26.
Statevector run_statevector(const Circuit& c, Statevector initial);

DensityMatrix pure_density(const Statevector& psi);

/// Density-matrix evolution with the noise placement rule above.
/// Guarded at width <= 13. With noise, the circuit must consist of basis
/// gates only (transpile first); noiseless runs accept any circuit.
DensityMatrix run_density(const Circuit& c, DensityMatrix initial,
                          const NoiseModel& noise);

/// Monte-Carlo Kraus unraveling averaged into a density matrix.
/// Deterministic under a fixed seed; guarded at width <= 13.
DensityMatrix run_trajectories(const Circuit& c, const Statevector& initial,
                               const NoiseModel& noise, int shots,
                               std::uint64_t seed);

struct TrajectoryEstimate {
  double fidelity = 0.0;
  double std_error = 0.0;
};

/// Trajectory estimate of <ideal_low| tr_high(rho) |ideal_low>, i.e. the
/// fidelity of the reduced state on the lowest qubits against a pure
/// reference, without materializing the density matrix. Shot results are
/// reduced in shot order, so the value is independent of jobs.
TrajectoryEstimate trajectory_fidelity(const Circuit& c,
                                       const Statevector& initial,
                                       const NoiseModel& noise,
                                       const Statevector& ideal_low,
                                       int shots, std::uint64_t seed,
                                       int jobs = 1);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Pure-reference shortcut <psi| rho |psi>.
double fidelity_pure(const DensityMatrix& rho, const Statevector& psi);

/// Traces out all but the `keep` lowest qubits.
DensityMatrix partial_trace_low(const DensityMatrix& rho, int width, int keep);

}  // namespace qmix

#endif  // QMIX_SIM_HPP
