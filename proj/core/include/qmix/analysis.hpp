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

#ifndef QMIX_ANALYSIS_HPP
#define QMIX_ANALYSIS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qmix/mixers.hpp"
#include "qmix/problem.hpp"
#include "qmix/sim.hpp"

namespace qmix {

/// Symbolic gate-count estimate: per-primitive costs measured by
/// transpiling each primitive in isolation, assembled into a per-factor
/// cost with prefactor 2nr. The arithmetic primitives are counted as
/// their Fourier-basis rotation blocks with generic (unit) constants: the
/// QFT wraps telescope between adjacent arithmetic operations in all
/// three constructions, and specific constants can only drop rotations,
/// so the generic block is the representative per-primitive cost.
struct GateCountEstimate {
  std::int64_t g_x = 0;                  // basis X on the mixed variable
  std::int64_t g_rx = 0;                 // flag-controlled RX
  std::vector<std::int64_t> g_comp;      // per constraint: range comparator
  std::vector<std::int64_t> g_adder;     // per constraint: full linear adder
  std::vector<std::int64_t> g_ctrl_add;  // per constraint: controlled
                                         //   constant adder
  std::int64_t per_factor = 0;           // bracketed per-(j, Trotter step)
  std::int64_t wrap = 0;                 // value loader pair (modified only)
  std::int64_t total = 0;                // 2nr * per_factor + wrap
};

GateCountEstimate estimate_counts(const Problem& problem, MixerMethod method,
                                  int r);

/// Closed-form variable-count bounds below which a standard method can be
/// smaller than the modified one, plus their integer ceilings.
struct BoundCheck {
  double n_bound_sequential = 0.0;  // 5 + 1/(2r)
  double n_bound_parallel = 0.0;    // 2.5 + 1/(4r)
  int n_max_sequential = 0;         // 5 for every r >= 1
  int n_max_parallel = 0;           // 2 for every r >= 1
};

BoundCheck check_bounds(int r);

/// One CSV row. Noise fields are empty strings / blanks for size-only
/// rows; a negative fidelity renders as an empty field.
struct ExperimentRecord {
  std::string problem;
  std::string method;
  int r = 0;
  std::string noise_kind;  // "", "none", "depolarizing", "damping"
  double noise_param = 0.0;
  std::int64_t size = 0;
  std::int64_t depth = 0;
  int width = 0;
  double fidelity = -1.0;
  double seconds = 0.0;
};

/// Schema: problem,method,r,noise_kind,noise_param,size,depth,width,
/// fidelity,seconds. All fields except seconds are deterministic under a
/// fixed seed and fixed fixture order; seconds is informational wall time.
std::string to_csv(const std::vector<ExperimentRecord>& records);
void write_csv(const std::string& path,
               const std::vector<ExperimentRecord>& records);

struct NamedProblem {
  std::string name;
  Problem problem;
};

/// Transpiled size/depth/width per (problem, method, r); no simulation.
std::vector<ExperimentRecord> run_size_experiment(
    const std::vector<NamedProblem>& problems,
    const std::vector<MixerMethod>& methods, const std::vector<int>& r_values,
    double beta = 3.0);

enum class Backend { kAuto, kDensity, kTrajectories };

struct SweepConfig {
  double beta = 3.0;
  Backend backend = Backend::kAuto;
  int shots = 20000;
  std::uint64_t seed = 0;
  int jobs = 1;
};

/// Noisy fidelity vs the exact mixer ideal, reduced to the x register.
/// kAuto picks the density backend up to width 13 and trajectories above.
std::vector<ExperimentRecord> run_noise_sweep(
    const std::vector<NamedProblem>& problems,
    const std::vector<MixerMethod>& methods, const std::vector<int>& r_values,
    const std::vector<NoiseModel::Kind>& kinds,
    const std::vector<double>& grid, const SweepConfig& config);

/// Single-constraint problem with a connected, nontrivial feasible graph.
Problem random_connected_problem(int n, std::mt19937_64& rng);

/// `count` problems cycling through the sizes in `ns`, seeded.
std::vector<NamedProblem> random_connected_problems(const std::vector<int>& ns,
                                                    int count,
                                                    std::uint64_t seed);

}  // namespace qmix

#endif  // QMIX_ANALYSIS_HPP
