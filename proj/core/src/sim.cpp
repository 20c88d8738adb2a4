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

#include "qmix/sim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "qmix/transpile.hpp"

namespace qmix {

namespace {

using C = std::complex<double>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct ControlMasks {
  std::size_t ones = 0;   // qubits that must be 1
  std::size_t zeros = 0;  // qubits that must be 0
  bool match(std::size_t idx) const {
    return (idx & ones) == ones && (idx & zeros) == 0;
  }
};

ControlMasks control_masks(const Gate& g) {
  ControlMasks m;
  for (const Control& c : g.controls) {
    const std::size_t bit = std::size_t{1} << c.qubit;
    (c.polarity ? m.ones : m.zeros) |= bit;
  }
  return m;
}

/// Inserts a 0 bit at position `pos`, shifting higher bits up.
std::size_t insert_bit(std::size_t x, int pos) {
  const std::size_t low = x & ((std::size_t{1} << pos) - 1);
  return ((x >> pos) << (pos + 1)) | low;
}

void check_norm_width(const Circuit& c, std::size_t state_dim, int guard,
                      const char* what) {
  if (c.width() > guard)
    throw std::invalid_argument(std::string(what) + " is guarded at width " +
                                std::to_string(guard));
  if (state_dim != (std::size_t{1} << c.width()))
    throw std::invalid_argument("state dimension does not match the circuit");
}

}  // namespace

NoiseModel NoiseModel::depolarizing(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0,1]");
  return {Kind::kDepolarizing, p};
}

NoiseModel NoiseModel::damping(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0,1]");
  return {Kind::kDamping, p};
}

void apply_gate(const Gate& g, C* state, int width) {
  const std::size_t dim = std::size_t{1} << width;
  const ControlMasks cm = control_masks(g);

  if (g.kind == GateKind::Swap) {
    const std::size_t ba = std::size_t{1} << g.targets[0];
    const std::size_t bb = std::size_t{1} << g.targets[1];
    for (std::size_t idx = 0; idx < dim; ++idx) {
      if ((idx & ba) && !(idx & bb) && cm.match(idx))
        std::swap(state[idx], state[idx ^ ba ^ bb]);
    }
    return;
  }

  C m[4];
  gate_matrix_1q(g.kind, g.angle, m);
  const int t = g.targets[0];
  const std::size_t bt = std::size_t{1} << t;

  if (std::abs(m[1]) == 0.0 && std::abs(m[2]) == 0.0) {
    for (std::size_t idx = 0; idx < dim; ++idx)
      if (cm.match(idx)) state[idx] *= (idx & bt) ? m[3] : m[0];
    return;
  }
  const std::size_t half = dim >> 1;
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = insert_bit(k, t);
    if (!cm.match(i0)) continue;
    const std::size_t i1 = i0 | bt;
    const C a = state[i0], b = state[i1];
    state[i0] = m[0] * a + m[1] * b;
    state[i1] = m[2] * a + m[3] * b;
  }
}

Statevector run_statevector(const Circuit& c, Statevector initial) {
  check_norm_width(c, initial.size(), 26, "run_statevector");
  for (const Gate& g : c.gates()) apply_gate(g, initial.data(), c.width());
  if (c.global_phase() != 0.0) {
    const C f = std::exp(C(0.0, c.global_phase()));
    for (C& a : initial) a *= f;
  }
  return initial;
}

DensityMatrix pure_density(const Statevector& psi) {
  const std::size_t dim = psi.size();
  DensityMatrix rho(dim * dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      rho[r * dim + c] = psi[r] * std::conj(psi[c]);
  return rho;
}

namespace {

// --- density-matrix gate passes ----------------------------------------

/// rho -> U rho with a 1-qubit u on target t (no controls): mixes row
/// pairs, contiguous over columns.
void density_left_1q(C* rho, std::size_t dim, int t, const C u[4]) {
  const std::size_t bt = std::size_t{1} << t;
  for (std::size_t k = 0; k < dim / 2; ++k) {
    const std::size_t r0 = insert_bit(k, t);
    C* row0 = rho + r0 * dim;
    C* row1 = rho + (r0 | bt) * dim;
    for (std::size_t c = 0; c < dim; ++c) {
      const C a = row0[c], b = row1[c];
      row0[c] = u[0] * a + u[1] * b;
      row1[c] = u[2] * a + u[3] * b;
    }
  }
}

/// rho -> rho U^dagger: mixes column pairs inside each row.
void density_right_1q(C* rho, std::size_t dim, int t, const C u[4]) {
  const C c00 = std::conj(u[0]), c01 = std::conj(u[1]);
  const C c10 = std::conj(u[2]), c11 = std::conj(u[3]);
  const std::size_t bt = std::size_t{1} << t;
  for (std::size_t r = 0; r < dim; ++r) {
    C* row = rho + r * dim;
    for (std::size_t k = 0; k < dim / 2; ++k) {
      const std::size_t c0 = insert_bit(k, t);
      const C a = row[c0], b = row[c0 | bt];
      row[c0] = c00 * a + c01 * b;
      row[c0 | bt] = c10 * a + c11 * b;
    }
  }
}

/// Fused RZ(theta) conjugation: only entries whose row/column target bits
/// differ pick up a phase.
void density_rz(C* rho, std::size_t dim, int t, double theta) {
  const C plus = std::exp(C(0.0, theta));
  const C minus = std::conj(plus);
  const std::size_t bt = std::size_t{1} << t;
  for (std::size_t r = 0; r < dim; ++r) {
    C* row = rho + r * dim;
    const C f = (r & bt) ? plus : minus;
    for (std::size_t k = 0; k < dim / 2; ++k) {
      const std::size_t c = insert_bit(k, t) | ((r & bt) ? 0 : bt);
      row[c] *= f;
    }
  }
}

/// X or CX conjugation as a row permutation then a column permutation.
void density_cx(C* rho, std::size_t dim, int t, std::size_t ctrl_mask) {
  const std::size_t bt = std::size_t{1} << t;
  for (std::size_t r = 0; r < dim; ++r) {
    if ((r & bt) || (r & ctrl_mask) != ctrl_mask) continue;
    C* row0 = rho + r * dim;
    C* row1 = rho + (r | bt) * dim;
    for (std::size_t c = 0; c < dim; ++c) std::swap(row0[c], row1[c]);
  }
  for (std::size_t r = 0; r < dim; ++r) {
    C* row = rho + r * dim;
    for (std::size_t c = 0; c < dim; ++c) {
      if ((c & bt) || (c & ctrl_mask) != ctrl_mask) continue;
      std::swap(row[c], row[c | bt]);
    }
  }
}

/// Fallback for arbitrary gates (noiseless runs): column-wise U rho, then
/// row-wise rho U^dagger via conjugation.
void density_generic(C* rho, std::size_t dim, int width, const Gate& g) {
  std::vector<C> tmp(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) tmp[r] = rho[r * dim + c];
    apply_gate(g, tmp.data(), width);
    for (std::size_t r = 0; r < dim; ++r) rho[r * dim + c] = tmp[r];
  }
  for (std::size_t r = 0; r < dim; ++r) {
    C* row = rho + r * dim;
    for (std::size_t c = 0; c < dim; ++c) row[c] = std::conj(row[c]);
    apply_gate(g, row, width);
    for (std::size_t c = 0; c < dim; ++c) row[c] = std::conj(row[c]);
  }
}

// --- fused gate + channel kernels ----------------------------------------
// One sweep per gate on the noisy path: both the unitary conjugation and
// the channel act within 2x2 (or 4x4 for CX) blocks over the acted qubits.

/// Channel on a 2x2 block [m00 m01; m10 m11] of entries sharing all other
/// row/column bits.
inline void channel_block_1q(const NoiseModel& noise, C& m00, C& m01, C& m10,
                             C& m11) {
  if (noise.kind == NoiseModel::Kind::kDepolarizing) {
    const double keep = 1.0 - 2.0 * noise.p / 3.0;
    const double mix = 2.0 * noise.p / 3.0;
    const double off = 1.0 - 4.0 * noise.p / 3.0;
    const C a = m00, d = m11;
    m00 = keep * a + mix * d;
    m11 = keep * d + mix * a;
    m01 *= off;
    m10 *= off;
  } else {  // amplitude then phase damping
    const double offf = 1.0 - noise.p;
    m00 += noise.p * m11;
    m11 *= 1.0 - noise.p;
    m01 *= offf;
    m10 *= offf;
  }
}

void fused_1q(C* rho, std::size_t dim, int t, const C u[4],
              const NoiseModel& noise) {
  const C c00 = std::conj(u[0]), c01 = std::conj(u[1]);
  const C c10 = std::conj(u[2]), c11 = std::conj(u[3]);
  const std::size_t bt = std::size_t{1} << t;
  for (std::size_t kr = 0; kr < dim / 2; ++kr) {
    const std::size_t r0 = insert_bit(kr, t);
    C* row0 = rho + r0 * dim;
    C* row1 = rho + (r0 | bt) * dim;
    for (std::size_t kc = 0; kc < dim / 2; ++kc) {
      const std::size_t c0 = insert_bit(kc, t);
      const std::size_t c1 = c0 | bt;
      const C m00 = row0[c0], m01 = row0[c1];
      const C m10 = row1[c0], m11 = row1[c1];
      // u M
      const C a00 = u[0] * m00 + u[1] * m10, a01 = u[0] * m01 + u[1] * m11;
      const C a10 = u[2] * m00 + u[3] * m10, a11 = u[2] * m01 + u[3] * m11;
      // (u M) u^dagger
      C b00 = a00 * c00 + a01 * c01, b01 = a00 * c10 + a01 * c11;
      C b10 = a10 * c00 + a11 * c01, b11 = a10 * c10 + a11 * c11;
      channel_block_1q(noise, b00, b01, b10, b11);
      row0[c0] = b00;
      row0[c1] = b01;
      row1[c0] = b10;
      row1[c1] = b11;
    }
  }
}

/// RZ is diagonal: off-diagonal-in-t entries pick up a phase, then the
/// channel acts on the block.
void fused_rz(C* rho, std::size_t dim, int t, double theta,
              const NoiseModel& noise) {
  const C plus = std::exp(C(0.0, theta));
  const C minus = std::conj(plus);
  const std::size_t bt = std::size_t{1} << t;
  for (std::size_t kr = 0; kr < dim / 2; ++kr) {
    const std::size_t r0 = insert_bit(kr, t);
    C* row0 = rho + r0 * dim;
    C* row1 = rho + (r0 | bt) * dim;
    for (std::size_t kc = 0; kc < dim / 2; ++kc) {
      const std::size_t c0 = insert_bit(kc, t);
      const std::size_t c1 = c0 | bt;
      C b00 = row0[c0], b01 = row0[c1] * minus;
      C b10 = row1[c0] * plus, b11 = row1[c1];
      channel_block_1q(noise, b00, b01, b10, b11);
      row0[c0] = b00;
      row0[c1] = b01;
      row1[c0] = b10;
      row1[c1] = b11;
    }
  }
}

/// CX conjugation (a permutation within the (target, control) block) plus
/// the two-qubit channel, in one sweep over 4x4 blocks.
void fused_cx(C* rho, std::size_t dim, int t, int ctrl,
              const NoiseModel& noise) {
  const int lo = std::min(t, ctrl), hi = std::max(t, ctrl);
  const std::size_t bt = std::size_t{1} << t;
  const std::size_t bc = std::size_t{1} << ctrl;
  // Block index bit 0 = target, bit 1 = control; CX swaps indices 2 and 3.
  const std::size_t off[4] = {0, bt, bc, bt | bc};
  constexpr int perm[4] = {0, 1, 3, 2};
  const bool depol = noise.kind == NoiseModel::Kind::kDepolarizing;
  const double keep = 1.0 - 16.0 * noise.p / 15.0;
  const double mix = 16.0 * noise.p / 15.0 / 4.0;
  for (std::size_t kr = 0; kr < dim / 4; ++kr) {
    const std::size_t r0 = insert_bit(insert_bit(kr, lo), hi);
    for (std::size_t kc = 0; kc < dim / 4; ++kc) {
      const std::size_t c0 = insert_bit(insert_bit(kc, lo), hi);
      C m[4][4];
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          m[i][j] = rho[(r0 + off[perm[i]]) * dim + c0 + off[perm[j]]];
      if (depol) {
        const C s = mix * (m[0][0] + m[1][1] + m[2][2] + m[3][3]);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            m[i][j] *= keep;
            if (i == j) m[i][j] += s;
          }
      } else {
        // Damping per qubit: block bit 0 then block bit 1.
        for (int axis = 1; axis <= 2; axis <<= 1) {
          for (int i = 0; i < 4; ++i) {
            if (i & axis) continue;
            for (int j = 0; j < 4; ++j) {
              if (j & axis) continue;
              channel_block_1q(noise, m[i][j], m[i][j | axis],
                               m[i | axis][j], m[i | axis][j | axis]);
            }
          }
        }
      }
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          rho[(r0 + off[i]) * dim + c0 + off[j]] = m[i][j];
    }
  }
}

}  // namespace

DensityMatrix run_density(const Circuit& c, DensityMatrix initial,
                          const NoiseModel& noise) {
  const std::size_t dim = std::size_t{1} << c.width();
  check_norm_width(c, dim == 0 ? 0 : initial.size() / dim, 13, "run_density");
  const bool noisy =
      noise.kind != NoiseModel::Kind::kNone && noise.p > 0.0;
  C* rho = initial.data();
  for (const Gate& g : c.gates()) {
    if (noisy && !is_basis_gate(g))
      throw std::invalid_argument(
          "noisy density simulation requires a transpiled circuit "
          "(basis gates only)");
    if (noisy) {
      if (g.kind == GateKind::X && g.controls.size() == 1) {
        fused_cx(rho, dim, g.targets[0], g.controls[0].qubit, noise);
      } else if (g.kind == GateKind::RZ) {
        fused_rz(rho, dim, g.targets[0], g.angle, noise);
      } else {
        C u[4];
        gate_matrix_1q(g.kind, g.angle, u);
        fused_1q(rho, dim, g.targets[0], u, noise);
      }
      continue;
    }
    if (g.kind == GateKind::X && g.controls.empty()) {
      density_cx(rho, dim, g.targets[0], 0);
    } else if (g.kind == GateKind::X && g.controls.size() == 1 &&
               g.controls[0].polarity == 1) {
      density_cx(rho, dim, g.targets[0],
                 std::size_t{1} << g.controls[0].qubit);
    } else if (g.kind == GateKind::RZ && g.controls.empty()) {
      density_rz(rho, dim, g.targets[0], g.angle);
    } else if (g.controls.empty() && g.kind != GateKind::Swap) {
      C u[4];
      gate_matrix_1q(g.kind, g.angle, u);
      density_left_1q(rho, dim, g.targets[0], u);
      density_right_1q(rho, dim, g.targets[0], u);
    } else {
      density_generic(rho, dim, c.width(), g);
    }
  }
  // The global phase cancels in U rho U^dagger.
  return initial;
}

namespace {

// --- trajectory unraveling ----------------------------------------------

void apply_pauli(C* psi, std::size_t dim, int q, int pauli) {
  const std::size_t bq = std::size_t{1} << q;
  switch (pauli) {
    case 1:  // X
      for (std::size_t k = 0; k < dim / 2; ++k) {
        const std::size_t i0 = insert_bit(k, q);
        std::swap(psi[i0], psi[i0 | bq]);
      }
      break;
    case 2:  // Y
      for (std::size_t k = 0; k < dim / 2; ++k) {
        const std::size_t i0 = insert_bit(k, q);
        const C a = psi[i0];
        psi[i0] = C(0.0, -1.0) * psi[i0 | bq];
        psi[i0 | bq] = C(0.0, 1.0) * a;
      }
      break;
    case 3:  // Z
      for (std::size_t idx = 0; idx < dim; ++idx)
        if (idx & bq) psi[idx] = -psi[idx];
      break;
    default:
      break;
  }
}

double population_one(const C* psi, std::size_t dim, int q) {
  const std::size_t bq = std::size_t{1} << q;
  double pop = 0.0;
  for (std::size_t idx = 0; idx < dim; ++idx)
    if (idx & bq) pop += std::norm(psi[idx]);
  return pop;
}

void trajectory_damping(C* psi, std::size_t dim, int q, double p,
                        std::mt19937_64& gen) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const std::size_t bq = std::size_t{1} << q;
  {
    // amplitude damping
    const double pop = population_one(psi, dim, q);
    const double pj = p * pop;
    if (uni(gen) < pj) {
      const double inv = 1.0 / std::sqrt(pop);
      for (std::size_t k = 0; k < dim / 2; ++k) {
        const std::size_t i0 = insert_bit(k, q);
        psi[i0] = inv * psi[i0 | bq];
        psi[i0 | bq] = 0.0;
      }
    } else {
      const double inv = 1.0 / std::sqrt(1.0 - pj);
      const double f1 = std::sqrt(1.0 - p) * inv;
      for (std::size_t idx = 0; idx < dim; ++idx)
        psi[idx] *= (idx & bq) ? f1 : inv;
    }
  }
  {
    // phase damping
    const double pop = population_one(psi, dim, q);
    const double pj = p * pop;
    if (uni(gen) < pj) {
      const double inv = 1.0 / std::sqrt(pop);
      for (std::size_t idx = 0; idx < dim; ++idx)
        psi[idx] = (idx & bq) ? inv * psi[idx] : C(0.0);
    } else {
      const double inv = 1.0 / std::sqrt(1.0 - pj);
      const double f1 = std::sqrt(1.0 - p) * inv;
      for (std::size_t idx = 0; idx < dim; ++idx)
        psi[idx] *= (idx & bq) ? f1 : inv;
    }
  }
}

void trajectory_noise(C* psi, std::size_t dim, const NoiseModel& noise,
                      const std::vector<int>& qubits, std::mt19937_64& gen) {
  if (noise.kind == NoiseModel::Kind::kNone || noise.p == 0.0) return;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  if (noise.kind == NoiseModel::Kind::kDepolarizing) {
    const double u = uni(gen);
    if (u >= noise.p) return;
    if (qubits.size() == 1) {
      const int pauli = 1 + std::min(2, static_cast<int>(u / noise.p * 3.0));
      apply_pauli(psi, dim, qubits[0], pauli);
    } else {
      const int k =
          1 + std::min(14, static_cast<int>(u / noise.p * 15.0));
      apply_pauli(psi, dim, qubits[0], k >> 2);
      apply_pauli(psi, dim, qubits[1], k & 3);
    }
  } else {
    for (int q : qubits) trajectory_damping(psi, dim, q, noise.p, gen);
  }
}

Statevector run_one_trajectory(const Circuit& c, const Statevector& initial,
                               const NoiseModel& noise, std::uint64_t seed) {
  Statevector psi = initial;
  const std::size_t dim = psi.size();
  std::mt19937_64 gen(seed);
  for (const Gate& g : c.gates()) {
    if (!is_basis_gate(g))
      throw std::invalid_argument(
          "trajectory simulation requires a transpiled circuit");
    apply_gate(g, psi.data(), c.width());
    trajectory_noise(psi.data(), dim, noise, g.qubits(), gen);
  }
  return psi;
}

}  // namespace

DensityMatrix run_trajectories(const Circuit& c, const Statevector& initial,
                               const NoiseModel& noise, int shots,
                               std::uint64_t seed) {
  check_norm_width(c, initial.size(), 13, "run_trajectories");
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const std::size_t dim = initial.size();
  if (noise.kind == NoiseModel::Kind::kNone || noise.p == 0.0)
    return pure_density(run_statevector(c, initial));
  DensityMatrix rho(dim * dim, 0.0);
  for (int s = 0; s < shots; ++s) {
    const Statevector psi = run_one_trajectory(
        c, initial, noise, splitmix64(seed ^ static_cast<std::uint64_t>(s)));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t col = 0; col < dim; ++col)
        rho[r * dim + col] += psi[r] * std::conj(psi[col]);
  }
  const double inv = 1.0 / shots;
  for (C& e : rho) e *= inv;
  return rho;
}

TrajectoryEstimate trajectory_fidelity(const Circuit& c,
                                       const Statevector& initial,
                                       const NoiseModel& noise,
                                       const Statevector& ideal_low,
                                       int shots, std::uint64_t seed,
                                       int jobs) {
  check_norm_width(c, initial.size(), 26, "trajectory_fidelity");
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (jobs < 1) jobs = 1;
  const std::size_t low = ideal_low.size();
  const std::size_t dim = initial.size();
  if (low == 0 || dim % low != 0)
    throw std::invalid_argument("reference dimension must divide the state");

  auto shot_fidelity = [&](int s) {
    const Statevector psi = run_one_trajectory(
        c, initial, noise, splitmix64(seed ^ static_cast<std::uint64_t>(s)));
    double f = 0.0;
    for (std::size_t a = 0; a < dim / low; ++a) {
      C amp = 0.0;
      const std::size_t base = a * low;
      for (std::size_t r = 0; r < low; ++r)
        amp += std::conj(ideal_low[r]) * psi[base + r];
      f += std::norm(amp);
    }
    return f;
  };

  std::vector<double> per_shot(static_cast<std::size_t>(shots));
  if (jobs == 1) {
    for (int s = 0; s < shots; ++s)
      per_shot[static_cast<std::size_t>(s)] = shot_fidelity(s);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        for (int s = w; s < shots; s += jobs)
          per_shot[static_cast<std::size_t>(s)] = shot_fidelity(s);
      });
    }
    for (auto& th : pool) th.join();
  }

  TrajectoryEstimate est;
  for (double f : per_shot) est.fidelity += f;
  est.fidelity /= shots;
  double var = 0.0;
  for (double f : per_shot) var += (f - est.fidelity) * (f - est.fidelity);
  if (shots > 1) var /= (shots - 1.0);
  est.std_error = std::sqrt(var / shots);
  return est;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const auto dim = static_cast<Eigen::Index>(
      std::llround(std::sqrt(static_cast<double>(rho.size()))));
  if (rho.size() != sigma.size() ||
      static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim) !=
          rho.size())
    throw std::invalid_argument("density matrix dimension mismatch");
  using Mat = Eigen::MatrixXcd;
  Eigen::Map<const Mat> r(rho.data(), dim, dim);
  Eigen::Map<const Mat> s(sigma.data(), dim, dim);
  // Row-major storage maps to the transpose, i.e. the conjugate for
  // Hermitian inputs; the fidelity value is unchanged.
  Eigen::SelfAdjointEigenSolver<Mat> er(r);
  Mat sq = Mat::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double lam = std::max(0.0, er.eigenvalues()(k));
    sq += std::sqrt(lam) * er.eigenvectors().col(k) *
          er.eigenvectors().col(k).adjoint();
  }
  const Mat inner = sq * s * sq;
  Eigen::SelfAdjointEigenSolver<Mat> ei(inner);
  double tr = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k)
    tr += std::sqrt(std::max(0.0, ei.eigenvalues()(k)));
  return std::clamp(tr * tr, 0.0, 1.0);
}

double fidelity_pure(const DensityMatrix& rho, const Statevector& psi) {
  const std::size_t dim = psi.size();
  if (rho.size() != dim * dim)
    throw std::invalid_argument("density matrix dimension mismatch");
  C f = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    C acc = 0.0;
    for (std::size_t c = 0; c < dim; ++c) acc += rho[r * dim + c] * psi[c];
    f += std::conj(psi[r]) * acc;
  }
  return std::clamp(f.real(), 0.0, 1.0);
}

DensityMatrix partial_trace_low(const DensityMatrix& rho, int width,
                                int keep) {
  if (keep < 0 || keep > width) throw std::invalid_argument("bad keep width");
  const std::size_t dim = std::size_t{1} << width;
  if (rho.size() != dim * dim)
    throw std::invalid_argument("density matrix dimension mismatch");
  const std::size_t kd = std::size_t{1} << keep;
  DensityMatrix out(kd * kd, 0.0);
  for (std::size_t a = 0; a < dim / kd; ++a) {
    const std::size_t base = a * kd;
    for (std::size_t r = 0; r < kd; ++r)
      for (std::size_t c = 0; c < kd; ++c)
        out[r * kd + c] += rho[(base + r) * dim + base + c];
  }
  return out;
}

}  // namespace qmix
