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

#include "qmix/transpile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmix {

namespace {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-12;

bool angle_is_zero(double a, double period) {
  const double m = std::fmod(std::fmod(a, period) + period, period);
  return m < 1e-10 || period - m < 1e-10;
}

std::vector<Control> sorted_controls(const std::vector<Control>& c) {
  std::vector<Control> s = c;
  std::sort(s.begin(), s.end(), [](const Control& a, const Control& b) {
    return a.qubit < b.qubit;
  });
  return s;
}

bool same_structure(const Gate& a, const Gate& b) {
  return a.kind == b.kind && a.targets == b.targets &&
         sorted_controls(a.controls) == sorted_controls(b.controls);
}

/// One simplification sweep. Returns true if anything changed.
/// Gates already emitted are tracked with a per-qubit "last gate" index so
/// the adjacency lookup is O(#qubits of the gate); removed gates become
/// tombstones that are compacted at the end.
bool simplify_once(std::vector<Gate>& gates, double& phase, int width) {
  std::vector<Gate> out;
  out.reserve(gates.size());
  std::vector<char> dead;
  dead.reserve(gates.size());
  // tail[q]: index into `out` of the last alive gate touching qubit q, and
  // per-gate back links to the previous gate on each of its qubits.
  std::vector<int> tail(static_cast<std::size_t>(width), -1);
  std::vector<std::vector<std::pair<int, int>>> back;  // (qubit, prev index)
  back.reserve(gates.size());
  bool changed = false;

  auto last_sharing = [&](const Gate& g) {
    int idx = -1;
    for (int q : g.qubits())
      idx = std::max(idx, tail[static_cast<std::size_t>(q)]);
    return idx;
  };
  auto remove_gate = [&](int idx) {
    dead[static_cast<std::size_t>(idx)] = 1;
    for (auto [q, prev] : back[static_cast<std::size_t>(idx)]) {
      // idx is the newest gate on every one of its qubits whenever it was
      // found via last_sharing on a gate with the same qubit set.
      tail[static_cast<std::size_t>(q)] = prev;
    }
  };
  auto push_gate = [&](Gate g) {
    const int idx = static_cast<int>(out.size());
    std::vector<std::pair<int, int>> links;
    for (int q : g.qubits()) {
      links.emplace_back(q, tail[static_cast<std::size_t>(q)]);
      tail[static_cast<std::size_t>(q)] = idx;
    }
    out.push_back(std::move(g));
    dead.push_back(0);
    back.push_back(std::move(links));
  };

  for (const Gate& input : gates) {
    Gate cur = input;
    bool consumed = false;
    for (;;) {
      const int idx = last_sharing(cur);
      if (idx < 0 || !same_structure(out[static_cast<std::size_t>(idx)], cur)) {
        break;
      }
      if (cur.kind == GateKind::X || cur.kind == GateKind::H ||
          cur.kind == GateKind::Swap) {
        remove_gate(idx);
        consumed = true;
        changed = true;
        break;
      }
      if (cur.kind == GateKind::SX && cur.controls.empty()) {
        remove_gate(idx);
        cur = Gate{GateKind::X, 0.0, cur.targets, {}};
        changed = true;
        continue;  // the freshly made X may cancel further back
      }
      if (cur.has_angle()) {
        const double merged =
            out[static_cast<std::size_t>(idx)].angle + cur.angle;
        remove_gate(idx);
        changed = true;
        if (cur.kind == GateKind::Phase) {
          if (angle_is_zero(merged, 2 * kPi)) {
            consumed = true;
            break;
          }
        } else {
          // RZ/RX repeat at 4*pi; at 2*pi an uncontrolled one is a pure
          // global phase of pi.
          if (angle_is_zero(merged, 4 * kPi)) {
            consumed = true;
            break;
          }
          if (cur.controls.empty() && angle_is_zero(merged - 2 * kPi, 4 * kPi)) {
            phase += kPi;
            consumed = true;
            break;
          }
        }
        cur.angle = merged;
        continue;
      }
      break;  // controlled SX: leave alone
    }
    if (!consumed) push_gate(std::move(cur));
  }
  gates.clear();
  for (std::size_t k = 0; k < out.size(); ++k)
    if (!dead[k]) gates.push_back(std::move(out[k]));
  return changed;
}

// --- single-qubit synthesis -------------------------------------------

void mat_mul(const C a[4], const C b[4], C r[4]) {
  r[0] = a[0] * b[0] + a[1] * b[2];
  r[1] = a[0] * b[1] + a[1] * b[3];
  r[2] = a[2] * b[0] + a[3] * b[2];
  r[3] = a[2] * b[1] + a[3] * b[3];
}

struct Zyz {
  double theta, phi, lam, alpha;
};

Zyz zyz_angles(const C u[4]) {
  const C det = u[0] * u[3] - u[1] * u[2];
  const double alpha = 0.5 * std::arg(det);
  const C f = std::exp(C(0.0, -alpha));
  const C v00 = u[0] * f, v10 = u[2] * f, v11 = u[3] * f;
  const double theta = 2.0 * std::atan2(std::abs(v10), std::abs(v00));
  double sum, diff;  // phi+lam, phi-lam
  if (std::abs(v00) < kEps) {
    sum = 0.0;
    diff = 2.0 * std::arg(v10);
  } else if (std::abs(v10) < kEps) {
    sum = 2.0 * std::arg(v11);
    diff = 0.0;
  } else {
    sum = 2.0 * std::arg(v11);
    diff = 2.0 * std::arg(v10);
  }
  return {theta, (sum + diff) / 2.0, (sum - diff) / 2.0, alpha};
}

/// Emits u on qubit q as RZ/SX/X gates, adjusting the circuit's global
/// phase so the emitted block equals u exactly.
void append_1q_unitary(Circuit& out, int q, const C u[4]) {
  const Zyz d = zyz_angles(u);
  std::vector<Gate> emitted;
  auto rz = [&](double a) {
    if (!angle_is_zero(a, 2 * kPi))
      emitted.push_back({GateKind::RZ, a, {q}, {}});
  };
  if (std::abs(d.theta) < 1e-9) {
    rz(d.phi + d.lam);
  } else if (std::abs(d.theta - kPi) < 1e-9) {
    rz(d.lam - d.phi + kPi);
    emitted.push_back({GateKind::X, 0.0, {q}, {}});
  } else if (std::abs(d.theta - kPi / 2) < 1e-9) {
    rz(d.lam - kPi / 2);
    emitted.push_back({GateKind::SX, 0.0, {q}, {}});
    rz(d.phi + kPi / 2);
  } else {
    rz(d.lam);
    emitted.push_back({GateKind::SX, 0.0, {q}, {}});
    rz(d.theta + kPi);
    emitted.push_back({GateKind::SX, 0.0, {q}, {}});
    rz(d.phi + kPi);
  }

  C m[4] = {1, 0, 0, 1};
  for (const Gate& g : emitted) {
    C gm[4], r[4];
    gate_matrix_1q(g.kind, g.angle, gm);
    mat_mul(gm, m, r);
    std::copy(r, r + 4, m);
  }
  int big = 0;
  for (int k = 1; k < 4; ++k)
    if (std::abs(m[k]) > std::abs(m[big])) big = k;
  const C ratio = u[big] / m[big];
  if (std::abs(std::abs(ratio) - 1.0) > 1e-8)
    throw std::logic_error("single-qubit synthesis is not unitary-consistent");
  for (int k = 0; k < 4; ++k)
    if (std::abs(u[k] - ratio * m[k]) > 1e-8)
      throw std::logic_error("single-qubit synthesis mismatch");
  out.add_global_phase(std::arg(ratio));
  for (Gate& g : emitted) out.append(std::move(g));
}

void sqrt_2x2_unitary(const C u[4], C v[4]) {
  const C tr = u[0] + u[3];
  const C det = u[0] * u[3] - u[1] * u[2];
  const C disc = std::sqrt(tr * tr - 4.0 * det);
  const C l0 = (tr + disc) / 2.0, l1 = (tr - disc) / 2.0;
  if (std::abs(l0 - l1) < kEps) {
    // A normal matrix with one eigenvalue is a scalar.
    const C s = std::sqrt(l0);
    v[0] = s; v[1] = 0; v[2] = 0; v[3] = s;
  } else {
    C e0, e1;  // eigenvector of l0
    if (std::abs(u[1]) > kEps) {
      e0 = u[1];
      e1 = l0 - u[0];
    } else if (std::abs(u[2]) > kEps) {
      e0 = l0 - u[3];
      e1 = u[2];
    } else {
      e0 = std::abs(u[0] - l0) < std::abs(u[3] - l0) ? 1.0 : 0.0;
      e1 = 1.0 - e0;
    }
    const double nrm = std::sqrt(std::norm(e0) + std::norm(e1));
    e0 /= nrm;
    e1 /= nrm;
    const C s0 = std::sqrt(l0), s1 = std::sqrt(l1);
    // s0*P0 + s1*(I - P0) with P0 = e e^dag.
    v[0] = s1 + (s0 - s1) * e0 * std::conj(e0);
    v[1] = (s0 - s1) * e0 * std::conj(e1);
    v[2] = (s0 - s1) * e1 * std::conj(e0);
    v[3] = s1 + (s0 - s1) * e1 * std::conj(e1);
  }
  C chk[4];
  mat_mul(v, v, chk);
  for (int k = 0; k < 4; ++k)
    if (std::abs(chk[k] - u[k]) > 1e-9)
      throw std::logic_error("matrix square root failed");
}

void adjoint_2x2(const C u[4], C v[4]) {
  v[0] = std::conj(u[0]);
  v[1] = std::conj(u[2]);
  v[2] = std::conj(u[1]);
  v[3] = std::conj(u[3]);
}

bool is_diagonal(const C u[4]) {
  return std::abs(u[1]) < kEps && std::abs(u[2]) < kEps;
}

bool is_x_matrix(const C u[4]) {
  return std::abs(u[0]) < kEps && std::abs(u[3]) < kEps &&
         std::abs(u[1] - 1.0) < kEps && std::abs(u[2] - 1.0) < kEps;
}

void append_controlled_1q(Circuit& out, const C u[4], int target,
                          std::vector<Control> controls);

/// controlled-diag(e^{ia}, e^{ib}) with a single positive control:
/// phase a on the control, then the 2CX+3RZ controlled-phase pattern.
void append_cdiag(Circuit& out, double a, double b, int c, int t) {
  if (!angle_is_zero(a, 2 * kPi)) {
    out.rz(c, a);
    out.add_global_phase(a / 2.0);
  }
  const double th = b - a;
  if (angle_is_zero(th, 2 * kPi)) return;
  out.rz(c, th / 2.0);
  out.rz(t, th / 2.0);
  out.cx(c, t);
  out.rz(t, -th / 2.0);
  out.cx(c, t);
  out.add_global_phase(th / 4.0);
}

/// Single positive control over a general 2x2 unitary via the
/// A X B X C factoring of u = e^{i alpha} A X B X C with A B C = I.
void append_ctrl_general(Circuit& out, const C u[4], int c, int t) {
  const Zyz d = zyz_angles(u);
  auto rot = [](GateKind k, double a, C m[4]) { gate_matrix_1q(k, a, m); };
  auto ry = [](double a, C m[4]) {
    const double co = std::cos(a / 2), si = std::sin(a / 2);
    m[0] = co; m[1] = -si; m[2] = si; m[3] = co;
  };
  C rz1[4], ryh[4], A[4], B[4], Cm[4];
  rot(GateKind::RZ, d.phi, rz1);
  ry(d.theta / 2, ryh);
  mat_mul(rz1, ryh, A);
  ry(-d.theta / 2, ryh);
  rot(GateKind::RZ, -(d.phi + d.lam) / 2, rz1);
  mat_mul(ryh, rz1, B);
  rot(GateKind::RZ, (d.lam - d.phi) / 2, Cm);

  append_1q_unitary(out, t, Cm);
  out.cx(c, t);
  append_1q_unitary(out, t, B);
  out.cx(c, t);
  append_1q_unitary(out, t, A);
  if (!angle_is_zero(d.alpha, 2 * kPi)) {
    out.rz(c, d.alpha);
    out.add_global_phase(d.alpha / 2.0);
  }
}

void append_controlled_1q(Circuit& out, const C u[4], int target,
                          std::vector<Control> controls) {
  // Normalize polarity-0 controls by X conjugation.
  std::vector<int> flipped;
  for (auto& ctl : controls) {
    if (ctl.polarity == 0) {
      flipped.push_back(ctl.qubit);
      ctl.polarity = 1;
    }
  }
  for (int q : flipped) out.x(q);

  const std::size_t k = controls.size();
  if (k == 0) {
    if (is_x_matrix(u)) {
      out.x(target);
    } else {
      append_1q_unitary(out, target, u);
    }
  } else if (k == 1) {
    const int c = controls[0].qubit;
    if (is_x_matrix(u)) {
      out.cx(c, target);
    } else if (is_diagonal(u)) {
      append_cdiag(out, std::arg(u[0]), std::arg(u[3]), c, target);
    } else {
      append_ctrl_general(out, u, c, target);
    }
  } else {
    // C^k(u) = CV(c_k, t) . C^{k-1}X(.., c_k) . CV^dag(c_k, t)
    //        . C^{k-1}X(.., c_k) . C^{k-1}V(.., t), with V^2 = u.
    C v[4], vd[4];
    sqrt_2x2_unitary(u, v);
    adjoint_2x2(v, vd);
    const Control last = controls.back();
    std::vector<Control> rest(controls.begin(), controls.end() - 1);
    const C xm[4] = {0, 1, 1, 0};
    append_controlled_1q(out, v, target, {last});
    append_controlled_1q(out, xm, last.qubit, rest);
    append_controlled_1q(out, vd, target, {last});
    append_controlled_1q(out, xm, last.qubit, rest);
    append_controlled_1q(out, v, target, rest);
  }

  for (int q : flipped) out.x(q);
}

}  // namespace

bool is_basis_gate(const Gate& g) {
  switch (g.kind) {
    case GateKind::X:
      return g.controls.size() <= 1 &&
             (g.controls.empty() || g.controls[0].polarity == 1);
    case GateKind::SX:
    case GateKind::RZ:
      return g.controls.empty();
    default:
      return false;
  }
}

Circuit simplify(const Circuit& c) {
  std::vector<Gate> gates = c.gates();
  double phase = c.global_phase();
  while (simplify_once(gates, phase, c.width())) {
  }
  Circuit out(c.layout());
  out.set_global_phase(phase);
  for (Gate& g : gates) out.append(std::move(g));
  return out;
}

Circuit decompose_to_basis(const Circuit& c) {
  Circuit out(c.layout());
  out.set_global_phase(c.global_phase());
  for (const Gate& g : c.gates()) {
    if (is_basis_gate(g)) {
      out.append(g);
      continue;
    }
    if (g.kind == GateKind::Swap) {
      const int a = g.targets[0], b = g.targets[1];
      if (g.controls.empty()) {
        out.cx(a, b);
        out.cx(b, a);
        out.cx(a, b);
      } else {
        const C xm[4] = {0, 1, 1, 0};
        out.cx(b, a);
        std::vector<Control> ctl = g.controls;
        ctl.push_back({a, 1});
        append_controlled_1q(out, xm, b, std::move(ctl));
        out.cx(b, a);
      }
      continue;
    }
    C u[4];
    gate_matrix_1q(g.kind, g.angle, u);
    append_controlled_1q(out, u, g.targets[0], g.controls);
  }
  return out;
}

Circuit transpile(const Circuit& c) {
  return simplify(decompose_to_basis(simplify(c)));
}

CircuitMetrics metrics(const Circuit& c) {
  CircuitMetrics m;
  m.width = c.width();
  m.size = static_cast<std::int64_t>(c.gates().size());
  std::vector<std::int64_t> frontier(static_cast<std::size_t>(c.width()), 0);
  for (const Gate& g : c.gates()) {
    std::int64_t d = 0;
    for (int q : g.qubits())
      d = std::max(d, frontier[static_cast<std::size_t>(q)]);
    ++d;
    for (int q : g.qubits()) frontier[static_cast<std::size_t>(q)] = d;
    m.depth = std::max(m.depth, d);
  }
  return m;
}

}  // namespace qmix
