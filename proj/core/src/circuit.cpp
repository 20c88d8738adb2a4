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

#include "qmix/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qmix {

namespace {

const char* base_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "X";
    case GateKind::SX: return "SX";
    case GateKind::H: return "H";
    case GateKind::RZ: return "RZ";
    case GateKind::RX: return "RX";
    case GateKind::Phase: return "PHASE";
    case GateKind::Swap: return "SWAP";
  }
  return "?";
}

}  // namespace

Gate Gate::adjoint() const {
  // X, H, Swap are self-adjoint; rotations negate their angle. SX is not
  // self-adjoint and is handled in the circuit-level inverse.
  Gate g = *this;
  if (has_angle()) g.angle = -g.angle;
  return g;
}

std::vector<int> Gate::qubits() const {
  std::vector<int> q = targets;
  for (const auto& c : controls) q.push_back(c.qubit);
  return q;
}

std::string Gate::name() const {
  const std::size_t nc = controls.size();
  if (kind == GateKind::X && nc == 1) return "CX";
  if (kind == GateKind::X && nc > 1) return "MCX";
  if (kind == GateKind::RX && nc >= 1) return "MCRX";
  if (kind == GateKind::Phase && nc == 1) return "CPHASE";
  std::string n = base_name(kind);
  if (nc >= 1) n = "C" + n;
  return n;
}

int RegisterLayout::add(const std::string& name, int width) {
  if (width < 1) throw std::invalid_argument("register width must be >= 1");
  if (has(name)) throw std::invalid_argument("duplicate register name: " + name);
  regs_.push_back({name, total_, width});
  total_ += width;
  return regs_.back().offset;
}

bool RegisterLayout::has(const std::string& name) const {
  return std::any_of(regs_.begin(), regs_.end(),
                     [&](const Register& r) { return r.name == name; });
}

const Register& RegisterLayout::reg(const std::string& name) const {
  for (const auto& r : regs_)
    if (r.name == name) return r;
  throw std::invalid_argument("no such register: " + name);
}

int RegisterLayout::qubit(const std::string& name, int k) const {
  const Register& r = reg(name);
  if (k < 0 || k >= r.width)
    throw std::invalid_argument("qubit index out of register range");
  return r.offset + k;
}

void Circuit::append(Gate g) {
  const int w = width();
  for (int t : g.targets)
    if (t < 0 || t >= w) throw std::invalid_argument("gate target out of layout");
  for (const auto& c : g.controls) {
    if (c.qubit < 0 || c.qubit >= w)
      throw std::invalid_argument("gate control out of layout");
    for (int t : g.targets)
      if (t == c.qubit)
        throw std::invalid_argument("gate controls overlap targets");
  }
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (!(layout_ == other.layout_))
    throw std::invalid_argument("compose: layouts differ");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  global_phase_ += other.global_phase_;
}

std::string Circuit::dump() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& g : gates_) {
    out << "GATE " << g.name();
    if (g.has_angle()) out << ' ' << g.angle;
    out << " t=";
    for (std::size_t i = 0; i < g.targets.size(); ++i)
      out << (i ? "," : "") << g.targets[i];
    if (!g.controls.empty()) {
      out << " c=";
      for (std::size_t i = 0; i < g.controls.size(); ++i)
        out << (i ? "," : "") << g.controls[i].qubit << ':'
            << g.controls[i].polarity;
    }
    out << '\n';
  }
  return out.str();
}

Circuit compose(const Circuit& a, const Circuit& b) {
  Circuit out = a;
  out.append(b);
  return out;
}

Circuit controlled(const Circuit& c, const std::vector<Control>& controls) {
  if (controls.empty()) return c;
  for (const auto& ctl : controls) {
    for (const auto& g : c.gates())
      for (int q : g.qubits())
        if (q == ctl.qubit)
          throw std::invalid_argument(
              "controlled: control qubit overlaps circuit support");
  }
  Circuit out(c.layout());
  // A nonzero global phase becomes a controlled phase gate on the first
  // control qubit.
  if (std::abs(c.global_phase()) > 0) {
    Gate p{GateKind::Phase, c.global_phase(), {controls.front().qubit}, {}};
    p.controls.assign(controls.begin() + 1, controls.end());
    if (controls.front().polarity == 0) {
      out.x(controls.front().qubit);
      out.append(p);
      out.x(controls.front().qubit);
    } else {
      out.append(p);
    }
  }
  for (const auto& g : c.gates()) {
    Gate h = g;
    for (const auto& ctl : controls) h.controls.push_back(ctl);
    out.append(std::move(h));
  }
  return out;
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.layout());
  out.set_global_phase(-c.global_phase());
  const auto& gs = c.gates();
  for (auto it = gs.rbegin(); it != gs.rend(); ++it) {
    if (it->kind == GateKind::SX) {
      // SX^dag = SX . SX . SX up to global phase: SX^4 = -I? SX^2 = X,
      // SX^4 = X^2 = I, so SX^dag = SX^3 exactly.
      Gate g = *it;
      out.append(g);
      out.append(g);
      out.append(g);
    } else {
      out.append(it->adjoint());
    }
  }
  return out;
}

void gate_matrix_1q(GateKind kind, double angle, std::complex<double> m[4]) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  switch (kind) {
    case GateKind::X:
      m[0] = 0; m[1] = 1; m[2] = 1; m[3] = 0;
      return;
    case GateKind::SX:
      m[0] = C(0.5, 0.5); m[1] = C(0.5, -0.5);
      m[2] = C(0.5, -0.5); m[3] = C(0.5, 0.5);
      return;
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      m[0] = s; m[1] = s; m[2] = s; m[3] = -s;
      return;
    }
    case GateKind::RZ:
      m[0] = std::exp(-i * (angle / 2)); m[1] = 0;
      m[2] = 0; m[3] = std::exp(i * (angle / 2));
      return;
    case GateKind::RX: {
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      m[0] = c; m[1] = -i * s; m[2] = -i * s; m[3] = c;
      return;
    }
    case GateKind::Phase:
      m[0] = 1; m[1] = 0; m[2] = 0; m[3] = std::exp(i * angle);
      return;
    case GateKind::Swap:
      throw std::invalid_argument("swap is not a single-qubit gate");
  }
}

std::vector<std::complex<double>> circuit_unitary(const Circuit& c) {
  const int w = c.width();
  if (w > 12) throw std::length_error("circuit_unitary guard: width > 12");
  const std::size_t dim = std::size_t{1} << w;
  using C = std::complex<double>;
  std::vector<C> u(dim * dim, C{0});
  for (std::size_t k = 0; k < dim; ++k) u[k * dim + k] = 1.0;

  std::vector<C> col(dim);
  // Apply gates column by column through a statevector-style kernel.
  auto apply_gate_to_vec = [&](const Gate& g, std::vector<C>& v) {
    auto controls_match = [&](std::size_t idx) {
      for (const auto& ctl : g.controls) {
        const int bit = static_cast<int>((idx >> ctl.qubit) & 1u);
        if (bit != ctl.polarity) return false;
      }
      return true;
    };
    if (g.kind == GateKind::Swap) {
      const std::size_t a = std::size_t{1} << g.targets[0];
      const std::size_t b = std::size_t{1} << g.targets[1];
      for (std::size_t idx = 0; idx < dim; ++idx) {
        if ((idx & a) && !(idx & b) && controls_match(idx))
          std::swap(v[idx], v[(idx ^ a) ^ b]);
      }
      return;
    }
    C m[4];
    gate_matrix_1q(g.kind, g.angle, m);
    const std::size_t t = std::size_t{1} << g.targets[0];
    for (std::size_t idx = 0; idx < dim; ++idx) {
      if ((idx & t) || !controls_match(idx)) continue;
      const C a0 = v[idx], a1 = v[idx | t];
      v[idx] = m[0] * a0 + m[1] * a1;
      v[idx | t] = m[2] * a0 + m[3] * a1;
    }
  };

  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < dim; ++k) col[k] = u[k * dim + j];
    for (const auto& g : c.gates()) apply_gate_to_vec(g, col);
    for (std::size_t k = 0; k < dim; ++k) u[k * dim + j] = col[k];
  }
  const C phase = std::exp(std::complex<double>(0.0, c.global_phase()));
  for (auto& x : u) x *= phase;
  return u;
}

}  // namespace qmix
