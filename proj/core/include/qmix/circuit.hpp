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

#ifndef QMIX_CIRCUIT_HPP
#define QMIX_CIRCUIT_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qmix {

/// Base gate kinds. Controlled forms are expressed through the control
/// list: X with one positive control is CX, X with several controls is
/// MCX, RX with controls is MCRX, Phase with a control is CPHASE.
enum class GateKind { X, SX, H, RZ, RX, Phase, Swap };

struct Control {
  int qubit;
  int polarity;  // 1: active on |1>, 0: active on |0>
  bool operator==(const Control&) const = default;
};

struct Gate {
  GateKind kind;
  double angle = 0.0;  // radians; meaningful for RZ, RX, Phase
  std::vector<int> targets;
  std::vector<Control> controls;

  bool has_angle() const {
    return kind == GateKind::RZ || kind == GateKind::RX ||
           kind == GateKind::Phase;
  }
  Gate adjoint() const;
  /// All qubits the gate touches (targets then control qubits).
  std::vector<int> qubits() const;
  /// Display name following the usual conventions (CX, MCX, CPHASE, ...).
  std::string name() const;
};

/// Named contiguous qubit ranges. Offsets are assigned in declaration
/// order starting at 0.
struct Register {
  std::string name;
  int offset;
  int width;
  bool operator==(const Register&) const = default;
};

class RegisterLayout {
 public:
  RegisterLayout() = default;

  int add(const std::string& name, int width);
  const Register& reg(const std::string& name) const;
  bool has(const std::string& name) const;
  const std::vector<Register>& registers() const { return regs_; }
  int total_width() const { return total_; }
  /// Absolute index of qubit `k` within register `name`.
  int qubit(const std::string& name, int k) const;

  bool operator==(const RegisterLayout&) const = default;

 private:
  std::vector<Register> regs_;
  int total_ = 0;
};

struct CircuitMetrics {
  std::int64_t size = 0;
  std::int64_t depth = 0;
  int width = 0;
};

/// An ordered gate list over a register layout. Gates are appended during
/// construction; the algebra (compose/controlled/inverse) returns new
/// circuits.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(RegisterLayout layout) : layout_(std::move(layout)) {}

  const RegisterLayout& layout() const { return layout_; }
  const std::vector<Gate>& gates() const { return gates_; }
  double global_phase() const { return global_phase_; }
  void set_global_phase(double p) { global_phase_ = p; }
  void add_global_phase(double p) { global_phase_ += p; }
  int width() const { return layout_.total_width(); }
  bool empty() const { return gates_.empty(); }

  void append(Gate g);
  void append(const Circuit& other);  // in-place compose, same layout

  // Convenience emitters.
  void x(int q) { append({GateKind::X, 0.0, {q}, {}}); }
  void sx(int q) { append({GateKind::SX, 0.0, {q}, {}}); }
  void h(int q) { append({GateKind::H, 0.0, {q}, {}}); }
  void rz(int q, double theta) { append({GateKind::RZ, theta, {q}, {}}); }
  void rx(int q, double theta) { append({GateKind::RX, theta, {q}, {}}); }
  void phase(int q, double theta) { append({GateKind::Phase, theta, {q}, {}}); }
  void cx(int c, int t) { append({GateKind::X, 0.0, {t}, {{c, 1}}}); }
  void cphase(int c, int t, double theta) {
    append({GateKind::Phase, theta, {t}, {{c, 1}}});
  }
  void swap(int a, int b) { append({GateKind::Swap, 0.0, {a, b}, {}}); }

  /// One gate per line in the dump format; see format docs in README.
  std::string dump() const;

 private:
  RegisterLayout layout_;
  std::vector<Gate> gates_;
  double global_phase_ = 0.0;
};

/// Gates of `a` followed by gates of `b`; layouts must match.
Circuit compose(const Circuit& a, const Circuit& b);

/// Adds the given controls to every gate of `c`. Control qubits must be
/// untouched by `c`.
Circuit controlled(const Circuit& c, const std::vector<Control>& controls);

/// Reversed gate order with every gate replaced by its adjoint.
Circuit inverse(const Circuit& c);

/// Dense 2^width x 2^width unitary of the circuit (small widths only,
/// guarded at 12 qubits). Includes the global phase.
std::vector<std::complex<double>> circuit_unitary(const Circuit& c);

/// 2x2 matrix of an uncontrolled single-qubit gate kind.
void gate_matrix_1q(GateKind kind, double angle, std::complex<double> m[4]);

}  // namespace qmix

#endif  // QMIX_CIRCUIT_HPP
