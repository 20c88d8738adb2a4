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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_util.hpp"

using namespace qmix;
using qmix_test::CV;
using qmix_test::max_abs_diff;

namespace {

RegisterLayout make_layout(int n) {
  RegisterLayout l;
  l.add("q", n);
  return l;
}

CV identity(std::size_t dim) {
  CV u(dim * dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) u[k * dim + k] = 1.0;
  return u;
}

CV mul(const CV& a, const CV& b, std::size_t dim) {
  CV r(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      const auto aik = a[i * dim + k];
      if (std::abs(aik) == 0.0) continue;
      for (std::size_t j = 0; j < dim; ++j)
        r[i * dim + j] += aik * b[k * dim + j];
    }
  return r;
}

}  // namespace

TEST_CASE("register layout") {
  RegisterLayout l;
  CHECK(l.add("x", 3) == 0);
  CHECK(l.add("anc", 4) == 3);
  CHECK(l.total_width() == 7);
  CHECK(l.qubit("anc", 2) == 5);
  CHECK(l.reg("x").width == 3);
  CHECK_THROWS_AS(l.add("x", 2), std::invalid_argument);
  CHECK_THROWS_AS(l.qubit("anc", 4), std::invalid_argument);
  CHECK_THROWS_AS((void)l.reg("nope"), std::invalid_argument);
}

TEST_CASE("append validates qubits") {
  Circuit c(make_layout(2));
  CHECK_THROWS_AS(c.x(2), std::invalid_argument);
  CHECK_THROWS_AS(c.cx(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(c.cx(-1, 0), std::invalid_argument);
}

TEST_CASE("dump format") {
  Circuit c(make_layout(3));
  c.h(0);
  c.cx(0, 1);
  c.rz(2, 0.5);
  c.append({GateKind::RX, 1.25, {2}, {{0, 1}, {1, 0}}});
  c.swap(0, 2);
  CHECK(c.dump() ==
        "GATE H t=0\n"
        "GATE CX t=1 c=0:1\n"
        "GATE RZ 0.5 t=2\n"
        "GATE MCRX 1.25 t=2 c=0:1,1:0\n"
        "GATE SWAP t=0,2\n");
}

TEST_CASE("single-qubit gate matrices") {
  using C = std::complex<double>;
  C sx[4], x[4], prod[4];
  gate_matrix_1q(GateKind::SX, 0.0, sx);
  gate_matrix_1q(GateKind::X, 0.0, x);
  prod[0] = sx[0] * sx[0] + sx[1] * sx[2];
  prod[1] = sx[0] * sx[1] + sx[1] * sx[3];
  prod[2] = sx[2] * sx[0] + sx[3] * sx[2];
  prod[3] = sx[2] * sx[1] + sx[3] * sx[3];
  for (int k = 0; k < 4; ++k) CHECK(std::abs(prod[k] - x[k]) < 1e-12);

  for (GateKind k : {GateKind::X, GateKind::SX, GateKind::H, GateKind::RZ,
                     GateKind::RX, GateKind::Phase}) {
    C u[4];
    gate_matrix_1q(k, 0.37, u);
    // unitarity: U U^dag = I
    const C d00 = u[0] * std::conj(u[0]) + u[1] * std::conj(u[1]);
    const C d01 = u[0] * std::conj(u[2]) + u[1] * std::conj(u[3]);
    const C d11 = u[2] * std::conj(u[2]) + u[3] * std::conj(u[3]);
    CHECK(std::abs(d00 - 1.0) < 1e-12);
    CHECK(std::abs(d01) < 1e-12);
    CHECK(std::abs(d11 - 1.0) < 1e-12);
  }
}

TEST_CASE("bell circuit unitary") {
  Circuit c(make_layout(2));
  c.h(0);
  c.cx(0, 1);
  CV u = circuit_unitary(c);
  const double s = 1.0 / std::sqrt(2.0);
  // columns indexed by |q1 q0| with q0 least significant
  CHECK(std::abs(u[0 * 4 + 0] - s) < 1e-12);
  CHECK(std::abs(u[3 * 4 + 0] - s) < 1e-12);
  CHECK(std::abs(u[0 * 4 + 1] - s) < 1e-12);
  CHECK(std::abs(u[3 * 4 + 1] + s) < 1e-12);  // H picks up a sign on |1>
}

namespace {

Circuit mixed_bag() {
  Circuit c(make_layout(4));
  c.h(0);
  c.sx(1);
  c.rx(2, 0.7);
  c.rz(3, -1.1);
  c.cx(0, 3);
  c.cphase(1, 2, 0.9);
  c.swap(0, 2);
  c.phase(3, 0.4);
  c.append({GateKind::RX, 0.6, {1}, {{0, 1}, {2, 0}}});
  c.append({GateKind::X, 0.0, {0}, {{1, 0}, {2, 1}, {3, 1}}});
  c.add_global_phase(0.123);
  return c;
}

}  // namespace

TEST_CASE("inverse gives the identity") {
  Circuit c = mixed_bag();
  CV u = circuit_unitary(compose(c, inverse(c)));
  CHECK(max_abs_diff(u, identity(16)) < 1e-12);
  CV v = circuit_unitary(compose(inverse(c), c));
  CHECK(max_abs_diff(v, identity(16)) < 1e-12);
}

TEST_CASE("controlled circuit is block structured") {
  RegisterLayout l = make_layout(3);
  Circuit c(l);
  c.h(1);
  c.rz(2, 0.8);
  c.cx(1, 2);
  c.add_global_phase(0.5);

  for (int pol : {1, 0}) {
    Circuit cc = controlled(c, {{0, pol}});
    CV u = circuit_unitary(cc);
    CV plain = circuit_unitary(c);
    // rows/cols with control bit != pol must be identity; those with
    // control bit == pol reproduce the original on the rest.
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t cidx = 0; cidx < 8; ++cidx) {
        const bool ra = static_cast<int>(r & 1) == pol;
        const bool ca = static_cast<int>(cidx & 1) == pol;
        const std::complex<double> got = u[r * 8 + cidx];
        if (!ra && !ca) {
          CHECK(std::abs(got - (r == cidx ? 1.0 : 0.0)) < 1e-12);
        } else if (ra && ca) {
          // compress out qubit 0: the original acts on qubits 1,2 of a
          // 3-qubit layout, so take the same indices with bit 0 cleared.
          const std::size_t rr = r >> 1, cc2 = cidx >> 1;
          // map into the 3-qubit plain unitary at bit0=0 rows/cols
          CHECK(std::abs(got - plain[(rr << 1) * 8 + (cc2 << 1)]) < 1e-12);
        } else {
          CHECK(std::abs(got) < 1e-12);
        }
      }
  }
  CHECK_THROWS_AS(controlled(c, {{1, 1}}), std::invalid_argument);
}

TEST_CASE("compose requires matching layouts") {
  Circuit a(make_layout(2)), b(make_layout(3));
  CHECK_THROWS_AS(compose(a, b), std::invalid_argument);
}

TEST_CASE("global phase enters the unitary") {
  Circuit c(make_layout(1));
  c.add_global_phase(std::numbers::pi);
  CV u = circuit_unitary(c);
  CHECK(std::abs(u[0] + 1.0) < 1e-12);
  CHECK(std::abs(u[3] + 1.0) < 1e-12);
}

TEST_CASE("unitary guard") {
  Circuit c(make_layout(13));
  CHECK_THROWS_AS(circuit_unitary(c), std::length_error);
}

TEST_CASE("matrix product helper sanity") {
  CV i4 = identity(4);
  CHECK(max_abs_diff(mul(i4, i4, 4), i4) < 1e-15);
}
