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

#include "qmix/mixers.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "doctest.h"
#include "qmix/oracle.hpp"
#include "qmix/sim.hpp"
#include "test_util.hpp"

using namespace qmix;
using qmix_test::fixture;

namespace {

using Cx = std::complex<double>;

Statevector zero_state(int width) {
  Statevector s(std::size_t{1} << width, 0.0);
  s[0] = 1.0;
  return s;
}

Statevector random_state(int width, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  Statevector v(std::size_t{1} << width);
  double norm = 0.0;
  for (auto& a : v) {
    a = {dist(gen), dist(gen)};
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

/// Embeds an x-space state into the full layout with ancillas at |0>.
Statevector embed_x(const Statevector& x_state, int full_width) {
  Statevector s(std::size_t{1} << full_width, 0.0);
  for (std::size_t k = 0; k < x_state.size(); ++k) s[k] = x_state[k];
  return s;
}

double distance(const Statevector& a, const Statevector& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d += std::norm(a[k] - b[k]);
  return std::sqrt(d);
}

/// Index of the modified method's tracked basis state |y, l(y), flags=0>.
std::size_t tracked_index(const Problem& p, const MixerLayout& lay,
                          Bitstring y) {
  std::size_t idx = y;
  for (std::size_t k = 0; k < lay.constraint_ids.size(); ++k) {
    const long v = p.evaluate_linear(lay.constraint_ids[k], y);
    idx |= static_cast<std::size_t>(v) << lay.acc[k].front();
  }
  return idx;
}

}  // namespace

TEST_CASE("method names round trip") {
  for (MixerMethod m :
       {MixerMethod::kStandardSequential, MixerMethod::kStandardParallel,
        MixerMethod::kModified}) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_method("bogus"), std::invalid_argument);
}

TEST_CASE("layout widths follow the sizing rule") {
  const std::map<std::string, int> parallel{
      {"1n", 11}, {"1w", 12}, {"2n", 12}, {"2w", 14}, {"3n", 13},
      {"3w", 14}, {"4n", 12}, {"4w", 13}, {"5n", 14}, {"5w", 15}};
  const std::map<std::string, int> sequential{
      {"1n", 11}, {"1w", 12}, {"2n", 12}, {"2w", 14}, {"3n", 13},
      {"3w", 14}, {"4n", 9},  {"4w", 10}, {"5n", 10}, {"5w", 12}};
  for (const auto& [name, w] : parallel) {
    const Problem p = load_problem_file(fixture(name.c_str()));
    CHECK_MESSAGE(
        mixer_layout(p, MixerMethod::kStandardParallel).regs.total_width() == w,
        name);
    CHECK_MESSAGE(
        mixer_layout(p, MixerMethod::kModified).regs.total_width() == w, name);
  }
  for (const auto& [name, w] : sequential) {
    const Problem p = load_problem_file(fixture(name.c_str()));
    CHECK_MESSAGE(
        mixer_layout(p, MixerMethod::kStandardSequential).regs.total_width() ==
            w,
        name);
  }
}

TEST_CASE("fully trivial constraints vanish from the layout") {
  // 0 <= x0 + x1 <= 2 is always satisfied
  Problem p(2, {{{1, 1}, 0, 2}});
  const MixerLayout lay = mixer_layout(p, MixerMethod::kStandardParallel);
  CHECK(lay.constraint_ids.empty());
  CHECK(lay.regs.total_width() == 2);
  CHECK(lay.all_flags.empty());
}

TEST_CASE("standard factor: infeasible neighbor leaves the state alone") {
  const Problem p = load_problem_file(fixture("1n"));
  const MixerLayout lay = mixer_layout(p, MixerMethod::kStandardParallel);
  const Circuit c = build_UBj_standard(p, lay, 1, 0.3,
                                       MixerMethod::kStandardParallel);
  // x = 1000 (value 2); flipping x_1 gives 0000 (value 0 < 1, infeasible)
  Statevector in(std::size_t{1} << lay.regs.total_width(), 0.0);
  in[from_bit_string("1000")] = 1.0;
  const Statevector out = run_statevector(c, in);
  CHECK(std::abs(out[from_bit_string("1000")] - 1.0) < 1e-9);
}

TEST_CASE("standard factor: feasible neighbor mixes with RX weights") {
  const Problem p = load_problem_file(fixture("1n"));
  const MixerLayout lay = mixer_layout(p, MixerMethod::kStandardParallel);
  const double theta = 0.3;
  const Circuit c = build_UBj_standard(p, lay, 2, theta,
                                       MixerMethod::kStandardParallel);
  // x = 1000 (value 2); flipping x_2 gives 1100 (value 5, feasible)
  Statevector in(std::size_t{1} << lay.regs.total_width(), 0.0);
  in[from_bit_string("1000")] = 1.0;
  const Statevector out = run_statevector(c, in);
  CHECK(std::abs(out[from_bit_string("1000")] - std::cos(theta)) < 1e-9);
  CHECK(std::abs(out[from_bit_string("1100")] - Cx(0, -std::sin(theta))) <
        1e-9);
}

TEST_CASE("modified factor tracks the register values") {
  const Problem p = load_problem_file(fixture("1n"));
  const MixerLayout lay = mixer_layout(p, MixerMethod::kModified);
  const double theta = 0.3;
  const Circuit c = build_UBj_modified(p, lay, 2, theta);
  Statevector in(std::size_t{1} << lay.regs.total_width(), 0.0);
  const std::size_t idx_in = tracked_index(p, lay, from_bit_string("1000"));
  const std::size_t idx_out = tracked_index(p, lay, from_bit_string("1100"));
  in[idx_in] = 1.0;  // |1000>|2>
  const Statevector out = run_statevector(c, in);
  CHECK(std::abs(out[idx_in] - std::cos(theta)) < 1e-9);    // |1000>|2>
  CHECK(std::abs(out[idx_out] - Cx(0, -std::sin(theta))) < 1e-9);  // |1100>|5>
}

TEST_CASE("zero angle factors are the identity") {
  const Problem p = load_problem_file(fixture("4n"));
  for (MixerMethod m :
       {MixerMethod::kStandardSequential, MixerMethod::kStandardParallel,
        MixerMethod::kModified}) {
    const MixerLayout lay = mixer_layout(p, m);
    for (int j = 1; j <= p.num_vars(); ++j) {
      const Circuit c = m == MixerMethod::kModified
                            ? build_UBj_modified(p, lay, j, 0.0)
                            : build_UBj_standard(p, lay, j, 0.0, m);
      const Statevector in = random_state(lay.regs.total_width(), 19);
      const Statevector out = run_statevector(c, in);
      CHECK(distance(in, out) < 1e-9);
    }
  }
}

TEST_CASE("factor action matches exp(-i theta B_j) on the feasible space") {
  // small custom problem so every method stays cheap
  const Problem p(3, {{{1, 2, 1}, 1, 3}});
  const FeasibleSet fs = enumerate_feasible(p);
  const double theta = 0.7;
  for (int j = 1; j <= 3; ++j) {
    // exact action: y <-> n_j(y) pairs rotate, everything else is fixed
    auto exact_pair = [&](Bitstring y) {
      const Bitstring ny = neighbor(y, j, 3);
      return p.is_feasible(y) && p.is_feasible(ny)
                 ? std::optional<Bitstring>(ny)
                 : std::nullopt;
    };
    for (MixerMethod m :
         {MixerMethod::kStandardSequential, MixerMethod::kStandardParallel,
          MixerMethod::kModified}) {
      const MixerLayout lay = mixer_layout(p, m);
      const int width = lay.regs.total_width();
      const Circuit c = m == MixerMethod::kModified
                            ? build_UBj_modified(p, lay, j, theta)
                            : build_UBj_standard(p, lay, j, theta, m);
      for (Bitstring y : fs.bitstrings) {
        Statevector in(std::size_t{1} << width, 0.0);
        const std::size_t idx = m == MixerMethod::kModified
                                    ? tracked_index(p, lay, y)
                                    : static_cast<std::size_t>(y);
        in[idx] = 1.0;
        const Statevector out = run_statevector(c, in);
        const auto ny = exact_pair(y);
        Statevector want(std::size_t{1} << width, 0.0);
        if (ny) {
          const std::size_t nidx = m == MixerMethod::kModified
                                       ? tracked_index(p, lay, *ny)
                                       : static_cast<std::size_t>(*ny);
          want[idx] = std::cos(theta);
          want[nidx] = Cx(0, -std::sin(theta));
        } else {
          want[idx] = 1.0;
        }
        CAPTURE(j);
        CAPTURE(y);
        CHECK(distance(out, want) < 1e-9);
      }
    }
  }
}

TEST_CASE("built circuits are unitary as dense matrices") {
  // n=2, one nontrivial constraint, widths stay tiny
  const Problem p(2, {{{1, 1}, 0, 1}});
  for (MixerMethod m :
       {MixerMethod::kStandardSequential, MixerMethod::kStandardParallel,
        MixerMethod::kModified}) {
    const MixerCircuit mc = build_mixer(p, {m, 1.3, 2});
    const std::size_t dim = std::size_t{1} << mc.circuit.width();
    const auto u = circuit_unitary(mc.circuit);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        Cx acc = 0.0;
        for (std::size_t k = 0; k < dim; ++k)
          acc += std::conj(u[k * dim + r]) * u[k * dim + c];
        CHECK(std::abs(acc - (r == c ? 1.0 : 0.0)) < 1e-9);
      }
  }
}

TEST_CASE("unconstrained single variable collapses to RX(beta)") {
  const Problem p(1, {{{1}, 0, 1}});  // trivial bound: free mixing
  const double beta = 0.9;
  const MixerCircuit mc =
      build_mixer(p, {MixerMethod::kStandardParallel, beta, 1});
  CHECK(mc.circuit.width() == 1);
  const Statevector out = run_statevector(mc.circuit, zero_state(1));
  CHECK(std::abs(out[0] - std::cos(beta)) < 1e-12);
  CHECK(std::abs(out[1] - Cx(0, -std::sin(beta))) < 1e-12);
}

TEST_CASE("single-constraint sequential and parallel circuits coincide") {
  const Problem p = load_problem_file(fixture("1n"));
  const MixerCircuit a =
      build_mixer(p, {MixerMethod::kStandardSequential, 3.0, 2});
  const MixerCircuit b =
      build_mixer(p, {MixerMethod::kStandardParallel, 3.0, 2});
  CHECK(a.circuit.dump() == b.circuit.dump());
}

TEST_CASE("all methods agree noiselessly on fixture 4n") {
  const Problem p = load_problem_file(fixture("4n"));
  const Statevector x0 = uniform_feasible_state(p);
  Statevector ref;
  for (MixerMethod m :
       {MixerMethod::kStandardSequential, MixerMethod::kStandardParallel,
        MixerMethod::kModified}) {
    const MixerCircuit mc = build_mixer(p, {m, 3.0, 3});
    const Statevector out =
        run_statevector(mc.circuit, embed_x(x0, mc.circuit.width()));
    // compare on the x component; ancillas must be back at |0>
    Statevector x_out(x0.size());
    for (std::size_t k = 0; k < x0.size(); ++k) x_out[k] = out[k];
    double mass = 0.0;
    for (const Cx& a : x_out) mass += std::norm(a);
    CHECK(mass > 1.0 - 1e-9);
    if (ref.empty()) {
      ref = x_out;
    } else {
      CHECK(distance(ref, x_out) < 1e-8);
    }
  }
}

TEST_CASE("feasibility and ancillas are preserved") {
  for (const char* name : {"1n", "4n"}) {
    const Problem p = load_problem_file(fixture(name));
    const Statevector x0 = uniform_feasible_state(p);
    for (MixerMethod m :
         {MixerMethod::kStandardSequential, MixerMethod::kStandardParallel,
          MixerMethod::kModified}) {
      const MixerCircuit mc = build_mixer(p, {m, 3.0, 2});
      const Statevector out =
          run_statevector(mc.circuit, embed_x(x0, mc.circuit.width()));
      double bad = 0.0;
      for (std::size_t k = 0; k < out.size(); ++k) {
        const Bitstring x = static_cast<Bitstring>(k & (x0.size() - 1));
        const bool anc_zero = k < x0.size();
        if (!anc_zero || !p.is_feasible(x)) bad += std::norm(out[k]);
      }
      CAPTURE(name);
      CAPTURE(method_name(m));
      CHECK(bad < 1e-9);
    }
  }
}

TEST_CASE("Trotter error decreases with r") {
  const Problem p = load_problem_file(fixture("1n"));
  const double beta = 3.0;
  Statevector exact = uniform_feasible_state(p);
  ExactMixer oracle(p);
  oracle.apply(exact, beta);
  double prev = 1e9;
  for (int r : {3, 5, 7}) {
    const MixerCircuit mc =
        build_mixer(p, {MixerMethod::kStandardParallel, beta, r});
    const Statevector out = run_statevector(
        mc.circuit, embed_x(uniform_feasible_state(p), mc.circuit.width()));
    const double err =
        distance(out, embed_x(exact, mc.circuit.width()));
    CAPTURE(r);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("config validation") {
  const Problem p = load_problem_file(fixture("4n"));
  CHECK_THROWS_AS(build_mixer(p, {MixerMethod::kModified, 1.0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_mixer(p, {MixerMethod::kModified,
                                  std::nan(""), 1}),
                  std::invalid_argument);
}
