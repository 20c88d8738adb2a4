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

#include <benchmark/benchmark.h>

#include <complex>
#include <string>
#include <vector>

#include "qmix/arith.hpp"
#include "qmix/circuit.hpp"
#include "qmix/mixers.hpp"
#include "qmix/oracle.hpp"
#include "qmix/problem.hpp"
#include "qmix/sim.hpp"
#include "qmix/transpile.hpp"

namespace {

qmix::Circuit adder_chain(int w, int reps) {
  qmix::RegisterLayout l;
  l.add("acc", w);
  std::vector<int> q;
  for (int k = 0; k < w; ++k) q.push_back(k);
  qmix::Circuit c(l);
  for (int r = 0; r < reps; ++r) qmix::append_const_adder(c, q, 3 + r);
  return c;
}

void BM_transpile_adder_chain(benchmark::State& state) {
  const qmix::Circuit c = adder_chain(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qmix::transpile(c));
  }
}
BENCHMARK(BM_transpile_adder_chain)->Arg(8)->Arg(12)->Arg(15);

qmix::Problem fixture(const char* name) {
  return qmix::load_problem_file(std::string(QMIX_FIXTURE_DIR) + "/" + name);
}

qmix::Circuit fixture_mixer(const char* name, qmix::MixerMethod m, int r) {
  qmix::MixerConfig cfg;
  cfg.method = m;
  cfg.beta = 3.0;
  cfg.r = r;
  return qmix::build_mixer(fixture(name), cfg).circuit;
}

void BM_build_and_transpile_mixer(benchmark::State& state) {
  const qmix::MixerMethod m = static_cast<qmix::MixerMethod>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qmix::transpile(fixture_mixer("1n", m, 3)));
  }
}
BENCHMARK(BM_build_and_transpile_mixer)->Arg(0)->Arg(1)->Arg(2);

void BM_statevector_mixer(benchmark::State& state) {
  const qmix::Problem p = fixture("1n");
  const qmix::Circuit c =
      fixture_mixer("1n", qmix::MixerMethod::kModified, 3);
  qmix::Statevector init(std::size_t{1} << c.width(), 0.0);
  {
    const qmix::Statevector low = qmix::uniform_feasible_state(p);
    std::copy(low.begin(), low.end(), init.begin());
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(qmix::run_statevector(c, init));
  }
}
BENCHMARK(BM_statevector_mixer);

void BM_density_noisy_gates(benchmark::State& state) {
  // Throughput of the fused gate-plus-channel kernels on a small register.
  const int w = static_cast<int>(state.range(0));
  qmix::RegisterLayout l;
  l.add("q", w);
  qmix::Circuit c(l);
  for (int k = 0; k < w; ++k) {
    c.sx(k);
    c.rz(k, 0.3 + k);
    c.cx(k, (k + 1) % w);
  }
  const qmix::DensityMatrix rho = [&] {
    qmix::Statevector psi(std::size_t{1} << w, 0.0);
    psi[0] = 1.0;
    return qmix::pure_density(psi);
  }();
  const qmix::NoiseModel noise = qmix::NoiseModel::depolarizing(1e-4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qmix::run_density(c, rho, noise));
  }
  state.SetItemsProcessed(state.iterations() * 3 * w);
}
BENCHMARK(BM_density_noisy_gates)->Arg(6)->Arg(8)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
