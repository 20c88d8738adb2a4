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

#include "qmix/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qmix/arith.hpp"
#include "qmix/oracle.hpp"
#include "qmix/transpile.hpp"

namespace qmix {

namespace {

std::int64_t transpiled_size(const Circuit& c) {
  return metrics(transpile(c)).size;
}

std::vector<int> range_qubits(int first, int count) {
  std::vector<int> q(static_cast<std::size_t>(count));
  std::iota(q.begin(), q.end(), first);
  return q;
}

/// Controlled unit-constant rotation block on a width-w accumulator.
std::int64_t measure_ctrl_adder(int w) {
  RegisterLayout regs;
  regs.add("c", 1);
  regs.add("acc", w);
  Circuit c(regs);
  append_fourier_const(c, range_qubits(1, w), 1, {{0, 1}});
  return transpiled_size(c);
}

/// Full linear adder as terms controlled unit blocks, one per variable.
std::int64_t measure_adder(int terms, int w) {
  RegisterLayout regs;
  regs.add("x", terms);
  regs.add("acc", w);
  Circuit c(regs);
  for (int j = 0; j < terms; ++j)
    append_fourier_const(c, range_qubits(terms, w), 1, {{j, 1}});
  return transpiled_size(c);
}

std::int64_t measure_comparator(const LinearConstraint& cons, int w,
                                int flags) {
  RegisterLayout regs;
  regs.add("acc", w);
  regs.add("flag", flags);
  Circuit c(regs);
  append_range_comparator(c, range_qubits(0, w), cons.lower, cons.upper,
                          cons.coeff_sum(), range_qubits(w, flags));
  return transpiled_size(c);
}

std::int64_t measure_flag_rx(int flags) {
  RegisterLayout regs;
  regs.add("t", 1);
  if (flags > 0) regs.add("flag", flags);
  Circuit c(regs);
  std::vector<Control> ctl;
  for (int f = 0; f < flags; ++f) ctl.push_back({1 + f, 1});
  c.append({GateKind::RX, 1.0, {0}, std::move(ctl)});
  return transpiled_size(c);
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

void append_field(std::string& out, const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  out += buf;
}

/// Fidelity of the reduced x-state of a pure full-register state against
/// a pure reference on x alone: sum over ancilla sectors of the squared
/// overlap.
double reduced_fidelity_pure(const Statevector& psi, int width, int keep,
                             const Statevector& ideal) {
  const std::size_t low = std::size_t{1} << keep;
  const std::size_t sectors = (std::size_t{1} << width) >> keep;
  if (ideal.size() != low)
    throw std::invalid_argument("reference dimension mismatch");
  double f = 0.0;
  for (std::size_t a = 0; a < sectors; ++a) {
    std::complex<double> ov = 0.0;
    const std::size_t base = a << keep;
    for (std::size_t x = 0; x < low; ++x)
      ov += std::conj(ideal[x]) * psi[base + x];
    f += std::norm(ov);
  }
  return f;
}

Statevector embed_low(const Statevector& low_state, int width) {
  Statevector full(std::size_t{1} << width, 0.0);
  std::copy(low_state.begin(), low_state.end(), full.begin());
  return full;
}

NoiseModel make_noise(NoiseModel::Kind kind, double p) {
  switch (kind) {
    case NoiseModel::Kind::kNone:
      return NoiseModel::none();
    case NoiseModel::Kind::kDepolarizing:
      return NoiseModel::depolarizing(p);
    case NoiseModel::Kind::kDamping:
      return NoiseModel::damping(p);
  }
  throw std::logic_error("bad noise kind");
}

std::string noise_kind_name(NoiseModel::Kind kind) {
  switch (kind) {
    case NoiseModel::Kind::kNone:
      return "none";
    case NoiseModel::Kind::kDepolarizing:
      return "depolarizing";
    case NoiseModel::Kind::kDamping:
      return "damping";
  }
  throw std::logic_error("bad noise kind");
}

constexpr int kDensityWidthGuard = 13;

}  // namespace

GateCountEstimate estimate_counts(const Problem& problem, MixerMethod method,
                                  int r) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  const MixerLayout layout = mixer_layout(problem, method);
  const int n = problem.num_vars();

  GateCountEstimate e;
  e.g_x = 1;
  e.g_rx = measure_flag_rx(static_cast<int>(layout.all_flags.size()));

  std::int64_t sum_comp = 0, sum_adder = 0, sum_ctrl = 0;
  for (std::size_t k = 0; k < layout.constraint_ids.size(); ++k) {
    const auto& cons = problem.constraint(layout.constraint_ids[k]);
    const int w = static_cast<int>(layout.acc[k].size());
    const int flags =
        comparator_flag_count(cons.lower, cons.upper, cons.coeff_sum());
    e.g_comp.push_back(measure_comparator(cons, w, flags));
    e.g_adder.push_back(measure_adder(n, w));
    e.g_ctrl_add.push_back(measure_ctrl_adder(w));
    sum_comp += e.g_comp.back();
    sum_adder += e.g_adder.back();
    sum_ctrl += e.g_ctrl_add.back();
  }

  switch (method) {
    case MixerMethod::kStandardSequential:
      e.per_factor = 4 * e.g_x + 2 * sum_comp + 2 * sum_adder + e.g_rx;
      break;
    case MixerMethod::kStandardParallel:
      e.per_factor = 4 * e.g_x + 2 * sum_comp + 4 * sum_adder + e.g_rx;
      break;
    case MixerMethod::kModified:
      e.per_factor = 4 * e.g_x + 2 * sum_comp + 10 * sum_ctrl + e.g_rx;
      e.wrap = 2 * sum_adder;
      break;
  }
  e.total = 2 * static_cast<std::int64_t>(n) * r * e.per_factor + e.wrap;
  return e;
}

BoundCheck check_bounds(int r) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  BoundCheck b;
  b.n_bound_sequential = 5.0 + 1.0 / (2.0 * r);
  b.n_bound_parallel = 2.5 + 1.0 / (4.0 * r);
  b.n_max_sequential = static_cast<int>(std::floor(b.n_bound_sequential));
  b.n_max_parallel = static_cast<int>(std::floor(b.n_bound_parallel));
  return b;
}

std::string to_csv(const std::vector<ExperimentRecord>& records) {
  std::string out =
      "problem,method,r,noise_kind,noise_param,size,depth,width,fidelity,"
      "seconds\n";
  for (const auto& rec : records) {
    out += rec.problem;
    out += ',';
    out += rec.method;
    out += ',';
    out += std::to_string(rec.r);
    out += ',';
    out += rec.noise_kind;
    out += ',';
    if (!rec.noise_kind.empty()) append_field(out, "%.9g", rec.noise_param);
    out += ',';
    out += std::to_string(rec.size);
    out += ',';
    out += std::to_string(rec.depth);
    out += ',';
    out += std::to_string(rec.width);
    out += ',';
    if (rec.fidelity >= 0.0) append_field(out, "%.9f", rec.fidelity);
    out += ',';
    append_field(out, "%.3f", rec.seconds);
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path,
               const std::vector<ExperimentRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << to_csv(records);
}

std::vector<ExperimentRecord> run_size_experiment(
    const std::vector<NamedProblem>& problems,
    const std::vector<MixerMethod>& methods, const std::vector<int>& r_values,
    double beta) {
  std::vector<ExperimentRecord> out;
  for (const auto& np : problems) {
    for (MixerMethod method : methods) {
      for (int r : r_values) {
        const auto start = std::chrono::steady_clock::now();
        MixerConfig cfg;
        cfg.method = method;
        cfg.beta = beta;
        cfg.r = r;
        const Circuit low = transpile(build_mixer(np.problem, cfg).circuit);
        const CircuitMetrics m = metrics(low);
        ExperimentRecord rec;
        rec.problem = np.name;
        rec.method = method_name(method);
        rec.r = r;
        rec.size = m.size;
        rec.depth = m.depth;
        rec.width = m.width;
        rec.seconds = elapsed_seconds(start);
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<ExperimentRecord> run_noise_sweep(
    const std::vector<NamedProblem>& problems,
    const std::vector<MixerMethod>& methods, const std::vector<int>& r_values,
    const std::vector<NoiseModel::Kind>& kinds,
    const std::vector<double>& grid, const SweepConfig& config) {
  struct Prepared {
    Circuit circuit;
    CircuitMetrics m;
    Statevector initial;  // full register
  };

  // Deterministic task order: problem, kind, grid point, method, r.
  struct Task {
    std::size_t problem;
    NoiseModel::Kind kind;
    double p;
    std::size_t prepared;
  };

  std::vector<Statevector> ideals;
  std::vector<Prepared> prepared;
  std::vector<Task> tasks;
  std::vector<ExperimentRecord> records;

  for (std::size_t pi = 0; pi < problems.size(); ++pi) {
    const Problem& problem = problems[pi].problem;
    Statevector ideal = uniform_feasible_state(problem);
    ExactMixer(problem).apply(ideal, config.beta);
    ideals.push_back(std::move(ideal));

    std::vector<std::size_t> slot;  // per (method, r) in loop order
    for (MixerMethod method : methods) {
      for (int r : r_values) {
        MixerConfig cfg;
        cfg.method = method;
        cfg.beta = config.beta;
        cfg.r = r;
        if (config.backend == Backend::kDensity &&
            mixer_layout(problem, method).regs.total_width() >
                kDensityWidthGuard)
          throw std::invalid_argument(
              "circuit width exceeds the density backend guard; use the "
              "trajectory backend");
        Prepared prep;
        prep.circuit = transpile(build_mixer(problem, cfg).circuit);
        prep.m = metrics(prep.circuit);
        prep.initial =
            embed_low(uniform_feasible_state(problem), prep.circuit.width());
        slot.push_back(prepared.size());
        prepared.push_back(std::move(prep));
      }
    }

    for (NoiseModel::Kind kind : kinds) {
      for (double p : grid) {
        for (std::size_t s : slot) tasks.push_back({pi, kind, p, s});
      }
    }
  }

  records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      const Prepared& prep = prepared[t.prepared];
      const Statevector& ideal = ideals[t.problem];
      const int n = problems[t.problem].problem.num_vars();
      const auto start = std::chrono::steady_clock::now();

      ExperimentRecord rec;
      rec.problem = problems[t.problem].name;
      const Circuit& c = prep.circuit;
      rec.size = prep.m.size;
      rec.depth = prep.m.depth;
      rec.width = prep.m.width;
      rec.noise_kind = noise_kind_name(t.kind);
      rec.noise_param = t.p;

      const NoiseModel noise = make_noise(t.kind, t.p);
      const bool noiseless =
          noise.kind == NoiseModel::Kind::kNone || noise.p == 0.0;
      if (noiseless) {
        const Statevector psi = run_statevector(c, prep.initial);
        rec.fidelity = reduced_fidelity_pure(psi, rec.width, n, ideal);
      } else if (config.backend != Backend::kTrajectories &&
                 rec.width <= kDensityWidthGuard) {
        DensityMatrix rho =
            run_density(c, pure_density(prep.initial), noise);
        rec.fidelity =
            fidelity_pure(partial_trace_low(rho, rec.width, n), ideal);
      } else {
        const std::uint64_t shot_seed =
            config.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1));
        rec.fidelity = trajectory_fidelity(c, prep.initial, noise, ideal,
                                           config.shots, shot_seed)
                           .fidelity;
      }
      rec.seconds = elapsed_seconds(start);
      records[i] = std::move(rec);
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Method and r are reconstructed from the per-problem slot order.
  std::size_t at = 0;
  for (std::size_t pi = 0; pi < problems.size(); ++pi) {
    for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
      for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        for (MixerMethod method : methods) {
          for (int r : r_values) {
            records[at].method = method_name(method);
            records[at].r = r;
            ++at;
          }
        }
      }
    }
  }
  return records;
}

Problem random_connected_problem(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coeff(1, 5);
  for (;;) {
    std::vector<long> c(static_cast<std::size_t>(n));
    for (long& v : c) v = coeff(rng);
    const long sum = std::accumulate(c.begin(), c.end(), 0L);
    const long mx = *std::max_element(c.begin(), c.end());
    // b - a >= 2 * max coefficient guarantees a connected feasible graph;
    // a >= 1 keeps the lower bound nontrivial.
    if (sum - 2 * mx < 1) continue;
    const long a = std::uniform_int_distribution<long>(1, sum - 2 * mx)(rng);
    const long b = std::uniform_int_distribution<long>(a + 2 * mx, sum)(rng);
    Problem problem(n, {LinearConstraint{c, a, b}});
    if (comparator_flag_count(a, b, sum) == 0) continue;
    if (enumerate_feasible(problem).bitstrings.size() < 2) continue;
    if (!check_connectivity(problem).connected) continue;
    return problem;
  }
}

std::vector<NamedProblem> random_connected_problems(const std::vector<int>& ns,
                                                    int count,
                                                    std::uint64_t seed) {
  if (ns.empty()) throw std::invalid_argument("need at least one size");
  std::mt19937_64 rng(seed);
  std::vector<NamedProblem> out;
  for (int i = 0; i < count; ++i) {
    const int n = ns[static_cast<std::size_t>(i) % ns.size()];
    char name[32];
    std::snprintf(name, sizeof(name), "rnd-n%d-%02d", n, i + 1);
    out.push_back({name, random_connected_problem(n, rng)});
  }
  return out;
}

}  // namespace qmix
