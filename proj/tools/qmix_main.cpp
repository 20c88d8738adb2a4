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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmix/analysis.hpp"
#include "qmix/oracle.hpp"
#include "qmix/sim.hpp"
#include "qmix/transpile.hpp"

namespace {

using namespace qmix;

constexpr std::uint64_t kDefaultSeed = 20260823;

const std::vector<MixerMethod> kAllMethods = {
    MixerMethod::kStandardSequential, MixerMethod::kStandardParallel,
    MixerMethod::kModified};

NamedProblem load_named(const std::string& path) {
  return {std::filesystem::path(path).filename().string(),
          load_problem_file(path)};
}

std::vector<MixerMethod> parse_methods(const std::vector<std::string>& names) {
  if (names.empty()) return kAllMethods;
  std::vector<MixerMethod> out;
  for (const auto& s : names) out.push_back(parse_method(s));
  return out;
}

NoiseModel::Kind parse_kind(const std::string& s) {
  if (s == "none") return NoiseModel::Kind::kNone;
  if (s == "depolarizing") return NoiseModel::Kind::kDepolarizing;
  if (s == "damping") return NoiseModel::Kind::kDamping;
  throw std::invalid_argument("unknown noise kind '" + s +
                              "' (expected none, depolarizing or damping)");
}

Backend parse_backend(const std::string& s) {
  if (s == "auto") return Backend::kAuto;
  if (s == "density") return Backend::kDensity;
  if (s == "trajectories") return Backend::kTrajectories;
  throw std::invalid_argument(
      "unknown backend '" + s + "' (expected auto, density or trajectories)");
}

/// The paper grid: 1e-6, 2e-6, ..., 2e-5.
std::vector<double> default_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 20; ++k) g.push_back(k * 1e-6);
  return g;
}

Circuit built_mixer(const Problem& p, MixerMethod m, double beta, int r) {
  MixerConfig cfg;
  cfg.method = m;
  cfg.beta = beta;
  cfg.r = r;
  return build_mixer(p, cfg).circuit;
}

/// Amplitude overlap of the ancilla-|0> sector against a reference on x.
std::complex<double> sector_overlap(const Statevector& psi,
                                    const Statevector& ideal) {
  std::complex<double> ov = 0.0;
  for (std::size_t x = 0; x < ideal.size(); ++x)
    ov += std::conj(ideal[x]) * psi[x];
  return ov;
}

struct RunProbe {
  Statevector reduced;     // unnormalized ancilla-|0> sector on x
  double infeasible_mass;  // x-marginal mass on infeasible bitstrings
  double ancilla_zero;     // probability that ancillas end in |0>
};

RunProbe probe_run(const Problem& p, const Circuit& c) {
  const int n = p.num_vars();
  const std::size_t low = std::size_t{1} << n;
  Statevector psi(std::size_t{1} << c.width(), 0.0);
  {
    Statevector init = uniform_feasible_state(p);
    std::copy(init.begin(), init.end(), psi.begin());
  }
  psi = run_statevector(c, std::move(psi));
  RunProbe out;
  out.reduced.assign(psi.begin(), psi.begin() + static_cast<long>(low));
  out.ancilla_zero = 0.0;
  out.infeasible_mass = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double m = std::norm(psi[i]);
    if (i < low) out.ancilla_zero += m;
    if (!p.is_feasible(static_cast<Bitstring>(i & (low - 1))))
      out.infeasible_mass += m;
  }
  return out;
}

double norm2(const Statevector& v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return s;
}

/// Fidelity deficit against the oracle state.
double trotter_error(const Problem& p, MixerMethod m, double beta, int r,
                     const Statevector& ideal) {
  const RunProbe probe = probe_run(p, built_mixer(p, m, beta, r));
  return 1.0 - std::norm(sector_overlap(probe.reduced, ideal));
}

// --- subcommand state ---

struct Options {
  std::string problem;
  std::vector<std::string> problems;
  std::vector<std::string> methods;
  double beta = 3.0;
  int r = 3;
  std::vector<int> r_values;
  std::string noise = "none";
  std::vector<std::string> kinds;
  double param = 0.0;
  std::vector<double> params;
  std::string backend = "auto";
  int shots = 20000;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
  std::string output;
  std::string dump;
  bool size_sweep = false;
};

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(output, std::ios::binary);
  if (!f)
    throw std::runtime_error("cannot open '" + output + "' for writing");
  f << text;
}

int cmd_build(const Options& o) {
  const NamedProblem np = load_named(o.problem);
  std::string out;
  for (MixerMethod m : parse_methods(o.methods)) {
    const Circuit low = transpile(built_mixer(np.problem, m, o.beta, o.r));
    const CircuitMetrics met = metrics(low);
    char line[160];
    std::snprintf(line, sizeof(line),
                  "%s %s r=%d size=%lld depth=%lld width=%d\n",
                  np.name.c_str(), method_name(m).c_str(), o.r,
                  static_cast<long long>(met.size),
                  static_cast<long long>(met.depth), met.width);
    out += line;
    if (!o.dump.empty()) {
      std::ofstream f(o.dump, std::ios::binary);
      if (!f)
        throw std::runtime_error("cannot open '" + o.dump + "' for writing");
      f << low.dump();
    }
  }
  emit(out, o.output);
  return 0;
}

int cmd_count(const Options& o) {
  const NamedProblem np = load_named(o.problem);
  std::string out;
  for (MixerMethod m : parse_methods(o.methods)) {
    const GateCountEstimate e = estimate_counts(np.problem, m, o.r);
    const Circuit low = transpile(built_mixer(np.problem, m, o.beta, o.r));
    char line[200];
    std::snprintf(
        line, sizeof(line),
        "%s %s r=%d estimated=%lld per_factor=%lld wrap=%lld measured=%lld\n",
        np.name.c_str(), method_name(m).c_str(), o.r,
        static_cast<long long>(e.total), static_cast<long long>(e.per_factor),
        static_cast<long long>(e.wrap),
        static_cast<long long>(metrics(low).size));
    out += line;
  }
  const BoundCheck b = check_bounds(o.r);
  char line[160];
  std::snprintf(line, sizeof(line),
                "bounds r=%d sequential=%.6f parallel=%.6f n_max=%d/%d\n", o.r,
                b.n_bound_sequential, b.n_bound_parallel, b.n_max_sequential,
                b.n_max_parallel);
  out += line;
  emit(out, o.output);
  return 0;
}

int cmd_simulate(const Options& o) {
  const NamedProblem np = load_named(o.problem);
  SweepConfig cfg;
  cfg.beta = o.beta;
  cfg.backend = parse_backend(o.backend);
  cfg.shots = o.shots;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  const auto recs =
      run_noise_sweep({np}, parse_methods(o.methods), {o.r},
                      {parse_kind(o.noise)}, {o.param}, cfg);
  std::string out;
  for (const auto& rec : recs) {
    char line[200];
    std::snprintf(line, sizeof(line),
                  "%s %s r=%d noise=%s param=%g fidelity=%.9f\n",
                  rec.problem.c_str(), rec.method.c_str(), rec.r,
                  rec.noise_kind.c_str(), rec.noise_param, rec.fidelity);
    out += line;
  }
  emit(out, o.output);
  return 0;
}

int cmd_sweep(const Options& o) {
  std::vector<NamedProblem> probs;
  for (const auto& path : o.problems) probs.push_back(load_named(path));
  if (probs.empty()) throw std::invalid_argument("no problem files given");
  const std::vector<MixerMethod> methods = parse_methods(o.methods);
  const std::vector<int> rs =
      o.r_values.empty() ? std::vector<int>{3, 5, 7} : o.r_values;

  std::vector<ExperimentRecord> recs;
  if (o.size_sweep || o.kinds.empty()) {
    recs = run_size_experiment(probs, methods, rs, o.beta);
  } else {
    std::vector<NoiseModel::Kind> kinds;
    for (const auto& s : o.kinds) kinds.push_back(parse_kind(s));
    SweepConfig cfg;
    cfg.beta = o.beta;
    cfg.backend = parse_backend(o.backend);
    cfg.shots = o.shots;
    cfg.seed = o.seed;
    cfg.jobs = o.jobs;
    recs = run_noise_sweep(probs, methods, rs, kinds,
                           o.params.empty() ? default_grid() : o.params, cfg);
  }
  emit(to_csv(recs), o.output);
  return 0;
}

int cmd_verify(const Options& o) {
  const NamedProblem np = load_named(o.problem);
  const Problem& p = np.problem;
  bool ok = true;
  auto report = [&](const char* what, bool pass, const std::string& detail) {
    std::cout << (pass ? "pass" : "FAIL") << "  " << what
              << (detail.empty() ? "" : ": " + detail) << "\n";
    ok = ok && pass;
  };

  const ConnectivityResult conn = check_connectivity(p);
  if (!conn.connected) {
    report("connectivity", false,
           "no path between " + to_bit_string(conn.witness->first,
                                              p.num_vars()) +
               " and " + to_bit_string(conn.witness->second, p.num_vars()));
    return 1;
  }
  report("connectivity", true, "");

  Statevector ideal = uniform_feasible_state(p);
  ExactMixer(p).apply(ideal, o.beta);

  std::vector<RunProbe> probes;
  for (MixerMethod m : kAllMethods) {
    const RunProbe probe = probe_run(p, built_mixer(p, m, o.beta, o.r));
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%s infeasible=%.2e ancilla_return=%.12f",
                  method_name(m).c_str(), probe.infeasible_mass,
                  probe.ancilla_zero);
    report("feasibility preservation",
           probe.infeasible_mass <= 1e-9 && probe.ancilla_zero >= 1.0 - 1e-9,
           detail);
    probes.push_back(probe);
  }

  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = i + 1; j < probes.size(); ++j) {
      const double f =
          std::norm(sector_overlap(probes[i].reduced, probes[j].reduced)) /
          (norm2(probes[i].reduced) * norm2(probes[j].reduced));
      char detail[120];
      std::snprintf(detail, sizeof(detail), "%s vs %s fidelity=%.9f",
                    method_name(kAllMethods[i]).c_str(),
                    method_name(kAllMethods[j]).c_str(), f);
      report("method equivalence", f >= 1.0 - 1e-6, detail);
    }
  }

  for (MixerMethod m : kAllMethods) {
    const double e1 = trotter_error(p, m, o.beta, o.r, ideal);
    const double e2 = trotter_error(p, m, o.beta, 2 * o.r, ideal);
    char detail[160];
    std::snprintf(detail, sizeof(detail), "%s err(r=%d)=%.3e err(r=%d)=%.3e",
                  method_name(m).c_str(), o.r, e1, 2 * o.r, e2);
    report("trotter error decreases", e2 < e1, detail);
  }

  const BoundCheck b = check_bounds(o.r);
  char detail[120];
  std::snprintf(detail, sizeof(detail),
                "sequential=%.6f parallel=%.6f n_max=%d/%d",
                b.n_bound_sequential, b.n_bound_parallel, b.n_max_sequential,
                b.n_max_parallel);
  report("bound closed forms", b.n_max_sequential == 5 && b.n_max_parallel == 2,
         detail);

  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constrained hypercube mixer toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool single_problem) {
    if (single_problem)
      sub->add_option("--problem", o.problem, "problem file")->required();
    sub->add_option("--method", o.methods,
                    "mixer method (std-seq, std-par, mod); default all");
    sub->add_option("--beta", o.beta, "mixing angle");
    sub->add_option("--output", o.output, "write results to this file");
  };

  CLI::App* build = app.add_subcommand("build", "build and transpile a mixer");
  add_common(build, true);
  build->add_option("--r", o.r, "Trotter iterations");
  build->add_option("--dump", o.dump, "write the gate-per-line circuit dump");

  CLI::App* count =
      app.add_subcommand("count", "symbolic and measured gate counts");
  add_common(count, true);
  count->add_option("--r", o.r, "Trotter iterations");

  CLI::App* simulate =
      app.add_subcommand("simulate", "single noisy fidelity evaluation");
  add_common(simulate, true);
  simulate->add_option("--r", o.r, "Trotter iterations");
  simulate->add_option("--noise", o.noise,
                       "noise kind (none, depolarizing, damping)");
  simulate->add_option("--param", o.param, "noise parameter");
  simulate->add_option("--backend", o.backend,
                       "auto, density or trajectories");
  simulate->add_option("--shots", o.shots, "trajectory shots");
  simulate->add_option("--seed", o.seed, "PRNG seed (default 20260823)");
  simulate->add_option("--jobs", o.jobs, "worker threads");

  CLI::App* sweep = app.add_subcommand("sweep", "experiment sweeps to CSV");
  sweep->add_option("--problem", o.problems, "problem files")->required();
  sweep->add_option("--method", o.methods,
                    "mixer method (std-seq, std-par, mod); default all");
  sweep->add_option("--beta", o.beta, "mixing angle");
  sweep->add_option("--r", o.r_values, "Trotter iterations (default 3 5 7)");
  sweep->add_flag("--size", o.size_sweep, "size experiment, no simulation");
  sweep->add_option("--noise", o.kinds, "noise kinds to sweep");
  sweep->add_option("--params", o.params,
                    "noise grid (default 1e-6 .. 2e-5 in 20 steps)");
  sweep->add_option("--backend", o.backend, "auto, density or trajectories");
  sweep->add_option("--shots", o.shots, "trajectory shots");
  sweep->add_option("--seed", o.seed, "PRNG seed (default 20260823)");
  sweep->add_option("--jobs", o.jobs, "worker threads");
  sweep->add_option("--output", o.output, "write CSV to this file");

  CLI::App* verify =
      app.add_subcommand("verify", "oracle checks on one problem");
  verify->add_option("--problem", o.problem, "problem file")->required();
  verify->add_option("--beta", o.beta, "mixing angle");
  verify->add_option("--r", o.r, "Trotter iterations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (build->parsed()) return cmd_build(o);
    if (count->parsed()) return cmd_count(o);
    if (simulate->parsed()) return cmd_simulate(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
