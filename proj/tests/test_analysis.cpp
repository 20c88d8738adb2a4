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

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "qmix/transpile.hpp"
#include "test_util.hpp"

using namespace qmix;
using qmix_test::fixture;

namespace {

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"1n", "1w", "2n", "2w", "3n",
                                                 "3w", "4n", "4w", "5n", "5w"};
  return names;
}

std::int64_t sum(const std::vector<std::int64_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::int64_t{0});
}

std::int64_t measured_size(const Problem& p, MixerMethod m, int r) {
  MixerConfig cfg;
  cfg.method = m;
  cfg.beta = 3.0;
  cfg.r = r;
  return metrics(transpile(build_mixer(p, cfg).circuit)).size;
}

Problem tiny_connected() {
  // n=2, 0 <= x1 + x2 <= 1: feasible {00, 01, 10}, connected through 00.
  return Problem(2, {LinearConstraint{{1, 1}, 0, 1}});
}

}  // namespace

TEST_CASE("estimate totals have the 2nr prefactor structure") {
  for (const auto& name : fixture_names()) {
    const Problem p = load_problem_file(fixture(name.c_str()));
    for (MixerMethod m :
         {MixerMethod::kStandardSequential, MixerMethod::kStandardParallel,
          MixerMethod::kModified}) {
      for (int r : {1, 3, 7}) {
        const GateCountEstimate e = estimate_counts(p, m, r);
        const std::int64_t nr2 = 2LL * p.num_vars() * r;
        CHECK(e.total == nr2 * e.per_factor + e.wrap);
        CHECK((e.total - e.wrap) % nr2 == 0);
        if (m == MixerMethod::kModified)
          CHECK(e.wrap == 2 * sum(e.g_adder));
        else
          CHECK(e.wrap == 0);
      }
    }
  }
}

TEST_CASE("per-factor cost is the stated linear combination of primitives") {
  const Problem p = load_problem_file(fixture("5w"));
  const int r = 3;
  const auto seq = estimate_counts(p, MixerMethod::kStandardSequential, r);
  const auto par = estimate_counts(p, MixerMethod::kStandardParallel, r);
  const auto mod = estimate_counts(p, MixerMethod::kModified, r);
  CHECK(seq.per_factor ==
        4 * seq.g_x + 2 * sum(seq.g_comp) + 2 * sum(seq.g_adder) + seq.g_rx);
  CHECK(par.per_factor ==
        4 * par.g_x + 2 * sum(par.g_comp) + 4 * sum(par.g_adder) + par.g_rx);
  CHECK(mod.per_factor == 4 * mod.g_x + 2 * sum(mod.g_comp) +
                              10 * sum(mod.g_ctrl_add) + mod.g_rx);
}

TEST_CASE("full adder costs at least n controlled constant adders") {
  for (const auto& name : fixture_names()) {
    const Problem p = load_problem_file(fixture(name.c_str()));
    const auto e = estimate_counts(p, MixerMethod::kStandardParallel, 1);
    REQUIRE(e.g_adder.size() == e.g_ctrl_add.size());
    for (std::size_t k = 0; k < e.g_adder.size(); ++k)
      CHECK(e.g_adder[k] >= p.num_vars() * e.g_ctrl_add[k]);
  }
}

TEST_CASE("modified estimate beats the parallel estimate for n >= 3") {
  for (const auto& name : fixture_names()) {
    const Problem p = load_problem_file(fixture(name.c_str()));
    REQUIRE(p.num_vars() >= 3);
    for (int r : {1, 3, 7}) {
      const auto par = estimate_counts(p, MixerMethod::kStandardParallel, r);
      const auto mod = estimate_counts(p, MixerMethod::kModified, r);
      CHECK(mod.total < par.total);
    }
  }
}

TEST_CASE("measured circuit sizes never exceed the estimates") {
  // Cross-factor cancellation only removes gates relative to the
  // per-factor accounting, so the estimate is an upper envelope.
  for (const char* name : {"1n", "4n"}) {
    const Problem p = load_problem_file(fixture(name));
    for (MixerMethod m :
         {MixerMethod::kStandardSequential, MixerMethod::kStandardParallel,
          MixerMethod::kModified}) {
      const auto e = estimate_counts(p, m, 3);
      CHECK(measured_size(p, m, 3) <= e.total);
    }
  }
}

TEST_CASE("check_bounds returns the closed forms and integer ceilings") {
  const BoundCheck b1 = check_bounds(1);
  CHECK(b1.n_bound_sequential == doctest::Approx(5.5).epsilon(1e-12));
  CHECK(b1.n_bound_parallel == doctest::Approx(2.75).epsilon(1e-12));
  for (int r = 1; r <= 64; ++r) {
    const BoundCheck b = check_bounds(r);
    CHECK(b.n_bound_sequential == doctest::Approx(5.0 + 0.5 / r));
    CHECK(b.n_bound_parallel == doctest::Approx(2.5 + 0.25 / r));
    CHECK(b.n_bound_sequential > 5.0);
    CHECK(b.n_bound_parallel > 2.5);
    CHECK(b.n_max_sequential == 5);
    CHECK(b.n_max_parallel == 2);
  }
  CHECK(check_bounds(1000).n_bound_sequential == doctest::Approx(5.0005));
  CHECK(check_bounds(1000).n_bound_parallel == doctest::Approx(2.50025));
  CHECK_THROWS_AS(check_bounds(0), std::invalid_argument);
}

TEST_CASE("csv rendering follows the declared schema") {
  ExperimentRecord size_row;
  size_row.problem = "1n";
  size_row.method = "mod";
  size_row.r = 3;
  size_row.size = 123;
  size_row.depth = 45;
  size_row.width = 11;
  size_row.seconds = 0.5;
  ExperimentRecord noise_row = size_row;
  noise_row.noise_kind = "depolarizing";
  noise_row.noise_param = 2e-5;
  noise_row.fidelity = 0.25;
  const std::string csv = to_csv({size_row, noise_row});
  CHECK(csv ==
        "problem,method,r,noise_kind,noise_param,size,depth,width,fidelity,"
        "seconds\n"
        "1n,mod,3,,,123,45,11,,0.500\n"
        "1n,mod,3,depolarizing,2e-05,123,45,11,0.250000000,0.500\n");
}

TEST_CASE("size experiment is deterministic apart from wall time") {
  const std::vector<NamedProblem> probs = {
      {"4n", load_problem_file(fixture("4n"))}};
  const std::vector<MixerMethod> methods = {MixerMethod::kStandardSequential,
                                            MixerMethod::kModified};
  auto a = run_size_experiment(probs, methods, {3});
  auto b = run_size_experiment(probs, methods, {3});
  REQUIRE(a.size() == 2);
  REQUIRE(a.size() == b.size());
  for (auto* recs : {&a, &b})
    for (auto& rec : *recs) rec.seconds = 0.0;
  CHECK(to_csv(a) == to_csv(b));
  CHECK(a[0].method == "std-seq");
  CHECK(a[1].method == "mod");
  CHECK(a[1].size < a[0].size);
  CHECK(a[0].fidelity < 0.0);
  CHECK(a[0].noise_kind.empty());
}

TEST_CASE("noise sweep orders records deterministically and degrades") {
  const std::vector<NamedProblem> probs = {{"tiny", tiny_connected()}};
  SweepConfig cfg;
  cfg.beta = 1.0;
  cfg.seed = 7;
  const std::vector<MixerMethod> methods = {MixerMethod::kStandardSequential,
                                            MixerMethod::kModified};
  const std::vector<NoiseModel::Kind> kinds = {
      NoiseModel::Kind::kDepolarizing, NoiseModel::Kind::kDamping};
  auto recs = run_noise_sweep(probs, methods, {2}, kinds, {0.0, 0.01}, cfg);
  REQUIRE(recs.size() == 8);

  // (kind, grid, method) nesting with fixed r.
  CHECK(recs[0].noise_kind == "depolarizing");
  CHECK(recs[0].noise_param == 0.0);
  CHECK(recs[0].method == "std-seq");
  CHECK(recs[1].method == "mod");
  CHECK(recs[2].noise_param == 0.01);
  CHECK(recs[4].noise_kind == "damping");
  for (const auto& rec : recs) {
    CHECK(rec.r == 2);
    CHECK(rec.fidelity >= 0.0);
    CHECK(rec.fidelity <= 1.0 + 1e-12);
  }
  // All methods agree without noise; noise only hurts.
  CHECK(recs[0].fidelity == doctest::Approx(recs[1].fidelity).epsilon(1e-9));
  CHECK(recs[2].fidelity < recs[0].fidelity);
  CHECK(recs[3].fidelity < recs[1].fidelity);
  CHECK(recs[6].fidelity < recs[4].fidelity);

  // Same seed, same bytes (seconds aside); a worker pool must not
  // reorder records.
  auto again = run_noise_sweep(probs, methods, {2}, kinds, {0.0, 0.01}, cfg);
  cfg.jobs = 2;
  auto pooled = run_noise_sweep(probs, methods, {2}, kinds, {0.0, 0.01}, cfg);
  for (auto* r : {&recs, &again, &pooled})
    for (auto& rec : *r) rec.seconds = 0.0;
  CHECK(to_csv(recs) == to_csv(again));
  CHECK(to_csv(recs) == to_csv(pooled));
}

TEST_CASE("trajectory backend approaches the density result") {
  const std::vector<NamedProblem> probs = {{"tiny", tiny_connected()}};
  SweepConfig cfg;
  cfg.beta = 1.0;
  cfg.seed = 11;
  const std::vector<MixerMethod> methods = {MixerMethod::kModified};
  const std::vector<NoiseModel::Kind> kinds = {NoiseModel::Kind::kDamping};
  auto exact = run_noise_sweep(probs, methods, {2}, kinds, {0.02}, cfg);
  cfg.backend = Backend::kTrajectories;
  cfg.shots = 4000;
  auto sampled = run_noise_sweep(probs, methods, {2}, kinds, {0.02}, cfg);
  REQUIRE(exact.size() == 1);
  REQUIRE(sampled.size() == 1);
  CHECK(sampled[0].fidelity ==
        doctest::Approx(exact[0].fidelity).epsilon(0.02));
}

TEST_CASE("forcing the density backend past its guard is rejected") {
  const std::vector<NamedProblem> probs = {
      {"5w", load_problem_file(fixture("5w"))}};
  SweepConfig cfg;
  cfg.backend = Backend::kDensity;
  CHECK_THROWS_WITH_AS(
      run_noise_sweep(probs, {MixerMethod::kStandardParallel}, {1},
                      {NoiseModel::Kind::kDepolarizing}, {1e-5}, cfg),
      doctest::Contains("trajectory backend"), std::invalid_argument);
}

TEST_CASE("random problems are connected, single-constraint and seeded") {
  auto probs = random_connected_problems({6, 7, 8}, 9, 42);
  auto again = random_connected_problems({6, 7, 8}, 9, 42);
  REQUIRE(probs.size() == 9);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const Problem& p = probs[i].problem;
    CHECK(p.num_vars() == 6 + static_cast<int>(i % 3));
    CHECK(p.num_constraints() == 1);
    CHECK(p.satisfies_width_condition());
    CHECK(check_connectivity(p).connected);
    CHECK(p.constraint(0).lower >= 1);  // nontrivial lower bound
    CHECK(again[i].problem.constraint(0).coeffs == p.constraint(0).coeffs);
    CHECK(again[i].problem.constraint(0).lower == p.constraint(0).lower);
    CHECK(again[i].problem.constraint(0).upper == p.constraint(0).upper);
  }
  auto other = random_connected_problems({6}, 2, 43);
  CHECK(other[0].name == "rnd-n6-01");
}
