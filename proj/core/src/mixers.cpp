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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmix/arith.hpp"

namespace qmix {

namespace {

std::vector<int> reg_qubits(const RegisterLayout& regs,
                            const std::string& name) {
  const Register& r = regs.reg(name);
  std::vector<int> q(static_cast<std::size_t>(r.width));
  for (int k = 0; k < r.width; ++k)
    q[static_cast<std::size_t>(k)] = r.offset + k;
  return q;
}

/// The standard method's oracle V = L†CL over all active constraints:
/// evaluates every constraint value, XORs the feasibility flags, and
/// restores the accumulators.
Circuit build_oracle_v(const Problem& problem, const MixerLayout& layout,
                       MixerMethod approach) {
  Circuit c(layout.regs);
  std::vector<int> x;
  for (int j = 1; j <= problem.num_vars(); ++j)
    x.push_back(layout.x_qubit(j));

  const std::size_t na = layout.constraint_ids.size();
  if (approach == MixerMethod::kStandardParallel) {
    for (std::size_t k = 0; k < na; ++k) {
      const auto& cons = problem.constraint(layout.constraint_ids[k]);
      append_weighted_adder(c, x, layout.acc[k], cons.coeffs);
    }
    for (std::size_t k = 0; k < na; ++k) {
      const auto& cons = problem.constraint(layout.constraint_ids[k]);
      append_range_comparator(c, layout.acc[k], cons.lower, cons.upper,
                              cons.coeff_sum(), layout.flags[k]);
    }
    for (std::size_t k = na; k-- > 0;) {
      const auto& cons = problem.constraint(layout.constraint_ids[k]);
      std::vector<long> neg = cons.coeffs;
      for (long& v : neg) v = -v;
      append_weighted_adder(c, x, layout.acc[k], neg);
    }
    return c;
  }

  // Sequential: one shared register; adjacent uncompute/compute adder
  // pairs are merged into difference-coefficient adders.
  for (std::size_t k = 0; k < na; ++k) {
    const auto& cons = problem.constraint(layout.constraint_ids[k]);
    std::vector<long> coeffs = cons.coeffs;
    if (k > 0) {
      const auto& prev = problem.constraint(layout.constraint_ids[k - 1]);
      for (std::size_t t = 0; t < coeffs.size(); ++t)
        coeffs[t] -= prev.coeffs[t];
    }
    append_weighted_adder(c, x, layout.acc[k], coeffs);
    append_range_comparator(c, layout.acc[k], cons.lower, cons.upper,
                            cons.coeff_sum(), layout.flags[k]);
  }
  if (na > 0) {
    const auto& last = problem.constraint(layout.constraint_ids[na - 1]);
    std::vector<long> neg = last.coeffs;
    for (long& v : neg) v = -v;
    append_weighted_adder(c, x, layout.acc[na - 1], neg);
  }
  return c;
}

Gate flag_controlled_rx(const MixerLayout& layout, int xq, double theta) {
  std::vector<Control> ctl;
  for (int f : layout.all_flags) ctl.push_back({f, 1});
  return {GateKind::RX, 2.0 * theta, {xq}, std::move(ctl)};
}

}  // namespace

std::string method_name(MixerMethod m) {
  switch (m) {
    case MixerMethod::kStandardSequential:
      return "std-seq";
    case MixerMethod::kStandardParallel:
      return "std-par";
    case MixerMethod::kModified:
      return "mod";
  }
  throw std::logic_error("bad method enum");
}

MixerMethod parse_method(const std::string& s) {
  if (s == "std-seq") return MixerMethod::kStandardSequential;
  if (s == "std-par") return MixerMethod::kStandardParallel;
  if (s == "mod") return MixerMethod::kModified;
  throw std::invalid_argument("unknown method '" + s +
                              "' (expected std-seq, std-par or mod)");
}

int MixerLayout::x_qubit(int j) const { return regs.qubit("x", j - 1); }

MixerLayout mixer_layout(const Problem& problem, MixerMethod method) {
  MixerLayout layout;
  layout.regs.add("x", problem.num_vars());

  std::vector<int> widths;
  for (int i = 0; i < problem.num_constraints(); ++i) {
    const auto& cons = problem.constraint(i);
    if (comparator_flag_count(cons.lower, cons.upper, cons.coeff_sum()) == 0)
      continue;  // both bounds trivial: no flag, no gates, no register
    layout.constraint_ids.push_back(i);
    widths.push_back(accumulator_width(cons.coeff_sum()));
  }

  if (method == MixerMethod::kStandardSequential) {
    int w = 0;
    for (int v : widths) w = std::max(w, v);
    // One extra bit when a merged difference coefficient can go negative.
    bool negative_diff = false;
    for (std::size_t k = 1; k < layout.constraint_ids.size(); ++k) {
      const auto& cur = problem.constraint(layout.constraint_ids[k]);
      const auto& prev = problem.constraint(layout.constraint_ids[k - 1]);
      for (std::size_t t = 0; t < cur.coeffs.size(); ++t)
        if (cur.coeffs[t] - prev.coeffs[t] < 0) negative_diff = true;
    }
    if (negative_diff) ++w;
    if (w > 0) {
      layout.regs.add("acc", w);
      const std::vector<int> shared = reg_qubits(layout.regs, "acc");
      layout.acc.assign(layout.constraint_ids.size(), shared);
    }
  } else {
    for (std::size_t k = 0; k < layout.constraint_ids.size(); ++k) {
      const std::string name = "acc" + std::to_string(k + 1);
      layout.regs.add(name, widths[k]);
      layout.acc.push_back(reg_qubits(layout.regs, name));
    }
  }

  int total_flags = 0;
  std::vector<int> per;
  for (int id : layout.constraint_ids) {
    const auto& cons = problem.constraint(id);
    const int f =
        comparator_flag_count(cons.lower, cons.upper, cons.coeff_sum());
    per.push_back(f);
    total_flags += f;
  }
  if (total_flags > 0) {
    const int base = layout.regs.add("flag", total_flags);
    int at = base;
    for (int f : per) {
      std::vector<int> mine;
      for (int k = 0; k < f; ++k) mine.push_back(at++);
      layout.flags.push_back(mine);
      layout.all_flags.insert(layout.all_flags.end(), mine.begin(),
                              mine.end());
    }
  } else {
    layout.flags.assign(layout.constraint_ids.size(), {});
  }
  return layout;
}

Circuit build_UBj_standard(const Problem& problem, const MixerLayout& layout,
                           int j, double theta, MixerMethod approach) {
  if (approach == MixerMethod::kModified)
    throw std::invalid_argument("use build_UBj_modified");
  if (j < 1 || j > problem.num_vars())
    throw std::invalid_argument("variable index out of range");
  const int xq = layout.x_qubit(j);
  const Circuit v = build_oracle_v(problem, layout, approach);

  Circuit c(layout.regs);
  c.x(xq);
  c.append(v);
  c.x(xq);
  c.append(flag_controlled_rx(layout, xq, theta));
  c.x(xq);
  c.append(inverse(v));
  c.x(xq);
  return c;
}

Circuit build_value_loader(const Problem& problem, const MixerLayout& layout) {
  Circuit c(layout.regs);
  std::vector<int> x;
  for (int j = 1; j <= problem.num_vars(); ++j)
    x.push_back(layout.x_qubit(j));
  for (std::size_t k = 0; k < layout.constraint_ids.size(); ++k) {
    const auto& cons = problem.constraint(layout.constraint_ids[k]);
    append_weighted_adder(c, x, layout.acc[k], cons.coeffs);
  }
  return c;
}

Circuit build_UBj_modified(const Problem& problem, const MixerLayout& layout,
                           int j, double theta) {
  if (j < 1 || j > problem.num_vars())
    throw std::invalid_argument("variable index out of range");
  const int xq = layout.x_qubit(j);
  const std::size_t na = layout.constraint_ids.size();

  auto coeff = [&](std::size_t k) {
    return problem.constraint(layout.constraint_ids[k])
        .coeffs[static_cast<std::size_t>(j - 1)];
  };
  // With base = l(x) - c*x_j (the value with bit j zeroed, shared by both
  // RX branches) the block uses per coefficient four x_j-controlled
  // constant adders plus two plain ones. Plain adders sit next to the
  // comparators' constant adders so adjacent phase sets coalesce, and no
  // polarity-0 controls are needed anywhere.
  auto ctrl_add = [&](Circuit& c, long mult) {
    for (std::size_t k = 0; k < na; ++k) {
      if (coeff(k) == 0) continue;
      append_const_adder(c, layout.acc[k], mult * coeff(k), {{xq, 1}});
    }
  };
  auto plain_add = [&](Circuit& c, long mult) {
    for (std::size_t k = 0; k < na; ++k) {
      if (coeff(k) == 0) continue;
      append_const_adder(c, layout.acc[k], mult * coeff(k));
    }
  };
  auto comparators = [&](Circuit& c) {
    for (std::size_t k = 0; k < na; ++k) {
      const auto& cons = problem.constraint(layout.constraint_ids[k]);
      append_range_comparator(c, layout.acc[k], cons.lower, cons.upper,
                              cons.coeff_sum(), layout.flags[k]);
    }
  };

  // The block is a palindrome around the multi-controlled RX: the second
  // half is the gate-reversed inverse of the first, so adjacent blocks
  // telescope pair by pair under simplify.
  Circuit in(layout.regs);
  ctrl_add(in, -2);        // acc: l(x) -> l(n_j(x)), with the
  plain_add(in, 1);        //   +c half adjacent to the comparator
  comparators(in);         // flags: feasibility of the neighbor
  ctrl_add(in, 1);         // acc: base + c, independent of x_j

  Circuit c(layout.regs);
  c.append(in);
  c.append(flag_controlled_rx(layout, xq, theta));
  // acc: l(n_j(x)) for the new x, flags return to 0 on both RX branches,
  // acc: back to l(x).
  c.append(inverse(in));
  return c;
}

MixerCircuit build_mixer(const Problem& problem, const MixerConfig& config) {
  if (config.r < 1) throw std::invalid_argument("r must be >= 1");
  if (!std::isfinite(config.beta))
    throw std::invalid_argument("beta must be finite");

  MixerCircuit result;
  result.layout = mixer_layout(problem, config.method);
  result.config = config;
  const double theta = config.beta / (2.0 * config.r);

  const int n = problem.num_vars();
  std::vector<Circuit> factor;
  for (int j = 1; j <= n; ++j) {
    factor.push_back(
        config.method == MixerMethod::kModified
            ? build_UBj_modified(problem, result.layout, j, theta)
            : build_UBj_standard(problem, result.layout, j, theta,
                                 config.method));
  }

  Circuit c(result.layout.regs);
  if (config.method == MixerMethod::kModified)
    c.append(build_value_loader(problem, result.layout));
  for (int rep = 0; rep < config.r; ++rep) {
    for (int j = 0; j < n; ++j) c.append(factor[static_cast<std::size_t>(j)]);
    for (int j = n; j-- > 0;) c.append(factor[static_cast<std::size_t>(j)]);
  }
  if (config.method == MixerMethod::kModified)
    c.append(inverse(build_value_loader(problem, result.layout)));
  result.circuit = std::move(c);
  return result;
}

}  // namespace qmix
