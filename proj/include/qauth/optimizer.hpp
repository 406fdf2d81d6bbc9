// Copyright 2026 The qauth Authors
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

#ifndef QAUTH_OPTIMIZER_HPP
#define QAUTH_OPTIMIZER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qauth/codec.hpp"
#include "qauth/doubleproto.hpp"

namespace qauth {

enum class Objective { forgery_single, unitary_single, forgery_double, unitary_double_tag2 };
enum class VariableKind { density, unitary, block_unitaries };

const char* to_string(Objective o);
const char* to_string(VariableKind v);
std::optional<Objective> objective_from_string(const std::string& s);
std::optional<VariableKind> variable_kind_from_string(const std::string& s);

struct Budget {
  int max_iterations = 2000;
  int restarts = 16;
  /// Central difference step on each real coordinate.
  double fd_step = 1e-5;
  double initial_step = 0.25;
  double max_step = 4.0;
  int max_halvings = 40;
  /// Stop once the incumbent gains less than convergence_tol over this many iterations.
  int convergence_window = 50;
  double convergence_tol = 1e-9;
  /// Column count of the density factor A (rho = A A^dagger / tr); 0 = full rank.
  Index density_rank = 0;

  friend bool operator==(const Budget&, const Budget&) = default;
};

struct DoubleTarget {
  DoubleLayout layout;
  DoubleCodingScheme scheme;
};

using SchemeHandle = std::variant<TpcpMap, DoubleTarget>;

struct OptimizationProblem {
  Objective objective = Objective::forgery_single;
  SchemeHandle scheme;
  /// Defaults to the objective's natural variable. unitary_double_tag2 also
  /// accepts block_unitaries (one Hermitian generator per tag-2 level).
  std::optional<VariableKind> variable;
  Budget budget;
  std::uint64_t seed = 0;
  /// Unitary objectives average over this many sampled messages.
  int message_samples = 4;
  /// Inner key used when Alice prepares messages for unitary_double_tag2.
  Index inner_key = 0;
};

struct OptimizationResult {
  double best_value = 0.0;
  /// One matrix for density/unitary variables, one per block otherwise.
  std::vector<ComplexMatrix> best_variable;
  /// Best value reached by each restart, in restart order.
  std::vector<double> trace;
  int iterations_used = 0;
  /// Every restart stopped on its convergence test rather than the budget.
  bool converged = false;
  Index parameter_count = 0;
  VariableKind variable = VariableKind::density;
};

/// Gradient ascent on an unconstrained parameterization of the variable:
/// densities as A A^dagger / tr(A A^dagger), unitaries as exp(iH) of a
/// Hermitian generator. Deterministic per seed.
OptimizationResult maximize(const OptimizationProblem& problem);

struct AscentTrace {
  std::vector<double> incumbent;  // value after each accepted iteration
  double best_value = 0.0;
  std::vector<double> best_point;
  int iterations = 0;
  bool converged = false;
};

/// The raw ascent on R^n used by maximize; exposed for testing.
AscentTrace ascend(const std::function<double(const std::vector<double>&)>& f,
                   std::vector<double> start, const Budget& budget);

/// Hermitian matrix from d^2 real coordinates: the diagonal, then real and
/// imaginary parts of each strictly upper entry in row order.
ComplexMatrix hermitian_from_coords(std::span<const double> x, Index d);

enum class AttackTarget {
  forgery_single,
  unitary_single,
  measurement_single,
  forgery_double,
  unitary_double_tag2,
};

const char* to_string(AttackTarget t);
std::optional<AttackTarget> attack_target_from_string(const std::string& s);

struct Certificate {
  double empirical_max = 0.0;
  std::optional<double> analytic_bound;
  std::optional<double> gap;
  /// Empty for the measurement target, which needs no search.
  std::optional<OptimizationResult> search;
  std::string note;
};

Certificate certify(const SchemeHandle& scheme, AttackTarget target, const Budget& budget,
                    std::uint64_t seed, std::optional<VariableKind> variable = std::nullopt,
                    int message_samples = 4);

}  // namespace qauth

#endif  // QAUTH_OPTIMIZER_HPP
