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

#include "qauth/optimizer.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qauth/attacks.hpp"
#include "qauth/errors.hpp"

namespace qauth {
namespace {

Budget small_budget(int restarts = 2, int iterations = 200) {
  Budget b;
  b.restarts = restarts;
  b.max_iterations = iterations;
  return b;
}

double spectral_forgery_max(const TpcpMap& map) {
  const ComplexMatrix pi = projector_valid(map.layout());
  const Index n = pi.rows();
  ComplexMatrix pm = ComplexMatrix::Zero(n, n);
  for (const auto& u : map.operators()) pm += u * pi * u.adjoint();
  const ComplexMatrix pn = ComplexMatrix::Identity(n, n) - pm;
  return 0.5 * hermitian_eigenvalues(pi + pm + pn * pi * pn).maxCoeff();
}

TEST(Ascend, ConcaveQuadratic) {
  auto f = [](const std::vector<double>& x) {
    return -((x[0] - 1.0) * (x[0] - 1.0) + 4.0 * (x[1] + 2.0) * (x[1] + 2.0));
  };
  const AscentTrace t = ascend(f, {0.0, 0.0}, Budget{});
  EXPECT_NEAR(t.best_point[0], 1.0, 1e-4);
  EXPECT_NEAR(t.best_point[1], -2.0, 1e-4);
  EXPECT_TRUE(t.converged);
  for (std::size_t i = 1; i < t.incumbent.size(); ++i) {
    EXPECT_GE(t.incumbent[i], t.incumbent[i - 1]);
  }
}

TEST(Ascend, ConstantObjectiveStopsAtOnce) {
  const AscentTrace t = ascend([](const std::vector<double>&) { return 0.5; }, {0.1, 0.2},
                               Budget{});
  EXPECT_TRUE(t.converged);
  EXPECT_LE(t.iterations, 1);
  EXPECT_EQ(t.best_value, 0.5);
}

TEST(Coords, HermitianFromCoords) {
  std::vector<double> x(9);
  for (std::size_t i = 0; i < 9; ++i) x[i] = static_cast<double>(i) + 1.0;
  const ComplexMatrix h = hermitian_from_coords(x, 3);
  EXPECT_TRUE(is_hermitian(h, 0.0));
  EXPECT_EQ(h(0, 0), Complex(1.0, 0.0));
  EXPECT_EQ(h(2, 2), Complex(3.0, 0.0));
  EXPECT_EQ(h(0, 1), Complex(4.0, 5.0));
  EXPECT_EQ(h(1, 0), Complex(4.0, -5.0));
  EXPECT_EQ(h(1, 2), Complex(8.0, 9.0));
  EXPECT_THROW(hermitian_from_coords(std::vector<double>(8), 3), DimensionError);
}

TEST(Maximize, RediscoversTotalBreak) {
  const TpcpMap map = build_reversible_map(SpaceLayout::canonical(2, 2, 1), 2, 1);
  OptimizationProblem pr{Objective::forgery_single, map, std::nullopt, small_budget(), 3};
  const OptimizationResult r = maximize(pr);
  EXPECT_GE(r.best_value, 1.0 - 1e-6);
  EXPECT_LE(r.best_value, 1.0 + 1e-6);
  ASSERT_EQ(r.best_variable.size(), 1u);
  EXPECT_TRUE(density_violation(r.best_variable[0]).empty());
  EXPECT_EQ(r.trace.size(), 2u);
}

TEST(Maximize, KernelFreeMatchesSpectralOracle) {
  const TpcpMap map = build_kernel_free_map(SpaceLayout::canonical(2, 4, 1), 3, 4).map;
  OptimizationProblem pr{Objective::forgery_single, map, std::nullopt, small_budget(3, 400), 5};
  const OptimizationResult r = maximize(pr);
  const double oracle = spectral_forgery_max(map);
  EXPECT_NEAR(r.best_value, oracle, 1e-6);
  EXPECT_LE(r.best_value, 1.0 - 1e-4);
}

TEST(Maximize, UnitarySingleReachesOne) {
  const TpcpMap map = build_reversible_map(SpaceLayout::canonical(2, 2, 1), 2, 6);
  OptimizationProblem pr{Objective::unitary_single, map, std::nullopt, small_budget(2, 300), 7};
  const OptimizationResult r = maximize(pr);
  EXPECT_GE(r.best_value, 1.0 - 1e-6);
  ASSERT_EQ(r.best_variable.size(), 1u);
  EXPECT_TRUE(is_unitary(r.best_variable[0], 1e-8));
  EXPECT_EQ(r.variable, VariableKind::unitary);
}

TEST(Maximize, DoubleForgeryConvergesToCap) {
  const DoubleLayout layout = DoubleLayout::create(2, 2, 1, 4);
  const DoubleCodingScheme scheme = build_double_scheme(layout, 2, 4, 8);
  OptimizationProblem pr{Objective::forgery_double, DoubleTarget{layout, scheme}, std::nullopt,
                         small_budget(), 9};
  const OptimizationResult r = maximize(pr);
  EXPECT_NEAR(r.best_value, 0.25, 1e-4);
  EXPECT_TRUE(r.converged);
}

TEST(Maximize, DoubleForgeryBelowCapWithDeadLevels) {
  // With dim T2 > K2 the cap is no longer forced to be attained everywhere.
  const DoubleLayout layout = DoubleLayout::create(2, 2, 1, 3);
  const DoubleCodingScheme scheme = build_double_scheme(layout, 2, 2, 8);
  OptimizationProblem pr{Objective::forgery_double, DoubleTarget{layout, scheme}, std::nullopt,
                         small_budget(2, 300), 9};
  const OptimizationResult r = maximize(pr);
  EXPECT_NEAR(r.best_value, 0.5, 1e-4);
  EXPECT_LE(r.best_value, 0.5 + 1e-6);
}

TEST(Maximize, BlockUnitariesPassTag2) {
  const DoubleLayout layout = DoubleLayout::create(2, 2, 1, 2);
  const DoubleCodingScheme scheme = build_double_scheme(layout, 2, 2, 10);
  OptimizationProblem pr{Objective::unitary_double_tag2, DoubleTarget{layout, scheme},
                         VariableKind::block_unitaries, small_budget(1, 50), 11};
  const OptimizationResult r = maximize(pr);
  EXPECT_NEAR(r.best_value, 1.0, 1e-9);
  ASSERT_EQ(r.best_variable.size(), 2u);
  for (const auto& b : r.best_variable) EXPECT_TRUE(is_unitary(b, 1e-8));
}

TEST(Maximize, DeterministicPerSeed) {
  const TpcpMap map = build_kernel_free_map(SpaceLayout::canonical(2, 4, 1), 3, 4).map;
  OptimizationProblem pr{Objective::forgery_single, map, std::nullopt, small_budget(2, 50), 12};
  const OptimizationResult a = maximize(pr);
  const OptimizationResult b = maximize(pr);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.best_variable[0], b.best_variable[0]);
  pr.seed = 13;
  EXPECT_NE(maximize(pr).best_variable[0], a.best_variable[0]);
}

TEST(Maximize, RejectsMismatchedProblems) {
  const TpcpMap map = build_reversible_map(SpaceLayout::canonical(2, 2, 1), 1, 1);
  OptimizationProblem pr{Objective::forgery_double, map, std::nullopt, small_budget(), 1};
  EXPECT_THROW(maximize(pr), ValidationError);
  pr.objective = Objective::forgery_single;
  pr.variable = VariableKind::unitary;
  EXPECT_THROW(maximize(pr), ValidationError);
}

TEST(Maximize, DensityRankKnob) {
  const TpcpMap map = build_reversible_map(SpaceLayout::canonical(2, 2, 1), 1, 2);
  Budget b = small_budget(1, 100);
  b.density_rank = 1;
  OptimizationProblem pr{Objective::forgery_single, map, std::nullopt, b, 4};
  const OptimizationResult r = maximize(pr);
  EXPECT_EQ(r.parameter_count, 2 * 4);
  EXPECT_NEAR(r.best_value, spectral_forgery_max(map), 1e-6);
}

TEST(Certify, AnalyticBounds) {
  const TpcpMap broken = build_reversible_map(SpaceLayout::canonical(2, 2, 1), 2, 1);
  const Certificate c = certify(broken, AttackTarget::forgery_single, small_budget(1, 100), 2);
  ASSERT_TRUE(c.analytic_bound.has_value());
  EXPECT_EQ(*c.analytic_bound, 1.0);
  EXPECT_GE(*c.gap, -1e-6);

  const DoubleLayout layout = DoubleLayout::create(2, 2, 1, 8);
  const DoubleCodingScheme scheme = build_double_scheme(layout, 2, 8, 3);
  const Certificate d =
      certify(DoubleTarget{layout, scheme}, AttackTarget::forgery_double, small_budget(1, 50), 4);
  EXPECT_DOUBLE_EQ(*d.analytic_bound, 0.125);
  EXPECT_LE(std::abs(*d.gap), 1e-3);

  const Certificate u = certify(broken, AttackTarget::unitary_single, small_budget(1, 200), 5);
  EXPECT_GE(*u.gap, -1e-4);

  const Certificate m = certify(broken, AttackTarget::measurement_single, Budget{}, 6);
  EXPECT_FALSE(m.analytic_bound.has_value());
  EXPECT_FALSE(m.search.has_value());
}

TEST(Names, RoundTrip) {
  for (auto o : {Objective::forgery_single, Objective::unitary_single, Objective::forgery_double,
                 Objective::unitary_double_tag2}) {
    EXPECT_EQ(objective_from_string(to_string(o)), o);
  }
  for (auto t : {AttackTarget::forgery_single, AttackTarget::measurement_single,
                 AttackTarget::unitary_double_tag2}) {
    EXPECT_EQ(attack_target_from_string(to_string(t)), t);
  }
  EXPECT_FALSE(variable_kind_from_string("matrix").has_value());
}

}  // namespace
}  // namespace qauth
