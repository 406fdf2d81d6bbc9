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

#include "qauth/codec.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qauth/errors.hpp"

namespace qauth {
namespace {

struct Config {
  Index s, t, v, j;
};

const Config kConfigs[] = {{2, 2, 1, 1}, {2, 2, 1, 2}, {2, 4, 1, 2}, {2, 4, 1, 3},
                           {2, 4, 1, 4}, {2, 4, 2, 2}, {3, 3, 1, 3}};

TEST(Encode, TwoTermSum) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  const TpcpMap map = build_reversible_map(l, 2, 5, WeightScheme::dirichlet);
  Rng rng(1);
  const DensityOperator rho = random_valid_density(l, rng);
  const auto& u = map.operators();
  const auto& d = map.weights();
  const ComplexMatrix expect = d[0] * u[0] * rho.matrix() * u[0].adjoint() +
                               d[1] * u[1] * rho.matrix() * u[1].adjoint();
  EXPECT_LT((encode(map, rho).matrix() - expect).norm(), 1e-14);
}

TEST(Decode, TermByTermOracle) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  const TpcpMap map = build_reversible_map(l, 3, 6);
  Rng rng(2);
  const ComplexMatrix sigma = random_density(8, rng).matrix();
  const ComplexMatrix pi = projector_valid(l);
  ComplexMatrix pm = ComplexMatrix::Zero(8, 8);
  for (const auto& u : map.operators()) pm += u * pi * u.adjoint();
  const ComplexMatrix pn = ComplexMatrix::Identity(8, 8) - pm;
  ComplexMatrix expect = pn * sigma * pn;
  for (const auto& u : map.operators()) expect += pi * u.adjoint() * sigma * u * pi;
  EXPECT_LT((decode(map, sigma) - expect).norm(), 1e-13);
}

TEST(Reversibility, RoundTripProperty) {
  for (const auto& c : kConfigs) {
    const SpaceLayout l = SpaceLayout::canonical(c.s, c.t, c.v);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const TpcpMap map = build_reversible_map(l, c.j, seed);
      Rng rng(seed + 100);
      for (int k = 0; k < 5; ++k) {
        const DensityOperator rho = random_valid_density(l, rng);
        EXPECT_LT((decode(map, encode(map, rho)).matrix() - rho.matrix()).norm(), 1e-9);
      }
    }
  }
}

TEST(Reversibility, DecodeIsTracePreserving) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TpcpMap map = build_reversible_map(l, 3, seed);
    Rng rng(seed);
    const ComplexMatrix sigma = random_density(8, rng).matrix();
    EXPECT_NEAR(trace(decode(map, sigma)).real(), 1.0, 1e-12);
  }
}

TEST(Structure, PnAnnihilatesImages) {
  for (const auto& c : kConfigs) {
    const SpaceLayout l = SpaceLayout::canonical(c.s, c.t, c.v);
    const TpcpMap map = build_reversible_map(l, c.j, 3);
    EXPECT_TRUE(is_projector(map.p_n(), 1e-10));
    for (const auto& u : map.operators()) {
      EXPECT_LT((map.p_n() * u * map.p_valid()).norm(), 1e-9);
    }
  }
}

TEST(Structure, CheckMapResiduals) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  const TpcpMap map = build_reversible_map(l, 4, 8);
  const MapCheck chk = check_map(l, map.operators(), map.weights());
  EXPECT_TRUE(chk.violation.empty());
  EXPECT_LT(chk.reversibility_residual, 1e-9);
  EXPECT_LT(chk.unitarity_residual, 1e-10);
  EXPECT_EQ(chk.bound, 4);
}

TEST(CountBound, MaxSucceedsOverflowBreaksReversibility) {
  for (const auto& c : kConfigs) {
    const SpaceLayout l = SpaceLayout::canonical(c.s, c.t, c.v);
    const Index jmax = max_operator_count(l);
    EXPECT_NO_THROW(build_reversible_map(l, jmax, 1));
    EXPECT_THROW(build_reversible_map(l, jmax + 1, 1), ValidationError);
    EXPECT_THROW(build_reversible_map(l, 0, 1), ValidationError);
    Rng rng(c.t * 10 + c.j);
    const auto ops = candidate_operators(l, jmax + 1, rng);
    const std::vector<double> w(static_cast<std::size_t>(jmax + 1), 1.0 / (jmax + 1));
    const MapCheck chk = check_map(l, ops, w);
    EXPECT_GT(chk.reversibility_residual, 1e-3);
    EXPECT_FALSE(chk.violation.empty());
  }
}

TEST(Create, RejectsBrokenMaps) {
  const SpaceLayout l = SpaceLayout::canonical(2, 2, 1);
  const TpcpMap map = build_reversible_map(l, 2, 2);
  EXPECT_THROW(TpcpMap::create(l, map.operators(), {0.5, 0.6}), ValidationError);
  EXPECT_THROW(TpcpMap::create(l, map.operators(), {1.0, 0.0}), ValidationError);
  EXPECT_THROW(TpcpMap::create(l, {map.operators()[0]}, {0.5, 0.5}), ValidationError);
  auto ops = map.operators();
  ops[1] = 1.01 * ops[1];
  EXPECT_THROW(TpcpMap::create(l, ops, {0.5, 0.5}), ValidationError);
  // Two copies of the same operator violate delta_jk.
  EXPECT_THROW(TpcpMap::create(l, {ops[0], ops[0]}, {0.5, 0.5}), ValidationError);
  EXPECT_NO_THROW(TpcpMap::create(l, map.operators(), {0.25, 0.75}));
}

TEST(Derived, TotalBreakAtMaxCount) {
  const SpaceLayout l = SpaceLayout::canonical(2, 2, 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TpcpMap map = build_reversible_map(l, 2, seed);
    const DerivedProjectors d = derived_projectors(map);
    EXPECT_LT(d.h.norm(), 1e-9);
    EXPECT_LT((d.gii - map.p_valid()).norm(), 1e-9);
    EXPECT_LT((d.pm - ComplexMatrix::Identity(4, 4)).norm(), 1e-9);
    EXPECT_LT(h_dagger_sigma_min(map), 1e-9);
  }
}

TEST(Derived, SigmaMinMatchesSvd) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TpcpMap map = build_reversible_map(l, 3, seed);
    const DerivedProjectors d = derived_projectors(map);
    const ComplexMatrix block = l.invalid_isometry().adjoint() * d.pm * l.valid_isometry();
    Eigen::JacobiSVD<ComplexMatrix> svd(block);
    EXPECT_NEAR(h_dagger_sigma_min(map), svd.singularValues().minCoeff(), 1e-10);
  }
}

TEST(KernelFree, FindsMapAndExhausts) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  const KernelFreeMap kf = build_kernel_free_map(l, 3, 4);
  EXPECT_GT(kf.sigma_min, kKernelFreeThreshold);
  EXPECT_GE(kf.attempts_used, 1);
  EXPECT_NEAR(kf.sigma_min, h_dagger_sigma_min(kf.map), 1e-12);
  EXPECT_THROW(build_kernel_free_map(SpaceLayout::canonical(2, 2, 1), 2, 4, 5), AttemptsExhausted);
}

TEST(Weights, DirichletIsNormalized) {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto w = draw_weights(4, WeightScheme::dirichlet, rng);
    double sum = 0.0;
    for (double x : w) {
      EXPECT_GE(x, kMinWeight);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  const auto u = draw_weights(3, WeightScheme::uniform, rng);
  for (double x : u) EXPECT_DOUBLE_EQ(x, 1.0 / 3.0);
}

TEST(Build, DeterministicPerSeed) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  const TpcpMap a = build_reversible_map(l, 3, 77);
  const TpcpMap b = build_reversible_map(l, 3, 77);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(a.operators()[j], b.operators()[j]);
}

TEST(CodingSet, IdentityAndKeyRange) {
  const SpaceLayout l = SpaceLayout::canonical(2, 2, 1);
  const UnitaryCodingSet set = build_coding_set(l, 3, 5);
  EXPECT_EQ(set.op(0), ComplexMatrix::Identity(4, 4));
  EXPECT_TRUE(is_unitary(set.op(2), 1e-10));
  EXPECT_THROW((void)set.op(3), KeyRangeError);
  EXPECT_THROW((void)set.op(-1), KeyRangeError);
  EXPECT_THROW(UnitaryCodingSet::create(l, {random_unitary(4, 1)}), ValidationError);
  Rng rng(1);
  const DensityOperator rho = random_density(4, rng);
  EXPECT_LT((apply_coding(set, 1, rho).matrix() -
             set.op(1) * rho.matrix() * set.op(1).adjoint())
                .norm(),
            1e-14);
}

}  // namespace
}  // namespace qauth
