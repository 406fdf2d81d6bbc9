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

#include "qauth/attacks.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qauth/errors.hpp"

namespace qauth {
namespace {

// P_f(rho) = 1/2 tr[rho X] with X = P_i + P_M + P_N P_i P_N, built from the operators.
ComplexMatrix forgery_observable(const TpcpMap& map) {
  const ComplexMatrix pi = projector_valid(map.layout());
  const Index n = pi.rows();
  ComplexMatrix pm = ComplexMatrix::Zero(n, n);
  for (const auto& u : map.operators()) pm += u * pi * u.adjoint();
  const ComplexMatrix pn = ComplexMatrix::Identity(n, n) - pm;
  return pi + pm + pn * pi * pn;
}

ComplexMatrix flip_operator() {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return tensor(ComplexMatrix::Identity(2, 2), x);
}

TEST(Forgery, MatchesObservableOracle) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  const TpcpMap map = build_reversible_map(l, 3, 12);
  const ComplexMatrix x = forgery_observable(map);
  Rng rng(1);
  for (int i = 0; i < 30; ++i) {
    const DensityOperator rho = random_density(8, rng);
    EXPECT_NEAR(forgery_probability(map, rho), 0.5 * (rho.matrix() * x).trace().real(), 1e-12);
  }
}

TEST(Forgery, TopEigenvectorAttainsSpectralMax) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  const TpcpMap map = build_kernel_free_map(l, 3, 2).map;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(forgery_observable(map));
  const double top = 0.5 * es.eigenvalues().maxCoeff();
  const ComplexVector v = es.eigenvectors().col(es.eigenvalues().size() - 1);
  EXPECT_NEAR(forgery_probability(map, DensityOperator::pure(v)), top, 1e-12);
  EXPECT_LT(top, 1.0 - 1e-4);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    EXPECT_LE(forgery_probability(map, random_density(8, rng)), top + 1e-12);
  }
}

TEST(Forgery, TotalBreakAtMaxCount) {
  const SpaceLayout l = SpaceLayout::canonical(2, 2, 1);
  const TpcpMap map = build_reversible_map(l, 2, 3);
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const DensityOperator forged = random_valid_density(l, rng);
    EXPECT_NEAR(forgery_probability(map, forged), 1.0, 1e-9);
    const ForgeryConditions c = forgery_conditions(map, forged);
    EXPECT_TRUE(c.cond_in_c);
    EXPECT_TRUE(c.cond_r_in_c);
    EXPECT_LT(c.h_term, 1e-9);
  }
  const AttackReport r = forgery_attack(map, random_valid_density(l, rng));
  EXPECT_EQ(r.kind, AttackKind::forgery);
  EXPECT_NEAR(r.deception_probability, 1.0, 1e-9);
}

TEST(Forgery, ConditionsFailWithoutBreak) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  const TpcpMap map = build_kernel_free_map(l, 3, 5).map;
  Rng rng(4);
  const ForgeryConditions c = forgery_conditions(map, random_valid_density(l, rng));
  EXPECT_TRUE(c.cond_in_c);
  EXPECT_FALSE(c.cond_r_in_c);
  EXPECT_GT(c.h_term, 1e-6);
}

TEST(Measurement, FlipMapIsDistinguishable) {
  const SpaceLayout l = SpaceLayout::canonical(2, 2, 1);
  const TpcpMap map = TpcpMap::create(l, {flip_operator()}, {1.0});
  const MeasurementResult m = measurement_distinguishability(map, 32, 1);
  EXPECT_TRUE(m.perfectly_distinguishable);
  EXPECT_LT(m.exact_max_overlap, 1e-12);
  EXPECT_LT(m.worst_overlap, 1e-12);
  EXPECT_NEAR(measurement_attack(map, 32, 1).deception_probability, 1.0, 1e-12);
}

TEST(Measurement, IdentityMapIsNot) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  const TpcpMap base = build_reversible_map(l, 3, 6);
  std::vector<ComplexMatrix> ops;
  for (const auto& u : base.operators()) ops.push_back(base.operators()[0].adjoint() * u);
  ops[0] = ComplexMatrix::Identity(8, 8);
  const TpcpMap map = TpcpMap::create(l, ops, base.weights());
  const MeasurementResult m = measurement_distinguishability(map, 32, 2);
  EXPECT_FALSE(m.perfectly_distinguishable);
  EXPECT_GE(m.exact_max_overlap, 1.0 / 3.0 - 1e-12);
  EXPECT_LE(m.worst_overlap, m.exact_max_overlap + 1e-12);
}

TEST(Unitary, ProbabilityMatchesEncodeDecodeRoute) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  const TpcpMap map = build_reversible_map(l, 3, 7);
  const ComplexMatrix pi = projector_valid(l);
  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix f = random_unitary(8, rng);
    const DensityOperator rho = random_valid_density(l, rng);
    const ComplexMatrix key0 = f * rho.matrix() * f.adjoint();
    const ComplexMatrix key1 = decode(map, f * encode(map, rho.matrix()) * f.adjoint());
    const double expect = 0.5 * (pi * key0).trace().real() + 0.5 * (pi * key1).trace().real();
    EXPECT_NEAR(unitary_attack_probability(map, f, rho), expect, 1e-12);
  }
}

TEST(Unitary, RejectsBadInputs) {
  const SpaceLayout l = SpaceLayout::canonical(2, 2, 1);
  const TpcpMap map = build_reversible_map(l, 1, 1);
  Rng rng(6);
  const DensityOperator rho = random_valid_density(l, rng);
  EXPECT_THROW(unitary_attack_probability(map, 2.0 * ComplexMatrix::Identity(4, 4), rho),
               ValidationError);
  EXPECT_THROW(unitary_attack_probability(map, ComplexMatrix::Identity(4, 4),
                                          random_density(4, rng)),
               ValidationError);
}

TEST(Commutant, DimensionOfSingleProjector) {
  // Commutant of a rank-r projector in dimension d has dimension r^2 + (d - r)^2.
  Rng rng(7);
  const ComplexMatrix u = random_unitary(5, rng);
  const ComplexMatrix p = u.leftCols(2) * u.leftCols(2).adjoint();
  const auto basis = commutant_basis(p, p);
  EXPECT_EQ(basis.size(), 13u);
  for (const auto& x : basis) {
    EXPECT_TRUE(is_hermitian(x, 1e-10));
    EXPECT_LT((x * p - p * x).norm(), 1e-9);
  }
}

TEST(Commutant, ElementsCommuteWithBoth) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  const TpcpMap map = build_kernel_free_map(l, 3, 8).map;
  const DerivedProjectors d = derived_projectors(map);
  const auto basis = commutant_basis(map.p_valid(), d.pm);
  ASSERT_GE(basis.size(), 2u);
  for (const auto& x : basis) {
    EXPECT_LT((x * map.p_valid() - map.p_valid() * x).norm(), 1e-9);
    EXPECT_LT((x * d.pm - d.pm * x).norm(), 1e-9);
    EXPECT_NEAR(x.norm(), 1.0, 1e-12);
  }
}

TEST(Commuting, AttackPassesAndDisturbs) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const TpcpMap map = build_reversible_map(l, 2, seed);
    const CommutingAttack atk = commuting_attack(map, seed);
    EXPECT_TRUE(is_unitary(atk.f, 1e-10));
    EXPECT_LT(atk.commutator_valid, 1e-9);
    EXPECT_LT(atk.commutator_pm, 1e-9);
    EXPECT_GT(atk.disturbance, kDisturbanceThreshold);
    Rng rng(seed);
    double min_fid = 1.0;
    for (int i = 0; i < 20; ++i) {
      const DensityOperator rho = embed_valid(random_density(2, 1, rng), l);
      EXPECT_NEAR(unitary_attack_probability(map, atk.f, rho), 1.0, 1e-9);
      const DensityOperator sent = DensityOperator::repair(message_part(rho.matrix(), l));
      min_fid = std::min(min_fid, fidelity(sent, accepted_plaintext(map, atk.f, rho)));
    }
    EXPECT_LT(min_fid, 0.99);
  }
}

TEST(Commuting, ReportCarriesFidelity) {
  const SpaceLayout l = SpaceLayout::canonical(2, 2, 1);
  const TpcpMap map = build_reversible_map(l, 1, 3);
  const CommutingAttack atk = commuting_attack(map, 3);
  Rng rng(9);
  const AttackReport r = unitary_attack(map, atk.f, random_valid_density(l, rng));
  EXPECT_EQ(r.kind, AttackKind::unitary);
  ASSERT_TRUE(r.message_fidelity.has_value());
  EXPECT_LE(*r.message_fidelity, 1.0);
  EXPECT_NEAR(r.deception_probability, 1.0, 1e-9);
}

TEST(Fidelity, PureStateOverlap) {
  ComplexVector a(2), b(2);
  a << 1.0, 0.0;
  b << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0));
  EXPECT_NEAR(fidelity(DensityOperator::pure(a), DensityOperator::pure(b)), 0.5, 1e-12);
  ComplexVector c(2);
  c << 0.0, 1.0;
  EXPECT_NEAR(fidelity(DensityOperator::pure(a), DensityOperator::pure(c)), 0.0, 1e-12);
  Rng rng(10);
  const DensityOperator rho = random_density(3, rng);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);
}

TEST(Fidelity, UnitarilyInvariantAndSymmetric) {
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    const DensityOperator a = random_density(3, rng);
    const DensityOperator b = random_density(3, rng);
    const ComplexMatrix u = random_unitary(3, rng);
    const double f = fidelity(a, b);
    EXPECT_NEAR(f, fidelity(b, a), 1e-10);
    EXPECT_NEAR(f, fidelity(conjugate(u, a), conjugate(u, b)), 1e-10);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

}  // namespace
}  // namespace qauth
