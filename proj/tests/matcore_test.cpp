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

#include "qauth/matcore.hpp"

#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "qauth/errors.hpp"

namespace qauth {
namespace {

using C = Complex;

// exp(iH) by scaling and squaring a truncated Taylor series.
ComplexMatrix series_expi(const ComplexMatrix& h) {
  const double norm = h.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const ComplexMatrix a = C(0.0, scale) * h;
  ComplexMatrix term = ComplexMatrix::Identity(h.rows(), h.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

TEST(Tensor, MatchesIndexFormula) {
  Rng rng(1);
  const ComplexMatrix a = random_gaussian(2, 3, rng);
  const ComplexMatrix b = random_gaussian(4, 2, rng);
  const ComplexMatrix t = tensor(a, b);
  ASSERT_EQ(t.rows(), 8);
  ASSERT_EQ(t.cols(), 6);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index k = 0; k < 4; ++k)
        for (Index l = 0; l < 2; ++l) {
          EXPECT_EQ(t(i * 4 + k, j * 2 + l), a(i, j) * b(k, l));
        }
}

TEST(Tensor, SpanIsLeftAssociative) {
  Rng rng(2);
  const std::array<ComplexMatrix, 3> f{random_gaussian(2, 2, rng), random_gaussian(3, 3, rng),
                                       random_gaussian(2, 2, rng)};
  const ComplexMatrix expect = tensor(tensor(f[0], f[1]), f[2]);
  EXPECT_LT((tensor(std::span<const ComplexMatrix>(f)) - expect).norm(), 1e-14);
}

TEST(PartialTrace, HandWorkedTwoQubits) {
  // m(r, c) = r + 4c + i(r - c); rows/cols indexed 2a + b.
  ComplexMatrix m(4, 4);
  for (Index r = 0; r < 4; ++r)
    for (Index c = 0; c < 4; ++c) m(r, c) = C(r + 4.0 * c, r - c);
  const std::array<Index, 2> dims{2, 2};
  const std::array<Index, 1> keep_a{0};
  const std::array<Index, 1> keep_b{1};
  // tr_B: out(a, a') = m(2a, 2a') + m(2a + 1, 2a' + 1)
  ComplexMatrix ta(2, 2);
  ta << C(5, 0), C(21, -4), C(9, 4), C(25, 0);
  // tr_A: out(b, b') = m(b, b') + m(2 + b, 2 + b')
  ComplexMatrix tb(2, 2);
  tb << C(10, 0), C(18, -2), C(12, 2), C(20, 0);
  EXPECT_LT((partial_trace(m, dims, keep_a) - ta).norm(), 1e-14);
  EXPECT_LT((partial_trace(m, dims, keep_b) - tb).norm(), 1e-14);
}

TEST(PartialTrace, ProductStatesFactor) {
  Rng rng(3);
  const DensityOperator a = random_density(2, rng);
  const DensityOperator b = random_density(3, rng);
  const DensityOperator c = random_density(2, rng);
  const ComplexMatrix abc = tensor(tensor(a.matrix(), b.matrix()), c.matrix());
  const std::array<Index, 3> dims{2, 3, 2};
  const std::array<Index, 2> keep{0, 2};
  EXPECT_LT((partial_trace(abc, dims, keep) - tensor(a.matrix(), c.matrix())).norm(), 1e-13);
  const std::array<Index, 1> mid{1};
  EXPECT_LT((partial_trace(abc, dims, mid) - b.matrix()).norm(), 1e-13);
}

TEST(PartialTrace, PreservesTraceProperty) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const ComplexMatrix m = random_gaussian(12, 12, rng);
    const std::array<Index, 3> dims{2, 3, 2};
    const std::array<Index, 1> keep{1};
    EXPECT_NEAR(std::abs(trace(partial_trace(m, dims, keep)) - trace(m)), 0.0, 1e-12);
  }
}

TEST(PartialTrace, RejectsBadDims) {
  const ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  const std::array<Index, 2> dims{2, 3};
  const std::array<Index, 1> keep{0};
  EXPECT_THROW(partial_trace(m, dims, keep), DimensionError);
}

TEST(Arithmetic, DimensionChecks) {
  const ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix b = ComplexMatrix::Identity(3, 3);
  EXPECT_THROW(mul(a, b), DimensionError);
  EXPECT_THROW(add(a, b), DimensionError);
  EXPECT_THROW(sub(a, b), DimensionError);
  EXPECT_THROW(frobenius_distance(a, b), DimensionError);
  EXPECT_THROW(trace(ComplexMatrix::Zero(2, 3)), DimensionError);
  EXPECT_EQ(trace(scale(a, C(0, 2))), C(0, 4));
}

TEST(Arithmetic, RejectsNonFinite) {
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(0, 1) = C(std::nan(""), 0);
  EXPECT_THROW(require_valid(a), Error);
}

TEST(Expi, MatchesTaylorSeries) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const ComplexMatrix h = 3.0 * random_hermitian(5, rng);
    const ComplexMatrix u = hermitian_expi(h);
    EXPECT_LT((u - series_expi(h)).norm(), 1e-10);
    EXPECT_TRUE(is_unitary(u, 1e-12));
  }
}

TEST(Expi, RejectsNonHermitian) {
  Rng rng(4);
  EXPECT_THROW(hermitian_expi(random_gaussian(3, 3, rng)), ValidationError);
}

TEST(Spectral, PsdSqrtSquares) {
  Rng rng(5);
  const ComplexMatrix m = random_density(6, rng).matrix();
  const ComplexMatrix r = psd_sqrt(m);
  EXPECT_LT((r * r - m).norm(), 1e-12);
  EXPECT_TRUE(is_hermitian(r));
}

TEST(Spectral, EigenvaluesOfDiagonal) {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = -1.0;
  d(2, 2) = 0.5;
  const RealVector ev = hermitian_eigenvalues(d);
  EXPECT_NEAR(ev.minCoeff(), -1.0, 1e-14);
  EXPECT_NEAR(ev.maxCoeff(), 2.0, 1e-14);
}

TEST(Spectral, RangeBasisOfProjector) {
  Rng rng(6);
  const ComplexMatrix u = random_unitary(5, rng);
  const ComplexMatrix p = u.leftCols(2) * u.leftCols(2).adjoint();
  const ComplexMatrix b = range_basis(p);
  ASSERT_EQ(b.cols(), 2);
  EXPECT_LT((b * b.adjoint() - p).norm(), 1e-12);
}

TEST(Complement, CompletesToUnitary) {
  Rng rng(7);
  const ComplexMatrix u = random_unitary(6, rng);
  const ComplexMatrix cols = u.leftCols(2);
  const ComplexMatrix comp = orthonormal_complement(cols);
  ASSERT_EQ(comp.cols(), 4);
  ComplexMatrix full(6, 6);
  full << cols, comp;
  EXPECT_TRUE(is_unitary(full, 1e-12));
}

TEST(Predicates, Projectors) {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  EXPECT_TRUE(is_projector(p));
  EXPECT_TRUE(is_hermitian(p));
  p(0, 0) = 0.5;
  EXPECT_FALSE(is_projector(p));
  ComplexMatrix nh = ComplexMatrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  EXPECT_FALSE(is_hermitian(nh));
  EXPECT_FALSE(is_unitary(nh));
}

TEST(RandomUnitary, IsUnitaryAndSeeded) {
  for (Index d : {1, 2, 5, 16}) {
    const ComplexMatrix u = random_unitary(d, 99);
    EXPECT_TRUE(is_unitary(u, 1e-12));
    EXPECT_EQ(u, random_unitary(d, 99));
  }
}

TEST(RandomUnitary, FirstColumnIsUniformOnSphere) {
  // E|u_00|^2 = 1/d for Haar measure.
  Rng rng(8);
  const int n = 4000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::norm(random_unitary(4, rng)(0, 0));
  EXPECT_NEAR(sum / n, 0.25, 0.01);
}

TEST(RandomDensity, MeanIsMaximallyMixed) {
  Rng rng(9);
  const Index d = 3;
  ComplexMatrix mean = ComplexMatrix::Zero(d, d);
  const int n = 4000;
  for (int i = 0; i < n; ++i) mean += random_density(d, rng).matrix();
  mean /= static_cast<double>(n);
  EXPECT_LT((mean - ComplexMatrix::Identity(d, d) / 3.0).norm(), 0.02);
}

TEST(RandomDensity, RankKnob) {
  Rng rng(10);
  for (Index r = 1; r <= 4; ++r) {
    const DensityOperator rho = random_density(4, r, rng);
    const RealVector ev = hermitian_eigenvalues(rho.matrix());
    int nonzero = 0;
    for (Index k = 0; k < ev.size(); ++k) nonzero += ev(k) > 1e-10;
    EXPECT_EQ(nonzero, r);
  }
}

TEST(Density, Validation) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2) / 2.0;
  EXPECT_NO_THROW(DensityOperator::from_matrix(m));
  EXPECT_THROW(DensityOperator::from_matrix(m * 2.0), ValidationError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityOperator::from_matrix(neg), ValidationError);
  ComplexMatrix nh = m;
  nh(0, 1) = 0.1;
  EXPECT_THROW(DensityOperator::from_matrix(nh), ValidationError);
  EXPECT_THROW(DensityOperator::from_matrix(ComplexMatrix::Identity(2, 3)), DimensionError);
  EXPECT_FALSE(density_violation(neg).empty());
  EXPECT_TRUE(density_violation(m).empty());
}

TEST(Density, RepairClipsRoundoff) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0 + 1e-12;
  m(1, 1) = -1e-12;
  const DensityOperator rho = DensityOperator::repair(m);
  EXPECT_NEAR(trace(rho.matrix()).real(), 1.0, 1e-15);
  EXPECT_GE(hermitian_eigenvalues(rho.matrix()).minCoeff(), 0.0);
}

TEST(Density, PureAndMixed) {
  ComplexVector psi(2);
  psi << C(3, 0), C(0, 4);
  const DensityOperator rho = DensityOperator::pure(psi);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 9.0 / 25.0, 1e-15);
  EXPECT_NEAR(std::abs(rho.matrix()(0, 1) - C(0, -12.0 / 25.0)), 0.0, 1e-15);
  EXPECT_LT((DensityOperator::maximally_mixed(4).matrix() - ComplexMatrix::Identity(4, 4) / 4.0)
                .norm(),
            1e-15);
}

TEST(Density, ConjugationAndPartialTraceStayValid) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const DensityOperator rho = random_density(6, rng);
    const DensityOperator moved = conjugate(random_unitary(6, rng), rho);
    EXPECT_TRUE(density_violation(moved.matrix()).empty());
    const std::array<Index, 2> dims{2, 3};
    const std::array<Index, 1> keep{1};
    EXPECT_EQ(partial_trace(moved, dims, keep).dim(), 3);
  }
}

}  // namespace
}  // namespace qauth
