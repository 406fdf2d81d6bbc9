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

#include "qauth/spaces.hpp"

#include <gtest/gtest.h>

#include "qauth/errors.hpp"

namespace qauth {
namespace {

TEST(SpaceLayout, CanonicalDimensions) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  EXPECT_EQ(l.dim_e(), 8);
  EXPECT_EQ(l.dim_c(), 2);
  EXPECT_EQ(l.dim_d(), 6);
  EXPECT_EQ(l.basis_v_perp().cols(), 3);
}

TEST(SpaceLayout, RejectsBadParameters) {
  EXPECT_THROW(SpaceLayout::canonical(1, 2, 1), ValidationError);
  EXPECT_THROW(SpaceLayout::canonical(2, 1, 1), ValidationError);
  EXPECT_THROW(SpaceLayout::canonical(2, 2, 2), ValidationError);
  EXPECT_THROW(SpaceLayout::canonical(2, 2, 0), ValidationError);
  ComplexMatrix skew(2, 1);
  skew << 1.0, 1.0;
  EXPECT_THROW(SpaceLayout::with_basis(2, skew), ValidationError);
}

TEST(Projectors, CanonicalValidProjectorByIndex) {
  const SpaceLayout l = SpaceLayout::canonical(3, 3, 2);
  const ComplexMatrix p = projector_valid(l);
  // Diagonal entry s*3 + t is 1 exactly when t < 2.
  for (Index r = 0; r < 9; ++r)
    for (Index c = 0; c < 9; ++c) {
      const double expect = (r == c && r % 3 < 2) ? 1.0 : 0.0;
      EXPECT_EQ(p(r, c), Complex(expect, 0.0));
    }
  EXPECT_LT((p + projector_invalid(l) - ComplexMatrix::Identity(9, 9)).norm(), 1e-15);
}

TEST(Projectors, RotatedBasis) {
  ComplexMatrix v(2, 1);
  v << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0));
  const SpaceLayout l = SpaceLayout::with_basis(2, v);
  const ComplexMatrix p = projector_valid(l);
  EXPECT_TRUE(is_projector(p, 1e-12));
  EXPECT_NEAR(trace(p).real(), 2.0, 1e-12);
  EXPECT_LT((p - tensor(ComplexMatrix::Identity(2, 2), v * v.adjoint())).norm(), 1e-14);
  const ComplexMatrix w = l.invalid_isometry();
  EXPECT_LT((p * w).norm(), 1e-14);
}

TEST(Isometries, ColumnOrdering) {
  const SpaceLayout l = SpaceLayout::canonical(2, 3, 2);
  const ComplexMatrix w = l.valid_isometry();
  ASSERT_EQ(w.cols(), 4);
  // Column s*dim_v + k is |s> (x) |k>, i.e. basis index s*3 + k.
  for (Index s = 0; s < 2; ++s)
    for (Index k = 0; k < 2; ++k) EXPECT_EQ(w(s * 3 + k, s * 2 + k), Complex(1.0, 0.0));
  EXPECT_LT((w.adjoint() * w - ComplexMatrix::Identity(4, 4)).norm(), 1e-15);
  EXPECT_LT((w * w.adjoint() - projector_valid(l)).norm(), 1e-15);
}

TEST(Blocks, ReconstructProperty) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const ComplexMatrix a = random_gaussian(8, 8, rng);
    const BlockDecomposition b = decompose(a, l);
    EXPECT_LT((b.reconstruct() - a).norm(), 1e-13);
    const ComplexMatrix pi = projector_valid(l);
    EXPECT_LT((b.ii - pi * a * pi).norm(), 1e-13);
  }
}

TEST(States, TagMessageRoundTrip) {
  const SpaceLayout l = SpaceLayout::canonical(2, 4, 1);
  Rng rng(1);
  const DensityOperator rho = random_density(2, rng);
  const DensityOperator tagged = tag_message(rho, l);
  EXPECT_TRUE(in_valid_subspace(tagged, l));
  EXPECT_NEAR(valid_mass(tagged, l), 1.0, 1e-14);
  EXPECT_LT((message_part(tagged.matrix(), l) - rho.matrix()).norm(), 1e-14);
  EXPECT_THROW(tag_message(random_density(3, rng), l), DimensionError);
}

TEST(States, RandomValidLiesInC) {
  const SpaceLayout l = SpaceLayout::canonical(3, 3, 2);
  Rng rng(2);
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(in_valid_subspace(random_valid_density(l, rng), l));
  EXPECT_FALSE(in_valid_subspace(random_density(9, rng), l));
}

TEST(SpaceLayout, Equality) {
  EXPECT_EQ(SpaceLayout::canonical(2, 2, 1), SpaceLayout::canonical(2, 2, 1));
  EXPECT_FALSE(SpaceLayout::canonical(2, 2, 1) == SpaceLayout::canonical(2, 4, 1));
}

}  // namespace
}  // namespace qauth
