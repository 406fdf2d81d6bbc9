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

#include <array>
#include <string>

#include "qauth/errors.hpp"

namespace qauth {

SpaceLayout::SpaceLayout(Index dim_s, ComplexMatrix basis_v)
    : dim_s_(dim_s), basis_v_(std::move(basis_v)) {
  basis_v_perp_ = orthonormal_complement(basis_v_);
}

SpaceLayout SpaceLayout::canonical(Index dim_s, Index dim_t, Index dim_v) {
  if (dim_t < 2) throw ValidationError("layout: dim_t must be >= 2");
  if (dim_v < 1 || dim_v >= dim_t) {
    throw ValidationError("layout: need 1 <= dim_v < dim_t, got dim_v=" + std::to_string(dim_v));
  }
  return with_basis(dim_s, ComplexMatrix::Identity(dim_t, dim_v));
}

SpaceLayout SpaceLayout::with_basis(Index dim_s, const ComplexMatrix& basis_v) {
  if (dim_s < 2) throw ValidationError("layout: dim_s must be >= 2");
  require_valid(basis_v, "valid tag basis");
  const Index dim_t = basis_v.rows();
  const Index dim_v = basis_v.cols();
  if (dim_t < 2) throw ValidationError("layout: dim_t must be >= 2");
  if (dim_v >= dim_t) throw ValidationError("layout: valid tag subspace must be proper");
  const double ortho = (basis_v.adjoint() * basis_v - ComplexMatrix::Identity(dim_v, dim_v)).norm();
  if (ortho > 1e-10) throw ValidationError("layout: valid tag basis is not orthonormal");
  return SpaceLayout(dim_s, basis_v);
}

ComplexMatrix SpaceLayout::valid_isometry() const {
  return tensor(ComplexMatrix::Identity(dim_s_, dim_s_), basis_v_);
}

ComplexMatrix SpaceLayout::invalid_isometry() const {
  return tensor(ComplexMatrix::Identity(dim_s_, dim_s_), basis_v_perp_);
}

ComplexMatrix projector_valid(const SpaceLayout& layout) {
  const ComplexMatrix pv = layout.basis_v() * layout.basis_v().adjoint();
  return tensor(ComplexMatrix::Identity(layout.dim_s(), layout.dim_s()), pv);
}

ComplexMatrix projector_invalid(const SpaceLayout& layout) {
  return ComplexMatrix::Identity(layout.dim_e(), layout.dim_e()) - projector_valid(layout);
}

BlockDecomposition decompose(const ComplexMatrix& a, const SpaceLayout& layout) {
  require_square(a, "decompose operand");
  if (a.rows() != layout.dim_e()) {
    throw DimensionError("decompose: operand dimension " + std::to_string(a.rows()) +
                         " != dim E " + std::to_string(layout.dim_e()));
  }
  const ComplexMatrix pi = projector_valid(layout);
  const ComplexMatrix po = projector_invalid(layout);
  return {pi * a * pi, pi * a * po, po * a * pi, po * a * po};
}

double valid_mass(const DensityOperator& rho, const SpaceLayout& layout) {
  if (rho.dim() != layout.dim_e()) throw DimensionError("valid_mass: state is not on E");
  return (projector_valid(layout) * rho.matrix()).trace().real();
}

bool in_valid_subspace(const DensityOperator& rho, const SpaceLayout& layout, double tol) {
  return valid_mass(rho, layout) >= 1.0 - tol;
}

DensityOperator tag_message(const DensityOperator& rho_s, const SpaceLayout& layout) {
  if (rho_s.dim() != layout.dim_s()) throw DimensionError("tag_message: message is not on S");
  const ComplexMatrix v0 = layout.basis_v().col(0);
  return DensityOperator::from_matrix(tensor(rho_s.matrix(), v0 * v0.adjoint()));
}

DensityOperator embed_valid(const DensityOperator& rho_c, const SpaceLayout& layout) {
  if (rho_c.dim() != layout.dim_c()) throw DimensionError("embed_valid: state is not on C");
  const ComplexMatrix w = layout.valid_isometry();
  ComplexMatrix m = w * rho_c.matrix() * w.adjoint();
  m = 0.5 * (m + m.adjoint());
  return DensityOperator::from_matrix(std::move(m));
}

DensityOperator random_valid_density(const SpaceLayout& layout, Rng& rng) {
  return embed_valid(random_density(layout.dim_c(), rng), layout);
}

ComplexMatrix message_part(const ComplexMatrix& rho_e, const SpaceLayout& layout) {
  const std::array<Index, 2> dims{layout.dim_s(), layout.dim_t()};
  const std::array<Index, 1> keep{0};
  return partial_trace(rho_e, dims, keep);
}

}  // namespace qauth
