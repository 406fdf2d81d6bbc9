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

#ifndef QAUTH_SPACES_HPP
#define QAUTH_SPACES_HPP

#include "qauth/matcore.hpp"

namespace qauth {

// Tagged-message space E = S (x) T with the tag space split into valid
// tags V and invalid tags V-perp. C = S (x) V holds honestly tagged messages.
class SpaceLayout {
 public:
  /// Valid subspace spanned by the first `dim_v` computational tag states.
  static SpaceLayout canonical(Index dim_s, Index dim_t, Index dim_v = 1);
  /// `basis_v` is dim_t x dim_v with orthonormal columns.
  static SpaceLayout with_basis(Index dim_s, const ComplexMatrix& basis_v);

  [[nodiscard]] Index dim_s() const { return dim_s_; }
  [[nodiscard]] Index dim_t() const { return basis_v_.rows(); }
  [[nodiscard]] Index dim_v() const { return basis_v_.cols(); }
  [[nodiscard]] Index dim_e() const { return dim_s_ * dim_t(); }
  /// dim C
  [[nodiscard]] Index dim_c() const { return dim_s_ * dim_v(); }
  /// dim C-perp
  [[nodiscard]] Index dim_d() const { return dim_s_ * (dim_t() - dim_v()); }

  [[nodiscard]] const ComplexMatrix& basis_v() const { return basis_v_; }
  [[nodiscard]] const ComplexMatrix& basis_v_perp() const { return basis_v_perp_; }

  /// Isometry C -> E (dim_e x dim_c); column s*dim_v + k is |s> (x) v_k.
  [[nodiscard]] ComplexMatrix valid_isometry() const;
  /// Isometry C-perp -> E (dim_e x dim_d).
  [[nodiscard]] ComplexMatrix invalid_isometry() const;

  friend bool operator==(const SpaceLayout& a, const SpaceLayout& b) {
    return a.dim_s_ == b.dim_s_ && a.basis_v_ == b.basis_v_;
  }

 private:
  SpaceLayout(Index dim_s, ComplexMatrix basis_v);

  Index dim_s_;
  ComplexMatrix basis_v_;
  ComplexMatrix basis_v_perp_;
};

/// P_i = I_S (x) sum_k |v_k><v_k|.
ComplexMatrix projector_valid(const SpaceLayout& layout);
/// P_o = I - P_i.
ComplexMatrix projector_invalid(const SpaceLayout& layout);

struct BlockDecomposition {
  ComplexMatrix ii, io, oi, oo;

  [[nodiscard]] ComplexMatrix reconstruct() const { return ii + io + oi + oo; }
};

/// Blocks P_j A P_k, kept at full dimension.
BlockDecomposition decompose(const ComplexMatrix& a, const SpaceLayout& layout);

/// tr(P_i rho).
double valid_mass(const DensityOperator& rho, const SpaceLayout& layout);
/// Acceptance predicate: tr(P_i rho) >= 1 - tol.
bool in_valid_subspace(const DensityOperator& rho, const SpaceLayout& layout, double tol = 1e-9);

/// rho_S (x) |v_0><v_0|; rho_S is dim_s-dimensional.
DensityOperator tag_message(const DensityOperator& rho_s, const SpaceLayout& layout);
/// Lifts a dim_c density into E through valid_isometry().
DensityOperator embed_valid(const DensityOperator& rho_c, const SpaceLayout& layout);
/// Random density supported in C (generally entangled across S and V).
DensityOperator random_valid_density(const SpaceLayout& layout, Rng& rng);
/// tr_T of an E operator.
ComplexMatrix message_part(const ComplexMatrix& rho_e, const SpaceLayout& layout);

}  // namespace qauth

#endif  // QAUTH_SPACES_HPP
