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

#ifndef QAUTH_CODEC_HPP
#define QAUTH_CODEC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qauth/matcore.hpp"
#include "qauth/spaces.hpp"

namespace qauth {

/// Residuals of the structural constraints on a candidate operator set.
struct MapCheck {
  double weight_sum_residual = 0.0;
  double min_weight = 0.0;
  double unitarity_residual = 0.0;
  /// max over j,k of || P_i U_k^dagger U_j P_i - delta_jk P_i ||_F
  double reversibility_residual = 0.0;
  Index count = 0;
  Index bound = 0;
  /// Empty when the set is a valid reversible map.
  std::string violation;
};

inline constexpr double kMinWeight = 1e-6;

MapCheck check_map(const SpaceLayout& layout, const std::vector<ComplexMatrix>& operators,
                   const std::vector<double>& weights);

/// Reversible mixture of unitary conjugations, rho -> sum_j d_j U_j rho U_j^dagger.
class TpcpMap {
 public:
  /// Throws ValidationError unless every invariant holds.
  static TpcpMap create(SpaceLayout layout, std::vector<ComplexMatrix> operators,
                        std::vector<double> weights);

  [[nodiscard]] const SpaceLayout& layout() const { return layout_; }
  [[nodiscard]] const std::vector<ComplexMatrix>& operators() const { return operators_; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] std::size_t size() const { return operators_.size(); }

  [[nodiscard]] const ComplexMatrix& p_valid() const { return p_valid_; }
  /// P_N = I - sum_j U_j P_i U_j^dagger
  [[nodiscard]] const ComplexMatrix& p_n() const { return p_n_; }

 private:
  TpcpMap(SpaceLayout layout, std::vector<ComplexMatrix> operators, std::vector<double> weights);

  SpaceLayout layout_;
  std::vector<ComplexMatrix> operators_;
  std::vector<double> weights_;
  ComplexMatrix p_valid_;
  ComplexMatrix p_n_;
};

DensityOperator encode(const TpcpMap& map, const DensityOperator& rho);
ComplexMatrix encode(const TpcpMap& map, const ComplexMatrix& rho);

/// R(sigma) = sum_j P_i U_j^dagger sigma U_j P_i + P_N sigma P_N.
/// Trace preserving whenever P_M is a projector, which validation guarantees.
DensityOperator decode(const TpcpMap& map, const DensityOperator& sigma);
ComplexMatrix decode(const TpcpMap& map, const ComplexMatrix& sigma);

struct DerivedProjectors {
  ComplexMatrix pn;
  ComplexMatrix pm;
  /// Block (i,o) of P_M: sum_j U^j_ii U^j_oi^dagger.
  ComplexMatrix h;
  /// Block (i,i) of P_M.
  ComplexMatrix gii;
  /// Block (o,o) of P_M.
  ComplexMatrix goi;
};

DerivedProjectors derived_projectors(const TpcpMap& map);

/// floor(dim E / dim C)
Index max_operator_count(const SpaceLayout& layout);

enum class WeightScheme { uniform, dirichlet };

/// Raw construction step without the operator-count guard: draws a Haar
/// unitary on E, hands out its columns in groups of dim C as the images
/// U_j P_i, and completes each U_j on C-perp by Gram-Schmidt. When the
/// columns run out (J > max_operator_count) the overflowing groups are taken
/// from a fresh Haar unitary, which necessarily breaks reversibility.
std::vector<ComplexMatrix> candidate_operators(const SpaceLayout& layout, Index count, Rng& rng);

std::vector<double> draw_weights(Index count, WeightScheme scheme, Rng& rng);

/// Throws ValidationError when count is outside [1, max_operator_count].
TpcpMap build_reversible_map(const SpaceLayout& layout, Index count, std::uint64_t seed,
                             WeightScheme weights = WeightScheme::uniform);
TpcpMap build_reversible_map(const SpaceLayout& layout, Index count, Rng& rng,
                             WeightScheme weights = WeightScheme::uniform);

/// Smallest singular value of H^dagger seen as a map C -> C-perp. Zero when
/// dim C > dim C-perp.
double h_dagger_sigma_min(const TpcpMap& map);

inline constexpr double kKernelFreeThreshold = 1e-6;

struct KernelFreeMap {
  TpcpMap map;
  double sigma_min;
  int attempts_used;
};

/// Rejection-samples build_reversible_map until sigma_min(H^dagger) exceeds
/// kKernelFreeThreshold. Throws AttemptsExhausted.
KernelFreeMap build_kernel_free_map(const SpaceLayout& layout, Index count, std::uint64_t seed,
                                    int attempts = 100,
                                    WeightScheme weights = WeightScheme::uniform);

/// {U(0) = I, U(1), ..., U(K-1)} on E.
class UnitaryCodingSet {
 public:
  static UnitaryCodingSet create(SpaceLayout layout, std::vector<ComplexMatrix> operators);

  [[nodiscard]] const SpaceLayout& layout() const { return layout_; }
  [[nodiscard]] const std::vector<ComplexMatrix>& operators() const { return operators_; }
  [[nodiscard]] std::size_t size() const { return operators_.size(); }
  /// Throws KeyRangeError.
  [[nodiscard]] const ComplexMatrix& op(Index key) const;

 private:
  UnitaryCodingSet(SpaceLayout layout, std::vector<ComplexMatrix> operators)
      : layout_(std::move(layout)), operators_(std::move(operators)) {}

  SpaceLayout layout_;
  std::vector<ComplexMatrix> operators_;
};

/// U(0) = I, the rest Haar-random on E.
UnitaryCodingSet build_coding_set(const SpaceLayout& layout, Index size, std::uint64_t seed);

DensityOperator apply_coding(const UnitaryCodingSet& set, Index key, const DensityOperator& rho);

}  // namespace qauth

#endif  // QAUTH_CODEC_HPP
