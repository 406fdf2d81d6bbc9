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

#ifndef QAUTH_ATTACKS_HPP
#define QAUTH_ATTACKS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qauth/codec.hpp"

namespace qauth {

enum class AttackKind { forgery, measurement, unitary };

const char* to_string(AttackKind kind);

struct AttackReport {
  AttackKind kind = AttackKind::forgery;
  double deception_probability = 0.0;
  /// Forged density (forgery), attack unitary (unitary), or the first
  /// operator's valid block U^0_ii (measurement).
  ComplexMatrix attacker_payload;
  /// Between Alice's plaintext and the plaintext Bob accepts, when defined.
  std::optional<double> message_fidelity;
  std::map<std::string, double> diagnostics;
};

/// Single-TPCP forgery: 1/2 tr[P_i rho + P_i R(rho)], key bit uniform.
double forgery_probability(const TpcpMap& map, const DensityOperator& forged);
/// Same evaluation on a raw operator; no density validation.
double forgery_probability(const TpcpMap& map, const ComplexMatrix& forged);

struct ForgeryConditions {
  /// forged lies in C
  bool cond_in_c = false;
  /// R(forged) lies in C
  bool cond_r_in_c = false;
  /// || H^dagger rho_S H ||_F with rho_S = P_i forged P_i
  double h_term = 0.0;
  /// || (G_ii - P_i) rho_S H ||_F
  double g_term = 0.0;
};

ForgeryConditions forgery_conditions(const TpcpMap& map, const DensityOperator& forged,
                                     double tol = 1e-9);

AttackReport forgery_attack(const TpcpMap& map, const DensityOperator& forged);

struct MeasurementResult {
  /// Every U^j_ii vanishes: Eve separates E(C) from C by measuring the tag.
  bool perfectly_distinguishable = false;
  /// max_j || U^j_ii ||_F
  double max_valid_block_norm = 0.0;
  /// Largest tr(P_i E(rho)) over the sampled rho in C.
  double worst_overlap = 0.0;
  /// Exact maximum of tr(P_i E(rho)) over rho in C (top eigenvalue).
  double exact_max_overlap = 0.0;
};

MeasurementResult measurement_distinguishability(const TpcpMap& map, int samples = 64,
                                                 std::uint64_t seed = 0);

AttackReport measurement_attack(const TpcpMap& map, int samples = 64, std::uint64_t seed = 0);

/// 1/2 tr[P_i F rho F^dagger + P_i R(F E(rho) F^dagger)] for rho in C.
/// Throws ValidationError for non-unitary f or rho outside C.
double unitary_attack_probability(const TpcpMap& map, const ComplexMatrix& f,
                                  const DensityOperator& rho);

/// Plaintext Bob accepts after the attack, averaged over the key bit and
/// conditioned on acceptance, traced over the tag.
DensityOperator accepted_plaintext(const TpcpMap& map, const ComplexMatrix& f,
                                   const DensityOperator& rho);

AttackReport unitary_attack(const TpcpMap& map, const ComplexMatrix& f, const DensityOperator& rho);

inline constexpr double kNullSingularThreshold = 1e-8;

/// Hermitian basis (Frobenius-normalized) of {X : [X, p1] = 0, [X, p2] = 0}.
/// The basis size equals the complex dimension of the commutant, which is a
/// *-algebra because p1 and p2 are Hermitian.
std::vector<ComplexMatrix> commutant_basis(const ComplexMatrix& p1, const ComplexMatrix& p2,
                                           double null_threshold = kNullSingularThreshold);

struct CommutingAttack {
  ComplexMatrix f;
  double commutator_valid = 0.0;  // || [F, P_i] ||_F
  double commutator_pm = 0.0;     // || [F, P_M] ||_F
  /// Distance of F restricted to C from the nearest scalar multiple of I_C.
  double disturbance = 0.0;
  std::size_t commutant_dimension = 0;
  int draws = 0;
};

inline constexpr double kDisturbanceThreshold = 1e-3;

/// Random unitary in the commutant of {P_i, P_M}, redrawn until it moves
/// messages inside C. Throws ScalarCommutantError after `max_draws`.
CommutingAttack commuting_attack(const TpcpMap& map, std::uint64_t seed, int max_draws = 16);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

}  // namespace qauth

#endif  // QAUTH_ATTACKS_HPP
