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

#ifndef QAUTH_DOUBLEPROTO_HPP
#define QAUTH_DOUBLEPROTO_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qauth/codec.hpp"

namespace qauth {

// Twice-tagged message space E = E1 (x) T2 with E1 = S (x) T1. The second
// tag's valid subspace is span{|0>}.
class DoubleLayout {
 public:
  static DoubleLayout create(Index dim_s, Index dim_t1, Index dim_v1, Index dim_t2);
  static DoubleLayout with_basis(Index dim_s, const ComplexMatrix& basis_v1, Index dim_t2);

  /// S (x) T1 with valid tags V1.
  [[nodiscard]] const SpaceLayout& inner() const { return inner_; }
  /// E1 (x) T2 with valid tag |0>; its valid projector is P2.
  [[nodiscard]] const SpaceLayout& outer() const { return outer_; }

  [[nodiscard]] Index dim_s() const { return inner_.dim_s(); }
  [[nodiscard]] Index dim_t1() const { return inner_.dim_t(); }
  [[nodiscard]] Index dim_t2() const { return outer_.dim_t(); }
  [[nodiscard]] Index dim_e1() const { return inner_.dim_e(); }
  [[nodiscard]] Index dim_e() const { return outer_.dim_e(); }

  /// I_E1 (x) |0><0|
  [[nodiscard]] ComplexMatrix p2() const { return tag2_projector(0); }
  /// I_E1 (x) |k><k|
  [[nodiscard]] ComplexMatrix tag2_projector(Index k) const;

 private:
  DoubleLayout(SpaceLayout inner, SpaceLayout outer)
      : inner_(std::move(inner)), outer_(std::move(outer)) {}

  SpaceLayout inner_;
  SpaceLayout outer_;
};

/// Block (j, l) of an E operator written as sum U_jl (x) |j><l|_T2.
ComplexMatrix tag2_block(const DoubleLayout& layout, const ComplexMatrix& u, Index j, Index l);

/// max over j of || U_0j - delta_jk I || and || U_j0 - delta_jk I ||.
double outer_block_residual(const DoubleLayout& layout, const ComplexMatrix& u, Index k);

class DoubleCodingScheme {
 public:
  /// Validates U1(0) = I, U2(0) = I and the outer block constraint.
  static DoubleCodingScheme create(const DoubleLayout& layout, UnitaryCodingSet inner,
                                   UnitaryCodingSet outer);

  [[nodiscard]] const UnitaryCodingSet& inner() const { return inner_; }
  [[nodiscard]] const UnitaryCodingSet& outer() const { return outer_; }
  [[nodiscard]] Index k1() const { return static_cast<Index>(inner_.size()); }
  [[nodiscard]] Index k2() const { return static_cast<Index>(outer_.size()); }

 private:
  DoubleCodingScheme(UnitaryCodingSet inner, UnitaryCodingSet outer)
      : inner_(std::move(inner)), outer_(std::move(outer)) {}

  UnitaryCodingSet inner_;
  UnitaryCodingSet outer_;
};

/// U2(k) swaps tag-2 levels 0 and k and acts as I_E1 inside the swapped
/// blocks. With `randomize_free_blocks` the untouched diagonal blocks (j,j),
/// j not in {0,k}, become Haar unitaries on E1. Throws ValidationError when
/// k2 > dim T2.
UnitaryCodingSet build_outer_coding(const DoubleLayout& layout, Index k2, std::uint64_t seed,
                                    bool randomize_free_blocks = false);

/// Haar-random inner set of size k1 (seed) and outer set of size k2 (seed + 1 stream).
DoubleCodingScheme build_double_scheme(const DoubleLayout& layout, Index k1, Index k2,
                                       std::uint64_t seed, bool randomize_free_blocks = false);

/// P2(k) = U2(k) P2 U2(k)^dagger for every outer key.
std::vector<ComplexMatrix> outer_projectors(const DoubleCodingScheme& scheme,
                                            const DoubleLayout& layout);

enum class Verdict { accepted, rejected_at_tag2, rejected_at_tag1 };

const char* to_string(Verdict v);

enum class VerdictMode {
  /// Pass a test iff its acceptance probability is at least 1 - 1e-9.
  threshold,
  /// Bernoulli draw per test from the supplied generator.
  sampled,
};

inline constexpr double kVerdictThreshold = 1e-9;

struct ProtocolTranscript {
  std::optional<DensityOperator> plaintext;
  Index p = 0;
  Index q = 0;
  ComplexMatrix wire;
  /// U2(q)^dagger wire U2(q)
  ComplexMatrix after_outer_decode;
  double tag2_probability = 0.0;
  /// E1 state after passing tag 2 and tracing out T2.
  std::optional<DensityOperator> inner_state;
  /// U1(p)^dagger inner_state U1(p)
  std::optional<DensityOperator> after_inner_decode;
  double tag1_probability = 0.0;
  Verdict verdict = Verdict::rejected_at_tag2;
  std::optional<DensityOperator> recovered;

  [[nodiscard]] double acceptance_probability() const { return tag2_probability * tag1_probability; }
};

/// U2(q) [U1(p) (rho_S (x) rho_T1) U1(p)^dagger (x) |0><0|] U2(q)^dagger.
DensityOperator alice_send(const DoubleCodingScheme& scheme, const DoubleLayout& layout,
                           const DensityOperator& rho_s, const DensityOperator& rho_t1, Index p,
                           Index q);

ProtocolTranscript bob_receive(const DoubleCodingScheme& scheme, const DoubleLayout& layout,
                               const DensityOperator& wire, Index p, Index q,
                               VerdictMode mode = VerdictMode::threshold, Rng* rng = nullptr);

/// alice_send followed by bob_receive; the transcript carries the plaintext.
ProtocolTranscript run_honest(const DoubleCodingScheme& scheme, const DoubleLayout& layout,
                              const DensityOperator& rho_s, const DensityOperator& rho_t1, Index p,
                              Index q);

/// (1/K2) sum_k tr[P2 U2(k)^dagger forged U2(k)].
double double_forgery_probability(const DoubleCodingScheme& scheme, const DoubleLayout& layout,
                                  const DensityOperator& forged);
/// Same evaluation on a raw operator; no density validation.
double double_forgery_probability(const DoubleCodingScheme& scheme, const DoubleLayout& layout,
                                  const ComplexMatrix& forged);

/// sum_j F_jj (x) |j><j|_T2; needs one block per tag-2 level.
ComplexMatrix block_diagonal_attack(const DoubleLayout& layout,
                                    const std::vector<ComplexMatrix>& blocks);

struct DoubleUnitaryAttackResult {
  double pass_prob_tag2 = 0.0;
  DensityOperator decoded_e1;
  /// || decoded_e1 - F_qq rho_E1(p) F_qq^dagger ||_F
  double reduction_residual = 0.0;
  ProtocolTranscript transcript;
};

DoubleUnitaryAttackResult double_unitary_attack(const DoubleCodingScheme& scheme,
                                                const DoubleLayout& layout,
                                                const std::vector<ComplexMatrix>& blocks,
                                                const DensityOperator& rho_s,
                                                const DensityOperator& rho_t1, Index p, Index q);

/// Tag-2 pass probability of an arbitrary attack F on E, averaged over the
/// outer key: (1/K2) sum_k tr[P2 U2(k)^dagger F rho_E(k) F^dagger U2(k)].
double tag2_pass_probability(const DoubleCodingScheme& scheme, const DoubleLayout& layout,
                             const ComplexMatrix& f, const DensityOperator& rho_s,
                             const DensityOperator& rho_t1, Index p);

}  // namespace qauth

#endif  // QAUTH_DOUBLEPROTO_HPP
