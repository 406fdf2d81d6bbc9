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

#include "qauth/doubleproto.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "qauth/errors.hpp"

namespace qauth {

namespace {

ComplexMatrix ket_bra(Index dim, Index j, Index l) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(j, l) = 1.0;
  return m;
}

void require_on(Index actual, Index expected, const char* what) {
  if (actual != expected) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(actual) +
                         ", expected " + std::to_string(expected));
  }
}

ComplexMatrix hermitized(ComplexMatrix m) { return 0.5 * (m + m.adjoint()); }

ComplexMatrix trace_out_tag2(const DoubleLayout& layout, const ComplexMatrix& m) {
  const std::array<Index, 2> dims{layout.dim_e1(), layout.dim_t2()};
  const std::array<Index, 1> keep{0};
  return partial_trace(m, dims, keep);
}

ComplexMatrix trace_out_tag1(const DoubleLayout& layout, const ComplexMatrix& m) {
  const std::array<Index, 2> dims{layout.dim_s(), layout.dim_t1()};
  const std::array<Index, 1> keep{0};
  return partial_trace(m, dims, keep);
}

/// Conditions on a passed test: P m P / prob.
DensityOperator condition(const ComplexMatrix& proj, const ComplexMatrix& m, double prob) {
  return DensityOperator::repair(hermitized(proj * m * proj / prob));
}

bool passes(double prob, VerdictMode mode, Rng* rng) {
  if (mode == VerdictMode::sampled) {
    if (rng == nullptr) throw ValidationError("sampled verdicts need a generator");
    return rng->uniform() < prob;
  }
  return prob >= 1.0 - kVerdictThreshold;
}

}  // namespace

DoubleLayout DoubleLayout::create(Index dim_s, Index dim_t1, Index dim_v1, Index dim_t2) {
  SpaceLayout inner = SpaceLayout::canonical(dim_s, dim_t1, dim_v1);
  SpaceLayout outer = SpaceLayout::canonical(inner.dim_e(), dim_t2, 1);
  return DoubleLayout(std::move(inner), std::move(outer));
}

DoubleLayout DoubleLayout::with_basis(Index dim_s, const ComplexMatrix& basis_v1, Index dim_t2) {
  SpaceLayout inner = SpaceLayout::with_basis(dim_s, basis_v1);
  SpaceLayout outer = SpaceLayout::canonical(inner.dim_e(), dim_t2, 1);
  return DoubleLayout(std::move(inner), std::move(outer));
}

ComplexMatrix DoubleLayout::tag2_projector(Index k) const {
  if (k < 0 || k >= dim_t2()) throw DimensionError("tag2_projector: level out of range");
  return tensor(ComplexMatrix::Identity(dim_e1(), dim_e1()), ket_bra(dim_t2(), k, k));
}

ComplexMatrix tag2_block(const DoubleLayout& layout, const ComplexMatrix& u, Index j, Index l) {
  require_on(u.rows(), layout.dim_e(), "tag2_block");
  const Index t2 = layout.dim_t2();
  const Index e1 = layout.dim_e1();
  return u(Eigen::seqN(j, e1, t2), Eigen::seqN(l, e1, t2));
}

double outer_block_residual(const DoubleLayout& layout, const ComplexMatrix& u, Index k) {
  const Index e1 = layout.dim_e1();
  const ComplexMatrix id = ComplexMatrix::Identity(e1, e1);
  double worst = 0.0;
  for (Index j = 0; j < layout.dim_t2(); ++j) {
    const ComplexMatrix expected = (j == k) ? id : ComplexMatrix::Zero(e1, e1);
    worst = std::max(worst, (tag2_block(layout, u, 0, j) - expected).norm());
    worst = std::max(worst, (tag2_block(layout, u, j, 0) - expected).norm());
  }
  return worst;
}

DoubleCodingScheme DoubleCodingScheme::create(const DoubleLayout& layout, UnitaryCodingSet inner,
                                              UnitaryCodingSet outer) {
  if (!(inner.layout() == layout.inner())) {
    throw ValidationError("double scheme: inner coding set is not on E1");
  }
  if (!(outer.layout() == layout.outer())) {
    throw ValidationError("double scheme: outer coding set is not on E");
  }
  if (static_cast<Index>(outer.size()) > layout.dim_t2()) {
    throw ValidationError("double scheme: K2 exceeds dim T2");
  }
  for (Index k = 0; k < static_cast<Index>(outer.size()); ++k) {
    const double r = outer_block_residual(layout, outer.op(k), k);
    if (r > 1e-10) {
      throw ValidationError("double scheme: U2(" + std::to_string(k) +
                            ") violates the tag-2 block constraint");
    }
  }
  return DoubleCodingScheme(std::move(inner), std::move(outer));
}

UnitaryCodingSet build_outer_coding(const DoubleLayout& layout, Index k2, std::uint64_t seed,
                                    bool randomize_free_blocks) {
  const Index t2 = layout.dim_t2();
  if (k2 < 1 || k2 > t2) {
    throw ValidationError("build_outer_coding: K2 = " + std::to_string(k2) + " outside [1, " +
                          std::to_string(t2) + "]");
  }
  const Index e1 = layout.dim_e1();
  const ComplexMatrix id = ComplexMatrix::Identity(e1, e1);
  Rng rng(seed);
  std::vector<ComplexMatrix> ops{ComplexMatrix::Identity(layout.dim_e(), layout.dim_e())};
  for (Index k = 1; k < k2; ++k) {
    ComplexMatrix u = tensor(id, ket_bra(t2, 0, k)) + tensor(id, ket_bra(t2, k, 0));
    for (Index j = 1; j < t2; ++j) {
      if (j == k) continue;
      const ComplexMatrix block = randomize_free_blocks ? random_unitary(e1, rng) : id;
      u += tensor(block, ket_bra(t2, j, j));
    }
    ops.push_back(std::move(u));
  }
  return UnitaryCodingSet::create(layout.outer(), std::move(ops));
}

DoubleCodingScheme build_double_scheme(const DoubleLayout& layout, Index k1, Index k2,
                                       std::uint64_t seed, bool randomize_free_blocks) {
  const Rng root(seed);
  UnitaryCodingSet inner = build_coding_set(layout.inner(), k1, root.split(1).next_u64());
  UnitaryCodingSet outer =
      build_outer_coding(layout, k2, root.split(2).next_u64(), randomize_free_blocks);
  return DoubleCodingScheme::create(layout, std::move(inner), std::move(outer));
}

std::vector<ComplexMatrix> outer_projectors(const DoubleCodingScheme& scheme,
                                            const DoubleLayout& layout) {
  const ComplexMatrix p2 = layout.p2();
  std::vector<ComplexMatrix> out;
  for (const auto& u : scheme.outer().operators()) out.push_back(u * p2 * u.adjoint());
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::accepted:
      return "accepted";
    case Verdict::rejected_at_tag2:
      return "rejected_at_tag2";
    case Verdict::rejected_at_tag1:
      return "rejected_at_tag1";
  }
  return "?";
}

DensityOperator alice_send(const DoubleCodingScheme& scheme, const DoubleLayout& layout,
                           const DensityOperator& rho_s, const DensityOperator& rho_t1, Index p,
                           Index q) {
  require_on(rho_s.dim(), layout.dim_s(), "alice_send message");
  require_on(rho_t1.dim(), layout.dim_t1(), "alice_send tag");
  const ComplexMatrix& u1 = scheme.inner().op(p);
  const ComplexMatrix& u2 = scheme.outer().op(q);
  const ComplexMatrix& v1 = layout.inner().basis_v();
  const double tag_mass = (v1 * v1.adjoint() * rho_t1.matrix()).trace().real();
  if (tag_mass < 1.0 - 1e-9) throw ValidationError("alice_send: first tag is not in V1");

  const ComplexMatrix tagged = tensor(rho_s.matrix(), rho_t1.matrix());
  const ComplexMatrix encoded = u1 * tagged * u1.adjoint();
  const ComplexMatrix twice_tagged = tensor(encoded, ket_bra(layout.dim_t2(), 0, 0));
  return DensityOperator::from_matrix(hermitized(u2 * twice_tagged * u2.adjoint()));
}

ProtocolTranscript bob_receive(const DoubleCodingScheme& scheme, const DoubleLayout& layout,
                               const DensityOperator& wire, Index p, Index q, VerdictMode mode,
                               Rng* rng) {
  require_on(wire.dim(), layout.dim_e(), "bob_receive wire");
  const ComplexMatrix& u1 = scheme.inner().op(p);
  const ComplexMatrix& u2 = scheme.outer().op(q);

  ProtocolTranscript t;
  t.p = p;
  t.q = q;
  t.wire = wire.matrix();
  t.after_outer_decode = hermitized(u2.adjoint() * wire.matrix() * u2);

  const ComplexMatrix p2 = layout.p2();
  t.tag2_probability = std::clamp((p2 * t.after_outer_decode).trace().real(), 0.0, 1.0);
  if (!passes(t.tag2_probability, mode, rng) || t.tag2_probability <= 0.0) {
    t.verdict = Verdict::rejected_at_tag2;
    return t;
  }
  const DensityOperator passed2 = condition(p2, t.after_outer_decode, t.tag2_probability);
  t.inner_state = DensityOperator::repair(trace_out_tag2(layout, passed2.matrix()));
  t.after_inner_decode = conjugate(u1.adjoint(), *t.inner_state);

  const ComplexMatrix p1 = projector_valid(layout.inner());
  t.tag1_probability =
      std::clamp((p1 * t.after_inner_decode->matrix()).trace().real(), 0.0, 1.0);
  if (!passes(t.tag1_probability, mode, rng) || t.tag1_probability <= 0.0) {
    t.verdict = Verdict::rejected_at_tag1;
    return t;
  }
  const DensityOperator passed1 =
      condition(p1, t.after_inner_decode->matrix(), t.tag1_probability);
  t.recovered = DensityOperator::repair(trace_out_tag1(layout, passed1.matrix()));
  t.verdict = Verdict::accepted;
  return t;
}

ProtocolTranscript run_honest(const DoubleCodingScheme& scheme, const DoubleLayout& layout,
                              const DensityOperator& rho_s, const DensityOperator& rho_t1, Index p,
                              Index q) {
  const DensityOperator wire = alice_send(scheme, layout, rho_s, rho_t1, p, q);
  ProtocolTranscript t = bob_receive(scheme, layout, wire, p, q);
  t.plaintext = rho_s;
  return t;
}

double double_forgery_probability(const DoubleCodingScheme& scheme, const DoubleLayout& layout,
                                  const ComplexMatrix& forged) {
  require_on(forged.rows(), layout.dim_e(), "double_forgery_probability");
  require_on(forged.cols(), layout.dim_e(), "double_forgery_probability");
  // tr[P2 U^dagger rho U] summed over the columns of U that P2 keeps
  // (composite index e1 * T2 + 0).
  const Index t2 = layout.dim_t2();
  double total = 0.0;
  for (const auto& u : scheme.outer().operators()) {
    for (Index e1 = 0; e1 < layout.dim_e1(); ++e1) {
      const auto col = u.col(e1 * t2);
      total += col.dot(forged * col).real();
    }
  }
  return total / static_cast<double>(scheme.k2());
}

double double_forgery_probability(const DoubleCodingScheme& scheme, const DoubleLayout& layout,
                                  const DensityOperator& forged) {
  return double_forgery_probability(scheme, layout, forged.matrix());
}

ComplexMatrix block_diagonal_attack(const DoubleLayout& layout,
                                    const std::vector<ComplexMatrix>& blocks) {
  const Index t2 = layout.dim_t2();
  if (static_cast<Index>(blocks.size()) != t2) {
    throw DimensionError("block_diagonal_attack: need one block per tag-2 level (" +
                         std::to_string(t2) + ")");
  }
  ComplexMatrix f = ComplexMatrix::Zero(layout.dim_e(), layout.dim_e());
  for (Index j = 0; j < t2; ++j) {
    const auto& b = blocks[static_cast<std::size_t>(j)];
    require_on(b.rows(), layout.dim_e1(), "block_diagonal_attack block");
    if (!is_unitary(b, 1e-10)) throw ValidationError("block_diagonal_attack: block is not unitary");
    f += tensor(b, ket_bra(t2, j, j));
  }
  return f;
}

DoubleUnitaryAttackResult double_unitary_attack(const DoubleCodingScheme& scheme,
                                                const DoubleLayout& layout,
                                                const std::vector<ComplexMatrix>& blocks,
                                                const DensityOperator& rho_s,
                                                const DensityOperator& rho_t1, Index p, Index q) {
  const ComplexMatrix f = block_diagonal_attack(layout, blocks);
  const DensityOperator wire = alice_send(scheme, layout, rho_s, rho_t1, p, q);
  const DensityOperator attacked = conjugate(f, wire);

  ProtocolTranscript t = bob_receive(scheme, layout, attacked, p, q);
  t.plaintext = rho_s;
  if (!t.inner_state) {
    throw ValidationError("double_unitary_attack: block-diagonal attack failed tag 2 (probability " +
                          std::to_string(t.tag2_probability) + ")");
  }

  const ComplexMatrix& u1 = scheme.inner().op(p);
  const ComplexMatrix rho_e1_p = u1 * tensor(rho_s.matrix(), rho_t1.matrix()) * u1.adjoint();
  const ComplexMatrix& fqq = blocks[static_cast<std::size_t>(q)];
  const ComplexMatrix expected = fqq * rho_e1_p * fqq.adjoint();

  DoubleUnitaryAttackResult r{t.tag2_probability, *t.inner_state,
                              (t.inner_state->matrix() - expected).norm(), std::move(t)};
  return r;
}

double tag2_pass_probability(const DoubleCodingScheme& scheme, const DoubleLayout& layout,
                             const ComplexMatrix& f, const DensityOperator& rho_s,
                             const DensityOperator& rho_t1, Index p) {
  require_on(f.rows(), layout.dim_e(), "tag2_pass_probability");
  const ComplexMatrix p2 = layout.p2();
  double total = 0.0;
  for (Index k = 0; k < scheme.k2(); ++k) {
    const ComplexMatrix& u2 = scheme.outer().op(k);
    const DensityOperator wire = alice_send(scheme, layout, rho_s, rho_t1, p, k);
    total += (p2 * u2.adjoint() * f * wire.matrix() * f.adjoint() * u2).trace().real();
  }
  return total / static_cast<double>(scheme.k2());
}

}  // namespace qauth
