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

#include <algorithm>
#include <cmath>

#include "qauth/errors.hpp"

namespace qauth {

namespace {

void require_on_e(const TpcpMap& map, Index dim, const char* what) {
  if (dim != map.layout().dim_e()) {
    throw DimensionError(std::string(what) + ": operand is not on E");
  }
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

}  // namespace

const char* to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::forgery:
      return "forgery";
    case AttackKind::measurement:
      return "measurement";
    case AttackKind::unitary:
      return "unitary";
  }
  return "?";
}

double forgery_probability(const TpcpMap& map, const ComplexMatrix& forged) {
  require_on_e(map, forged.rows(), "forgery_probability");
  const ComplexMatrix& pi = map.p_valid();
  const double direct = (pi * forged).trace().real();
  const double decoded = (pi * decode(map, forged)).trace().real();
  return 0.5 * (direct + decoded);
}

double forgery_probability(const TpcpMap& map, const DensityOperator& forged) {
  return forgery_probability(map, forged.matrix());
}

ForgeryConditions forgery_conditions(const TpcpMap& map, const DensityOperator& forged,
                                     double tol) {
  require_on_e(map, forged.dim(), "forgery_conditions");
  ForgeryConditions c;
  c.cond_in_c = in_valid_subspace(forged, map.layout(), tol);
  c.cond_r_in_c = in_valid_subspace(decode(map, forged), map.layout(), tol);
  const DerivedProjectors d = derived_projectors(map);
  const ComplexMatrix& pi = map.p_valid();
  const ComplexMatrix rho_s = pi * forged.matrix() * pi;
  c.h_term = (d.h.adjoint() * rho_s * d.h).norm();
  c.g_term = ((d.gii - pi) * rho_s * d.h).norm();
  return c;
}

AttackReport forgery_attack(const TpcpMap& map, const DensityOperator& forged) {
  AttackReport r;
  r.kind = AttackKind::forgery;
  r.deception_probability = forgery_probability(map, forged);
  r.attacker_payload = forged.matrix();
  const ForgeryConditions c = forgery_conditions(map, forged);
  r.diagnostics["cond_in_c"] = c.cond_in_c ? 1.0 : 0.0;
  r.diagnostics["cond_r_in_c"] = c.cond_r_in_c ? 1.0 : 0.0;
  r.diagnostics["h_term"] = c.h_term;
  r.diagnostics["g_term"] = c.g_term;
  return r;
}

MeasurementResult measurement_distinguishability(const TpcpMap& map, int samples,
                                                 std::uint64_t seed) {
  MeasurementResult m;
  const ComplexMatrix& pi = map.p_valid();
  for (const auto& u : map.operators()) {
    m.max_valid_block_norm = std::max(m.max_valid_block_norm, (pi * u * pi).norm());
  }
  m.perfectly_distinguishable = m.max_valid_block_norm <= 1e-9;

  // tr(P_i E(rho)) = tr(Q rho) with Q = sum_j d_j U_j^dagger P_i U_j, so on C
  // the maximum is the top eigenvalue of W^dagger Q W.
  const ComplexMatrix w = map.layout().valid_isometry();
  ComplexMatrix q = ComplexMatrix::Zero(pi.rows(), pi.cols());
  for (std::size_t j = 0; j < map.size(); ++j) {
    const auto& u = map.operators()[j];
    q += map.weights()[j] * (u.adjoint() * pi * u);
  }
  m.exact_max_overlap = hermitian_eigenvalues(w.adjoint() * q * w).maxCoeff();

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const DensityOperator rho = random_valid_density(map.layout(), rng);
    m.worst_overlap = std::max(m.worst_overlap, valid_mass(encode(map, rho), map.layout()));
  }
  return m;
}

AttackReport measurement_attack(const TpcpMap& map, int samples, std::uint64_t seed) {
  const MeasurementResult m = measurement_distinguishability(map, samples, seed);
  AttackReport r;
  r.kind = AttackKind::measurement;
  // Worst-case (over messages) probability that guessing the key bit from a
  // tag measurement is right: an I-encoded message always shows a valid tag,
  // an E-encoded one shows an invalid tag with probability 1 - overlap.
  r.deception_probability = 0.5 * (1.0 + (1.0 - m.exact_max_overlap));
  const ComplexMatrix& pi = map.p_valid();
  r.attacker_payload = pi * map.operators().front() * pi;
  r.diagnostics["perfectly_distinguishable"] = m.perfectly_distinguishable ? 1.0 : 0.0;
  r.diagnostics["max_valid_block_norm"] = m.max_valid_block_norm;
  r.diagnostics["worst_overlap"] = m.worst_overlap;
  r.diagnostics["exact_max_overlap"] = m.exact_max_overlap;
  return r;
}

namespace {

void require_attack_inputs(const TpcpMap& map, const ComplexMatrix& f, const DensityOperator& rho) {
  require_on_e(map, f.rows(), "unitary attack");
  require_on_e(map, rho.dim(), "unitary attack");
  if (!is_unitary(f, 1e-8)) throw ValidationError("unitary attack: F is not unitary");
  if (!in_valid_subspace(rho, map.layout())) {
    throw ValidationError("unitary attack: message is not in C");
  }
}

}  // namespace

double unitary_attack_probability(const TpcpMap& map, const ComplexMatrix& f,
                                  const DensityOperator& rho) {
  require_attack_inputs(map, f, rho);
  const ComplexMatrix& pi = map.p_valid();
  const ComplexMatrix& pn = map.p_n();
  const ComplexMatrix& r = rho.matrix();

  // Key 0: Bob checks F rho F^dagger directly.
  const double unencoded = (pi * f * r * f.adjoint()).trace().real();

  // Key 1: Bob decodes F E(rho) F^dagger, expanded term by term.
  ComplexMatrix encoded = ComplexMatrix::Zero(r.rows(), r.cols());
  for (std::size_t j = 0; j < map.size(); ++j) {
    const auto& u = map.operators()[j];
    encoded += map.weights()[j] * (u * r * u.adjoint());
  }
  const ComplexMatrix attacked = f * encoded * f.adjoint();
  double decoded = 0.0;
  for (const auto& u : map.operators()) {
    decoded += (pi * u.adjoint() * attacked * u * pi).trace().real();
  }
  decoded += (pi * pn * attacked * pn).trace().real();
  return 0.5 * (unencoded + decoded);
}

DensityOperator accepted_plaintext(const TpcpMap& map, const ComplexMatrix& f,
                                   const DensityOperator& rho) {
  require_attack_inputs(map, f, rho);
  const ComplexMatrix& pi = map.p_valid();
  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix key0 = pi * f * r * f.adjoint() * pi;
  const ComplexMatrix key1 = pi * decode(map, f * encode(map, r) * f.adjoint()) * pi;
  const ComplexMatrix accepted = 0.5 * (key0 + key1);
  const double mass = accepted.trace().real();
  if (!(mass > 1e-12)) throw ValidationError("accepted_plaintext: Bob never accepts");
  return DensityOperator::repair(message_part(accepted / mass, map.layout()));
}

AttackReport unitary_attack(const TpcpMap& map, const ComplexMatrix& f, const DensityOperator& rho) {
  AttackReport r;
  r.kind = AttackKind::unitary;
  r.deception_probability = unitary_attack_probability(map, f, rho);
  r.attacker_payload = f;
  const DensityOperator alice = DensityOperator::repair(message_part(rho.matrix(), map.layout()));
  if (r.deception_probability > 1e-12) {
    r.message_fidelity = fidelity(alice, accepted_plaintext(map, f, rho));
  }
  const DerivedProjectors d = derived_projectors(map);
  r.diagnostics["commutator_valid"] = commutator(f, map.p_valid()).norm();
  r.diagnostics["commutator_pm"] = commutator(f, d.pm).norm();
  return r;
}

std::vector<ComplexMatrix> commutant_basis(const ComplexMatrix& p1, const ComplexMatrix& p2,
                                           double null_threshold) {
  require_square(p1, "commutant_basis p1");
  require_square(p2, "commutant_basis p2");
  if (p1.rows() != p2.rows()) throw DimensionError("commutant_basis: projector sizes differ");
  const Index d = p1.rows();

  // Real coordinates of a Hermitian X: diagonal entries, then the real and
  // imaginary parts of each strictly upper entry.
  std::vector<ComplexMatrix> coords;
  coords.reserve(static_cast<std::size_t>(d * d));
  for (Index a = 0; a < d; ++a) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(a, a) = 1.0;
    coords.push_back(std::move(e));
  }
  for (Index a = 0; a < d; ++a) {
    for (Index b = a + 1; b < d; ++b) {
      ComplexMatrix re = ComplexMatrix::Zero(d, d);
      re(a, b) = 1.0;
      re(b, a) = 1.0;
      coords.push_back(std::move(re));
      ComplexMatrix im = ComplexMatrix::Zero(d, d);
      im(a, b) = Complex(0.0, 1.0);
      im(b, a) = Complex(0.0, -1.0);
      coords.push_back(std::move(im));
    }
  }

  const Index n = d * d;
  Eigen::MatrixXd system(4 * n, n);
  for (Index k = 0; k < n; ++k) {
    const ComplexMatrix& x = coords[static_cast<std::size_t>(k)];
    const ComplexMatrix c1 = commutator(x, p1);
    const ComplexMatrix c2 = commutator(x, p2);
    const auto v1 = c1.reshaped();
    const auto v2 = c2.reshaped();
    system.col(k) << v1.real(), v1.imag(), v2.real(), v2.imag();
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::vector<ComplexMatrix> basis;
  for (Index k = 0; k < n; ++k) {
    if (sv(k) > null_threshold) continue;
    const auto t = svd.matrixV().col(k);
    ComplexMatrix x = ComplexMatrix::Zero(d, d);
    for (Index c = 0; c < n; ++c) x += t(c) * coords[static_cast<std::size_t>(c)];
    x = 0.5 * (x + x.adjoint());
    basis.push_back(x / x.norm());
  }
  return basis;
}

CommutingAttack commuting_attack(const TpcpMap& map, std::uint64_t seed, int max_draws) {
  const DerivedProjectors d = derived_projectors(map);
  const ComplexMatrix& pi = map.p_valid();
  const auto basis = commutant_basis(pi, d.pm);
  const ComplexMatrix w = map.layout().valid_isometry();
  const Index c = map.layout().dim_c();

  const Rng root(seed);
  for (int draw = 0; draw < max_draws; ++draw) {
    Rng rng = root.split(static_cast<std::uint64_t>(draw));
    ComplexMatrix h = ComplexMatrix::Zero(pi.rows(), pi.cols());
    for (const auto& x : basis) h += rng.normal() * x;
    h = 0.5 * (h + h.adjoint());
    ComplexMatrix f = hermitian_expi(h);

    const ComplexMatrix on_c = w.adjoint() * f * w;
    const Complex mean = on_c.trace() / static_cast<double>(c);
    const double disturbance = (on_c - mean * ComplexMatrix::Identity(c, c)).norm();

    CommutingAttack a;
    a.commutator_valid = commutator(f, pi).norm();
    a.commutator_pm = commutator(f, d.pm).norm();
    a.disturbance = disturbance;
    a.commutant_dimension = basis.size();
    a.draws = draw + 1;
    a.f = std::move(f);
    if (disturbance > kDisturbanceThreshold) return a;
  }
  throw ScalarCommutantError("commuting_attack: commutant of {P_i, P_M} (dimension " +
                             std::to_string(basis.size()) +
                             ") produced no message-disturbing unitary in " +
                             std::to_string(max_draws) + " draws");
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("fidelity: dimensions differ");
  const ComplexMatrix s = psd_sqrt(rho.matrix());
  const RealVector ev = hermitian_eigenvalues(s * sigma.matrix() * s);
  double root_sum = 0.0;
  for (Index k = 0; k < ev.size(); ++k) root_sum += std::sqrt(std::max(ev(k), 0.0));
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

}  // namespace qauth
