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

#include "qauth/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "qauth/errors.hpp"

namespace qauth {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

void require_on_e(const TpcpMap& map, const ComplexMatrix& m, const char* what) {
  if (m.rows() != map.layout().dim_e() || m.cols() != map.layout().dim_e()) {
    throw DimensionError(std::string(what) + ": operand is not an operator on E");
  }
}

}  // namespace

MapCheck check_map(const SpaceLayout& layout, const std::vector<ComplexMatrix>& operators,
                   const std::vector<double>& weights) {
  MapCheck c;
  c.count = static_cast<Index>(operators.size());
  c.bound = max_operator_count(layout);
  const Index n = layout.dim_e();
  auto fail = [&c](std::string why) {
    if (c.violation.empty()) c.violation = std::move(why);
  };
  if (operators.empty()) {
    c.violation = "no operators";
    return c;
  }
  if (weights.size() != operators.size()) {
    c.violation = "operator and weight counts differ";
    return c;
  }
  for (const auto& u : operators) {
    if (u.rows() != n || u.cols() != n) {
      c.violation = "operator is not " + std::to_string(n) + "x" + std::to_string(n);
      return c;
    }
    if (!u.allFinite()) {
      c.violation = "operator has non-finite entries";
      return c;
    }
  }

  double sum = 0.0;
  c.min_weight = weights.front();
  for (double w : weights) {
    sum += w;
    c.min_weight = std::min(c.min_weight, w);
  }
  c.weight_sum_residual = std::abs(sum - 1.0);
  if (!(c.min_weight >= kMinWeight)) fail("weight below " + fmt(kMinWeight));
  if (c.weight_sum_residual > 1e-10) fail("weights sum to " + fmt(sum));

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  for (const auto& u : operators) {
    c.unitarity_residual = std::max(c.unitarity_residual, (u.adjoint() * u - id).norm());
  }
  if (c.unitarity_residual > 1e-10) fail("operator not unitary (" + fmt(c.unitarity_residual) + ")");

  const ComplexMatrix pi = projector_valid(layout);
  for (std::size_t j = 0; j < operators.size(); ++j) {
    for (std::size_t k = 0; k < operators.size(); ++k) {
      ComplexMatrix lhs = pi * operators[k].adjoint() * operators[j] * pi;
      if (j == k) lhs -= pi;
      c.reversibility_residual = std::max(c.reversibility_residual, lhs.norm());
    }
  }
  if (c.reversibility_residual > 1e-9) {
    fail("reversibility condition violated (" + fmt(c.reversibility_residual) + ")");
  }
  if (c.count > c.bound) fail("operator count exceeds dim E / dim C");
  return c;
}

TpcpMap::TpcpMap(SpaceLayout layout, std::vector<ComplexMatrix> operators,
                 std::vector<double> weights)
    : layout_(std::move(layout)),
      operators_(std::move(operators)),
      weights_(std::move(weights)),
      p_valid_(projector_valid(layout_)) {
  const Index n = layout_.dim_e();
  ComplexMatrix pm = ComplexMatrix::Zero(n, n);
  for (const auto& u : operators_) pm += u * p_valid_ * u.adjoint();
  p_n_ = ComplexMatrix::Identity(n, n) - pm;
}

TpcpMap TpcpMap::create(SpaceLayout layout, std::vector<ComplexMatrix> operators,
                        std::vector<double> weights) {
  const MapCheck c = check_map(layout, operators, weights);
  if (!c.violation.empty()) throw ValidationError("TPCP map: " + c.violation);
  TpcpMap map(std::move(layout), std::move(operators), std::move(weights));
  if (!is_projector(map.p_n_, 1e-9)) throw ValidationError("TPCP map: P_N is not a projector");
  return map;
}

ComplexMatrix encode(const TpcpMap& map, const ComplexMatrix& rho) {
  require_on_e(map, rho, "encode");
  const Index n = map.layout().dim_e();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < map.size(); ++j) {
    const auto& u = map.operators()[j];
    out += map.weights()[j] * (u * rho * u.adjoint());
  }
  return out;
}

DensityOperator encode(const TpcpMap& map, const DensityOperator& rho) {
  ComplexMatrix m = encode(map, rho.matrix());
  m = 0.5 * (m + m.adjoint());
  return DensityOperator::from_matrix(std::move(m));
}

ComplexMatrix decode(const TpcpMap& map, const ComplexMatrix& sigma) {
  require_on_e(map, sigma, "decode");
  const ComplexMatrix& pi = map.p_valid();
  const ComplexMatrix& pn = map.p_n();
  ComplexMatrix out = pn * sigma * pn;
  for (const auto& u : map.operators()) {
    const ComplexMatrix back = u * pi;  // (P_i U^dagger)^dagger
    out += back.adjoint() * sigma * back;
  }
  return out;
}

DensityOperator decode(const TpcpMap& map, const DensityOperator& sigma) {
  ComplexMatrix m = decode(map, sigma.matrix());
  m = 0.5 * (m + m.adjoint());
  return DensityOperator::from_matrix(std::move(m));
}

DerivedProjectors derived_projectors(const TpcpMap& map) {
  const Index n = map.layout().dim_e();
  const ComplexMatrix& pi = map.p_valid();
  const ComplexMatrix po = ComplexMatrix::Identity(n, n) - pi;
  DerivedProjectors d;
  d.pn = map.p_n();
  d.pm = ComplexMatrix::Identity(n, n) - d.pn;
  if (!is_projector(d.pm, 1e-9)) throw ValidationError("derived_projectors: P_M is not a projector");
  d.h = pi * d.pm * po;
  d.gii = pi * d.pm * pi;
  d.goi = po * d.pm * po;
  return d;
}

Index max_operator_count(const SpaceLayout& layout) { return layout.dim_e() / layout.dim_c(); }

std::vector<ComplexMatrix> candidate_operators(const SpaceLayout& layout, Index count, Rng& rng) {
  if (count < 1) throw ValidationError("candidate_operators: count must be >= 1");
  const Index n = layout.dim_e();
  const Index c = layout.dim_c();
  const ComplexMatrix source = random_unitary(n, rng);

  ComplexMatrix domain(n, n);
  domain << layout.valid_isometry(), layout.invalid_isometry();

  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(count));
  for (Index g = 0; g < count; ++g) {
    ComplexMatrix images;
    if ((g + 1) * c <= n) {
      images = source.middleCols(g * c, c);
    } else {
      images = random_unitary(n, rng).leftCols(c);
    }
    ComplexMatrix target(n, n);
    target << images, orthonormal_complement(images);
    ops.push_back(target * domain.adjoint());
  }
  return ops;
}

std::vector<double> draw_weights(Index count, WeightScheme scheme, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(count), 1.0 / static_cast<double>(count));
  if (scheme == WeightScheme::uniform) return w;
  double sum = 0.0;
  for (auto& x : w) {
    x = std::max(-std::log(rng.uniform_open()), kMinWeight);  // Gamma(1) draws
    sum += x;
  }
  for (auto& x : w) x = std::max(x / sum, kMinWeight);
  sum = 0.0;
  for (double x : w) sum += x;
  for (auto& x : w) x /= sum;
  return w;
}

TpcpMap build_reversible_map(const SpaceLayout& layout, Index count, Rng& rng,
                             WeightScheme weights) {
  const Index bound = max_operator_count(layout);
  if (count < 1 || count > bound) {
    throw ValidationError("build_reversible_map: operator count " + std::to_string(count) +
                          " outside [1, " + std::to_string(bound) + "]");
  }
  auto ops = candidate_operators(layout, count, rng);
  auto w = draw_weights(count, weights, rng);
  return TpcpMap::create(layout, std::move(ops), std::move(w));
}

TpcpMap build_reversible_map(const SpaceLayout& layout, Index count, std::uint64_t seed,
                             WeightScheme weights) {
  Rng rng(seed);
  return build_reversible_map(layout, count, rng, weights);
}

double h_dagger_sigma_min(const TpcpMap& map) {
  const auto& layout = map.layout();
  if (layout.dim_c() > layout.dim_d()) return 0.0;
  const DerivedProjectors d = derived_projectors(map);
  const ComplexMatrix restricted =
      layout.invalid_isometry().adjoint() * d.h.adjoint() * layout.valid_isometry();
  Eigen::JacobiSVD<ComplexMatrix> svd(restricted);
  return svd.singularValues().minCoeff();
}

KernelFreeMap build_kernel_free_map(const SpaceLayout& layout, Index count, std::uint64_t seed,
                                    int attempts, WeightScheme weights) {
  const Rng root(seed);
  double best = 0.0;
  for (int a = 0; a < attempts; ++a) {
    Rng rng = root.split(static_cast<std::uint64_t>(a));
    TpcpMap map = build_reversible_map(layout, count, rng, weights);
    const double s = h_dagger_sigma_min(map);
    if (s > kKernelFreeThreshold) return {std::move(map), s, a + 1};
    best = std::max(best, s);
  }
  throw AttemptsExhausted("build_kernel_free_map: no map with sigma_min(H^dagger) > " +
                          fmt(kKernelFreeThreshold) + " in " + std::to_string(attempts) +
                          " attempts (best " + fmt(best) + ")");
}

UnitaryCodingSet UnitaryCodingSet::create(SpaceLayout layout, std::vector<ComplexMatrix> operators) {
  const Index n = layout.dim_e();
  if (operators.empty()) throw ValidationError("coding set: empty");
  for (const auto& u : operators) {
    if (u.rows() != n || u.cols() != n) throw DimensionError("coding set: operator is not on E");
    if (!is_unitary(u, 1e-10)) throw ValidationError("coding set: operator is not unitary");
  }
  if (operators.front() != ComplexMatrix::Identity(n, n)) {
    throw ValidationError("coding set: U(0) must be exactly the identity");
  }
  return UnitaryCodingSet(std::move(layout), std::move(operators));
}

const ComplexMatrix& UnitaryCodingSet::op(Index key) const {
  if (key < 0 || key >= static_cast<Index>(operators_.size())) {
    throw KeyRangeError("key " + std::to_string(key) + " outside coding set of size " +
                        std::to_string(operators_.size()));
  }
  return operators_[static_cast<std::size_t>(key)];
}

UnitaryCodingSet build_coding_set(const SpaceLayout& layout, Index size, std::uint64_t seed) {
  if (size < 1) throw ValidationError("build_coding_set: size must be >= 1");
  Rng rng(seed);
  const Index n = layout.dim_e();
  std::vector<ComplexMatrix> ops{ComplexMatrix::Identity(n, n)};
  for (Index k = 1; k < size; ++k) ops.push_back(random_unitary(n, rng));
  return UnitaryCodingSet::create(layout, std::move(ops));
}

DensityOperator apply_coding(const UnitaryCodingSet& set, Index key, const DensityOperator& rho) {
  const ComplexMatrix& u = set.op(key);
  if (rho.dim() != u.rows()) throw DimensionError("apply_coding: state is not on E");
  return conjugate(u, rho);
}

}  // namespace qauth
