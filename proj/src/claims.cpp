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

#include "qauth/claims.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qauth/attacks.hpp"
#include "qauth/codec.hpp"
#include "qauth/doubleproto.hpp"
#include "qauth/errors.hpp"
#include "qauth/optimizer.hpp"
#include "qauth/spaces.hpp"

namespace qauth {

using ojson = nlohmann::ordered_json;

namespace {

struct Sizes {
  int maps_per_config;
  int states;
  int overflow_seeds;
  int forged;
  int commuting_states;
  int honest_states;
  int random_forgeries;
  int reduction_blocks;
  Budget search;
};

Sizes sizes_for(ClaimProfile p) {
  if (p == ClaimProfile::full) {
    Budget b;
    b.restarts = 16;
    b.max_iterations = 2000;
    return {10, 20, 100, 20, 20, 3, 200, 20, b};
  }
  Budget b;
  b.restarts = 2;
  b.max_iterations = 300;
  return {2, 5, 20, 20, 20, 1, 40, 5, b};
}

struct MapConfig {
  Index dim_s, dim_t, dim_v, count;
};

constexpr std::array<MapConfig, 5> kMapConfigs{{
    {2, 2, 1, 1},
    {2, 2, 1, 2},
    {2, 4, 1, 2},
    {2, 4, 1, 3},
    {2, 4, 1, 4},
}};

constexpr std::array<std::array<Index, 3>, 5> kCountLayouts{{
    {2, 2, 1},
    {2, 4, 1},
    {2, 4, 2},
    {3, 3, 1},
    {2, 8, 1},
}};

constexpr std::array<Index, 3> kOuterSizes{2, 4, 8};

// Every image U_j P_i lands inside C-perp, so no U^j_ii survives.
TpcpMap orthogonal_image_map(const SpaceLayout& layout, Index count, Rng& rng) {
  const Index c = layout.dim_c();
  const Index n = layout.dim_e();
  const ComplexMatrix wperp = layout.invalid_isometry();
  const ComplexMatrix q = random_unitary(layout.dim_d(), rng);
  ComplexMatrix domain(n, n);
  domain << layout.valid_isometry(), wperp;
  std::vector<ComplexMatrix> ops;
  for (Index j = 0; j < count; ++j) {
    const ComplexMatrix y = wperp * q.middleCols(j * c, c);
    ComplexMatrix image(n, n);
    image << y, orthonormal_complement(y);
    ops.push_back(image * domain.adjoint());
  }
  return TpcpMap::create(layout, std::move(ops),
                         std::vector<double>(static_cast<std::size_t>(count), 1.0 / count));
}

// Same map left-multiplied by U_0^dagger, so the first operator is I.
TpcpMap with_identity(const TpcpMap& map) {
  const ComplexMatrix u0 = map.operators().front().adjoint();
  std::vector<ComplexMatrix> ops;
  for (const auto& u : map.operators()) ops.push_back(u0 * u);
  ops.front() = ComplexMatrix::Identity(u0.rows(), u0.cols());
  return TpcpMap::create(map.layout(), std::move(ops), map.weights());
}

DensityOperator random_pure_valid(const SpaceLayout& layout, Rng& rng) {
  return embed_valid(random_density(layout.dim_c(), 1, rng), layout);
}

DensityOperator tag_zero(Index dim) {
  ComplexVector e = ComplexVector::Zero(dim);
  e(0) = 1.0;
  return DensityOperator::pure(e);
}

class Battery {
 public:
  Battery(const ClaimOptions& o) : opt_(o), sz_(sizes_for(o.profile)), root_(o.seed) {}

  Report run() {
    report_.command = "verify-claims";
    report_.seed = opt_.seed;
    report_.scenario = {{"profile", to_string(opt_.profile)},
                        {"exact_tol", opt_.exact_tol},
                        {"corrupt", opt_.corrupt}};
    structural();
    count_bound();
    total_break();
    const TpcpMap defended = kernel_free();
    measurement();
    commuting(defended);
    double_correctness();
    forgery_cap();
    reduction();
    return std::move(report_);
  }

 private:
  void add(std::string id, std::string label, double value, double residual, double tol) {
    report_.claims.push_back(make_claim(std::move(id), std::move(label), value, residual, tol));
  }

  Rng stream(std::uint64_t section) const { return root_.split(section); }

  void structural() {
    Rng rng = stream(1);
    double invariants = 0.0, round_trip = 0.0, pn = 0.0;
    int maps = 0, states = 0;
    for (const auto& cfg : kMapConfigs) {
      const SpaceLayout layout = SpaceLayout::canonical(cfg.dim_s, cfg.dim_t, cfg.dim_v);
      for (int m = 0; m < sz_.maps_per_config; ++m) {
        const std::uint64_t seed = rng.next_u64();
        const TpcpMap map = build_reversible_map(layout, cfg.count, seed);
        const TpcpMap bob =
            opt_.corrupt ? build_reversible_map(layout, cfg.count, seed ^ 0x5eedULL) : map;
        const MapCheck chk = check_map(layout, map.operators(), map.weights());
        invariants = std::max({invariants, chk.weight_sum_residual, chk.unitarity_residual,
                               chk.reversibility_residual});
        for (const auto& u : map.operators()) {
          pn = std::max(pn, (map.p_n() * u * map.p_valid()).norm());
        }
        for (int s = 0; s < sz_.states; ++s) {
          const DensityOperator rho = random_valid_density(layout, rng);
          const ComplexMatrix back = decode(bob, encode(map, rho.matrix()));
          round_trip = std::max(round_trip, (back - rho.matrix()).norm());
          ++states;
        }
        ++maps;
      }
    }
    add("map.invariants", "sum d_j = 1, U_j unitary, P_i U_k^+ U_j P_i = delta_jk P_i", invariants,
        invariants, opt_.exact_tol);
    add("map.round_trip", "||R(E(rho)) - rho||_F, rho in C", round_trip, round_trip,
        opt_.exact_tol);
    add("map.pn_identity", "||P_N U_j P_i||_F = 0", pn, pn, opt_.exact_tol);
    report_.results["structural"] = {{"maps", maps}, {"states", states}};
  }

  void count_bound() {
    Rng rng = stream(2);
    int max_failures = 0, overflow_passes = 0, overflow_trials = 0;
    double min_overflow_residual = 1e300;
    for (const auto& l : kCountLayouts) {
      const SpaceLayout layout = SpaceLayout::canonical(l[0], l[1], l[2]);
      const Index jmax = max_operator_count(layout);
      try {
        build_reversible_map(layout, jmax, rng.next_u64());
      } catch (const Error&) {
        ++max_failures;
      }
      for (int s = 0; s < sz_.overflow_seeds; ++s) {
        Rng local = rng.split(static_cast<std::uint64_t>(s));
        const auto ops = candidate_operators(layout, jmax + 1, local);
        const std::vector<double> w(static_cast<std::size_t>(jmax + 1), 1.0 / (jmax + 1));
        const MapCheck chk = check_map(layout, ops, w);
        min_overflow_residual = std::min(min_overflow_residual, chk.reversibility_residual);
        if (chk.reversibility_residual <= opt_.exact_tol) ++overflow_passes;
        ++overflow_trials;
      }
      rng = rng.split(0xc0);
    }
    add("count.at_max", "J = dim E / dim C builds a reversible map", max_failures, max_failures,
        0.0);
    add("count.overflow", "J = dim E / dim C + 1 violates reversibility",
        static_cast<double>(overflow_trials - overflow_passes) / overflow_trials, overflow_passes,
        0.0);
    report_.results["count_bound"] = {{"layouts", kCountLayouts.size()},
                                      {"overflow_trials", overflow_trials},
                                      {"min_overflow_residual", min_overflow_residual}};
  }

  void total_break() {
    Rng rng = stream(3);
    const SpaceLayout layout = SpaceLayout::canonical(2, 2, 1);
    double h = 0.0, g = 0.0, pf = 0.0;
    for (int m = 0; m < sz_.maps_per_config; ++m) {
      const TpcpMap map = build_reversible_map(layout, 2, rng.next_u64());
      const DerivedProjectors d = derived_projectors(map);
      h = std::max(h, d.h.norm());
      g = std::max(g, (d.gii - map.p_valid()).norm());
      for (int s = 0; s < sz_.forged; ++s) {
        const DensityOperator forged = random_valid_density(layout, rng);
        pf = std::max(pf, std::abs(forgery_probability(map, forged) - 1.0));
      }
    }
    add("break.h_zero", "||H||_F = 0 at J = dim E / dim C", h, h, opt_.exact_tol);
    add("break.g_identity", "||G_ii - P_i||_F = 0 at J = dim E / dim C", g, g, opt_.exact_tol);
    add("break.forgery", "P_f = 1 for forged rho in C", 1.0 - pf, pf, opt_.exact_tol);
  }

  TpcpMap kernel_free() {
    const SpaceLayout layout = SpaceLayout::canonical(2, 4, 1);
    const KernelFreeMap kf = build_kernel_free_map(layout, 3, stream(4).next_u64(), 100);
    add("defense.kernel_free", "sigma_min(H^+) > 1e-6 within 100 attempts", kf.sigma_min,
        kf.sigma_min > kKernelFreeThreshold ? 0.0 : 1.0, 0.0);
    const Certificate cert =
        certify(kf.map, AttackTarget::forgery_single, sz_.search, stream(5).next_u64());
    const DerivedProjectors d = derived_projectors(kf.map);
    const ComplexMatrix& pi = kf.map.p_valid();
    const double oracle = 0.5 * hermitian_eigenvalues(pi + d.pm + d.pn * pi * d.pn).maxCoeff();
    add("defense.forgery", "max P_f <= 1 - 1e-4 on a kernel-free map", cert.empirical_max,
        std::max(0.0, cert.empirical_max - (1.0 - 1e-4)), 0.0);
    report_.results["kernel_free"] = {{"sigma_min", kf.sigma_min},
                                      {"attempts_used", kf.attempts_used},
                                      {"empirical_max", cert.empirical_max},
                                      {"spectral_max", oracle},
                                      {"restart_trace", cert.search->trace}};
    return kf.map;
  }

  void measurement() {
    Rng rng = stream(6);
    const SpaceLayout layout = SpaceLayout::canonical(2, 4, 1);
    const TpcpMap orth = orthogonal_image_map(layout, 3, rng);
    const MeasurementResult mo = measurement_distinguishability(orth, 64, rng.next_u64());
    add("measure.orthogonal", "tr(P_i E(rho)) = 0 when every U^j_ii = 0", mo.exact_max_overlap,
        std::max(mo.worst_overlap, mo.exact_max_overlap), opt_.exact_tol);
    add("measure.orthogonal_flag", "all U^j_ii = 0 reported distinguishable",
        mo.max_valid_block_norm, mo.perfectly_distinguishable ? 0.0 : 1.0, 0.0);
    const TpcpMap withi = with_identity(build_reversible_map(layout, 3, rng.next_u64()));
    const MeasurementResult mi = measurement_distinguishability(withi, 64, rng.next_u64());
    add("measure.identity", "map containing I is not distinguishable", mi.exact_max_overlap,
        mi.perfectly_distinguishable ? 1.0 : 0.0, 0.0);
  }

  void commuting(const TpcpMap& map) {
    Rng rng = stream(7);
    const CommutingAttack atk = commuting_attack(map, rng.next_u64());
    const double comm = std::max(atk.commutator_valid, atk.commutator_pm);
    add("unitary.commutators", "||[F, P_i]||_F = ||[F, P_M]||_F = 0", comm, comm, opt_.exact_tol);
    double pu = 0.0, min_fid = 1.0;
    for (int s = 0; s < sz_.commuting_states; ++s) {
      const DensityOperator rho = random_pure_valid(map.layout(), rng);
      pu = std::max(pu, std::abs(unitary_attack_probability(map, atk.f, rho) - 1.0));
      const DensityOperator sent =
          DensityOperator::repair(message_part(rho.matrix(), map.layout()));
      min_fid = std::min(min_fid, fidelity(sent, accepted_plaintext(map, atk.f, rho)));
    }
    add("unitary.deception", "P_u = 1 for commuting F", 1.0 - pu, pu, opt_.exact_tol);
    add("unitary.disturbance", "some accepted plaintext has fidelity <= 0.99", min_fid,
        std::max(0.0, min_fid - 0.99), 0.0);
    report_.results["commuting_attack"] = {{"commutant_dimension", atk.commutant_dimension},
                                           {"disturbance", atk.disturbance},
                                           {"draws", atk.draws},
                                           {"min_fidelity", min_fid}};
  }

  void double_correctness() {
    Rng rng = stream(8);
    for (const Index k2 : kOuterSizes) {
      const DoubleLayout layout = DoubleLayout::create(2, 2, 1, k2);
      const DoubleCodingScheme scheme = build_double_scheme(layout, 2, k2, rng.next_u64());
      const DensityOperator t1 = tag_zero(2);
      double worst = 0.0;
      int runs = 0;
      for (Index p = 0; p < 2; ++p) {
        for (Index q = 0; q < k2; ++q) {
          for (int s = 0; s < sz_.honest_states; ++s) {
            const DensityOperator rho_s = random_density(2, rng);
            const DensityOperator wire = alice_send(scheme, layout, rho_s, t1, p, q);
            const Index bob_q = opt_.corrupt ? (q + 1) % k2 : q;
            const ProtocolTranscript tr = bob_receive(scheme, layout, wire, p, bob_q);
            double miss = 1.0;
            if (tr.verdict == Verdict::accepted && tr.recovered) {
              miss = std::max(1.0 - tr.acceptance_probability(),
                              1.0 - fidelity(*tr.recovered, rho_s));
            }
            worst = std::max(worst, miss);
            ++runs;
          }
        }
      }
      const std::string k = std::to_string(k2);
      add("double.correctness.k2=" + k, "honest runs accepted, fidelity 1", 1.0 - worst, worst,
          opt_.exact_tol);
      report_.results["double_correctness"]["k2=" + k] = {{"runs", runs}};
    }
  }

  // Forged states mixing generic densities with ones aligned to the tag-2 structure.
  DensityOperator random_forgery(const DoubleLayout& layout, int kind, Rng& rng) {
    const Index e1 = layout.dim_e1();
    const Index t2 = layout.dim_t2();
    switch (kind % 4) {
      case 0:
        return random_density(layout.dim_e(), rng);
      case 1:
        return random_density(layout.dim_e(), 1, rng);
      case 2: {
        const auto level = static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(t2));
        ComplexMatrix tag = ComplexMatrix::Zero(t2, t2);
        tag(level, level) = 1.0;
        return DensityOperator::repair(tensor(random_density(e1, rng).matrix(), tag));
      }
      default: {
        // Equal superposition of |0> and one other tag-2 level.
        const auto level =
            1 + static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(t2 - 1));
        ComplexVector tag = ComplexVector::Zero(t2);
        tag(0) = 1.0;
        tag(level) = 1.0;
        const ComplexVector a = random_gaussian(e1, 1, rng).col(0);
        ComplexVector psi(e1 * t2);
        for (Index i = 0; i < e1; ++i) psi.segment(i * t2, t2) = a(i) * tag;
        return DensityOperator::pure(psi);
      }
    }
  }

  void forgery_cap() {
    Rng rng = stream(9);
    for (const Index k2 : kOuterSizes) {
      const DoubleLayout layout = DoubleLayout::create(2, 2, 1, k2);
      const DoubleCodingScheme scheme =
          build_double_scheme(layout, 2, k2, rng.next_u64(), /*randomize_free_blocks=*/true);
      const double cap = 1.0 / static_cast<double>(k2);
      double in_c = 0.0, excess = -1.0;
      for (int s = 0; s < sz_.forged; ++s) {
        const DensityOperator forged = random_valid_density(layout.outer(), rng);
        in_c = std::max(in_c, std::abs(double_forgery_probability(scheme, layout, forged) - cap));
      }
      for (int s = 0; s < sz_.random_forgeries; ++s) {
        const DensityOperator forged = random_forgery(layout, s, rng);
        excess = std::max(excess, double_forgery_probability(scheme, layout, forged) - cap);
      }
      const Certificate cert = certify(DoubleTarget{layout, scheme}, AttackTarget::forgery_double,
                                       sz_.search, rng.next_u64());
      const std::string k = std::to_string(k2);
      add("cap.valid.k2=" + k, "P_f = 1/K2 for forged rho in C", cap + in_c, in_c, opt_.exact_tol);
      add("cap.random.k2=" + k, "P_f <= 1/K2 for random forgeries", cap + excess,
          std::max(0.0, excess), opt_.exact_tol);
      add("cap.search.k2=" + k, "optimized P_f = 1/K2", cert.empirical_max, std::abs(*cert.gap),
          1e-3);
    }
  }

  void reduction() {
    Rng rng = stream(10);
    const Index k2 = 4;
    const DoubleLayout layout = DoubleLayout::create(2, 2, 1, k2);
    const DoubleCodingScheme scheme = build_double_scheme(layout, 2, k2, rng.next_u64(), true);
    const DensityOperator t1 = tag_zero(2);
    double pass = 0.0, residual = 0.0, haar_pass = 0.0;
    for (int s = 0; s < sz_.reduction_blocks; ++s) {
      std::vector<ComplexMatrix> blocks;
      for (Index j = 0; j < k2; ++j) blocks.push_back(random_unitary(layout.dim_e1(), rng));
      const auto p = static_cast<Index>(rng.next_u64() % 2);
      const auto q = static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(k2));
      const DensityOperator rho_s = random_density(2, rng);
      const DoubleUnitaryAttackResult r =
          double_unitary_attack(scheme, layout, blocks, rho_s, t1, p, q);
      pass = std::max(pass, std::abs(r.pass_prob_tag2 - 1.0));
      residual = std::max(residual, r.reduction_residual);
      haar_pass += tag2_pass_probability(scheme, layout, random_unitary(layout.dim_e(), rng),
                                         rho_s, t1, p);
    }
    add("reduction.tag2_pass", "block-diagonal F passes tag 2 with probability 1", 1.0 - pass,
        pass, opt_.exact_tol);
    add("reduction.residual", "decoded E1 state = F_qq rho_E1(p) F_qq^+", residual, residual,
        opt_.exact_tol);
    report_.results["reduction"] = {{"k2", k2},
                                    {"block_choices", sz_.reduction_blocks},
                                    {"mean_haar_tag2_pass", haar_pass / sz_.reduction_blocks}};
  }

  ClaimOptions opt_;
  Sizes sz_;
  Rng root_;
  Report report_;
};

}  // namespace

std::optional<ClaimProfile> claim_profile_from_string(const std::string& s) {
  if (s == "quick") return ClaimProfile::quick;
  if (s == "full") return ClaimProfile::full;
  return std::nullopt;
}

const char* to_string(ClaimProfile p) { return p == ClaimProfile::full ? "full" : "quick"; }

Report verify_claims(const ClaimOptions& options) { return Battery(options).run(); }

}  // namespace qauth
