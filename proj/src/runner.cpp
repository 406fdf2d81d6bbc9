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

#include "qauth/runner.hpp"

#include <algorithm>
#include <cmath>

#include "qauth/attacks.hpp"
#include "qauth/claims.hpp"
#include "qauth/codec.hpp"
#include "qauth/doubleproto.hpp"
#include "qauth/errors.hpp"
#include "qauth/optimizer.hpp"
#include "qauth/spaces.hpp"

namespace qauth {

using ojson = nlohmann::ordered_json;

namespace {

// Fixed streams off the scenario seed.
enum Stream : std::uint64_t { kStates = 1, kAttack = 2, kVerdicts = 3, kSearch = 4 };

struct Stats {
  double min = 1e300, max = -1e300, sum = 0.0;
  int n = 0;

  void add(double v) {
    min = std::min(min, v);
    max = std::max(max, v);
    sum += v;
    ++n;
  }

  [[nodiscard]] ojson json() const {
    return {{"min", min}, {"max", max}, {"mean", n ? sum / n : 0.0}, {"count", n}};
  }
};

class Runner {
 public:
  explicit Runner(const Scenario& s) : s_(s), root_(s.seed) {
    report_.command = "run";
    report_.seed = s.seed;
    report_.scenario = scenario_to_json(s);
  }

  Report run() {
    switch (s_.experiment) {
      case ExperimentKind::honest_run: honest_run(); break;
      case ExperimentKind::forgery: forgery(); break;
      case ExperimentKind::measurement: measurement(); break;
      case ExperimentKind::unitary: unitary(); break;
      case ExperimentKind::double_forgery: double_forgery(); break;
      case ExperimentKind::double_unitary: double_unitary(); break;
      case ExperimentKind::optimize: optimize(); break;
      case ExperimentKind::verify_claims: break;
    }
    return std::move(report_);
  }

  Report search() {
    report_.command = "attack-search";
    optimize();
    return std::move(report_);
  }

 private:
  void add(std::string id, std::string label, double value, double residual, double tol) {
    report_.claims.push_back(make_claim(std::move(id), std::move(label), value, residual, tol));
  }

  [[nodiscard]] double tol() const { return s_.claim_tol; }

  SpaceLayout single_layout() const {
    return SpaceLayout::canonical(s_.layout.dim_s, s_.layout.dim_t, s_.layout.dim_v);
  }

  DoubleLayout double_layout() const {
    const Index t2 = s_.layout.dim_t2 == 0 ? s_.scheme.k2 : s_.layout.dim_t2;
    return DoubleLayout::create(s_.layout.dim_s, s_.layout.dim_t1, s_.layout.dim_v1, t2);
  }

  TpcpMap build_map() {
    const SpaceLayout layout = single_layout();
    ojson info;
    if (s_.scheme.inline_map) {
      info["source"] = "inline";
      report_.results["map"] = info;
      return TpcpMap::create(layout, s_.scheme.inline_map->operators,
                             s_.scheme.inline_map->weights);
    }
    if (s_.scheme.kernel_free) {
      KernelFreeMap kf = build_kernel_free_map(layout, s_.scheme.operators, s_.scheme.seed,
                                               s_.scheme.attempts, s_.scheme.weights);
      info["source"] = "kernel_free";
      info["attempts_used"] = kf.attempts_used;
      report_.results["map"] = info;
      return std::move(kf.map);
    }
    info["source"] = "generated";
    report_.results["map"] = info;
    return build_reversible_map(layout, s_.scheme.operators, s_.scheme.seed, s_.scheme.weights);
  }

  void describe_map(const TpcpMap& map) {
    const MapCheck chk = check_map(map.layout(), map.operators(), map.weights());
    const DerivedProjectors d = derived_projectors(map);
    ojson& info = report_.results["map"];
    info["operators"] = map.size();
    info["weights"] = map.weights();
    info["max_operators"] = max_operator_count(map.layout());
    info["h_norm"] = d.h.norm();
    info["h_dagger_sigma_min"] = h_dagger_sigma_min(map);
    add("map.invariants", "sum d_j = 1, U_j unitary, P_i U_k^+ U_j P_i = delta_jk P_i",
        chk.reversibility_residual,
        std::max({chk.weight_sum_residual, chk.unitarity_residual, chk.reversibility_residual}),
        tol());
    double pn = 0.0;
    for (const auto& u : map.operators()) pn = std::max(pn, (map.p_n() * u * map.p_valid()).norm());
    add("map.pn_identity", "||P_N U_j P_i||_F = 0", pn, pn, tol());
  }

  DoubleCodingScheme build_double(const DoubleLayout& layout) {
    const DoubleCodingScheme scheme = build_double_scheme(layout, s_.scheme.k1, s_.scheme.k2,
                                                          s_.scheme.seed, s_.scheme.randomize_outer);
    double block = 0.0;
    for (Index k = 0; k < scheme.k2(); ++k) {
      block = std::max(block, outer_block_residual(layout, scheme.outer().op(k), k));
    }
    report_.results["scheme"] = {{"k1", scheme.k1()},
                                 {"k2", scheme.k2()},
                                 {"dim_t2", layout.dim_t2()},
                                 {"outer_block_residual", block}};
    return scheme;
  }

  DensityOperator forged_single(const SpaceLayout& layout, Rng& rng) const {
    if (s_.attack.forged == "random") return random_density(layout.dim_e(), rng);
    if (s_.attack.forged == "invalid") {
      const ComplexMatrix w = layout.invalid_isometry();
      return DensityOperator::repair(w * random_density(layout.dim_d(), rng).matrix() *
                                     w.adjoint());
    }
    return random_valid_density(layout, rng);
  }

  DensityOperator tag1_state(const DoubleLayout& layout) const {
    const ComplexVector v0 = layout.inner().basis_v().col(0);
    return DensityOperator::pure(v0);
  }

  void honest_run() {
    const DoubleLayout layout = double_layout();
    const DoubleCodingScheme scheme = build_double(layout);
    const DensityOperator t1 = tag1_state(layout);
    Rng states = root_.split(kStates);
    Rng verdicts = root_.split(kVerdicts);
    const VerdictMode mode = s_.verdict_mode;
    ojson runs = ojson::array();
    double worst_accept = 0.0, worst_fid = 0.0;
    int rejected = 0;
    for (Index p = 0; p < scheme.k1(); ++p) {
      if (s_.attack.p && *s_.attack.p != p) continue;
      for (Index q = 0; q < scheme.k2(); ++q) {
        if (s_.attack.q && *s_.attack.q != q) continue;
        Stats fid, accept;
        int accepted = 0;
        for (int n = 0; n < s_.attack.samples; ++n) {
          const DensityOperator rho_s = random_density(layout.dim_s(), states);
          const DensityOperator wire = alice_send(scheme, layout, rho_s, t1, p, q);
          const ProtocolTranscript tr = bob_receive(scheme, layout, wire, p, q, mode, &verdicts);
          accept.add(tr.acceptance_probability());
          if (tr.verdict == Verdict::accepted && tr.recovered) {
            ++accepted;
            fid.add(fidelity(*tr.recovered, rho_s));
          } else {
            ++rejected;
            fid.add(0.0);
          }
        }
        worst_accept = std::max(worst_accept, 1.0 - accept.min);
        worst_fid = std::max(worst_fid, 1.0 - fid.min);
        runs.push_back({{"p", p},
                        {"q", q},
                        {"accepted", accepted},
                        {"acceptance_probability", accept.json()},
                        {"fidelity", fid.json()}});
      }
    }
    report_.results["verdict_mode"] = mode == VerdictMode::threshold ? "threshold" : "sampled";
    report_.results["runs"] = std::move(runs);
    add("honest.accepted", "honest transcripts accepted with probability 1", 1.0 - worst_accept,
        std::max(worst_accept, static_cast<double>(rejected)), tol());
    add("honest.fidelity", "recovered plaintext fidelity 1", 1.0 - worst_fid, worst_fid, tol());
  }

  void forgery() {
    const TpcpMap map = build_map();
    describe_map(map);
    const DerivedProjectors d = derived_projectors(map);
    const ComplexMatrix& pi = map.p_valid();
    const double spectral = 0.5 * hermitian_eigenvalues(pi + d.pm + d.pn * pi * d.pn).maxCoeff();
    Rng rng = root_.split(kAttack);
    Stats pf;
    int cond_both = 0;
    for (int n = 0; n < s_.attack.samples; ++n) {
      const DensityOperator forged = forged_single(map.layout(), rng);
      pf.add(forgery_probability(map, forged));
      const ForgeryConditions c = forgery_conditions(map, forged, tol());
      cond_both += (c.cond_in_c && c.cond_r_in_c) ? 1 : 0;
    }
    report_.results["forgery"] = {{"forged", s_.attack.forged},
                                  {"probability", pf.json()},
                                  {"samples_meeting_both_conditions", cond_both},
                                  {"spectral_max", spectral}};
    add("forgery.bound", "P_f <= max over all forged states", pf.max,
        std::max(0.0, pf.max - spectral), tol());
    const bool broken = d.h.norm() <= tol() && (d.gii - pi).norm() <= tol();
    report_.results["forgery"]["broken"] = broken;
    if (broken && s_.attack.forged == "random_valid") {
      add("break.forgery", "P_f = 1 for forged rho in C when H = 0", pf.min, 1.0 - pf.min, tol());
    }
  }

  void measurement() {
    const TpcpMap map = build_map();
    describe_map(map);
    const std::uint64_t seed = root_.split(kAttack).next_u64();
    const MeasurementResult m = measurement_distinguishability(map, s_.attack.samples, seed);
    const AttackReport a = measurement_attack(map, s_.attack.samples, seed);
    report_.results["measurement"] = {{"perfectly_distinguishable", m.perfectly_distinguishable},
                                      {"max_valid_block_norm", m.max_valid_block_norm},
                                      {"worst_sampled_overlap", m.worst_overlap},
                                      {"exact_max_overlap", m.exact_max_overlap},
                                      {"deception_probability", a.deception_probability}};
    const bool zero_overlap = m.exact_max_overlap <= tol();
    add("measure.iff", "distinguishable iff every U^j_ii = 0", m.exact_max_overlap,
        zero_overlap == m.perfectly_distinguishable ? 0.0 : 1.0, 0.0);
    add("measure.sampled", "sampled overlap <= exact maximum", m.worst_overlap,
        std::max(0.0, m.worst_overlap - m.exact_max_overlap), tol());
  }

  void unitary() {
    const TpcpMap map = build_map();
    describe_map(map);
    CommutingAttack atk;
    try {
      atk = commuting_attack(map, root_.split(kAttack).next_u64());
    } catch (const ScalarCommutantError& e) {
      report_.results["unitary"] = {{"commuting_attack", "unavailable"}, {"reason", e.what()}};
      return;
    }
    Rng rng = root_.split(kStates);
    Stats pu, fid;
    for (int n = 0; n < s_.attack.samples; ++n) {
      const DensityOperator rho = embed_valid(random_density(map.layout().dim_c(), 1, rng),
                                              map.layout());
      pu.add(unitary_attack_probability(map, atk.f, rho));
      const DensityOperator sent =
          DensityOperator::repair(message_part(rho.matrix(), map.layout()));
      fid.add(fidelity(sent, accepted_plaintext(map, atk.f, rho)));
    }
    report_.results["unitary"] = {{"commutant_dimension", atk.commutant_dimension},
                                  {"draws", atk.draws},
                                  {"disturbance", atk.disturbance},
                                  {"commutator_valid", atk.commutator_valid},
                                  {"commutator_pm", atk.commutator_pm},
                                  {"deception_probability", pu.json()},
                                  {"plaintext_fidelity", fid.json()},
                                  {"attack", matrix_to_json(atk.f)}};
    const double comm = std::max(atk.commutator_valid, atk.commutator_pm);
    add("unitary.commutators", "||[F, P_i]||_F = ||[F, P_M]||_F = 0", comm, comm, tol());
    const double dev = std::max(std::abs(pu.min - 1.0), std::abs(pu.max - 1.0));
    add("unitary.deception", "P_u = 1 for commuting F", pu.min, dev, tol());
  }

  DensityOperator forged_double(const DoubleLayout& layout, Rng& rng) const {
    const SpaceLayout& outer = layout.outer();
    if (s_.attack.forged == "random") return random_density(layout.dim_e(), rng);
    if (s_.attack.forged == "invalid") {
      const ComplexMatrix w = outer.invalid_isometry();
      return DensityOperator::repair(w * random_density(outer.dim_d(), rng).matrix() *
                                     w.adjoint());
    }
    return random_valid_density(outer, rng);
  }

  void double_forgery() {
    const DoubleLayout layout = double_layout();
    const DoubleCodingScheme scheme = build_double(layout);
    const double cap = 1.0 / static_cast<double>(scheme.k2());
    Rng rng = root_.split(kAttack);
    Stats pf;
    for (int n = 0; n < s_.attack.samples; ++n) {
      pf.add(double_forgery_probability(scheme, layout, forged_double(layout, rng)));
    }
    report_.results["double_forgery"] = {
        {"forged", s_.attack.forged}, {"cap", cap}, {"probability", pf.json()}};
    add("cap.bound", "P_f <= 1/K2", pf.max, std::max(0.0, pf.max - cap), tol());
    if (s_.attack.forged == "random_valid") {
      add("cap.valid", "P_f = 1/K2 for forged rho in C", pf.max,
          std::max(std::abs(pf.max - cap), std::abs(pf.min - cap)), tol());
    }
  }

  void double_unitary() {
    const DoubleLayout layout = double_layout();
    const DoubleCodingScheme scheme = build_double(layout);
    const DensityOperator t1 = tag1_state(layout);
    Rng rng = root_.split(kAttack);
    Rng states = root_.split(kStates);
    Stats pass, residual, haar;
    for (int n = 0; n < s_.attack.samples; ++n) {
      std::vector<ComplexMatrix> blocks;
      for (Index j = 0; j < layout.dim_t2(); ++j) {
        blocks.push_back(random_unitary(layout.dim_e1(), rng));
      }
      const Index p = s_.attack.p.value_or(
          static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(scheme.k1())));
      const Index q = s_.attack.q.value_or(
          static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(scheme.k2())));
      const DensityOperator rho_s = random_density(layout.dim_s(), states);
      const DoubleUnitaryAttackResult r =
          double_unitary_attack(scheme, layout, blocks, rho_s, t1, p, q);
      pass.add(r.pass_prob_tag2);
      residual.add(r.reduction_residual);
      haar.add(tag2_pass_probability(scheme, layout, random_unitary(layout.dim_e(), rng), rho_s,
                                     t1, p));
    }
    report_.results["double_unitary"] = {{"block_diagonal_tag2_pass", pass.json()},
                                         {"reduction_residual", residual.json()},
                                         {"haar_tag2_pass", haar.json()}};
    add("reduction.tag2_pass", "block-diagonal F passes tag 2 with probability 1", pass.min,
        std::max(std::abs(pass.min - 1.0), std::abs(pass.max - 1.0)), tol());
    add("reduction.residual", "decoded E1 state = F_qq rho_E1(p) F_qq^+", residual.max,
        residual.max, tol());
  }

  void optimize() {
    if (!s_.attack.target) throw ValidationError("attack search needs attack.target");
    const AttackTarget target = *s_.attack.target;
    const bool dbl = target == AttackTarget::forgery_double ||
                     target == AttackTarget::unitary_double_tag2;
    std::optional<SchemeHandle> handle;
    std::optional<double> spectral;
    if (dbl) {
      const DoubleLayout layout = double_layout();
      handle.emplace(DoubleTarget{layout, build_double(layout)});
    } else {
      const TpcpMap map = build_map();
      describe_map(map);
      if (target == AttackTarget::forgery_single) {
        const DerivedProjectors d = derived_projectors(map);
        const ComplexMatrix& pi = map.p_valid();
        spectral = 0.5 * hermitian_eigenvalues(pi + d.pm + d.pn * pi * d.pn).maxCoeff();
      }
      handle.emplace(map);
    }
    const Certificate c = certify(*handle, target, s_.attack.budget,
                                  root_.split(kSearch).next_u64(), s_.attack.variable,
                                  s_.attack.message_samples);
    ojson out;
    out["target"] = to_string(target);
    out["empirical_max"] = c.empirical_max;
    if (c.analytic_bound) out["analytic_bound"] = *c.analytic_bound;
    if (c.gap) out["gap"] = *c.gap;
    if (spectral) out["spectral_max"] = *spectral;
    out["note"] = c.note;
    if (c.search) {
      out["variable"] = to_string(c.search->variable);
      out["parameter_count"] = c.search->parameter_count;
      out["iterations_used"] = c.search->iterations_used;
      out["converged"] = c.search->converged;
      out["restart_trace"] = c.search->trace;
      ojson best = ojson::array();
      for (const auto& m : c.search->best_variable) best.push_back(matrix_to_json(m));
      out["best_variable"] = std::move(best);
    }
    report_.results["search"] = std::move(out);
    if (c.analytic_bound) {
      add("search.sound", "optimized value <= analytic bound", c.empirical_max,
          std::max(0.0, c.empirical_max - *c.analytic_bound), 1e-6);
    }
    if (spectral) {
      add("search.spectral", "optimized P_f <= spectral maximum", c.empirical_max,
          std::max(0.0, c.empirical_max - *spectral), 1e-6);
    }
    add("search.range", "optimized value in [0, 1]", c.empirical_max,
        std::max({0.0, -c.empirical_max, c.empirical_max - 1.0}), 1e-6);
  }

  Scenario s_;
  Rng root_;
  Report report_;
};

}  // namespace

Scenario apply_overrides(Scenario s, const RunOptions& o) {
  if (o.seed) s.seed = *o.seed;
  if (o.tol) s.claim_tol = *o.tol;
  if (o.deterministic) s.verdict_mode = VerdictMode::threshold;
  return s;
}

Report run_scenario(const Scenario& scenario, const RunOptions& options) {
  const Scenario s = apply_overrides(scenario, options);
  validate(s);
  if (s.experiment == ExperimentKind::verify_claims) {
    ClaimOptions co;
    co.profile = *claim_profile_from_string(s.attack.profile);
    co.seed = s.seed;
    co.exact_tol = s.claim_tol;
    co.corrupt = options.corrupt;
    Report r = verify_claims(co);
    r.command = "run";
    r.scenario = scenario_to_json(s);
    return r;
  }
  return Runner(s).run();
}

Report attack_search(const Scenario& scenario, const RunOptions& options) {
  Scenario s = apply_overrides(scenario, options);
  if (!s.attack.target) throw ValidationError("attack-search needs attack.target");
  s.experiment = ExperimentKind::optimize;
  validate(s);
  return Runner(s).search();
}

}  // namespace qauth
