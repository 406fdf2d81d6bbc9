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

#include "qauth/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qauth/attacks.hpp"
#include "qauth/errors.hpp"

namespace qauth {

namespace {

constexpr double kInfeasible = -std::numeric_limits<double>::infinity();
// Gains below this are treated as roundoff, not progress.
constexpr double kMinGain = 1e-14;
constexpr int kSpotCheckEvery = 64;

template <typename E>
struct Named {
  E value;
  const char* name;
};

constexpr Named<Objective> kObjectives[] = {
    {Objective::forgery_single, "forgery_single"},
    {Objective::unitary_single, "unitary_single"},
    {Objective::forgery_double, "forgery_double"},
    {Objective::unitary_double_tag2, "unitary_double_tag2"},
};

constexpr Named<VariableKind> kVariables[] = {
    {VariableKind::density, "density"},
    {VariableKind::unitary, "unitary"},
    {VariableKind::block_unitaries, "block_unitaries"},
};

constexpr Named<AttackTarget> kTargets[] = {
    {AttackTarget::forgery_single, "forgery_single"},
    {AttackTarget::unitary_single, "unitary_single"},
    {AttackTarget::measurement_single, "measurement_single"},
    {AttackTarget::forgery_double, "forgery_double"},
    {AttackTarget::unitary_double_tag2, "unitary_double_tag2"},
};

template <typename E, std::size_t N>
const char* name_of(const Named<E> (&table)[N], E v) {
  for (const auto& e : table) {
    if (e.value == v) return e.name;
  }
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> parse_name(const Named<E> (&table)[N], const std::string& s) {
  for (const auto& e : table) {
    if (s == e.name) return e.value;
  }
  return std::nullopt;
}

struct Parameterization {
  VariableKind kind = VariableKind::density;
  Index dim = 0;
  Index rank = 0;
  Index blocks = 1;

  [[nodiscard]] Index size() const {
    switch (kind) {
      case VariableKind::density:
        return 2 * dim * rank;
      case VariableKind::unitary:
        return dim * dim;
      case VariableKind::block_unitaries:
        return blocks * dim * dim;
    }
    return 0;
  }

  /// Empty result marks an infeasible point.
  [[nodiscard]] std::vector<ComplexMatrix> decode(const std::vector<double>& x) const {
    switch (kind) {
      case VariableKind::density: {
        ComplexMatrix a(dim, rank);
        for (Index k = 0; k < dim * rank; ++k) {
          a(k % dim, k / dim) = Complex(x[static_cast<std::size_t>(2 * k)],
                                        x[static_cast<std::size_t>(2 * k + 1)]);
        }
        ComplexMatrix rho = a * a.adjoint();
        const double tr = rho.trace().real();
        if (!(tr > 1e-300) || !std::isfinite(tr)) return {};
        rho /= tr;
        return {0.5 * (rho + rho.adjoint())};
      }
      case VariableKind::unitary:
        return {hermitian_expi(hermitian_from_coords(x, dim))};
      case VariableKind::block_unitaries: {
        std::vector<ComplexMatrix> out;
        const auto per = static_cast<std::size_t>(dim * dim);
        for (Index b = 0; b < blocks; ++b) {
          std::span<const double> part(x.data() + static_cast<std::size_t>(b) * per, per);
          out.push_back(hermitian_expi(hermitian_from_coords(part, dim)));
        }
        return out;
      }
    }
    return {};
  }

  [[nodiscard]] std::vector<double> random_start(Rng& rng) const {
    std::vector<double> x(static_cast<std::size_t>(size()));
    for (auto& v : x) v = rng.normal();
    return x;
  }

  [[nodiscard]] std::string violation(const std::vector<ComplexMatrix>& v) const {
    if (v.empty()) return "degenerate density factor";
    if (kind == VariableKind::density) {
      Tolerances tol{1e-8, 1e-8, 1e-8};
      return density_violation(v.front(), tol);
    }
    for (const auto& u : v) {
      if (!is_unitary(u, 1e-8)) return "unitary variable drifted off the group";
    }
    return {};
  }
};

using VariableObjective = std::function<double(const std::vector<ComplexMatrix>&)>;

struct Setup {
  Parameterization param;
  VariableObjective objective;
};

const TpcpMap& need_map(const SchemeHandle& s, Objective o) {
  if (const auto* m = std::get_if<TpcpMap>(&s)) return *m;
  throw ValidationError(std::string("objective ") + to_string(o) + " needs a single TPCP map");
}

const DoubleTarget& need_double(const SchemeHandle& s, Objective o) {
  if (const auto* d = std::get_if<DoubleTarget>(&s)) return *d;
  throw ValidationError(std::string("objective ") + to_string(o) + " needs a double coding scheme");
}

Setup make_setup(const OptimizationProblem& pr) {
  Setup s;
  const Budget& b = pr.budget;
  const Rng messages = Rng(pr.seed).split(0x6d657373616765ULL);
  const int samples = std::max(1, pr.message_samples);

  auto density_param = [&b](Index dim) {
    Parameterization p;
    p.kind = VariableKind::density;
    p.dim = dim;
    p.rank = (b.density_rank > 0) ? std::min(b.density_rank, dim) : dim;
    return p;
  };

  switch (pr.objective) {
    case Objective::forgery_single: {
      const TpcpMap& map = need_map(pr.scheme, pr.objective);
      s.param = density_param(map.layout().dim_e());
      s.objective = [map](const std::vector<ComplexMatrix>& v) {
        return forgery_probability(map, v.front());
      };
      break;
    }
    case Objective::forgery_double: {
      const DoubleTarget& t = need_double(pr.scheme, pr.objective);
      s.param = density_param(t.layout.dim_e());
      s.objective = [t](const std::vector<ComplexMatrix>& v) {
        return double_forgery_probability(t.scheme, t.layout, v.front());
      };
      break;
    }
    case Objective::unitary_single: {
      const TpcpMap& map = need_map(pr.scheme, pr.objective);
      s.param.kind = VariableKind::unitary;
      s.param.dim = map.layout().dim_e();
      std::vector<DensityOperator> msgs;
      Rng rng = messages;
      for (int m = 0; m < samples; ++m) msgs.push_back(random_valid_density(map.layout(), rng));
      s.objective = [map, msgs](const std::vector<ComplexMatrix>& v) {
        double total = 0.0;
        for (const auto& rho : msgs) total += unitary_attack_probability(map, v.front(), rho);
        return total / static_cast<double>(msgs.size());
      };
      break;
    }
    case Objective::unitary_double_tag2: {
      const DoubleTarget& t = need_double(pr.scheme, pr.objective);
      const VariableKind kind = pr.variable.value_or(VariableKind::unitary);
      if (kind == VariableKind::density) {
        throw ValidationError("unitary_double_tag2 needs a unitary variable");
      }
      s.param.kind = kind;
      if (kind == VariableKind::unitary) {
        s.param.dim = t.layout.dim_e();
      } else {
        s.param.dim = t.layout.dim_e1();
        s.param.blocks = t.layout.dim_t2();
      }
      // Wires rho_E(k) per sampled message and outer key.
      Rng rng = messages;
      const ComplexMatrix v1 = t.layout.inner().basis_v().col(0);
      const DensityOperator tag = DensityOperator::pure(v1);
      std::vector<std::vector<ComplexMatrix>> wires;
      for (int m = 0; m < samples; ++m) {
        const DensityOperator rho_s = random_density(t.layout.dim_s(), rng);
        std::vector<ComplexMatrix> per_key;
        for (Index k = 0; k < t.scheme.k2(); ++k) {
          per_key.push_back(alice_send(t.scheme, t.layout, rho_s, tag, pr.inner_key, k).matrix());
        }
        wires.push_back(std::move(per_key));
      }
      const ComplexMatrix p2 = t.layout.p2();
      s.objective = [t, wires, p2, kind](const std::vector<ComplexMatrix>& v) {
        const ComplexMatrix f =
            (kind == VariableKind::unitary) ? v.front() : block_diagonal_attack(t.layout, v);
        double total = 0.0;
        for (const auto& per_key : wires) {
          for (Index k = 0; k < t.scheme.k2(); ++k) {
            const ComplexMatrix& u2 = t.scheme.outer().op(k);
            const ComplexMatrix g = u2.adjoint() * f;
            total += (p2 * g * per_key[static_cast<std::size_t>(k)] * g.adjoint()).trace().real();
          }
        }
        return total / static_cast<double>(wires.size() * static_cast<std::size_t>(t.scheme.k2()));
      };
      break;
    }
  }
  if (pr.variable && *pr.variable != s.param.kind) {
    throw ValidationError(std::string("objective ") + to_string(pr.objective) +
                          " does not take a " + to_string(*pr.variable) + " variable");
  }
  return s;
}

}  // namespace

const char* to_string(Objective o) { return name_of(kObjectives, o); }
const char* to_string(VariableKind v) { return name_of(kVariables, v); }
const char* to_string(AttackTarget t) { return name_of(kTargets, t); }
std::optional<Objective> objective_from_string(const std::string& s) {
  return parse_name(kObjectives, s);
}
std::optional<VariableKind> variable_kind_from_string(const std::string& s) {
  return parse_name(kVariables, s);
}
std::optional<AttackTarget> attack_target_from_string(const std::string& s) {
  return parse_name(kTargets, s);
}

ComplexMatrix hermitian_from_coords(std::span<const double> x, Index d) {
  if (static_cast<Index>(x.size()) != d * d) {
    throw DimensionError("hermitian_from_coords: need d^2 coordinates");
  }
  ComplexMatrix h(d, d);
  std::size_t k = 0;
  for (Index a = 0; a < d; ++a) h(a, a) = x[k++];
  for (Index a = 0; a < d; ++a) {
    for (Index b = a + 1; b < d; ++b) {
      const Complex z(x[k], x[k + 1]);
      k += 2;
      h(a, b) = z;
      h(b, a) = std::conj(z);
    }
  }
  return h;
}

AscentTrace ascend(const std::function<double(const std::vector<double>&)>& f,
                   std::vector<double> start, const Budget& budget) {
  AscentTrace t;
  std::vector<double> x = std::move(start);
  double fx = f(x);
  if (!std::isfinite(fx)) fx = kInfeasible;
  t.incumbent.push_back(fx);
  const std::size_t n = x.size();
  std::vector<double> grad(n);
  std::vector<double> trial(n);
  double step = budget.initial_step;

  for (int it = 0; it < budget.max_iterations; ++it) {
    double gnorm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = x[i];
      x[i] = xi + budget.fd_step;
      const double up = f(x);
      x[i] = xi - budget.fd_step;
      const double down = f(x);
      x[i] = xi;
      const double g = (up - down) / (2.0 * budget.fd_step);
      grad[i] = std::isfinite(g) ? g : 0.0;
      gnorm2 += grad[i] * grad[i];
    }
    const double gnorm = std::sqrt(gnorm2);
    if (!(gnorm > 0.0)) {
      t.converged = true;
      break;
    }

    bool improved = false;
    for (int h = 0; h <= budget.max_halvings; ++h) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + step * grad[i] / gnorm;
      const double ft = f(trial);
      if (std::isfinite(ft) && ft > fx + kMinGain) {
        x.swap(trial);
        fx = ft;
        step = std::min(2.0 * step, budget.max_step);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    ++t.iterations;
    if (!improved) {
      // Stationary to finite-difference resolution; the next iteration
      // would retrace this one exactly.
      step = budget.initial_step;
      t.converged = true;
      break;
    }
    t.incumbent.push_back(fx);
    const auto w = static_cast<std::size_t>(budget.convergence_window);
    if (w > 0 && t.incumbent.size() > w &&
        t.incumbent.back() - t.incumbent[t.incumbent.size() - 1 - w] < budget.convergence_tol) {
      t.converged = true;
      break;
    }
  }
  t.best_value = fx;
  t.best_point = std::move(x);
  return t;
}

OptimizationResult maximize(const OptimizationProblem& problem) {
  const Setup setup = make_setup(problem);
  const Parameterization& param = setup.param;
  const Budget& budget = problem.budget;
  if (budget.restarts < 1) throw ValidationError("maximize: need at least one restart");

  long evaluations = 0;
  auto f = [&](const std::vector<double>& x) {
    const auto v = param.decode(x);
    if (v.empty()) return kInfeasible;
    if (++evaluations % kSpotCheckEvery == 0) {
      if (auto why = param.violation(v); !why.empty()) {
        throw ValidationError("maximize: infeasible variable (" + why + ")");
      }
    }
    return setup.objective(v);
  };

  OptimizationResult r;
  r.variable = param.kind;
  r.parameter_count = param.size();
  r.best_value = kInfeasible;
  r.converged = true;
  const Rng root(problem.seed);
  std::vector<double> best_point;
  for (int k = 0; k < budget.restarts; ++k) {
    Rng rng = root.split(static_cast<std::uint64_t>(k) + 1);
    AscentTrace t = ascend(f, param.random_start(rng), budget);
    r.trace.push_back(t.best_value);
    r.iterations_used += t.iterations;
    r.converged = r.converged && t.converged;
    if (t.best_value > r.best_value) {
      r.best_value = t.best_value;
      best_point = std::move(t.best_point);
    }
  }
  if (!std::isfinite(r.best_value)) {
    throw Error("maximize: budget exhausted without a feasible evaluation");
  }
  r.best_variable = param.decode(best_point);
  if (auto why = param.violation(r.best_variable); !why.empty()) {
    throw ValidationError("maximize: best variable infeasible (" + why + ")");
  }
  return r;
}

Certificate certify(const SchemeHandle& scheme, AttackTarget target, const Budget& budget,
                    std::uint64_t seed, std::optional<VariableKind> variable,
                    int message_samples) {
  Certificate c;
  if (target == AttackTarget::measurement_single) {
    const auto* map = std::get_if<TpcpMap>(&scheme);
    if (map == nullptr) throw ValidationError("measurement certification needs a TPCP map");
    c.empirical_max = measurement_attack(*map, 64, seed).deception_probability;
    c.note = "no closed-form bound; key-guess probability from tag measurement";
    return c;
  }

  Objective objective = Objective::forgery_single;
  switch (target) {
    case AttackTarget::forgery_single: {
      const TpcpMap& map = need_map(scheme, objective);
      const DerivedProjectors d = derived_projectors(map);
      if (d.h.norm() <= 1e-9 && (d.gii - map.p_valid()).norm() <= 1e-9) {
        c.analytic_bound = 1.0;
        c.note = "H = 0 and G_ii = I on C: every forged state in C succeeds";
      } else {
        c.note = "no closed form for this map";
      }
      break;
    }
    case AttackTarget::unitary_single:
      objective = Objective::unitary_single;
      c.analytic_bound = 1.0;
      c.note = "attacks commuting with P_i and P_M always pass";
      break;
    case AttackTarget::forgery_double: {
      objective = Objective::forgery_double;
      const DoubleTarget& t = need_double(scheme, objective);
      c.analytic_bound = 1.0 / static_cast<double>(t.scheme.k2());
      c.note = "orthogonal outer subspaces cap forgery at 1/K2";
      break;
    }
    case AttackTarget::unitary_double_tag2:
      objective = Objective::unitary_double_tag2;
      c.analytic_bound = 1.0;
      c.note = "block-diagonal attacks always pass tag 2";
      break;
    case AttackTarget::measurement_single:
      break;
  }
  const OptimizationProblem pr{objective, scheme, variable, budget, seed, message_samples};
  c.search = maximize(pr);
  c.empirical_max = c.search->best_value;
  if (c.analytic_bound) c.gap = c.empirical_max - *c.analytic_bound;
  return c;
}

}  // namespace qauth
