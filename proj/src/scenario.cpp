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

#include "qauth/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace qauth {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::pair<ExperimentKind, const char*> kExperimentNames[] = {
    {ExperimentKind::honest_run, "honest_run"},
    {ExperimentKind::forgery, "forgery"},
    {ExperimentKind::measurement, "measurement"},
    {ExperimentKind::unitary, "unitary"},
    {ExperimentKind::double_forgery, "double_forgery"},
    {ExperimentKind::double_unitary, "double_unitary"},
    {ExperimentKind::optimize, "optimize"},
    {ExperimentKind::verify_claims, "verify_claims"},
};

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParseError("scenario " + (path.empty() ? std::string("/") : path) + ": " + what);
}

// Reads the keys of one JSON object and rejects any it did not consume.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) schema_error(path_, "expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  [[nodiscard]] std::string at(const std::string& key) const { return path_ + "/" + key; }

  void read(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) schema_error(at(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void read(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) schema_error(at(key), "expected a boolean");
      out = v->get<bool>();
    }
  }

  void read(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) schema_error(at(key), "expected a number");
      out = v->get<double>();
    }
  }

  void read(const std::string& key, std::uint64_t& out) {
    if (const json* v = find(key)) out = unsigned_at(*v, at(key));
  }

  void read(const std::string& key, Index& out) {
    if (const json* v = find(key)) out = static_cast<Index>(unsigned_at(*v, at(key)));
  }

  void read(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      const std::uint64_t u = unsigned_at(*v, at(key));
      if (u > 1000000000ULL) schema_error(at(key), "integer out of range");
      out = static_cast<int>(u);
    }
  }

  void read(const std::string& key, std::optional<Index>& out) {
    if (const json* v = find(key)) out = static_cast<Index>(unsigned_at(*v, at(key)));
  }

  template <class E, class F>
  void read_enum(const std::string& key, E& out, F parse) {
    if (const json* v = find(key)) {
      if (!v->is_string()) schema_error(at(key), "expected a string");
      auto parsed = parse(v->get<std::string>());
      if (!parsed) schema_error(at(key), "unknown value \"" + v->get<std::string>() + "\"");
      out = *parsed;
    }
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) schema_error(at(it.key()), "unknown key");
    }
  }

 private:
  static std::uint64_t unsigned_at(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) schema_error(path, "expected a non-negative integer");
    schema_error(path, "expected an integer");
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::optional<WeightScheme> weight_scheme_from_string(const std::string& s) {
  if (s == "uniform") return WeightScheme::uniform;
  if (s == "dirichlet") return WeightScheme::dirichlet;
  return std::nullopt;
}

const char* to_string(WeightScheme w) { return w == WeightScheme::uniform ? "uniform" : "dirichlet"; }

std::optional<VerdictMode> verdict_mode_from_string(const std::string& s) {
  if (s == "threshold") return VerdictMode::threshold;
  if (s == "sampled") return VerdictMode::sampled;
  return std::nullopt;
}

const char* to_string(VerdictMode m) { return m == VerdictMode::threshold ? "threshold" : "sampled"; }

ComplexMatrix matrix_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  Index cols = -1;
  ComplexMatrix m;
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string rp = path + "/" + std::to_string(r);
    if (!row.is_array()) schema_error(rp, "expected a row array");
    if (cols < 0) {
      cols = static_cast<Index>(row.size());
      if (cols == 0) schema_error(rp, "empty row");
      m.resize(rows, cols);
    } else if (static_cast<Index>(row.size()) != cols) {
      schema_error(rp, "ragged row");
    }
    for (Index c = 0; c < cols; ++c) {
      const json& z = row[static_cast<std::size_t>(c)];
      const std::string zp = rp + "/" + std::to_string(c);
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        schema_error(zp, "expected a [re, im] pair");
      }
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

Budget budget_at(const json& j, const std::string& path) {
  Budget b;
  ObjectReader r(j, path);
  r.read("max_iterations", b.max_iterations);
  r.read("restarts", b.restarts);
  r.read("fd_step", b.fd_step);
  r.read("initial_step", b.initial_step);
  r.read("max_step", b.max_step);
  r.read("max_halvings", b.max_halvings);
  r.read("convergence_window", b.convergence_window);
  r.read("convergence_tol", b.convergence_tol);
  r.read("density_rank", b.density_rank);
  r.finish();
  return b;
}

Scenario scenario_at(const json& j) {
  Scenario s;
  ObjectReader top(j, "");
  top.read("name", s.name);
  top.read("description", s.description);
  if (!top.find("experiment")) schema_error("/experiment", "missing required key");
  top.read_enum("experiment", s.experiment, experiment_from_string);
  top.read("seed", s.seed);
  top.read_enum("verdict_mode", s.verdict_mode, verdict_mode_from_string);

  if (const json* v = top.find("layout")) {
    ObjectReader r(*v, "/layout");
    r.read("dim_s", s.layout.dim_s);
    r.read("dim_t", s.layout.dim_t);
    r.read("dim_v", s.layout.dim_v);
    r.read("dim_t1", s.layout.dim_t1);
    r.read("dim_v1", s.layout.dim_v1);
    r.read("dim_t2", s.layout.dim_t2);
    r.finish();
  }

  if (const json* v = top.find("scheme")) {
    ObjectReader r(*v, "/scheme");
    r.read("seed", s.scheme.seed);
    r.read("operators", s.scheme.operators);
    r.read_enum("weights", s.scheme.weights, weight_scheme_from_string);
    r.read("kernel_free", s.scheme.kernel_free);
    r.read("attempts", s.scheme.attempts);
    r.read("k1", s.scheme.k1);
    r.read("k2", s.scheme.k2);
    r.read("randomize_outer", s.scheme.randomize_outer);
    if (const json* inl = r.find("inline")) {
      ObjectReader ir(*inl, "/scheme/inline");
      InlineMap m;
      const json* ops = ir.find("operators");
      if (!ops || !ops->is_array()) schema_error("/scheme/inline/operators", "expected an array");
      for (std::size_t k = 0; k < ops->size(); ++k) {
        m.operators.push_back(
            matrix_at((*ops)[k], "/scheme/inline/operators/" + std::to_string(k)));
      }
      if (const json* w = ir.find("weights")) {
        if (!w->is_array()) schema_error("/scheme/inline/weights", "expected an array");
        for (std::size_t k = 0; k < w->size(); ++k) {
          if (!(*w)[k].is_number()) {
            schema_error("/scheme/inline/weights/" + std::to_string(k), "expected a number");
          }
          m.weights.push_back((*w)[k].get<double>());
        }
      } else {
        m.weights.assign(m.operators.size(),
                         m.operators.empty() ? 0.0 : 1.0 / static_cast<double>(m.operators.size()));
      }
      ir.finish();
      s.scheme.inline_map = std::move(m);
    }
    r.finish();
  }

  if (const json* v = top.find("attack")) {
    ObjectReader r(*v, "/attack");
    r.read("samples", s.attack.samples);
    r.read("forged", s.attack.forged);
    r.read("p", s.attack.p);
    r.read("q", s.attack.q);
    if (r.find("target")) {
      AttackTarget t{};
      r.read_enum("target", t, attack_target_from_string);
      s.attack.target = t;
    }
    if (r.find("variable")) {
      VariableKind k{};
      r.read_enum("variable", k, variable_kind_from_string);
      s.attack.variable = k;
    }
    if (const json* b = r.find("budget")) s.attack.budget = budget_at(*b, "/attack/budget");
    r.read("message_samples", s.attack.message_samples);
    r.read("profile", s.attack.profile);
    r.finish();
  }

  if (const json* v = top.find("tolerances")) {
    ObjectReader r(*v, "/tolerances");
    r.read("herm", s.tolerances.herm);
    r.read("trace", s.tolerances.trace);
    r.read("psd", s.tolerances.psd);
    r.read("claim", s.claim_tol);
    r.finish();
  }
  top.finish();
  return s;
}

bool uses_double_layout(const Scenario& s) {
  if (s.experiment == ExperimentKind::optimize && s.attack.target) {
    return *s.attack.target == AttackTarget::forgery_double ||
           *s.attack.target == AttackTarget::unitary_double_tag2;
  }
  return is_double(s.experiment);
}

[[noreturn]] void invalid(const std::string& what) { throw ValidationError("scenario: " + what); }

}  // namespace

const char* to_string(ExperimentKind k) {
  for (const auto& [kind, name] : kExperimentNames) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<ExperimentKind> experiment_from_string(const std::string& s) {
  for (const auto& [kind, name] : kExperimentNames) {
    if (s == name) return kind;
  }
  return std::nullopt;
}

bool is_double(ExperimentKind k) {
  return k == ExperimentKind::honest_run || k == ExperimentKind::double_forgery ||
         k == ExperimentKind::double_unitary;
}

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points one past the offending character.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "scenario:" << line << ":" << col << " (byte " << e.byte << "): " << e.what();
    throw ParseError(os.str());
  }
  return scenario_at(j);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

ojson matrix_to_json(const ComplexMatrix& m) {
  ojson rows = ojson::array();
  for (Index r = 0; r < m.rows(); ++r) {
    ojson row = ojson::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) { return matrix_at(j, ""); }

ojson scenario_to_json(const Scenario& s) {
  ojson j;
  j["name"] = s.name;
  if (!s.description.empty()) j["description"] = s.description;
  j["experiment"] = to_string(s.experiment);
  j["seed"] = s.seed;
  j["verdict_mode"] = to_string(s.verdict_mode);

  ojson layout;
  layout["dim_s"] = s.layout.dim_s;
  if (s.layout.dim_t != 0 || s.layout.dim_v != 1) {
    layout["dim_t"] = s.layout.dim_t;
    layout["dim_v"] = s.layout.dim_v;
  }
  if (s.layout.dim_t1 != 0 || s.layout.dim_v1 != 1) {
    layout["dim_t1"] = s.layout.dim_t1;
    layout["dim_v1"] = s.layout.dim_v1;
  }
  if (s.layout.dim_t2 != 0) layout["dim_t2"] = s.layout.dim_t2;
  j["layout"] = std::move(layout);

  ojson scheme;
  scheme["seed"] = s.scheme.seed;
  scheme["operators"] = s.scheme.operators;
  scheme["weights"] = to_string(s.scheme.weights);
  scheme["kernel_free"] = s.scheme.kernel_free;
  scheme["attempts"] = s.scheme.attempts;
  scheme["k1"] = s.scheme.k1;
  scheme["k2"] = s.scheme.k2;
  scheme["randomize_outer"] = s.scheme.randomize_outer;
  if (s.scheme.inline_map) {
    ojson ops = ojson::array();
    for (const auto& u : s.scheme.inline_map->operators) ops.push_back(matrix_to_json(u));
    scheme["inline"] = {{"operators", std::move(ops)}, {"weights", s.scheme.inline_map->weights}};
  }
  j["scheme"] = std::move(scheme);

  ojson attack;
  attack["samples"] = s.attack.samples;
  attack["forged"] = s.attack.forged;
  if (s.attack.p) attack["p"] = *s.attack.p;
  if (s.attack.q) attack["q"] = *s.attack.q;
  if (s.attack.target) attack["target"] = to_string(*s.attack.target);
  if (s.attack.variable) attack["variable"] = to_string(*s.attack.variable);
  const Budget& b = s.attack.budget;
  attack["budget"] = {{"max_iterations", b.max_iterations},
                      {"restarts", b.restarts},
                      {"fd_step", b.fd_step},
                      {"initial_step", b.initial_step},
                      {"max_step", b.max_step},
                      {"max_halvings", b.max_halvings},
                      {"convergence_window", b.convergence_window},
                      {"convergence_tol", b.convergence_tol},
                      {"density_rank", b.density_rank}};
  attack["message_samples"] = s.attack.message_samples;
  attack["profile"] = s.attack.profile;
  j["attack"] = std::move(attack);

  j["tolerances"] = {{"herm", s.tolerances.herm},
                     {"trace", s.tolerances.trace},
                     {"psd", s.tolerances.psd},
                     {"claim", s.claim_tol}};
  return j;
}

void validate(const Scenario& s) {
  const LayoutSpec& l = s.layout;
  if (s.experiment != ExperimentKind::verify_claims) {
    if (s.experiment == ExperimentKind::optimize && !s.attack.target) {
      invalid("optimize needs attack.target");
    }
    if (uses_double_layout(s)) {
      if (l.dim_t1 == 0) invalid("double-encoding experiments need layout.dim_t1");
      if (l.dim_t != 0) invalid("layout.dim_t belongs to single-map experiments; use dim_t1");
      if (s.scheme.inline_map) invalid("inline operators apply to single-map experiments only");
      if (s.scheme.k1 < 1 || s.scheme.k2 < 1) invalid("k1 and k2 must be at least 1");
      const Index t2 = l.dim_t2 == 0 ? s.scheme.k2 : l.dim_t2;
      if (s.scheme.k2 > t2) invalid("k2 exceeds layout.dim_t2");
      if (t2 < 2) invalid("dim_t2 must be at least 2");
      if (s.attack.p && *s.attack.p >= s.scheme.k1) invalid("attack.p out of range [0, k1)");
      if (s.attack.q && *s.attack.q >= s.scheme.k2) invalid("attack.q out of range [0, k2)");
    } else {
      if (l.dim_t == 0) invalid("single-map experiments need layout.dim_t");
      if (l.dim_t1 != 0 || l.dim_t2 != 0) {
        invalid("layout.dim_t1/dim_t2 belong to double-encoding experiments");
      }
      if (!s.scheme.inline_map && s.scheme.operators < 1) invalid("scheme.operators must be >= 1");
      if (s.scheme.attempts < 1) invalid("scheme.attempts must be >= 1");
    }
  }
  if (s.attack.samples < 1) invalid("attack.samples must be >= 1");
  if (s.attack.message_samples < 1) invalid("attack.message_samples must be >= 1");
  static const std::set<std::string> kForged = {"random_valid", "random", "invalid"};
  if (!kForged.count(s.attack.forged)) {
    invalid("attack.forged must be random_valid, random or invalid");
  }
  if (s.attack.profile != "quick" && s.attack.profile != "full") {
    invalid("attack.profile must be quick or full");
  }
  const Budget& b = s.attack.budget;
  if (b.max_iterations < 1 || b.restarts < 1 || b.convergence_window < 1) {
    invalid("budget iterations, restarts and convergence_window must be >= 1");
  }
  if (!(b.fd_step > 0) || !(b.initial_step > 0) || !(b.max_step >= b.initial_step)) {
    invalid("budget steps must be positive with max_step >= initial_step");
  }
  if (!(s.claim_tol > 0) || !(s.tolerances.herm > 0) || !(s.tolerances.trace > 0) ||
      !(s.tolerances.psd > 0)) {
    invalid("tolerances must be positive");
  }
}

}  // namespace qauth
