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

#ifndef QAUTH_SCENARIO_HPP
#define QAUTH_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qauth/codec.hpp"
#include "qauth/errors.hpp"
#include "qauth/optimizer.hpp"

namespace qauth {

enum class ExperimentKind {
  honest_run,
  forgery,
  measurement,
  unitary,
  double_forgery,
  double_unitary,
  optimize,
  verify_claims,
};

const char* to_string(ExperimentKind k);
std::optional<ExperimentKind> experiment_from_string(const std::string& s);
/// Experiments on the double-encoding protocol (need dim_t1 rather than dim_t).
bool is_double(ExperimentKind k);

/// Zero marks an unset dimension.
struct LayoutSpec {
  Index dim_s = 2;
  Index dim_t = 0;
  Index dim_v = 1;
  Index dim_t1 = 0;
  Index dim_v1 = 1;
  /// Defaults to K2 when unset.
  Index dim_t2 = 0;

  friend bool operator==(const LayoutSpec&, const LayoutSpec&) = default;
};

struct InlineMap {
  std::vector<ComplexMatrix> operators;
  std::vector<double> weights;

  friend bool operator==(const InlineMap&, const InlineMap&) = default;
};

struct SchemeSpec {
  std::uint64_t seed = 1;
  /// Single-map experiments.
  Index operators = 2;
  WeightScheme weights = WeightScheme::uniform;
  bool kernel_free = false;
  int attempts = 100;
  std::optional<InlineMap> inline_map;
  /// Double-encoding experiments.
  Index k1 = 2;
  Index k2 = 2;
  bool randomize_outer = false;

  friend bool operator==(const SchemeSpec&, const SchemeSpec&) = default;
};

struct AttackSpec {
  int samples = 20;
  /// forgery / double_forgery: random_valid | random | invalid
  std::string forged = "random_valid";
  std::optional<Index> p;
  std::optional<Index> q;
  /// optimize
  std::optional<AttackTarget> target;
  std::optional<VariableKind> variable;
  Budget budget;
  int message_samples = 4;
  /// verify_claims: quick | full
  std::string profile = "quick";

  friend bool operator==(const AttackSpec&, const AttackSpec&) = default;
};

struct Scenario {
  std::string name;
  std::string description;
  ExperimentKind experiment = ExperimentKind::honest_run;
  std::uint64_t seed = 1;
  LayoutSpec layout;
  SchemeSpec scheme;
  AttackSpec attack;
  Tolerances tolerances;
  /// Tolerance for identities that hold exactly (probability 1, zero residuals).
  double claim_tol = 1e-9;
  /// threshold | sampled
  VerdictMode verdict_mode = VerdictMode::threshold;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Malformed JSON or a schema violation (unknown key, wrong type).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Throws ParseError with a line:column (syntax) or JSON-pointer (schema) position.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
nlohmann::ordered_json scenario_to_json(const Scenario& s);
/// Throws ValidationError when parameters are mutually inconsistent.
void validate(const Scenario& s);

nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace qauth

#endif  // QAUTH_SCENARIO_HPP
