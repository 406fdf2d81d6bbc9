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

#ifndef QAUTH_RUNNER_HPP
#define QAUTH_RUNNER_HPP

#include <cstdint>
#include <optional>

#include "qauth/report.hpp"
#include "qauth/scenario.hpp"

namespace qauth {

struct RunOptions {
  /// Replaces the scenario seed.
  std::optional<std::uint64_t> seed;
  /// Replaces the claim tolerance.
  std::optional<double> tol;
  /// Forces threshold verdicts.
  bool deterministic = false;
  /// Negative control for verify_claims scenarios.
  bool corrupt = false;
};

Scenario apply_overrides(Scenario s, const RunOptions& o);

/// Validates, then executes the scenario's experiment. Library errors
/// (ValidationError, DimensionError, ...) propagate.
Report run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Runs the optimizer on attack.target whatever the experiment kind.
Report attack_search(const Scenario& scenario, const RunOptions& options = {});

}  // namespace qauth

#endif  // QAUTH_RUNNER_HPP
