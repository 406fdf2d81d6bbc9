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

#ifndef QAUTH_CLAIMS_HPP
#define QAUTH_CLAIMS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "qauth/report.hpp"

namespace qauth {

enum class ClaimProfile { quick, full };

std::optional<ClaimProfile> claim_profile_from_string(const std::string& s);
const char* to_string(ClaimProfile p);

inline constexpr std::uint64_t kDefaultClaimSeed = 20260101;

struct ClaimOptions {
  ClaimProfile profile = ClaimProfile::quick;
  std::uint64_t seed = kDefaultClaimSeed;
  /// Tolerance of every identity that holds exactly.
  double exact_tol = 1e-9;
  /// Negative control: Bob decodes with a map drawn from the wrong seed and
  /// the wrong outer key, so the round-trip and correctness rows must fail.
  bool corrupt = false;
};

/// Runs the fixed battery of structural, attack and protocol claims.
Report verify_claims(const ClaimOptions& options);

}  // namespace qauth

#endif  // QAUTH_CLAIMS_HPP
