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

#ifndef QAUTH_REPORT_HPP
#define QAUTH_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qauth {

inline constexpr const char* kVersion = "1.0.0";

/// One checked claim. `pass` is residual <= tolerance.
struct ClaimRow {
  std::string id;
  /// The identity or bound being checked, in formula form.
  std::string label;
  double value = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

ClaimRow make_claim(std::string id, std::string label, double value, double residual,
                    double tolerance);

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::ordered_json scenario;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<ClaimRow> claims;

  [[nodiscard]] bool all_pass() const;
};

nlohmann::ordered_json report_to_json(const Report& r);
/// Throws ParseError on a malformed report.
Report report_from_json(const std::string& text);
/// Fixed-width claim table.
std::string render_table(const Report& r);

}  // namespace qauth

#endif  // QAUTH_REPORT_HPP
