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

#include "qauth/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qauth/scenario.hpp"

namespace qauth {

using ojson = nlohmann::ordered_json;

ClaimRow make_claim(std::string id, std::string label, double value, double residual,
                    double tolerance) {
  ClaimRow row{std::move(id), std::move(label), value, residual, tolerance, false};
  row.pass = std::isfinite(residual) && residual <= tolerance;
  return row;
}

bool Report::all_pass() const {
  for (const auto& c : claims) {
    if (!c.pass) return false;
  }
  return true;
}

ojson report_to_json(const Report& r) {
  ojson j;
  j["tool"] = {{"name", "qauth"}, {"version", kVersion}};
  j["command"] = r.command;
  j["seed"] = r.seed;
  if (!r.scenario.is_null()) j["scenario"] = r.scenario;
  j["results"] = r.results;
  ojson rows = ojson::array();
  std::size_t passed = 0;
  for (const auto& c : r.claims) {
    rows.push_back({{"id", c.id},
                    {"label", c.label},
                    {"value", c.value},
                    {"residual", c.residual},
                    {"tolerance", c.tolerance},
                    {"pass", c.pass}});
    passed += c.pass ? 1 : 0;
  }
  j["claims"] = std::move(rows);
  j["summary"] = {{"claims", r.claims.size()}, {"passed", passed}, {"all_pass", r.all_pass()}};
  return j;
}

Report report_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  try {
    Report r;
    r.command = j.value("command", std::string());
    r.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("scenario")) r.scenario = j["scenario"];
    if (j.contains("results")) r.results = j["results"];
    for (const auto& c : j.at("claims")) {
      // JSON has no encoding for non-finite reals; they come back as null.
      auto real = [&](const char* key) {
        const auto& v = c.at(key);
        return v.is_null() ? std::nan("") : v.get<double>();
      };
      r.claims.push_back(ClaimRow{c.at("id").get<std::string>(), c.at("label").get<std::string>(),
                                  real("value"), real("residual"), real("tolerance"),
                                  c.at("pass").get<bool>()});
    }
    return r;
  } catch (const ojson::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string render_table(const Report& r) {
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-30s %-4s %14s %12s %10s  %s\n", "claim", "ok", "value",
                "residual", "tol", "label");
  os << line;
  os << std::string(100, '-') << "\n";
  for (const auto& c : r.claims) {
    std::snprintf(line, sizeof line, "%-30s %-4s %14.8g %12.3e %10.1e  %s\n", c.id.c_str(),
                  c.pass ? "PASS" : "FAIL", c.value, c.residual, c.tolerance, c.label.c_str());
    os << line;
  }
  std::size_t passed = 0;
  for (const auto& c : r.claims) passed += c.pass ? 1 : 0;
  os << std::string(100, '-') << "\n";
  os << passed << "/" << r.claims.size() << " claims passed (seed " << r.seed << ")\n";
  return os.str();
}

}  // namespace qauth
