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

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qauth/claims.hpp"
#include "qauth/errors.hpp"
#include "qauth/report.hpp"
#include "qauth/runner.hpp"
#include "qauth/scenario.hpp"

namespace {

constexpr int kExitClaimFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;

struct Common {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out;
  bool deterministic = false;
  bool corrupt = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_corrupt) {
  cmd->add_option("--seed", c.seed, "override the experiment seed");
  cmd->add_option("--tol", c.tol, "override the tolerance of exact identities")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", c.out, "write the JSON report to this path");
  cmd->add_flag("--deterministic", c.deterministic, "threshold verdicts instead of sampled ones");
  if (with_corrupt) {
    cmd->add_flag("--corrupt", c.corrupt,
                  "negative control: Bob decodes with a mismatched scheme");
  }
}

qauth::RunOptions options_of(const Common& c) {
  qauth::RunOptions o;
  o.seed = c.seed;
  o.tol = c.tol;
  o.deterministic = c.deterministic;
  o.corrupt = c.corrupt;
  return o;
}

int emit(const qauth::Report& r, const std::string& out) {
  std::cout << qauth::render_table(r);
  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "qauth: cannot write " << out << "\n";
      return kExitValidation;
    }
    f << qauth::report_to_json(r).dump(2) << "\n";
  }
  return r.all_pass() ? 0 : kExitClaimFailure;
}

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("QAUTH_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (*end != '\0') throw qauth::ParseError(std::string("QAUTH_SEED is not an integer: ") + v);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and verifier for quantum message authentication with tagged encodings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("qauth ") + qauth::kVersion);

  Common run_opts, claim_opts, search_opts;
  std::string scenario_path, search_path, report_path, profile = "quick";

  CLI::App* run = app.add_subcommand("run", "execute a scenario file");
  run->add_option("file", scenario_path, "scenario JSON")->required();
  add_common(run, run_opts, true);

  CLI::App* claims = app.add_subcommand("verify-claims", "run the claim battery");
  claims->add_option("--profile", profile, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  add_common(claims, claim_opts, true);

  CLI::App* search = app.add_subcommand("attack-search", "optimize the scenario's attack target");
  search->add_option("file", search_path, "scenario JSON")->required();
  add_common(search, search_opts, false);

  CLI::App* show = app.add_subcommand("show", "print the claim table of a saved report");
  show->add_option("report", report_path, "report JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*run) {
      const qauth::Scenario s = qauth::load_scenario(scenario_path);
      return emit(qauth::run_scenario(s, options_of(run_opts)), run_opts.out);
    }
    if (*claims) {
      qauth::ClaimOptions o;
      o.profile = *qauth::claim_profile_from_string(profile);
      o.seed = claim_opts.seed.value_or(env_seed().value_or(qauth::kDefaultClaimSeed));
      if (claim_opts.tol) o.exact_tol = *claim_opts.tol;
      o.corrupt = claim_opts.corrupt;
      return emit(qauth::verify_claims(o), claim_opts.out);
    }
    if (*search) {
      const qauth::Scenario s = qauth::load_scenario(search_path);
      return emit(qauth::attack_search(s, options_of(search_opts)), search_opts.out);
    }
    if (*show) {
      std::ifstream in(report_path, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      std::cout << qauth::render_table(qauth::report_from_json(buf.str()));
      return 0;
    }
  } catch (const qauth::ParseError& e) {
    std::cerr << "qauth: parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "qauth: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
