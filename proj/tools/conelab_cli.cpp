// Copyright 2026 The conelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "conelab/checks.hpp"

using namespace conelab;

namespace {

constexpr int kPass = 0;
constexpr int kUsage = 1;
constexpr int kCheckFailed = 2;
constexpr int kInternal = 3;

double tolerance_from_env() {
  const char* raw = std::getenv("CONELAB_TOLERANCE");
  if (!raw || !*raw) return 0.0;
  char* end = nullptr;
  const double tol = std::strtod(raw, &end);
  if (*end != '\0' || !(tol > 0.0) || tol >= 1.0)
    throw ParseError("CONELAB_TOLERANCE must be a number in (0, 1), got '" + std::string(raw) + "'");
  return tol;
}

int emit(const Report& r, const std::string& format) {
  std::cout << (format == "structured" ? render_structured(r) : render_text(r));
  return r.overall() == Outcome::fail ? kCheckFailed : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks operational postulates of convex probabilistic theories."};
  app.require_subcommand(1);

  std::string theory, second, postulate = "all", format = "text";
  CheckOptions opts;
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}));
  };
  auto add_sampling = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opts.seed, "Random seed")->capture_default_str();
    cmd->add_option("--samples", opts.samples, "Samples per randomized sweep")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  const char* theory_help = "Builtin name (classical:D, quantum:D, gbit) or theory file";

  auto* validate_cmd = app.add_subcommand("validate", "Check the system invariants");
  validate_cmd->add_option("theory", theory, theory_help)->required();
  add_format(validate_cmd);

  auto* check_cmd = app.add_subcommand("check", "Run a postulate suite");
  check_cmd->add_option("theory", theory, theory_help)->required();
  check_cmd->add_option("--postulate", postulate, "Suite to run")
      ->check(CLI::IsMember(postulate_names()))
      ->capture_default_str();
  add_sampling(check_cmd);
  add_format(check_cmd);

  auto* compose_cmd = app.add_subcommand("compose", "Build and check a composite");
  compose_cmd->add_option("a", theory, theory_help)->required();
  compose_cmd->add_option("b", second, theory_help)->required();
  add_sampling(compose_cmd);
  add_format(compose_cmd);

  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Run the operator reconstruction");
  reconstruct_cmd->add_option("theory", theory, theory_help)->required();
  add_sampling(reconstruct_cmd);
  add_format(reconstruct_cmd);

  auto* report_cmd = app.add_subcommand("report", "Validation, every suite and the reconstruction");
  report_cmd->add_option("theory", theory, theory_help)->required();
  add_sampling(report_cmd);
  add_format(report_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kPass : kUsage;
  }

  try {
    const double tol = tolerance_from_env();
    const LoadedTheory t = load_theory(theory, tol);
    if (*validate_cmd) return emit(run_validate(t, theory), format);
    if (*check_cmd) return emit(run_check(t, theory, postulate, opts), format);
    if (*compose_cmd) {
      const LoadedTheory u = load_theory(second, tol);
      return emit(run_compose(t, u, theory + " " + second, opts), format);
    }
    if (*reconstruct_cmd) return emit(run_reconstruct(t, theory, opts), format);
    return emit(run_full_report(t, theory, opts), format);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
