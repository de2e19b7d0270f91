// Copyright 2026 The sepmeas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sepmeas/harness.hpp"
#include "sepmeas/scenario_io.hpp"
#include "sepmeas/version.hpp"

namespace {

// Exit codes: 0 success, 1 verification/invariant failure, 2 usage/parse error.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct VerifyOptions {
  int trials = 1000;
  std::vector<int> dims{2, 2};
  std::vector<int> states;
  int outcomes = 4;
  std::uint64_t seed = 1;
  std::string output = "sepmeas_report.json";
};

int run_verify(const VerifyOptions& opt) {
  if (opt.dims.size() < 2) {
    std::cerr << "verify requires K >= 2 subsystems; pass --dims with at least two "
                 "comma-separated dimensions\n";
    return kExitUsage;
  }
  for (int d : opt.dims)
    if (d < 2) {
      std::cerr << "subsystem dimensions must be >= 2\n";
      return kExitUsage;
    }
  std::vector<int> states = opt.states;
  if (states.empty()) states.assign(opt.dims.size(), 2);
  if (states.size() != opt.dims.size()) {
    std::cerr << "--states must list one count per subsystem (" << opt.dims.size()
              << " expected)\n";
    return kExitUsage;
  }
  for (int n : states)
    if (n < 1) {
      std::cerr << "state counts must be >= 1\n";
      return kExitUsage;
    }
  if (opt.trials < 1 || opt.outcomes < 1) {
    std::cerr << "--trials and --outcomes must be >= 1\n";
    return kExitUsage;
  }

  sepmeas::GenConfig cfg;
  cfg.seed = opt.seed;
  cfg.dims = opt.dims;
  cfg.states_per_subsystem = states;
  cfg.povm_outcomes = opt.outcomes;

  const sepmeas::VerificationReport report = sepmeas::run_suite(cfg, opt.trials);
  sepmeas::write_json_file(opt.output, sepmeas::report_to_json(report, cfg, opt.trials));

  std::cout << report.trials << " trials, " << report.failures.size() << " failures\n";
  std::cout << "min slacks (bits):\n";
  for (const auto& [key, value] : report.min_slacks)
    std::cout << "  " << key << " = " << sepmeas::format_g12(value) << "\n";
  std::cout << "max residuals:\n";
  for (const auto& [key, value] : report.max_residuals)
    std::cout << "  " << key << " = " << sepmeas::format_g12(value) << "\n";
  std::cout << "gap > " << sepmeas::format_g12(sepmeas::check::gap_witness)
            << " bits on " << report.strict_gap_count() << "/" << report.trials
            << " trials\n";
  if (report.construction2_tuple_extension)
    std::cout << "note: construction 2 used tuple contexts (K > 2 extension)\n";
  std::cout << "report written to " << opt.output << "\n";
  std::cout << (report.passed() ? "PASS" : "FAIL") << "\n";
  return report.passed() ? kExitOk : kExitFailure;
}

int run_construct(const std::string& scenario_path, int method, int subsystem,
                  const std::string& output) {
  const sepmeas::Scenario s = sepmeas::read_scenario_file(scenario_path);
  if (subsystem < 1 || subsystem > s.num_subsystems()) {
    std::cerr << "--subsystem must be in 1.." << s.num_subsystems() << "\n";
    return kExitUsage;
  }
  const int k = subsystem - 1;
  const sepmeas::EffectivePovm e =
      method == 1 ? sepmeas::construction1(s, k) : sepmeas::construction2(s, k);
  const sepmeas::Json j = sepmeas::effective_povm_to_json(e);
  sepmeas::write_json_file(output, j);

  std::cout << "subsystem " << subsystem << ", construction " << method << ": "
            << e.povm.size() << " elements\n";
  if (e.chosen_context) {
    std::cout << "chosen context:";
    for (int a : *e.chosen_context) std::cout << " " << a;
    std::cout << "\n";
  }
  std::cout << "completeness residual = "
            << sepmeas::format_g12(j["completeness_residual"].get<double>()) << "\n";
  std::cout << "written to " << output << "\n";
  return kExitOk;
}

int run_info(const std::string& scenario_path, bool machine_readable,
             const std::string& output) {
  const sepmeas::Scenario s = sepmeas::read_scenario_file(scenario_path);
  const sepmeas::TrialResult t = sepmeas::run_trial(s);

  if (machine_readable) {
    const sepmeas::Json j = sepmeas::trial_to_json(t);
    if (output.empty())
      std::cout << j.dump(2) << "\n";
    else
      sepmeas::write_json_file(output, j);
  } else {
    std::cout << "I_joint = " << sepmeas::format_g12(t.I_joint) << " bits\n";
    for (int k = 0; k < t.num_subsystems; ++k) {
      std::cout << "subsystem " << k + 1
                << ": I_c1 = " << sepmeas::format_g12(t.I_c1[k])
                << ", I_c2 = " << sepmeas::format_g12(t.I_c2[k]) << " (context";
      for (int a : t.chosen_contexts[k]) std::cout << " " << a;
      std::cout << ")\n";
    }
    std::cout << "slacks (bits):\n";
    for (const auto& [key, value] : t.slacks)
      std::cout << "  " << key << " = " << sepmeas::format_g12(value) << "\n";
    if (!t.passed()) {
      std::cout << "violations:\n";
      for (const auto& v : t.violations) std::cout << "  " << v << "\n";
    }
  }
  return t.passed() ? kExitOk : kExitFailure;
}

int run_demo() {
  const sepmeas::QkdDemoResult r = sepmeas::run_qkd_demo();
  std::cout << r.summary;
  const double slack = r.trial.slacks.at("thm1");
  return slack >= sepmeas::check::info_slack ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(sepmeas::kToolName) +
               " - individual measurements constructed from a joint POVM, with "
               "information-inequality verification"};
  app.set_version_flag("--version", sepmeas::kVersion);
  app.require_subcommand(1);

  VerifyOptions vopt;
  CLI::App* verify = app.add_subcommand(
      "verify", "run a randomized verification suite and write a report");
  verify->add_option("--trials", vopt.trials, "number of scenarios");
  verify->add_option("--dims", vopt.dims, "subsystem dimensions")->delimiter(',');
  verify->add_option("--states", vopt.states, "states per subsystem")->delimiter(',');
  verify->add_option("--outcomes", vopt.outcomes, "joint POVM outcomes");
  verify->add_option("--seed", vopt.seed, "base seed; trial i uses seed + i");
  verify->add_option("--output", vopt.output, "report file path");

  std::string scenario_path, construct_out = "effective_povm.json";
  int method = 1, subsystem = 1;
  CLI::App* construct = app.add_subcommand(
      "construct", "build a per-subsystem POVM from a scenario file");
  construct->add_option("scenario", scenario_path, "scenario file")->required();
  construct->add_option("--method", method, "1 or 2")->check(CLI::Range(1, 2));
  construct->add_option("--subsystem", subsystem, "subsystem number, 1-based");
  construct->add_option("--output", construct_out, "output file path");

  std::string info_path, info_out;
  bool machine_readable = false;
  CLI::App* info = app.add_subcommand(
      "info", "print information quantities and slacks for a scenario file");
  info->add_option("scenario", info_path, "scenario file")->required();
  info->add_flag("--machine-readable", machine_readable, "emit JSON");
  info->add_option("--output", info_out, "JSON output path (with --machine-readable)");

  CLI::App* demo = app.add_subcommand(
      "qkd-demo", "BB84 x BB84 against a Bell-basis joint measurement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return run_verify(vopt);
    if (*construct) return run_construct(scenario_path, method, subsystem, construct_out);
    if (*info) return run_info(info_path, machine_readable, info_out);
    if (*demo) return run_demo();
  } catch (const sepmeas::ScenarioParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const sepmeas::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
