// Copyright 2026 The qlsid Authors
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

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace qls::cli;
  CLI::App app{"Quantum linear system identification toolkit"};
  app.require_subcommand(1);

  Options opts;
  std::string format = "json";
  app.add_option("--tol", opts.tol, "Structural tolerance")->capture_default_str();
  app.add_option("--seed", opts.seed, "Seed for randomized probes")->capture_default_str();
  app.add_option("-o,--output", opts.output, "Output path (stdout if omitted)");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  SweepOptions sweep;
  auto add_sweep = [&sweep](CLI::App* sub) {
    sub->add_option("--omega-min", sweep.omega_min)->capture_default_str();
    sub->add_option("--omega-max", sweep.omega_max)->capture_default_str();
    sub->add_option("--count", sweep.count)->capture_default_str();
  };

  std::string system_file, input_file, in_file;
  int degree = 8;

  CLI::App* check = app.add_subcommand("check", "Structural and stationary predicates");
  check->add_option("system", system_file)->required();
  check->add_option("--input", input_file, "Gaussian input JSON");

  CLI::App* tf = app.add_subcommand("tf", "Rational transfer function of a system");
  tf->add_option("system", system_file)->required();

  CLI::App* realize = app.add_subcommand("realize", "Physical realization of a transfer function");
  realize->add_option("tf", in_file)->required();

  CLI::App* spectrum = app.add_subcommand("spectrum", "Power spectrum components or sweep");
  spectrum->add_option("system", system_file)->required();
  spectrum->add_option("--input", input_file, "Gaussian input JSON");
  add_sweep(spectrum);

  CLI::App* identify = app.add_subcommand("identify", "Transfer function from a power spectrum");
  identify->add_option("spectrum", in_file, "Spectrum JSON or sampled CSV")->required();
  identify->add_option("--degree", degree, "Pole bound for CSV fitting")->capture_default_str();

  CLI::App* decompose = app.add_subcommand("decompose", "Pure/mixed decomposition");
  decompose->add_option("system", system_file)->required();
  decompose->add_option("--input", input_file, "Gaussian input JSON")->required();

  CLI::App* grid = app.add_subcommand("grid", "Frequency sweep as CSV");
  grid->add_option("system", system_file)->required();
  grid->add_option("--input", input_file, "Gaussian input JSON");
  add_sweep(grid);

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opts.format = format == "csv" ? Format::kCsv : Format::kJson;
  const std::optional<std::string> input =
      input_file.empty() ? std::nullopt : std::optional<std::string>(input_file);

  if (*check) return cmd_check(system_file, input, opts);
  if (*tf) return cmd_tf(system_file, opts);
  if (*realize) return cmd_realize(in_file, opts);
  if (*spectrum) return cmd_spectrum(system_file, input, sweep, opts);
  if (*identify) return cmd_identify(in_file, degree, opts);
  if (*decompose) return cmd_decompose(system_file, input_file, opts);
  if (*grid) return cmd_grid(system_file, input, sweep, opts);
  return 2;
}
