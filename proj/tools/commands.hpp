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

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qls::cli {

enum class Format { kJson, kCsv };

struct Options {
  double tol = 1e-8;
  unsigned long seed = 0;
  std::string output;
  Format format = Format::kJson;
};

struct SweepOptions {
  double omega_min = 1e-2;
  double omega_max = 1e2;
  int count = 101;
};

// Each command returns the process exit status: 0 success, 1 analysis
// failure, 2 input or parse error.
int cmd_check(const std::string& system_file, const std::optional<std::string>& input_file,
              const Options& opts);
int cmd_tf(const std::string& system_file, const Options& opts);
int cmd_realize(const std::string& tf_file, const Options& opts);
int cmd_spectrum(const std::string& system_file, const std::optional<std::string>& input_file,
                 const SweepOptions& sweep, const Options& opts);
int cmd_identify(const std::string& in_file, int degree, const Options& opts);
int cmd_decompose(const std::string& system_file, const std::string& input_file,
                  const Options& opts);
int cmd_grid(const std::string& system_file, const std::optional<std::string>& input_file,
             const SweepOptions& sweep, const Options& opts);

}  // namespace qls::cli
