// Copyright 2026 The sledsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLED_SWEEP_COMMANDS_HPP
#define SLED_SWEEP_COMMANDS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "sled/sweep/config.hpp"

namespace sled::sweep {

inline constexpr const char* kToolName = "sledsim";
inline constexpr const char* kToolVersion = "0.1.0";

/// One rendered output, relative to the output directory.
struct OutputFile {
  std::string name;
  std::string contents;
};

/// Fig. 2 style rate maps: rates_cp.csv and rates_bqp.csv (plus SVG). Uses the
/// first configured enhancement.
std::vector<OutputFile> cmd_rates(const RunConfig& cfg);

/// One dm_{t}_{enh}.json per (temperature, enhancement), plus SVG magnitude
/// maps.
std::vector<OutputFile> cmd_dm(const RunConfig& cfg);

/// fidelity.csv against the (|1,0> + |0,1>)/sqrt(2) target, plus an SVG
/// line plot.
std::vector<OutputFile> cmd_fidelity(const RunConfig& cfg);

struct RunSummary {
  std::filesystem::path output_dir;
  std::vector<std::string> files;  // written outputs, manifest excluded
  double seconds = 0.0;
};

/// Runs the configured command, writes every output atomically, then writes
/// manifest.json (config echo, defaults, version, duration, checksums).
RunSummary run(const RunConfig& cfg);

}  // namespace sled::sweep

#endif  // SLED_SWEEP_COMMANDS_HPP
