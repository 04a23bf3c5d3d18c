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

#ifndef SLED_SWEEP_CONFIG_HPP
#define SLED_SWEEP_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sled/bcs_physics.hpp"
#include "sled/oam_modes.hpp"
#include "sled/pair_state.hpp"
#include "sled/spectral_rates.hpp"

// Run configuration.
//
// File format: one `key = value` per line, grouped under `[section]`
// headers; `#` starts a comment. Keys are addressed as `section.key` on the
// command line (`--set grid.k_nodes=8192`). Lists are comma separated; a
// numeric list may also be written as a range `start:step:stop`.

namespace sled::sweep {

enum class Command { rates, dm, fidelity };

Command parse_command(const std::string& name);
std::string to_string(Command c);

/// Raw `section.key -> value` text after parsing, with source positions.
struct ConfigEntry {
  std::string value;
  int line = 0;  // 0 for command-line overrides
};
using ConfigEntries = std::map<std::string, ConfigEntry>;

/// Parses the text format. Throws ConfigError with "line:column" on syntax
/// errors and duplicate keys. Does not validate key names.
ConfigEntries parse_config_text(const std::string& text,
                                const std::string& origin = "<config>");

struct QubitPolar {
  double mag_a = 1.0;
  double phase_a_pi = 0.0;
  double mag_b = 0.0;
  double phase_b_pi = 0.0;
};

struct RunConfig {
  Command command = Command::rates;
  std::string material_preset = "GaAs-Nb";
  JunctionParams junction;
  double electron_density_cm2 = 1e12;
  double hole_density_cm2 = 1e12;
  double band_gap_mev = 1519.0;
  AnnulusGeometry geometry;
  std::vector<double> enhancements;
  SpectralGrid grid;
  int winding = 2;
  std::vector<int> oam_labels;  // detected l values; pairs are all combinations
  double dm_detuning = 5.0;
  std::optional<QubitPolar> qubit;
  std::string output_dir = "out";
  std::vector<std::string> formats;
  unsigned threads = 0;
  bool log_scale = false;
  bool svg_all_pairs = false;

  /// Every recognised key with the value in effect (explicit or default).
  std::map<std::string, std::string> resolved;
  /// Keys that were filled from defaults.
  std::vector<std::string> defaulted;

  bool wants(const std::string& format) const;
  OamPairBasis basis() const { return OamPairBasis::from_labels(oam_labels); }
  std::optional<QubitState> qubit_state() const;
};

/// Resolves entries (file values, then overrides) into a validated config.
/// Unknown keys and invariant violations throw ConfigError naming the key.
RunConfig resolve_config(Command command, const ConfigEntries& file_entries,
                         const std::vector<std::string>& overrides = {});

/// Reads and resolves a config file. Overrides are `section.key=value`.
RunConfig load_config(const std::string& path, Command command,
                      const std::vector<std::string>& overrides = {});

/// Parses "a, b, c" or "start:step:stop" into numbers.
std::vector<double> parse_number_list(const std::string& key,
                                      const std::string& text);

}  // namespace sled::sweep

#endif  // SLED_SWEEP_CONFIG_HPP
