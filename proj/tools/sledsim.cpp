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

// sledsim: figure-data sweeps for the superconducting-LED photon-pair model.
//
//   sledsim rates|dm|fidelity --config <path> [--out <dir>]
//           [--format csv,json,svg] [--threads N] [--set key=value]...
//           [--log-scale]
//
// Exit codes: 0 success, 2 configuration or argument error, 3 numerical or
// convergence failure, 4 I/O error. Failures print one JSON record to stderr.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sled/errors.hpp"
#include "sled/sweep/commands.hpp"
#include "sled/sweep/config.hpp"

namespace {

int exit_code_for(const sled::Error& e) {
  const std::string kind = e.kind();
  if (kind == "convergence" || kind == "numerical") return 3;
  if (kind == "io") return 4;
  return 2;
}

int report(const std::string& kind, const std::string& message, int code) {
  nlohmann::json rec{{"status", "error"},
                     {"kind", kind},
                     {"message", message},
                     {"exit_code", code}};
  std::cerr << rec.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-photon emission sweeps for a superconducting LED"};
  app.set_version_flag("--version", sled::sweep::kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string formats;
  int threads = -1;
  std::vector<std::string> sets;
  bool log_scale = false;

  for (const char* name : {"rates", "dm", "fidelity"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "Run configuration file")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides output.dir)");
    sub->add_option("--format", formats, "Comma-separated subset of csv,json,svg");
    sub->add_option("--threads", threads, "Worker threads, 0 = all cores")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--set", sets, "Override a config key: section.key=value");
    sub->add_flag("--log-scale", log_scale, "Logarithmic SVG color scale");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what(), 2);
  }

  try {
    const auto command =
        sled::sweep::parse_command(app.get_subcommands().front()->get_name());
    // Flags win over --set, which wins over the file.
    std::vector<std::string> overrides = sets;
    if (!out_dir.empty()) overrides.push_back("output.dir=" + out_dir);
    if (!formats.empty()) overrides.push_back("output.formats=" + formats);
    if (log_scale) overrides.push_back("output.log_scale=true");
    if (threads >= 0) {
      overrides.push_back("output.threads=" + std::to_string(threads));
    } else if (const char* env = std::getenv("SLEDSIM_THREADS"); env && *env) {
      overrides.push_back(std::string("output.threads=") + env);
    }

    const auto cfg = sled::sweep::load_config(config_path, command, overrides);
    const auto summary = sled::sweep::run(cfg);
    nlohmann::json rec{{"status", "ok"},
                       {"command", sled::sweep::to_string(command)},
                       {"output_dir", summary.output_dir.string()},
                       {"files", summary.files},
                       {"seconds", summary.seconds}};
    std::cout << rec.dump() << '\n';
    return 0;
  } catch (const sled::Error& e) {
    return report(e.kind(), e.what(), exit_code_for(e));
  } catch (const std::exception& e) {
    return report("internal", e.what(), 1);
  }
}
