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

#include "sled/sweep/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <json.hpp>

#include "sled/errors.hpp"
#include "sled/parallel.hpp"
#include "sled/state_metrics.hpp"
#include "sled/sweep/writers.hpp"

namespace sled::sweep {
namespace {

std::vector<ModeIndex> modes_of(const OamPairBasis& basis) {
  std::vector<ModeIndex> modes;
  for (int l = -basis.l_max(); l <= basis.l_max(); ++l) modes.push_back({0, l});
  return modes;
}

std::string pair_label(const OamPair& p) {
  return "(" + std::to_string(p.l1) + "," + std::to_string(p.l2) + ")";
}

std::string rate_csv(const RateSurface& s) {
  std::vector<std::vector<double>> rows;
  rows.reserve(s.rows() * s.cols());
  for (std::size_t it = 0; it < s.rows(); ++it)
    for (std::size_t id = 0; id < s.cols(); ++id)
      rows.push_back({s.grid.temperatures[it], s.grid.detunings[id],
                      s.normalized(it, id)});
  return csv_table({"t_over_tc", "detuning_over_delta0", "rate_normalized"}, rows);
}

std::string rate_svg(const RateSurface& s, double scale_max, bool log_scale) {
  HeatmapSpec spec;
  spec.title = std::string(s.channel == Channel::cp ? "Cooper-pair" : "quasiparticle") +
               " two-photon rate (normalized to CP max)";
  spec.x_title = "detuning / Delta0";
  spec.y_title = "T / Tc";
  spec.scale_max = scale_max;
  spec.log_scale = log_scale;
  for (double d : s.grid.detunings) spec.col_labels.push_back(format_number(d));
  // Hottest row on top.
  for (std::size_t r = s.rows(); r-- > 0;) {
    spec.row_labels.push_back(format_number(s.grid.temperatures[r]));
    for (std::size_t id = 0; id < s.cols(); ++id)
      spec.values.push_back(s.normalized(r, id));
  }
  return svg_heatmap(spec);
}

std::string dm_svg(const PairDensityMatrix& m, const RunConfig& cfg,
                   double t, double enh) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const int total = m.basis()[i].total();
    if (cfg.svg_all_pairs || total == cfg.winding || total == -cfg.winding)
      keep.push_back(i);
  }
  HeatmapSpec spec;
  spec.title = "|rho|, l_s = " + std::to_string(cfg.winding) + ", T/Tc = " +
               format_number(t) + ", L/L_phi = " + format_number(enh);
  spec.x_title = "(l_gamma, l_delta)";
  spec.y_title = "(l_alpha, l_beta)";
  spec.log_scale = cfg.log_scale;
  double peak = 0.0;
  for (std::size_t i : keep) {
    spec.row_labels.push_back(pair_label(m.basis()[i]));
    spec.col_labels.push_back(pair_label(m.basis()[i]));
    for (std::size_t j : keep) {
      spec.values.push_back(std::abs(m(i, j)));
      peak = std::max(peak, spec.values.back());
    }
  }
  spec.scale_max = peak > 0 ? peak : 1.0;
  return svg_heatmap(spec);
}

}  // namespace

std::vector<OutputFile> cmd_rates(const RunConfig& cfg) {
  const CoherenceParams coh{cfg.enhancements.front()};
  const auto surfaces = rate_surfaces(cfg.grid, cfg.junction, coh, cfg.threads);
  std::vector<OutputFile> out;
  if (cfg.wants("csv")) {
    out.push_back({"rates_cp.csv", rate_csv(surfaces.cp)});
    out.push_back({"rates_bqp.csv", rate_csv(surfaces.bqp)});
  }
  if (cfg.wants("svg")) {
    const double scale =
        std::max(surfaces.cp.max_normalized(), surfaces.bqp.max_normalized());
    out.push_back({"rates_cp.svg", rate_svg(surfaces.cp, scale, cfg.log_scale)});
    out.push_back({"rates_bqp.svg", rate_svg(surfaces.bqp, scale, cfg.log_scale)});
  }
  return out;
}

std::vector<OutputFile> cmd_dm(const RunConfig& cfg) {
  const OamPairBasis basis = cfg.basis();
  const WindingNumber ls{cfg.winding};
  const KappaTable kappa(cfg.geometry, modes_of(basis), cfg.threads);
  const auto qubit = cfg.qubit_state();
  const auto coherent = qubit ? rho_superposition(*qubit, ls, basis, kappa)
                              : rho_cp(ls, basis, kappa);
  const auto incoherent = rho_bqp(basis, kappa);

  // Bare channel rates per temperature; the enhancement only rescales r_cp.
  const auto& temps = cfg.grid.temperatures;
  std::vector<MixingRates> bare(temps.size());
  parallel_for(temps.size(), cfg.threads, [&](std::size_t i) {
    try {
      bare[i] = mixing_rates(cfg.dm_detuning, temps[i], cfg.junction,
                             CoherenceParams{1.0}, cfg.grid.k);
    } catch (const Error&) {
      rethrow_with_context("[t=" + format_number(temps[i]) + "]");
    }
  });

  std::vector<OutputFile> out;
  for (std::size_t it = 0; it < temps.size(); ++it) {
    for (double enh : cfg.enhancements) {
      const MixingRates rates{enh * bare[it].r_cp, bare[it].r_bqp};
      const auto rho = mix(coherent, incoherent, rates);
      const std::string stem =
          "dm_" + format_number(temps[it]) + "_" + format_number(enh);
      if (cfg.wants("json")) out.push_back({stem + ".json", density_matrix_json(rho)});
      if (cfg.wants("svg")) out.push_back({stem + ".svg", dm_svg(rho, cfg, temps[it], enh)});
    }
  }
  return out;
}

std::vector<OutputFile> cmd_fidelity(const RunConfig& cfg) {
  FidelityScenario scenario;
  scenario.ls = WindingNumber{cfg.winding};
  scenario.basis = cfg.basis();
  scenario.geometry = cfg.geometry;
  scenario.detuning = cfg.dm_detuning;
  scenario.junction = cfg.junction;
  scenario.k = cfg.grid.k;
  const auto target = TargetState::bell_10_01(scenario.basis);
  const auto table = fidelity_curve(cfg.grid.temperatures, cfg.enhancements,
                                    scenario, target, cfg.threads);

  std::vector<OutputFile> out;
  if (cfg.wants("csv")) {
    std::vector<std::vector<double>> rows;
    for (std::size_t it = 0; it < table.temperatures.size(); ++it)
      for (std::size_t ie = 0; ie < table.enhancements.size(); ++ie)
        rows.push_back({table.temperatures[it], table.enhancements[ie],
                        table.at(it, ie)});
    out.push_back({"fidelity.csv",
                   csv_table({"t_over_tc", "enhancement", "fidelity"}, rows)});
  }
  if (cfg.wants("svg")) {
    std::vector<LineSeries> series;
    for (std::size_t ie = 0; ie < table.enhancements.size(); ++ie) {
      LineSeries s{"L/L_phi = " + format_number(table.enhancements[ie]),
                   table.temperatures, {}};
      for (std::size_t it = 0; it < table.temperatures.size(); ++it)
        s.y.push_back(table.at(it, ie));
      series.push_back(std::move(s));
    }
    out.push_back({"fidelity.svg",
                   svg_line_plot("Bell-state fidelity", "T / Tc", "fidelity", series)});
  }
  return out;
}

RunSummary run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<OutputFile> outputs;
  switch (cfg.command) {
    case Command::rates: outputs = cmd_rates(cfg); break;
    case Command::dm: outputs = cmd_dm(cfg); break;
    case Command::fidelity: outputs = cmd_fidelity(cfg); break;
  }

  RunSummary summary;
  summary.output_dir = cfg.output_dir;
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : outputs) {
    write_file_atomic(summary.output_dir / f.name, f.contents);
    files.push_back({{"file", f.name},
                     {"bytes", f.contents.size()},
                     {"sha256", sha256_hex(f.contents)}});
    summary.files.push_back(f.name);
  }
  summary.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["command"] = to_string(cfg.command);
  manifest["duration_seconds"] = summary.seconds;
  manifest["threads"] = resolve_threads(cfg.threads);
  manifest["config"] = cfg.resolved;
  manifest["defaulted"] = cfg.defaulted;
  manifest["outputs"] = std::move(files);
  write_file_atomic(summary.output_dir / "manifest.json", manifest.dump(2) + "\n");
  return summary;
}

}  // namespace sled::sweep
