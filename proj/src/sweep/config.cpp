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

#include "sled/sweep/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "sled/errors.hpp"
#include "sled/sweep/writers.hpp"

namespace sled::sweep {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.push_back(trim(std::string_view(text).substr(
        start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void invalid(const std::string& key, const std::string& why) {
  throw ConfigError("invalid value for '" + key + "': " + why);
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    invalid(key, "'" + t + "' is not a finite number");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end)
    invalid(key, "'" + t + "' is not an integer");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  invalid(key, "'" + t + "' is not a boolean");
}

// Decimal rounding so that ranges like 0.05:0.05:0.95 produce 0.95, not
// 0.9500000000000001.
double round_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_number(v[i]);
  }
  return s;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s;
}

// Known keys. An empty default means "computed" or "absent unless given".
struct KeySpec {
  const char* key;
  const char* rates_default;
  const char* dm_default;
  const char* fidelity_default;
};

constexpr KeySpec kKeys[] = {
    {"preset", "GaAs-Nb", "GaAs-Nb", "GaAs-Nb"},
    {"material.delta0_mev", "", "", ""},
    {"material.tc_k", "", "", ""},
    {"material.electron_mass", "", "", ""},
    {"material.hole_mass", "", "", ""},
    {"material.electron_density_cm2", "1e12", "1e12", "1e12"},
    {"material.hole_density_cm2", "1e12", "1e12", "1e12"},
    {"material.band_gap_mev", "1519", "1519", "1519"},
    {"material.dephasing_fs", "1000", "1000", "1000"},
    {"material.valence_gap_scale", "1", "1", "1"},
    {"geometry.r_inner_um", "4", "4", "4"},
    {"geometry.r_outer_um", "5", "5", "5"},
    {"geometry.waist_um", "", "", ""},
    {"coherence.enhancement", "100", "10, 100", "10, 30, 100"},
    {"grid.temperatures", "0.05:0.05:0.95", "0.5, 0.9", "0.05:0.05:0.95"},
    {"grid.detunings", "", "", ""},
    {"grid.detuning_max", "6", "6", "6"},
    {"grid.detuning_points", "121", "121", "121"},
    {"grid.k_nodes", "4096", "4096", "4096"},
    {"grid.k_cutoff_delta0", "40", "40", "40"},
    {"pairs.winding", "2", "2", "1"},
    {"pairs.l_max", "3", "3", ""},
    {"pairs.labels", "", "", "0, 1"},
    {"pairs.detuning", "5", "5", "5"},
    {"pairs.qubit_a", "", "", ""},
    {"pairs.qubit_b", "", "", ""},
    {"output.dir", "out", "out", "out"},
    {"output.formats", "csv, json", "csv, json", "csv, json"},
    {"output.threads", "0", "0", "0"},
    {"output.log_scale", "false", "false", "false"},
    {"output.svg_all_pairs", "false", "false", "false"},
};

const KeySpec* find_key(const std::string& key) {
  for (const auto& k : kKeys)
    if (key == k.key) return &k;
  return nullptr;
}

const char* default_for(const KeySpec& k, Command c) {
  switch (c) {
    case Command::rates: return k.rates_default;
    case Command::dm: return k.dm_default;
    default: return k.fidelity_default;
  }
}

class Resolver {
 public:
  Resolver(Command command, ConfigEntries entries)
      : command_(command), entries_(std::move(entries)) {
    for (const auto& [key, entry] : entries_) {
      if (!find_key(key)) {
        std::string where =
            entry.line > 0 ? " (line " + std::to_string(entry.line) + ")" : "";
        throw ConfigError("unknown configuration key '" + key + "'" + where);
      }
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  // Value in effect; records defaults. Empty optional when neither given
  // nor defaulted.
  std::optional<std::string> get(const std::string& key) {
    if (auto it = entries_.find(key); it != entries_.end()) {
      resolved_[key] = it->second.value;
      return it->second.value;
    }
    const std::string def = default_for(*find_key(key), command_);
    if (def.empty()) return std::nullopt;
    resolved_[key] = def;
    defaulted_.push_back(key);
    return def;
  }

  double number(const std::string& key, double computed_default) {
    if (auto v = get(key)) return parse_number(key, *v);
    resolved_[key] = format_number(computed_default);
    defaulted_.push_back(key);
    return computed_default;
  }

  double number(const std::string& key) { return parse_number(key, *get(key)); }
  int integer(const std::string& key) { return parse_int(key, *get(key)); }
  bool boolean(const std::string& key) { return parse_bool(key, *get(key)); }

  void set_resolved(const std::string& key, const std::string& v) {
    resolved_[key] = v;
  }

  std::map<std::string, std::string> take_resolved() { return resolved_; }
  std::vector<std::string> take_defaulted() {
    std::sort(defaulted_.begin(), defaulted_.end());
    return defaulted_;
  }

 private:
  Command command_;
  ConfigEntries entries_;
  std::map<std::string, std::string> resolved_;
  std::vector<std::string> defaulted_;
};

void require(bool ok, const std::string& key, const std::string& constraint) {
  if (!ok) invalid(key, "must satisfy " + constraint);
}

QubitPolar parse_qubit(const std::string& key_a, const std::string& a,
                       const std::string& key_b, const std::string& b) {
  auto pair = [](const std::string& key, const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) invalid(key, "expected 'magnitude, phase_over_pi'");
    return std::pair{parse_number(key, parts[0]), parse_number(key, parts[1])};
  };
  const auto [ma, pa] = pair(key_a, a);
  const auto [mb, pb] = pair(key_b, b);
  require(ma >= 0.0, key_a, "magnitude >= 0");
  require(mb >= 0.0, key_b, "magnitude >= 0");
  require(ma > 0.0 || mb > 0.0, key_a, "|a| + |b| > 0");
  return {ma, pa, mb, pb};
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "rates") return Command::rates;
  if (name == "dm") return Command::dm;
  if (name == "fidelity") return Command::fidelity;
  throw ConfigError("unknown command '" + name + "'");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::rates: return "rates";
    case Command::dm: return "dm";
    default: return "fidelity";
  }
}

ConfigEntries parse_config_text(const std::string& text,
                                const std::string& origin) {
  ConfigEntries entries;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  auto fail = [&](std::size_t column, const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(line_no) + ":" +
                      std::to_string(column + 1) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;

    if (line[first] == '[') {
      const auto close = line.find(']', first);
      if (close == std::string::npos) fail(line.size(), "expected ']'");
      if (!trim(std::string_view(line).substr(close + 1)).empty())
        fail(close + 1, "unexpected text after section header");
      section = trim(std::string_view(line).substr(first + 1, close - first - 1));
      if (section.empty()) fail(first + 1, "empty section name");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(first, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) fail(first, "missing key before '='");
    if (key.find_first_of(" \t[].") != std::string::npos)
      fail(first, "malformed key '" + key + "'");
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (value.empty()) fail(eq + 1, "missing value for '" + key + "'");
    const std::string full = section.empty() ? key : section + "." + key;
    if (entries.count(full)) fail(first, "duplicate key '" + full + "'");
    entries[full] = {value, line_no};
  }
  return entries;
}

std::vector<double> parse_number_list(const std::string& key,
                                      const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) invalid(key, "range must be 'start:step:stop'");
    const double start = parse_number(key, parts[0]);
    const double step = parse_number(key, parts[1]);
    const double stop = parse_number(key, parts[2]);
    if (!(step > 0.0) || stop < start) invalid(key, "range needs step > 0, stop >= start");
    const double span = (stop - start) / step;
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    if (count > 1000000) invalid(key, "range has too many points");
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
      out[i] = round_decimal(start + static_cast<double>(i) * step);
    return out;
  }
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_number(key, part));
  return out;
}

bool RunConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

std::optional<QubitState> RunConfig::qubit_state() const {
  if (!qubit) return std::nullopt;
  return QubitState::from_polar(qubit->mag_a, qubit->phase_a_pi, qubit->mag_b,
                                qubit->phase_b_pi);
}

RunConfig resolve_config(Command command, const ConfigEntries& file_entries,
                         const std::vector<std::string>& overrides) {
  ConfigEntries entries = file_entries;
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override '" + ov + "' is not of the form key=value");
    const std::string key = trim(std::string_view(ov).substr(0, eq));
    const std::string value = trim(std::string_view(ov).substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("override '" + ov + "' is not of the form key=value");
    entries[key] = {value, 0};
  }

  Resolver r(command, std::move(entries));
  RunConfig cfg;
  cfg.command = command;

  // material
  cfg.material_preset = *r.get("preset");
  JunctionParams base;
  try {
    base = material_preset(cfg.material_preset);
  } catch (const DomainError& e) {
    invalid("preset", e.what());
  }
  SuperconductorParams sc;
  sc.delta0_mev = r.number("material.delta0_mev", base.sc.delta0_mev);
  sc.tc_k = r.number("material.tc_k", base.sc.tc_k);
  require(sc.delta0_mev > 0.0, "material.delta0_mev", "> 0");
  require(sc.tc_k > 0.0, "material.tc_k", "> 0");
  const double m_n = r.number("material.electron_mass", base.conduction.effective_mass);
  const double m_p = r.number("material.hole_mass", base.valence.effective_mass);
  require(m_n > 0.0, "material.electron_mass", "> 0");
  require(m_p > 0.0, "material.hole_mass", "> 0");
  cfg.electron_density_cm2 = r.number("material.electron_density_cm2");
  cfg.hole_density_cm2 = r.number("material.hole_density_cm2");
  require(cfg.electron_density_cm2 > 0.0, "material.electron_density_cm2", "> 0");
  require(cfg.hole_density_cm2 > 0.0, "material.hole_density_cm2", "> 0");
  cfg.band_gap_mev = r.number("material.band_gap_mev");
  require(cfg.band_gap_mev >= 0.0, "material.band_gap_mev", ">= 0");
  const double tau = r.number("material.dephasing_fs");
  require(tau > 0.0, "material.dephasing_fs", "> 0");
  const BandParams cb{m_n, fermi_level_from_density(cfg.electron_density_cm2, m_n),
                      Band::conduction};
  const BandParams vb{m_p, fermi_level_from_density(cfg.hole_density_cm2, m_p),
                      Band::valence};
  cfg.junction = JunctionParams::from_band_gap(sc, cb, vb, cfg.band_gap_mev, tau);
  cfg.junction.valence_gap_scale = r.number("material.valence_gap_scale");
  require(cfg.junction.valence_gap_scale > 0.0, "material.valence_gap_scale", "> 0");

  // geometry
  cfg.geometry.r_inner = r.number("geometry.r_inner_um");
  cfg.geometry.r_outer = r.number("geometry.r_outer_um");
  require(cfg.geometry.r_inner >= 0.0, "geometry.r_inner_um", ">= 0");
  require(cfg.geometry.r_outer > cfg.geometry.r_inner, "geometry.r_outer_um",
          "> geometry.r_inner_um");
  cfg.geometry.waist = r.number(
      "geometry.waist_um",
      AnnulusGeometry::default_waist(cfg.geometry.r_inner, cfg.geometry.r_outer));
  require(cfg.geometry.waist > 0.0, "geometry.waist_um", "> 0");

  // coherence
  cfg.enhancements = parse_number_list("coherence.enhancement",
                                       *r.get("coherence.enhancement"));
  require(!cfg.enhancements.empty(), "coherence.enhancement", "at least one value");
  for (double e : cfg.enhancements)
    require(e >= 1.0, "coherence.enhancement", "every L/L_phi >= 1");

  // grid
  cfg.grid.temperatures =
      parse_number_list("grid.temperatures", *r.get("grid.temperatures"));
  require(!cfg.grid.temperatures.empty(), "grid.temperatures", "at least one value");
  for (double t : cfg.grid.temperatures)
    require(t > 0.0 && t < 1.0, "grid.temperatures", "0 < T/Tc < 1");
  if (r.has("grid.detunings")) {
    if (r.has("grid.detuning_max") || r.has("grid.detuning_points"))
      throw ConfigError(
          "invalid value for 'grid.detunings': give either an explicit list or "
          "grid.detuning_max/grid.detuning_points, not both");
    cfg.grid.detunings = parse_number_list("grid.detunings", *r.get("grid.detunings"));
  } else {
    const double dmax = r.number("grid.detuning_max");
    const int points = r.integer("grid.detuning_points");
    require(dmax > 0.0, "grid.detuning_max", "> 0");
    require(points >= 2, "grid.detuning_points", ">= 2");
    cfg.grid.detunings =
        SpectralGrid::symmetric_detunings(dmax, static_cast<std::size_t>(points));
    r.set_resolved("grid.detunings", join(cfg.grid.detunings));
  }
  cfg.grid.k.nodes = r.integer("grid.k_nodes");
  cfg.grid.k.cutoff_delta0 = r.number("grid.k_cutoff_delta0");
  require(cfg.grid.k.nodes >= 64, "grid.k_nodes", ">= 64");
  require(cfg.grid.k.cutoff_delta0 > 0.0, "grid.k_cutoff_delta0", "> 0");
  {
    const auto& d = cfg.grid.detunings;
    require(!d.empty(), "grid.detunings", "at least one value");
    for (std::size_t i = 1; i < d.size(); ++i)
      require(d[i] > d[i - 1], "grid.detunings", "strictly increasing values");
    double scale = 0.0;
    for (double x : d) scale = std::max(scale, std::abs(x));
    for (std::size_t i = 0; i < d.size(); ++i)
      require(std::abs(d[i] + d[d.size() - 1 - i]) <= 1e-9 * scale,
              "grid.detunings", "symmetry about 0 (d[i] = -d[n-1-i])");
  }

  // pairs
  cfg.winding = r.integer("pairs.winding");
  require(std::abs(cfg.winding) <= 2 * kMaxOam, "pairs.winding", "|l_s| <= 24");
  if (r.has("pairs.labels") && r.has("pairs.l_max"))
    throw ConfigError(
        "invalid value for 'pairs.labels': give either pairs.labels or "
        "pairs.l_max, not both");
  if (auto labels = r.has("pairs.l_max") ? std::nullopt : r.get("pairs.labels")) {
    for (double v : parse_number_list("pairs.labels", *labels)) {
      require(v == std::round(v), "pairs.labels", "integer values");
      cfg.oam_labels.push_back(static_cast<int>(v));
    }
  } else {
    const int l_max = r.integer("pairs.l_max");
    require(l_max >= 0 && l_max <= kMaxOam, "pairs.l_max", "0 <= l_max <= 12");
    for (int l = -l_max; l <= l_max; ++l) cfg.oam_labels.push_back(l);
  }
  std::sort(cfg.oam_labels.begin(), cfg.oam_labels.end());
  cfg.oam_labels.erase(std::unique(cfg.oam_labels.begin(), cfg.oam_labels.end()),
                       cfg.oam_labels.end());
  for (int l : cfg.oam_labels)
    require(std::abs(l) <= kMaxOam, "pairs.labels", "|l| <= 12");
  r.set_resolved("pairs.labels", join(cfg.oam_labels));
  cfg.dm_detuning = r.number("pairs.detuning");
  if (r.has("pairs.qubit_a") || r.has("pairs.qubit_b")) {
    const std::string a = r.get("pairs.qubit_a").value_or("0, 0");
    const std::string b = r.get("pairs.qubit_b").value_or("0, 0");
    cfg.qubit = parse_qubit("pairs.qubit_a", a, "pairs.qubit_b", b);
  }

  // output
  cfg.output_dir = *r.get("output.dir");
  for (const auto& f : split(*r.get("output.formats"), ',')) {
    if (f != "csv" && f != "json" && f != "svg")
      invalid("output.formats", "unknown format '" + f + "' (csv, json, svg)");
    cfg.formats.push_back(f);
  }
  const int threads = r.integer("output.threads");
  require(threads >= 0, "output.threads", ">= 0");
  cfg.threads = static_cast<unsigned>(threads);
  cfg.log_scale = r.boolean("output.log_scale");
  cfg.svg_all_pairs = r.boolean("output.svg_all_pairs");

  // Re-validate module invariants on the assembled objects.
  try {
    cfg.junction.validate();
    cfg.geometry.validate();
    cfg.grid.validate();
    if (cfg.qubit) (void)cfg.qubit_state();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }

  cfg.resolved = r.take_resolved();
  cfg.defaulted = r.take_defaulted();
  return cfg;
}

RunConfig load_config(const std::string& path, Command command,
                      const std::vector<std::string>& overrides) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError&) {
    throw ConfigError("cannot read config file '" + path + "'");
  }
  return resolve_config(command, parse_config_text(text, path), overrides);
}

}  // namespace sled::sweep
