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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "sled/errors.hpp"
#include "sled/oam_modes.hpp"
#include "sled/pair_state.hpp"
#include "sled/spectral_rates.hpp"
#include "sled/state_metrics.hpp"
#include "sled/sweep/commands.hpp"
#include "sled/sweep/config.hpp"
#include "sled/sweep/writers.hpp"

using namespace sled;
namespace fs = std::filesystem;

namespace {

int g_failed = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

template <class F>
void criterion(int id, const std::string& name, F&& body) {
  try {
    std::ostringstream detail;
    const bool ok = body(detail);
    report(id, name, ok, detail.str());
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t row_of(const SpectralGrid& g, double t) {
  for (std::size_t i = 0; i < g.temperatures.size(); ++i)
    if (std::abs(g.temperatures[i] - t) < 1e-12) return i;
  throw ContractError("temperature not on grid");
}

// Strict local maximum at the d = 0 column against both neighbours.
bool zero_peak(const RateSurface& s, std::size_t it, std::ostringstream& out) {
  const std::size_t mid = s.cols() / 2;
  const double c = s.raw(it, mid), l = s.raw(it, mid - 1), r = s.raw(it, mid + 1);
  out << "s(0)/s(+-step)=" << c / std::max(l, r);
  return c > l && c > r;
}

ComplexMatrix random_density(std::size_t n, std::size_t rank, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n);
  for (std::size_t k = 0; k < rank; ++k) {
    std::vector<cplx> v(n);
    for (auto& x : v) x = {g(rng), g(rng)};
    m = m + ComplexMatrix::outer(v);
  }
  return m * cplx(1.0 / m.trace().real());
}

}  // namespace

int main() {
  const std::string presets = SLED_PRESET_DIR;

  // Shared fig2 evaluation, single-threaded and timed (criteria 1-3).
  const auto fig2 = sweep::load_config(presets + "/fig2.cfg", sweep::Command::rates,
                                       {"output.threads=1"});
  const auto t0 = std::chrono::steady_clock::now();
  const auto surfaces =
      rate_surfaces(fig2.grid, fig2.junction, {fig2.enhancements.front()}, 1);
  const double fig2_seconds = seconds_since(t0);
  const auto& grid = fig2.grid;
  const double step = grid.detunings[1] - grid.detunings[0];

  criterion(1, "cold CP peaks at +-2 Delta(T)", [&](std::ostringstream& out) {
    const std::size_t it = row_of(grid, 0.1);
    std::size_t best = 0;
    for (std::size_t id = 1; id < surfaces.cp.cols(); ++id)
      if (surfaces.cp.raw(it, id) > surfaces.cp.raw(it, best)) best = id;
    const double two_gap =
        2.0 * gap_at_temperature(fig2.junction.sc, 0.1 * fig2.junction.sc.tc_k) /
        fig2.junction.sc.delta0_mev;
    const double off = std::abs(std::abs(grid.detunings[best]) - two_gap);
    out << "argmax d=" << grid.detunings[best] << ", 2Delta/Delta0=" << two_gap
        << ", grid step=" << step << ", fig2 surfaces " << fig2_seconds
        << " s on 1 thread at " << grid.k.nodes << " nodes";
    return off <= step + 1e-12 && fig2_seconds < 60.0 && grid.k.nodes == 4096 &&
           grid.detunings.size() == 121;
  });

  criterion(2, "zero-detuning peak hot (t=0.9), absent at t=0.5", [&](std::ostringstream& out) {
    const std::size_t hot = row_of(grid, 0.9), warm = row_of(grid, 0.5);
    out << "t=0.9 cp ";
    const bool cp_hot = zero_peak(surfaces.cp, hot, out);
    out << ", bqp ";
    const bool bqp_hot = zero_peak(surfaces.bqp, hot, out);
    out << "; t=0.5 cp ";
    const bool cp_warm = zero_peak(surfaces.cp, warm, out);
    out << ", bqp ";
    const bool bqp_warm = zero_peak(surfaces.bqp, warm, out);
    return cp_hot && bqp_hot && !cp_warm && !bqp_warm;
  });

  criterion(3, "BQP below CP maximum", [&](std::ostringstream& out) {
    out << "max normalized bqp=" << surfaces.bqp.max_normalized()
        << ", cp=" << surfaces.cp.max_normalized();
    return surfaces.bqp.max_normalized() < 1.0 && surfaces.cp.max_normalized() == 1.0;
  });

  criterion(4, "OAM selection rule is exact", [&](std::ostringstream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto basis = OamPairBasis::full(3);
    const auto rho = rho_cp({2}, basis, AnnulusGeometry{});
    std::size_t stray = 0;
    for (std::size_t i = 0; i < rho.size(); ++i)
      for (std::size_t j = 0; j < rho.size(); ++j)
        if ((basis[i].total() != 2 || basis[j].total() != 2) && rho(i, j) != cplx(0.0, 0.0))
          ++stray;
    const auto populated = rho.populated_pairs();
    const std::set<OamPair> got(populated.begin(), populated.end());
    const std::set<OamPair> want{{-1, 3}, {0, 2}, {1, 1}, {2, 0}, {3, -1}};
    const double secs = seconds_since(start);
    out << "nonzero outside sector=" << stray << ", populated=" << got.size()
        << ", " << secs << " s";
    return stray == 0 && got == want && secs < 1.0;
  });

  const auto jp = material_preset("GaAs-Nb");

  criterion(5, "diagonal weight grows with temperature", [&](std::ostringstream& out) {
    const auto basis = OamPairBasis::full(3);
    const WindingNumber ls{2};
    const AnnulusGeometry g;
    auto w = [&](double t, double enh) {
      return off_sector_diagonal_weight(rho_total(ls, basis, g, {5.0, t}, jp, {enh}), ls);
    };
    const double gap10 = w(0.9, 10) - w(0.5, 10);
    const double gap100 = w(0.9, 100) - w(0.5, 100);
    out << "enh=10: " << w(0.5, 10) << " -> " << w(0.9, 10) << "; gap10=" << gap10
        << ", gap100=" << gap100;
    return gap10 > 0.0 && std::abs(gap100) < std::abs(gap10);
  });

  criterion(6, "superposition transfer", [&](std::ostringstream& out) {
    const auto basis = OamPairBasis::full(3);
    const AnnulusGeometry g;
    const WindingNumber ls{2};
    const bool collapse = rho_superposition({}, ls, basis, g) == rho_cp(ls, basis, g);

    const auto q = QubitState::from_polar(0.6, 0.3, 0.8, -0.2);
    const auto plus = rho_superposition(q, ls, basis, g);
    const auto minus = rho_superposition({q.a, -q.b}, ls, basis, g);
    bool signs = true;
    std::size_t flipped = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const bool cross = basis[i].total() * basis[j].total() == -4;
        if (cross) {
          signs &= minus(i, j) == -plus(i, j);
          flipped += plus(i, j) != cplx(0.0, 0.0);
        } else {
          signs &= minus(i, j) == plus(i, j);
        }
      }
    double phase_dev = 0.0;
    for (double phi : {0.4, 1.9, -2.7}) {
      const cplx ph = std::polar(1.0, phi);
      phase_dev = std::max(
          phase_dev,
          (rho_superposition({q.a * ph, q.b * ph}, ls, basis, g).entries() - plus.entries())
              .max_abs());
    }
    out << "a=1,b=0 identical=" << collapse << ", flipped entries=" << flipped
        << ", only cross blocks flip=" << signs << ", common-phase deviation=" << phase_dev;
    return collapse && signs && flipped > 0 && phase_dev <= 1e-12;
  });

  criterion(7, "fidelity ordering and Bell limit", [&](std::ostringstream& out) {
    const auto fig5 = sweep::load_config(presets + "/fig5.cfg", sweep::Command::fidelity);
    FidelityScenario sc;
    sc.ls = {fig5.winding};
    sc.basis = fig5.basis();
    sc.geometry = fig5.geometry;
    sc.detuning = fig5.dm_detuning;
    sc.junction = fig5.junction;
    sc.k = fig5.grid.k;
    const auto target = TargetState::bell_10_01(sc.basis);
    const auto table = fidelity_curve(fig5.grid.temperatures, {10.0, 100.0}, sc, target, 0);
    bool ordered = true;
    for (std::size_t it = 0; it < table.temperatures.size(); ++it)
      ordered &= table.at(it, 1) >= table.at(it, 0);
    const std::vector<double> ts{0.3, 0.5, 0.7, 0.9};
    const auto mono = fidelity_curve(ts, {10.0}, sc, target, 0);
    bool decreasing = true;
    out << "F(enh=10) at 0.3/0.5/0.7/0.9:";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      out << ' ' << mono.at(i, 0);
      if (i) decreasing &= mono.at(i, 0) < mono.at(i - 1, 0);
    }
    const double limit = fidelity_curve({0.1}, {1e6}, sc, target).at(0, 0);
    out << "; enh100>=enh10 at all " << table.temperatures.size()
        << " temps=" << ordered << "; F(0.1, 1e6)=" << limit;
    return ordered && decreasing && limit > 0.999;
  });

  criterion(8, "numerical oracles", [&](std::ostringstream& out) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    double jozsa = 0.0;
    for (int c = 0; c < 500; ++c) {
      const std::size_t n = 2 + c % 20;
      std::vector<OamPair> pairs;
      for (std::size_t i = 0; i < n; ++i)
        pairs.push_back({static_cast<int>(i % 5) - 2, static_cast<int>(i / 5)});
      const OamPairBasis basis(pairs);
      std::normal_distribution<double> gauss;
      std::vector<cplx> psi(n);
      double norm = 0.0;
      for (auto& x : psi) norm += std::norm(x = {gauss(rng), gauss(rng)});
      for (auto& x : psi) x /= std::sqrt(norm);
      const auto f = fidelity_both(
          PairDensityMatrix(basis, random_density(n, 1 + (3 * c) % n, rng)),
          {basis, psi, "random"});
      jozsa = std::max(jozsa, std::abs(f.jozsa - f.shortcut));
    }

    double sqrtm = 0.0;
    for (int c = 0; c < 200; ++c) {
      const std::size_t n = 2 + c % 30;
      const auto a = random_density(n, 1 + c % n, rng);
      const auto s = sqrtm_psd(a);
      sqrtm = std::max(sqrtm, (s * s - a).max_abs() / a.max_abs());
    }

    double kap = 0.0;
    std::uniform_int_distribution<int> l_dist(-6, 6);
    for (int c = 0; c < 20; ++c) {
      const double ri = 5.0 * u(rng);
      const double ro = ri + 0.5 + 4.5 * u(rng);
      const double w = 1.0 + 7.0 * u(rng);
      const ModeIndex a{0, l_dist(rng)}, b{0, l_dist(rng)};
      const int nodes = 1000000;
      const double h = (ro - ri) / nodes;
      double brute = 0.0;
      for (int i = 0; i < nodes; ++i) {
        const double r = ri + (i + 0.5) * h;
        brute += lg_radial(a, w, r) * lg_radial(b, w, r) * r;
      }
      brute *= h;
      kap = std::max(kap, std::abs(kappa(a, b, {ri, ro, w}) - brute) / std::abs(brute));
    }

    double herm = 0.0, min_eig = INFINITY, trace = 0.0;
    for (int c = 0; c < 1000; ++c) {
      const int l_max = 1 + c % 3;
      const auto basis = OamPairBasis::full(l_max);
      const int ls = static_cast<int>(u(rng) * (2 * l_max + 1)) - l_max;
      const double ri = 6.0 * u(rng);
      const KappaTable kt({ri, ri + 0.2 + 4.0 * u(rng), 1.0 + 8.0 * u(rng)});
      const auto q = QubitState::from_polar(u(rng), 4 * u(rng), u(rng) + 1e-3, 4 * u(rng));
      const auto coherent =
          c % 2 ? rho_superposition(q, {ls}, basis, kt) : rho_cp({ls}, basis, kt);
      const MixingRates rates{std::pow(10.0, 4 * u(rng) - 2), std::pow(10.0, 4 * u(rng) - 2)};
      const auto chk = inspect(mix(coherent, rho_bqp(basis, kt), rates));
      herm = std::max(herm, chk.hermiticity_defect);
      min_eig = std::min(min_eig, chk.min_eigenvalue);
      trace = std::max(trace, std::abs(chk.trace - 1.0));
    }
    out << "jozsa-shortcut=" << jozsa << ", sqrtm residual=" << sqrtm
        << ", kappa rel err=" << kap << ", fuzz herm=" << herm << " min eig=" << min_eig
        << " |tr-1|=" << trace;
    return jozsa < 1e-9 && sqrtm < 1e-9 && kap <= 1e-8 && herm <= 1e-12 &&
           min_eig >= -1e-10 && trace <= 1e-12;
  });

  criterion(9, "fig3 output independent of thread count", [&](std::ostringstream& out) {
    const auto root = fs::temp_directory_path() / "sledsim_acceptance_fig3";
    fs::remove_all(root);
    for (unsigned threads : {1u, 8u}) {
      const auto cfg = sweep::load_config(
          presets + "/fig3.cfg", sweep::Command::dm,
          {"output.dir=" + (root / std::to_string(threads)).string(),
           "output.threads=" + std::to_string(threads), "output.formats=csv,json,svg"});
      sweep::run(cfg);
    }
    std::size_t compared = 0, differ = 0;
    for (const auto& entry : fs::directory_iterator(root / "1")) {
      const auto name = entry.path().filename().string();
      if (name == "manifest.json") continue;  // carries wall-clock time
      const auto ext = entry.path().extension();
      if (ext != ".json" && ext != ".csv") continue;
      ++compared;
      const auto other = root / "8" / name;
      if (!fs::exists(other) ||
          sweep::read_file(entry.path()) != sweep::read_file(other))
        ++differ;
    }
    out << compared << " CSV/JSON files compared, " << differ << " differ";
    return compared > 0 && differ == 0;
  });

  std::printf("%s: %d criteria failed\n", g_failed ? "FAIL" : "PASS", g_failed);
  return g_failed ? 1 : 0;
}
