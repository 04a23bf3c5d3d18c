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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "sled/bcs_physics.hpp"
#include "sled/errors.hpp"
#include "sled/spectral_rates.hpp"

using namespace sled;

namespace {

const JunctionParams kJp = material_preset("GaAs-Nb");

double argmax_abs_detuning(const RateSurface& s, std::size_t it) {
  std::size_t best = 0;
  for (std::size_t id = 1; id < s.cols(); ++id)
    if (s.raw(it, id) > s.raw(it, best)) best = id;
  return std::abs(s.grid.detunings[best]);
}

// Full width at half maximum of the positive-detuning CP peak.
double cp_peak_fwhm(const JunctionParams& jp, double t) {
  const double step = 0.01;
  std::vector<double> d, v;
  for (double x = 0.5; x <= 4.0 + 1e-12; x += step) {
    d.push_back(x);
    v.push_back(s_cp(x, t, jp));
  }
  const auto peak = static_cast<std::size_t>(
      std::max_element(v.begin(), v.end()) - v.begin());
  const double half = v[peak] / 2.0;
  auto cross = [&](std::ptrdiff_t dir) {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(peak);
    while (i + dir >= 0 && i + dir < static_cast<std::ptrdiff_t>(v.size()) &&
           v[i + dir] > half)
      i += dir;
    const std::ptrdiff_t j = i + dir;
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(v.size())) return d[i];
    return d[i] + (d[j] - d[i]) * (v[i] - half) / (v[i] - v[j]);
  };
  return cross(+1) - cross(-1);
}

}  // namespace

TEST_CASE("symmetric detuning grid is exactly antisymmetric") {
  const auto d = SpectralGrid::symmetric_detunings(6.0, 121);
  REQUIRE(d.size() == 121);
  CHECK(d.front() == -6.0);
  CHECK(d.back() == 6.0);
  CHECK(d[60] == 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == -d[d.size() - 1 - i]);
}

TEST_CASE("grid validation") {
  SpectralGrid g{{-1.0, 0.0, 1.0}, {0.5}, {}};
  CHECK_NOTHROW(g.validate());
  g.detunings = {-1.0, 0.0, 2.0};
  CHECK_THROWS_AS(g.validate(), DomainError);
  g.detunings = {1.0, 0.0, -1.0};
  CHECK_THROWS_AS(g.validate(), DomainError);
  g = {{-1.0, 1.0}, {1.0}, {}};
  CHECK_THROWS_AS(g.validate(), DomainError);
  g = {{-1.0, 1.0}, {0.5}, {32, 40.0}};
  CHECK_THROWS_AS(g.validate(), DomainError);
  CHECK_THROWS_AS((CoherenceParams{0.5}.validate()), DomainError);
  CHECK(CoherenceParams::from_lengths(10.0, 0.1).enhancement == doctest::Approx(100.0));
}

TEST_CASE("rates are symmetric in detuning and non-negative") {
  for (double t : {0.1, 0.5, 0.9}) {
    double scale = 0.0;
    std::vector<std::pair<double, double>> cp, bqp;
    for (double d : {0.3, 1.7, 2.0, 4.4}) {
      cp.emplace_back(s_cp(d, t, kJp), s_cp(-d, t, kJp));
      bqp.emplace_back(s_bqp(d, t, kJp), s_bqp(-d, t, kJp));
      scale = std::max({scale, cp.back().first, bqp.back().first});
    }
    for (const auto& [a, b] : cp) {
      CHECK(a >= 0.0);
      CHECK(std::abs(a - b) <= 1e-10 * scale);
    }
    for (const auto& [a, b] : bqp) {
      CHECK(a >= 0.0);
      CHECK(std::abs(a - b) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("cold CP spectrum peaks at twice the gap") {
  SpectralGrid g{SpectralGrid::symmetric_detunings(6.0, 121), {0.1}, {}};
  const auto s = rate_surface(g, kJp, Channel::cp);
  const double two_gap =
      2.0 * gap_at_temperature(kJp.sc, 0.1 * kJp.sc.tc_k) / kJp.sc.delta0_mev;
  CHECK(std::abs(argmax_abs_detuning(s, 0) - two_gap) <= 0.1 + 1e-12);
}

TEST_CASE("hot spectra have a local maximum at zero detuning") {
  for (auto c : {Channel::cp, Channel::bqp}) {
    const double at0 = spectral_rate(c, 0.0, 0.9, kJp);
    CHECK(at0 > spectral_rate(c, 0.1, 0.9, kJp));
    CHECK(at0 > spectral_rate(c, -0.1, 0.9, kJp));
  }
}

TEST_CASE("surface shape, normalization and BQP ordering") {
  SpectralGrid g{{-1.0, 0.0, 1.0}, {0.2, 0.6}, {}};
  const auto s = rate_surface(g, kJp, Channel::cp);
  CHECK(s.rows() == 2);
  CHECK(s.cols() == 3);
  for (double v : s.values) {
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
  }
  CHECK(s.max_normalized() == 1.0);

  SpectralGrid cold{SpectralGrid::symmetric_detunings(6.0, 61), {0.1}, {}};
  const auto pair = rate_surfaces(cold, kJp, CoherenceParams{1.0});
  CHECK(pair.cp.max_normalized() == 1.0);
  CHECK(pair.bqp.normalization == pair.cp.normalization);
  CHECK(pair.bqp.max_normalized() < 1.0);
}

TEST_CASE("CP rate near |d| = 2 falls as the gap closes") {
  double prev = s_cp(2.0, 0.7, kJp);
  for (double t : {0.8, 0.9, 0.95}) {
    const double v = s_cp(2.0, t, kJp);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("CP argmax migrates toward zero detuning near Tc") {
  SpectralGrid g{SpectralGrid::symmetric_detunings(6.0, 121), {0.1, 0.95}, {}};
  const auto s = rate_surface(g, kJp, Channel::cp, {}, 4);
  CHECK(argmax_abs_detuning(s, 1) < argmax_abs_detuning(s, 0));
}

TEST_CASE("longer dephasing time narrows the cold CP peak") {
  auto sharp = kJp;
  sharp.dephasing_time_fs *= 2.0;
  CHECK(cp_peak_fwhm(sharp, 0.1) < cp_peak_fwhm(kJp, 0.1));
}

TEST_CASE("doubling k nodes moves surface values by < 0.1%") {
  SpectralGrid g{SpectralGrid::symmetric_detunings(6.0, 13), {0.1, 0.5, 0.9}, {}};
  SpectralGrid fine = g;
  fine.k.nodes = 2 * g.k.nodes;
  for (auto c : {Channel::cp, Channel::bqp}) {
    const auto a = rate_surface(g, kJp, c, {}, 4);
    const auto b = rate_surface(fine, kJp, c, {}, 4);
    for (std::size_t i = 0; i < a.values.size(); ++i)
      CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-3 * b.values[i]);
  }
}

TEST_CASE("under-resolved quadrature raises ConvergenceError with context") {
  auto narrow = kJp;
  narrow.dephasing_time_fs = 1e6;
  const KIntegration coarse{64, 40.0};
  CHECK_THROWS_AS(s_cp(2.0, 0.1, narrow, coarse), ConvergenceError);
  try {
    s_cp(2.0, 0.1, narrow, coarse);
  } catch (const ConvergenceError& e) {
    CHECK(e.coarse() != e.fine());
  }
  SpectralGrid g{{-2.0, 2.0}, {0.1}, coarse};
  try {
    rate_surface(g, narrow, Channel::cp);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::string(e.what()).find("t=0.1") != std::string::npos);
  }
}

TEST_CASE("mixing rates") {
  const auto r10 = mixing_rates(5.0, 0.5, kJp, {10.0});
  const auto r20 = mixing_rates(5.0, 0.5, kJp, {20.0});
  CHECK(r20.r_cp == 2.0 * r10.r_cp);
  CHECK(r20.r_bqp == r10.r_bqp);
  double prev = 0.0;
  for (double e : {1.0, 3.0, 10.0, 100.0, 1e4}) {
    const double f = mixing_rates(5.0, 0.5, kJp, {e}).cp_fraction();
    CHECK(f > prev);
    prev = f;
  }
  CHECK_THROWS_AS(mixing_rates(5.0, 0.5, kJp, {0.1}), DomainError);
  CHECK_THROWS_AS(s_cp(5.0, 1.0, kJp), DomainError);
  CHECK_THROWS_AS(s_cp(5.0, 0.0, kJp), DomainError);
}

TEST_CASE("surface evaluation is identical across thread counts") {
  SpectralGrid g{SpectralGrid::symmetric_detunings(3.0, 7), {0.2, 0.8}, {}};
  const auto a = rate_surfaces(g, kJp, {100.0}, 1);
  const auto b = rate_surfaces(g, kJp, {100.0}, 8);
  CHECK(a.cp.values == b.cp.values);
  CHECK(a.bqp.values == b.bqp.values);
  CHECK(a.bqp.normalization == b.bqp.normalization);
}
