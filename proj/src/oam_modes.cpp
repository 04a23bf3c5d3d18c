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

#include "sled/oam_modes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "sled/errors.hpp"
#include "sled/parallel.hpp"
#include "sled/quadrature.hpp"

namespace sled {
namespace {

constexpr double kKappaRelTol = 1e-10;

void check_mode(ModeIndex mode) {
  if (mode.m < 0 || mode.m > kMaxRadialIndex || std::abs(mode.l) > kMaxOam)
    throw DomainError("LG mode outside supported range m in [0, 8], |l| <= 12");
}

// Radius beyond which the product of two profiles is below double precision
// relative to its peak: Gaussian envelope exp(-38) widened for the
// polynomial prefactors of higher modes.
double truncation_radius(ModeIndex a, ModeIndex b, double waist) {
  const double x = 38.0 + 2.0 * (a.m + b.m) + std::abs(a.l) + std::abs(b.l);
  return waist * std::sqrt(x);
}

std::pair<ModeIndex, ModeIndex> ordered(ModeIndex a, ModeIndex b) {
  return b < a ? std::pair{b, a} : std::pair{a, b};
}

}  // namespace

double AnnulusGeometry::default_waist(double r_inner, double r_outer) {
  return (r_inner + r_outer) / std::sqrt(2.0);
}

AnnulusGeometry AnnulusGeometry::full_plane(double waist) {
  return {0.0, std::numeric_limits<double>::infinity(), waist};
}

void AnnulusGeometry::validate() const {
  if (!(r_inner >= 0.0)) throw DomainError("geometry: r_inner must be >= 0");
  if (!(r_outer >= r_inner))
    throw DomainError("geometry: r_outer must be >= r_inner");
  if (!(waist > 0.0) || !std::isfinite(waist))
    throw DomainError("geometry: waist must be > 0");
}

double laguerre(int m, int alpha, double x) {
  if (m < 0) throw DomainError("laguerre: negative degree");
  double prev = 1.0;
  if (m == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < m; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) /
                        (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double lg_radial(ModeIndex mode, double waist, double r) {
  check_mode(mode);
  if (!(waist > 0.0)) throw DomainError("lg_radial: waist must be > 0");
  if (r < 0.0) throw DomainError("lg_radial: negative radius");
  const int al = std::abs(mode.l);
  // m!/(m+|l|)! as a running product
  double ratio = 1.0;
  for (int k = mode.m + 1; k <= mode.m + al; ++k) ratio /= k;
  const double norm = 2.0 / waist * std::sqrt(ratio);
  const double s = r / waist;
  const double x = 2.0 * s * s;
  return norm * std::pow(std::sqrt(2.0) * s, al) * std::exp(-s * s) *
         laguerre(mode.m, al, x);
}

double kappa(ModeIndex a, ModeIndex b, const AnnulusGeometry& geom) {
  check_mode(a);
  check_mode(b);
  geom.validate();
  const double upper =
      std::min(geom.r_outer, truncation_radius(a, b, geom.waist));
  if (!(upper > geom.r_inner)) return 0.0;
  const double w = geom.waist;
  auto integrand = [&](double r) {
    return lg_radial(a, w, r) * lg_radial(b, w, r) * r;
  };
  return adaptive_simpson(integrand, geom.r_inner, upper, kKappaRelTol).value;
}

double k_factor(ModeIndex alpha, ModeIndex beta, ModeIndex gamma,
                ModeIndex delta, const AnnulusGeometry& geom) {
  return kappa(alpha, beta, geom) * kappa(gamma, delta, geom);
}

KappaTable::KappaTable(AnnulusGeometry geom) : geom_(geom) { geom_.validate(); }

KappaTable::KappaTable(AnnulusGeometry geom, const std::vector<ModeIndex>& modes,
                       unsigned threads)
    : KappaTable(geom) {
  std::vector<std::pair<ModeIndex, ModeIndex>> keys;
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t j = i; j < modes.size(); ++j)
      keys.push_back(ordered(modes[i], modes[j]));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<double> values(keys.size());
  parallel_for(keys.size(), threads, [&](std::size_t i) {
    values[i] = kappa(keys[i].first, keys[i].second, geom_);
  });
  for (std::size_t i = 0; i < keys.size(); ++i) entries_.emplace(keys[i], values[i]);
}

double KappaTable::operator()(ModeIndex a, ModeIndex b) const {
  const auto key = ordered(a, b);
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  const double v = kappa(key.first, key.second, geom_);
  entries_.emplace(key, v);
  return v;
}

double KappaTable::k_factor(ModeIndex alpha, ModeIndex beta, ModeIndex gamma,
                            ModeIndex delta) const {
  return (*this)(alpha, beta) * (*this)(gamma, delta);
}

}  // namespace sled
