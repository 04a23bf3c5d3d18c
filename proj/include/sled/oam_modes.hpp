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

#ifndef SLED_OAM_MODES_HPP
#define SLED_OAM_MODES_HPP

#include <compare>
#include <limits>
#include <map>
#include <utility>
#include <vector>

namespace sled {

/// Laguerre-Gaussian label: m radial nodes, l units of orbital angular
/// momentum. Supported range is m <= 8, |l| <= 12.
struct ModeIndex {
  int m = 0;
  int l = 0;

  auto operator<=>(const ModeIndex&) const = default;
};

inline constexpr int kMaxRadialIndex = 8;
inline constexpr int kMaxOam = 12;

/// Emitting annulus and beam waist, lengths in micrometres. r_outer may be
/// +infinity for a full-plane overlap.
struct AnnulusGeometry {
  double r_inner = 4.0;
  double r_outer = 5.0;
  double waist = 9.0 / 1.4142135623730951;

  /// Waist that puts the l = 1 intensity maximum mid-annulus.
  static double default_waist(double r_inner, double r_outer);
  static AnnulusGeometry full_plane(double waist);

  /// Accepts r_inner == r_outer (empty support) so that overlaps over a
  /// degenerate ring can be formed; they evaluate to 0.
  void validate() const;
};

/// Generalized Laguerre polynomial L_m^alpha(x) by upward recurrence.
double laguerre(int m, int alpha, double x);

/// Real LG radial amplitude, normalized so that int_0^inf u^2 r dr = 1.
double lg_radial(ModeIndex mode, double waist, double r);

/// int u_a u_b r dr over [r_inner, r_outer]; adaptive Simpson at 1e-10.
double kappa(ModeIndex a, ModeIndex b, const AnnulusGeometry& geom);

/// K = kappa(alpha, beta) * kappa(gamma, delta).
double k_factor(ModeIndex alpha, ModeIndex beta, ModeIndex gamma,
                ModeIndex delta, const AnnulusGeometry& geom);

/// Memoized kappa values for one geometry. Keys are stored with the smaller
/// index first, so lookups are symmetric by construction.
class KappaTable {
 public:
  explicit KappaTable(AnnulusGeometry geom);

  /// Precomputes every pair among `modes`, optionally in parallel.
  KappaTable(AnnulusGeometry geom, const std::vector<ModeIndex>& modes,
             unsigned threads = 1);

  const AnnulusGeometry& geometry() const { return geom_; }
  double operator()(ModeIndex a, ModeIndex b) const;
  double k_factor(ModeIndex alpha, ModeIndex beta, ModeIndex gamma,
                  ModeIndex delta) const;
  std::size_t size() const { return entries_.size(); }

 private:
  AnnulusGeometry geom_;
  mutable std::map<std::pair<ModeIndex, ModeIndex>, double> entries_;
};

}  // namespace sled

#endif  // SLED_OAM_MODES_HPP
