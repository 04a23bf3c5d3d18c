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

#ifndef SLED_SPECTRAL_RATES_HPP
#define SLED_SPECTRAL_RATES_HPP

#include <cstddef>
#include <string_view>
#include <vector>

#include "sled/bcs_physics.hpp"

// Two-photon spectral functions of the Cooper-pair (CP) and Bogoliubov
// quasiparticle (BQP) recombination channels.
//
// The photon pair is emitted at (U_os + d, U_os - d); detunings d are given
// in units of Delta0 and temperatures as t = T/Tc. The k-sum over the
// quantum-well states is a trapezoid rule over electron kinetic energy
// eps in [0, mu_n + cutoff*Delta0] (constant 2D density of states), with
// xi_n = eps - mu_n and xi_p = (m_n/m_p) eps - mu_p sharing |k|. All
// energies inside the integrals are measured in units of Delta0, which fixes
// the relative scale of the coherent and incoherent sums.

namespace sled {

struct KIntegration {
  int nodes = 4096;             // trapezoid points
  double cutoff_delta0 = 40.0;  // kinetic-energy window above mu_n, in Delta0

  void validate() const;
};

struct SpectralGrid {
  std::vector<double> detunings;     // strictly increasing, symmetric about 0
  std::vector<double> temperatures;  // t = T/Tc, each in (0, 1)
  KIntegration k;

  /// `count` evenly spaced detunings on [-half_width, half_width], exactly
  /// antisymmetric (d[i] == -d[n-1-i]) with an exact zero for odd counts.
  static std::vector<double> symmetric_detunings(double half_width,
                                                 std::size_t count);

  void validate() const;
};

enum class Channel { cp, bqp };

std::string_view to_string(Channel c);

/// L/L_phi: the CP rate is coherent over the ring circumference L, the BQP
/// rate only over the dephasing length L_phi.
struct CoherenceParams {
  double enhancement = 1.0;

  static CoherenceParams from_lengths(double ring_circumference,
                                      double dephasing_length);
  void validate() const;
};

/// Rates on a (temperature, detuning) lattice, row-major by temperature.
struct RateSurface {
  SpectralGrid grid;
  std::vector<double> values;  // raw channel rates; CP already includes L/L_phi
  Channel channel = Channel::cp;
  double normalization = 1.0;  // max of the CP surface on the same grid

  std::size_t rows() const { return grid.temperatures.size(); }
  std::size_t cols() const { return grid.detunings.size(); }
  double raw(std::size_t it, std::size_t id) const {
    return values[it * cols() + id];
  }
  double normalized(std::size_t it, std::size_t id) const {
    return raw(it, id) / normalization;
  }
  double max_normalized() const;
};

/// |sum_k uvuv * (four resonance terms + (d <-> -d))|^2 at reduced
/// temperature t. Throws ConvergenceError if halving the node spacing moves
/// the value by more than 0.1%.
double s_cp(double d, double t, const JunctionParams& jp,
            const KIntegration& k = {});

/// Incoherent counterpart: the four occupation channels (each with its d and
/// -d photon orderings added coherently) are squared individually and summed
/// over k. Pair creation keeps the anomalous weight u_n v_n u_p v_p; the
/// thermally assisted channels carry v_n^2 u_p^2, u_n^2 v_p^2 and u_n^2 u_p^2.
double s_bqp(double d, double t, const JunctionParams& jp,
             const KIntegration& k = {});

double spectral_rate(Channel c, double d, double t, const JunctionParams& jp,
                     const KIntegration& k = {});

struct SurfacePair {
  RateSurface cp;
  RateSurface bqp;
};

/// Evaluates both channels; the BQP surface is normalized by the CP maximum.
SurfacePair rate_surfaces(const SpectralGrid& grid, const JunctionParams& jp,
                          const CoherenceParams& coh, unsigned threads = 1);

RateSurface rate_surface(const SpectralGrid& grid, const JunctionParams& jp,
                         Channel channel, const CoherenceParams& coh = {},
                         unsigned threads = 1);

struct MixingRates {
  double r_cp;
  double r_bqp;

  double cp_fraction() const { return r_cp / (r_cp + r_bqp); }
};

/// r_cp = (L/L_phi) s_cp(d, t), r_bqp = s_bqp(d, t).
MixingRates mixing_rates(double d, double t, const JunctionParams& jp,
                         const CoherenceParams& coh,
                         const KIntegration& k = {});

}  // namespace sled

#endif  // SLED_SPECTRAL_RATES_HPP
