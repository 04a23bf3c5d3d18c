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

#include "sled/bcs_physics.hpp"

#include <cmath>
#include <numbers>

#include "sled/errors.hpp"

namespace sled {

void SuperconductorParams::validate() const {
  if (!(delta0_mev > 0.0) || !std::isfinite(delta0_mev))
    throw DomainError("superconductor: delta0 must be > 0");
  if (!(tc_k > 0.0) || !std::isfinite(tc_k))
    throw DomainError("superconductor: tc must be > 0");
}

void BandParams::validate() const {
  const char* name = label == Band::conduction ? "conduction" : "valence";
  if (!(effective_mass > 0.0))
    throw DomainError(std::string(name) + " band: effective mass must be > 0");
  if (!(quasi_fermi_level_mev > 0.0))
    throw DomainError(std::string(name) +
                      " band: quasi-Fermi level must be > 0");
}

JunctionParams JunctionParams::from_band_gap(const SuperconductorParams& sc,
                                             const BandParams& conduction,
                                             const BandParams& valence,
                                             double band_gap_mev,
                                             double dephasing_time_fs) {
  JunctionParams jp;
  jp.sc = sc;
  jp.conduction = conduction;
  jp.conduction.label = Band::conduction;
  jp.valence = valence;
  jp.valence.label = Band::valence;
  jp.dephasing_time_fs = dephasing_time_fs;
  jp.offset_energy_mev = band_gap_mev +
                         std::abs(conduction.quasi_fermi_level_mev) +
                         std::abs(valence.quasi_fermi_level_mev);
  jp.validate();
  return jp;
}

double JunctionParams::broadening_mev() const {
  return constants::kHbarMeVFs / dephasing_time_fs;
}

void JunctionParams::validate() const {
  sc.validate();
  conduction.validate();
  valence.validate();
  if (!(dephasing_time_fs > 0.0))
    throw DomainError("junction: dephasing time must be > 0");
  if (!(offset_energy_mev > 0.0))
    throw DomainError("junction: offset energy must be > 0");
  if (!(valence_gap_scale > 0.0))
    throw DomainError("junction: valence gap scale must be > 0");
}

JunctionParams material_preset(const std::string& name) {
  if (name != "GaAs-Nb")
    throw DomainError("unknown material preset '" + name + "'");
  constexpr double kDensity = 1e12;
  SuperconductorParams sc{1.4, 9.2};
  BandParams cb{0.067, fermi_level_from_density(kDensity, 0.067),
                Band::conduction};
  BandParams vb{0.45, fermi_level_from_density(kDensity, 0.45), Band::valence};
  return JunctionParams::from_band_gap(sc, cb, vb, 1519.0, 1000.0);
}

double gap_at_temperature(const SuperconductorParams& sc, double t_kelvin) {
  if (t_kelvin < 0.0 || std::isnan(t_kelvin))
    throw DomainError("gap_at_temperature: negative temperature");
  if (t_kelvin == 0.0) return sc.delta0_mev;
  if (t_kelvin >= sc.tc_k) return 0.0;
  return sc.delta0_mev * std::tanh(1.74 * std::sqrt(sc.tc_k / t_kelvin - 1.0));
}

double quasiparticle_energy(double xi_mev, double delta_mev) {
  return std::hypot(delta_mev, xi_mev);
}

CoherenceFactors coherence_factors(double xi_mev, double delta_mev) {
  if (delta_mev < 0.0)
    throw DomainError("coherence_factors: negative gap");
  if (delta_mev == 0.0 && xi_mev == 0.0)
    throw DomainError("coherence_factors: singular point xi = delta = 0");
  const double ratio = xi_mev / quasiparticle_energy(xi_mev, delta_mev);
  const double u_sq = 0.5 * (1.0 + ratio);
  return {u_sq, 1.0 - u_sq};
}

double fermi_occupation(double e_mev, double t_kelvin) {
  if (t_kelvin < 0.0)
    throw DomainError("fermi_occupation: negative temperature");
  if (t_kelvin == 0.0) {
    if (e_mev < 0.0) return 1.0;
    return e_mev == 0.0 ? 0.5 : 0.0;
  }
  const double x = e_mev / (constants::kBoltzmannMeVPerK * t_kelvin);
  if (x > 0.0) {
    const double ex = std::exp(-x);
    return ex / (1.0 + ex);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double fermi_level_from_density(double density_cm2, double effective_mass) {
  if (!(density_cm2 > 0.0) || !(effective_mass > 0.0))
    throw DomainError("fermi_level_from_density: density and mass must be > 0");
  const double n_m2 = density_cm2 * 1e4;
  const double hbar = constants::kHbarJs;
  const double joules = std::numbers::pi * hbar * hbar * n_m2 /
                        (effective_mass * constants::kElectronMassKg);
  return joules / constants::kElementaryChargeC * 1e3;
}

}  // namespace sled
