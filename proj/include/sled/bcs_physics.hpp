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

#ifndef SLED_BCS_PHYSICS_HPP
#define SLED_BCS_PHYSICS_HPP

#include <string>

// Scalar BCS building blocks shared by the spectral formulas.
//
// Unit system: energies in meV, temperatures in K, times in fs.

namespace sled {

namespace constants {
inline constexpr double kBoltzmannMeVPerK = 8.617333262e-2;
inline constexpr double kHbarMeVFs = 658.2119569509067;  // hbar in meV*fs
inline constexpr double kHbarJs = 1.054571817e-34;
inline constexpr double kElectronMassKg = 9.1093837015e-31;
inline constexpr double kElementaryChargeC = 1.602176634e-19;
}  // namespace constants

struct SuperconductorParams {
  double delta0_mev = 1.4;  // zero-temperature induced gap
  double tc_k = 9.2;

  void validate() const;
};

enum class Band { conduction, valence };

struct BandParams {
  double effective_mass = 1.0;  // in units of the free-electron mass
  double quasi_fermi_level_mev = 1.0;  // measured from the band edge
  Band label = Band::conduction;

  void validate() const;
};

/// Everything the spectral formulas need about the junction.
///
/// `valence_gap_scale` multiplies the gap seen by the valence band; it is 1
/// unless a sensitivity study asks for unequal gaps.
struct JunctionParams {
  SuperconductorParams sc;
  BandParams conduction;
  BandParams valence;
  double dephasing_time_fs = 1000.0;
  double offset_energy_mev = 1.0;
  double valence_gap_scale = 1.0;

  /// Builds the junction with U_os = E_gap + |mu_n| + |mu_p|.
  static JunctionParams from_band_gap(const SuperconductorParams& sc,
                                      const BandParams& conduction,
                                      const BandParams& valence,
                                      double band_gap_mev,
                                      double dephasing_time_fs);

  /// Lorentzian broadening energy hbar/tau in meV.
  double broadening_mev() const;

  void validate() const;
};

/// Named material presets. Only "GaAs-Nb" ships: GaAs quantum well
/// (m_n = 0.067, heavy hole m_p = 0.45, 1e12 cm^-2 of each carrier) with
/// Nb contacts (Delta0 = 1.4 meV, Tc = 9.2 K), tau = 1000 fs. The numbers
/// are illustrative; every field can be overridden from the config.
JunctionParams material_preset(const std::string& name);

/// Temperature-narrowed gap Delta0*tanh(1.74*sqrt(Tc/T - 1)); Delta0 at T = 0
/// and 0 for T >= Tc. Throws DomainError for T < 0.
double gap_at_temperature(const SuperconductorParams& sc, double t_kelvin);

double quasiparticle_energy(double xi_mev, double delta_mev);

struct CoherenceFactors {
  double u_sq;
  double v_sq;
};

/// u^2, v^2 = (1 +- xi/E)/2. Throws DomainError at xi = delta = 0.
CoherenceFactors coherence_factors(double xi_mev, double delta_mev);

/// Fermi-Dirac occupation 1/(1+exp(e/kT)); step function at T = 0.
double fermi_occupation(double e_mev, double t_kelvin);

inline double fermi_complement(double e_mev, double t_kelvin) {
  return fermi_occupation(-e_mev, t_kelvin);
}

/// 2D spin-degenerate quasi-Fermi level pi*hbar^2*n/(m*m_e) in meV for an
/// areal density in cm^-2.
double fermi_level_from_density(double density_cm2, double effective_mass);

}  // namespace sled

#endif  // SLED_BCS_PHYSICS_HPP
