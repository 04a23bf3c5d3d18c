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

#ifndef SLED_PAIR_STATE_HPP
#define SLED_PAIR_STATE_HPP

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "sled/bcs_physics.hpp"
#include "sled/complex_matrix.hpp"
#include "sled/oam_modes.hpp"
#include "sled/spectral_rates.hpp"

// Photon-pair OAM density matrices. Pair labels are (l1, l2) with m = 0 for
// both photons; polarization is marginalized (any fixed opposite-polarization
// pair gives the same OAM matrix).

namespace sled {

struct OamPair {
  int l1 = 0;
  int l2 = 0;

  int total() const { return l1 + l2; }
  auto operator<=>(const OamPair&) const = default;
};

/// Ordered list of pair labels, lexicographic in (l1, l2).
class OamPairBasis {
 public:
  /// Every (l1, l2) with |l1|, |l2| <= l_max.
  static OamPairBasis full(int l_max);
  /// Every (l1, l2) with both labels drawn from `ls`.
  static OamPairBasis from_labels(std::vector<int> ls);
  /// Sorts and validates; rejects duplicates.
  explicit OamPairBasis(std::vector<OamPair> pairs);

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const OamPair& operator[](std::size_t i) const { return pairs_[i]; }
  const std::vector<OamPair>& pairs() const { return pairs_; }
  std::optional<std::size_t> index_of(OamPair p) const;
  /// Largest |l| present.
  int l_max() const;

  bool operator==(const OamPairBasis&) const = default;

 private:
  std::vector<OamPair> pairs_;
};

/// Density matrix over an OamPairBasis.
class PairDensityMatrix {
 public:
  PairDensityMatrix(OamPairBasis basis, ComplexMatrix entries);

  const OamPairBasis& basis() const { return basis_; }
  const ComplexMatrix& entries() const { return entries_; }
  std::size_t size() const { return basis_.size(); }
  cplx operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  double trace() const { return entries_.trace().real(); }

  /// Pair labels whose diagonal entry is nonzero.
  std::vector<OamPair> populated_pairs() const;

  bool operator==(const PairDensityMatrix&) const = default;

 private:
  OamPairBasis basis_;
  ComplexMatrix entries_;
};

/// Qubit a|cw> + b|ccw>. The clockwise state carries +l_s.
struct QubitState {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  /// Builds from (magnitude, phase) pairs, rescaling the magnitudes to unit
  /// norm. Phases are in units of pi; multiples of 1/2 are evaluated exactly.
  static QubitState from_polar(double mag_a, double phase_a_pi, double mag_b,
                               double phase_b_pi);
  void validate() const;
};

/// e^{i pi x}, exact when 2x is an integer.
cplx unit_phase(double x_over_pi);

struct WindingNumber {
  int ls = 0;
};

/// K^cp delta(l_a+l_b, l_s) delta(l_c+l_d, l_s); S^cp is factored out.
/// Throws NumericalError when no pair in the basis sums to l_s.
PairDensityMatrix rho_cp(WindingNumber ls, const OamPairBasis& basis,
                         const KappaTable& kappa);
PairDensityMatrix rho_cp(WindingNumber ls, const OamPairBasis& basis,
                         const AnnulusGeometry& geom);

/// Diagonal K(a, b, a, b) at pair (l_a, l_b).
PairDensityMatrix rho_bqp(const OamPairBasis& basis, const KappaTable& kappa);
PairDensityMatrix rho_bqp(const OamPairBasis& basis,
                          const AnnulusGeometry& geom);

/// Qubit-superposition transfer: blocks |a|^2, ab*, a*b, |b|^2 over the +l_s
/// and -l_s selection sectors, each entry scaled by K^cp.
PairDensityMatrix rho_superposition(const QubitState& q, WindingNumber ls,
                                    const OamPairBasis& basis,
                                    const KappaTable& kappa);
PairDensityMatrix rho_superposition(const QubitState& q, WindingNumber ls,
                                    const OamPairBasis& basis,
                                    const AnnulusGeometry& geom);

/// Divides by the trace. Throws NumericalError if trace <= 0.
PairDensityMatrix normalize(const PairDensityMatrix& m);

/// r_bqp rho_bqp/tr + r_cp rho_coherent/tr, renormalized to trace 1.
PairDensityMatrix mix(const PairDensityMatrix& coherent,
                      const PairDensityMatrix& incoherent,
                      const MixingRates& rates);

/// Point at which the mixture is evaluated.
struct EmissionPoint {
  double detuning = 5.0;  // Delta0 units; the pair sits at +-detuning
  double t = 0.5;         // T/Tc
};

PairDensityMatrix rho_total(WindingNumber ls, const OamPairBasis& basis,
                            const AnnulusGeometry& geom, EmissionPoint at,
                            const JunctionParams& jp,
                            const CoherenceParams& coh,
                            const KIntegration& k = {});

PairDensityMatrix rho_total_superposition(const QubitState& q,
                                          WindingNumber ls,
                                          const OamPairBasis& basis,
                                          const AnnulusGeometry& geom,
                                          EmissionPoint at,
                                          const JunctionParams& jp,
                                          const CoherenceParams& coh,
                                          const KIntegration& k = {});

/// Sum of diagonal entries at pairs outside the +-l_s selection sectors.
double off_sector_diagonal_weight(const PairDensityMatrix& m, WindingNumber ls);

}  // namespace sled

#endif  // SLED_PAIR_STATE_HPP
