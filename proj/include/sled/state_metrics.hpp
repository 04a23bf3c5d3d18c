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

#ifndef SLED_STATE_METRICS_HPP
#define SLED_STATE_METRICS_HPP

#include <string>
#include <vector>

#include "sled/complex_matrix.hpp"
#include "sled/pair_state.hpp"

namespace sled {

struct HermitianEigen {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k belongs to eigenvalues[k]
  int sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Sweeps until the off-diagonal Frobenius norm falls below 1e-13 of the
/// matrix norm. Throws ContractError if max|A - A^dagger| exceeds 1e-10 of
/// max|A|, ConvergenceError after 100 sweeps.
HermitianEigen eigh(const ComplexMatrix& a);

/// V diag(sqrt(lambda)) V^dagger for a PSD Hermitian matrix. Eigenvalues in
/// [-1e-10, 0) are clipped to 0, as are positive ones at rounding level
/// (n * 8 eps * max|lambda|); anything below -1e-10 is rejected with
/// NumericalError.
ComplexMatrix sqrtm_psd(const ComplexMatrix& a);

/// Pure target state over an OamPairBasis.
struct TargetState {
  OamPairBasis basis;
  std::vector<cplx> coefficients;
  std::string description;

  /// (|1,0> + |0,1>)/sqrt(2) over `basis` (which must contain both pairs).
  static TargetState bell_10_01(const OamPairBasis& basis);
  void validate() const;
};

struct FidelityResult {
  double jozsa;     // (Tr sqrt(sqrt(rho_t) rho sqrt(rho_t)))^2
  double shortcut;  // <psi|rho|psi>
};

/// Evaluates both forms and throws NumericalError if they disagree by more
/// than 1e-9. Requires |tr rho - 1| <= 1e-9 and matching bases.
FidelityResult fidelity_both(const PairDensityMatrix& rho,
                             const TargetState& target);

/// Jozsa fidelity, clamped to [0, 1].
double fidelity(const PairDensityMatrix& rho, const TargetState& target);

struct FidelityTable {
  std::vector<double> temperatures;
  std::vector<double> enhancements;
  std::vector<double> values;  // row-major by temperature

  double at(std::size_t it, std::size_t ie) const {
    return values[it * enhancements.size() + ie];
  }
};

struct FidelityScenario {
  WindingNumber ls{1};
  OamPairBasis basis = OamPairBasis::from_labels({0, 1});
  AnnulusGeometry geometry;
  double detuning = 5.0;
  JunctionParams junction;
  KIntegration k;
};

/// F(t, L/L_phi) of rho_total against `target` on every (t, enhancement).
FidelityTable fidelity_curve(const std::vector<double>& temperatures,
                             const std::vector<double>& enhancements,
                             const FidelityScenario& scenario,
                             const TargetState& target, unsigned threads = 1);

struct DensityMatrixCheck {
  double hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
  double trace = 0.0;
};

DensityMatrixCheck inspect(const PairDensityMatrix& m);

}  // namespace sled

#endif  // SLED_STATE_METRICS_HPP
