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

#include "sled/state_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sled/errors.hpp"
#include "sled/parallel.hpp"

namespace sled {
namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kOffDiagonalTolerance = 1e-13;
constexpr int kMaxSweeps = 100;
constexpr double kNegativeEigenvalueFloor = -1e-10;
constexpr double kFidelityAgreement = 1e-9;
constexpr double kTraceTolerance = 1e-9;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p, q): a phase on column q makes
// a(p, q) real, then a real Givens rotation finishes the job.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const cplx phase = std::conj(apq / mag);  // e^{-i phi}

  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const cplx u_pp = c;
  const cplx u_pq = s;
  const cplx u_qp = -s * phase;
  const cplx u_qq = c * phase;

  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * u_pp + akq * u_qp;
    a(k, q) = akp * u_pq + akq * u_qq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
    a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * u_pp + vkq * u_qp;
    v(k, q) = vkp * u_pq + vkq * u_qq;
  }
}

ComplexMatrix reconstruct(const ComplexMatrix& v, const std::vector<double>& d) {
  const std::size_t n = v.size();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        if (d[k] != 0.0) s += v(i, k) * d[k] * std::conj(v(j, k));
      out(i, j) = s;
    }
  return out;
}

}  // namespace

HermitianEigen eigh(const ComplexMatrix& input) {
  const double scale = input.max_abs();
  if (input.hermiticity_defect() > kHermitianTolerance * scale)
    throw ContractError("eigh: matrix is not Hermitian");

  ComplexMatrix a = input.hermitian_part();
  const std::size_t n = a.size();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = kOffDiagonalTolerance * a.frobenius_norm();

  int sweeps = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweeps == kMaxSweeps)
      throw ConvergenceError("eigh: Jacobi sweeps exhausted", off_diagonal_norm(a),
                             target);
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    ++sweeps;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  HermitianEigen out;
  out.sweeps = sweeps;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& a) {
  const auto eig = eigh(a);
  const std::size_t n = a.size();
  double lam_max = 0.0;
  for (double l : eig.eigenvalues) lam_max = std::max(lam_max, std::abs(l));
  const double rounding_floor = static_cast<double>(n) * 8.0 *
                                std::numeric_limits<double>::epsilon() * lam_max;
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double l = eig.eigenvalues[k];
    if (l < kNegativeEigenvalueFloor) {
      std::ostringstream msg;
      msg << "sqrtm_psd: matrix is not positive semidefinite (eigenvalue " << l
          << ")";
      throw NumericalError(msg.str());
    }
    roots[k] = l <= rounding_floor ? 0.0 : std::sqrt(l);
  }
  return reconstruct(eig.eigenvectors, roots);
}

TargetState TargetState::bell_10_01(const OamPairBasis& basis) {
  const auto i10 = basis.index_of({1, 0});
  const auto i01 = basis.index_of({0, 1});
  if (!i10 || !i01)
    throw ContractError("Bell target needs pairs (1,0) and (0,1) in the basis");
  TargetState t{basis, std::vector<cplx>(basis.size()),
                "(|1,0> + |0,1>)/sqrt(2)"};
  t.coefficients[*i10] = 1.0 / std::sqrt(2.0);
  t.coefficients[*i01] = 1.0 / std::sqrt(2.0);
  return t;
}

void TargetState::validate() const {
  if (coefficients.size() != basis.size())
    throw ContractError("target state: coefficient count does not match basis");
  double norm = 0.0;
  for (const auto& c : coefficients) norm += std::norm(c);
  if (std::abs(std::sqrt(norm) - 1.0) > 1e-12)
    throw ContractError("target state: not unit norm");
}

FidelityResult fidelity_both(const PairDensityMatrix& rho,
                             const TargetState& target) {
  target.validate();
  if (rho.basis() != target.basis)
    throw ContractError("fidelity: density matrix and target bases differ");
  if (std::abs(rho.trace() - 1.0) > kTraceTolerance)
    throw ContractError("fidelity: density matrix is not trace-normalized");

  const auto& psi = target.coefficients;
  const double shortcut = inner(psi, multiply(rho.entries(), psi)).real();

  const ComplexMatrix root_target = sqrtm_psd(ComplexMatrix::outer(psi));
  const ComplexMatrix sandwich =
      (root_target * rho.entries() * root_target).hermitian_part();
  const double root_trace = sqrtm_psd(sandwich).trace().real();
  const double jozsa = root_trace * root_trace;

  if (std::abs(jozsa - shortcut) > kFidelityAgreement) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "fidelity: Jozsa form " << jozsa << " disagrees with <psi|rho|psi> "
        << shortcut;
    throw NumericalError(msg.str());
  }
  return {jozsa, shortcut};
}

double fidelity(const PairDensityMatrix& rho, const TargetState& target) {
  return std::clamp(fidelity_both(rho, target).jozsa, 0.0, 1.0);
}

FidelityTable fidelity_curve(const std::vector<double>& temperatures,
                             const std::vector<double>& enhancements,
                             const FidelityScenario& scenario,
                             const TargetState& target, unsigned threads) {
  for (double e : enhancements) CoherenceParams{e}.validate();
  const KappaTable kappa = [&] {
    std::vector<ModeIndex> modes;
    for (int l = -scenario.basis.l_max(); l <= scenario.basis.l_max(); ++l)
      modes.push_back({0, l});
    return KappaTable(scenario.geometry, modes, threads);
  }();
  const auto coherent = rho_cp(scenario.ls, scenario.basis, kappa);
  const auto incoherent = rho_bqp(scenario.basis, kappa);

  // s_cp, s_bqp do not depend on L/L_phi: evaluate once per temperature.
  std::vector<MixingRates> bare(temperatures.size());
  parallel_for(temperatures.size(), threads, [&](std::size_t i) {
    try {
      bare[i] = mixing_rates(scenario.detuning, temperatures[i],
                             scenario.junction, CoherenceParams{1.0}, scenario.k);
    } catch (const Error&) {
      std::ostringstream ctx;
      ctx << "[t=" << temperatures[i] << "]";
      rethrow_with_context(ctx.str());
    }
  });

  FidelityTable table{temperatures, enhancements,
                      std::vector<double>(temperatures.size() * enhancements.size())};
  for (std::size_t it = 0; it < temperatures.size(); ++it)
    for (std::size_t ie = 0; ie < enhancements.size(); ++ie) {
      try {
        const MixingRates rates{enhancements[ie] * bare[it].r_cp, bare[it].r_bqp};
        table.values[it * enhancements.size() + ie] =
            fidelity(mix(coherent, incoherent, rates), target);
      } catch (const Error&) {
        std::ostringstream ctx;
        ctx << "[t=" << temperatures[it] << ", enhancement=" << enhancements[ie]
            << "]";
        rethrow_with_context(ctx.str());
      }
    }
  return table;
}

DensityMatrixCheck inspect(const PairDensityMatrix& m) {
  DensityMatrixCheck c;
  c.hermiticity_defect = m.entries().hermiticity_defect();
  c.trace = m.trace();
  const auto eig = eigh(m.entries());
  c.min_eigenvalue = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  return c;
}

}  // namespace sled
