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

#include "sled/pair_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sled/errors.hpp"

namespace sled {
namespace {

double pair_kappa(const KappaTable& kappa, const OamPair& p) {
  return kappa({0, p.l1}, {0, p.l2});
}

std::vector<ModeIndex> modes_of(const OamPairBasis& basis) {
  std::vector<ModeIndex> modes;
  for (const auto& p : basis.pairs()) {
    modes.push_back({0, p.l1});
    modes.push_back({0, p.l2});
  }
  std::sort(modes.begin(), modes.end());
  modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
  return modes;
}

bool sector_populated(const OamPairBasis& basis, int total) {
  return std::any_of(basis.pairs().begin(), basis.pairs().end(),
                     [&](const OamPair& p) { return p.total() == total; });
}

void require_sector(const OamPairBasis& basis, int total) {
  if (!sector_populated(basis, total)) {
    std::ostringstream msg;
    msg << "empty selection sector: no pair in the basis has l1 + l2 = "
        << total;
    throw NumericalError(msg.str());
  }
}

void require_nonempty(const OamPairBasis& basis) {
  if (basis.empty()) throw ContractError("OAM pair basis is empty");
}

}  // namespace

OamPairBasis OamPairBasis::full(int l_max) {
  if (l_max < 0) throw DomainError("l_max must be >= 0");
  std::vector<int> ls;
  for (int l = -l_max; l <= l_max; ++l) ls.push_back(l);
  return from_labels(std::move(ls));
}

OamPairBasis OamPairBasis::from_labels(std::vector<int> ls) {
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  std::vector<OamPair> pairs;
  for (int a : ls)
    for (int b : ls) pairs.push_back({a, b});
  return OamPairBasis(std::move(pairs));
}

OamPairBasis::OamPairBasis(std::vector<OamPair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  if (std::adjacent_find(pairs_.begin(), pairs_.end()) != pairs_.end())
    throw ContractError("OAM pair basis contains duplicates");
  for (const auto& p : pairs_)
    if (std::abs(p.l1) > kMaxOam || std::abs(p.l2) > kMaxOam)
      throw DomainError("OAM label outside supported range |l| <= 12");
}

std::optional<std::size_t> OamPairBasis::index_of(OamPair p) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
  if (it == pairs_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - pairs_.begin());
}

int OamPairBasis::l_max() const {
  int m = 0;
  for (const auto& p : pairs_) m = std::max({m, std::abs(p.l1), std::abs(p.l2)});
  return m;
}

PairDensityMatrix::PairDensityMatrix(OamPairBasis basis, ComplexMatrix entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  if (entries_.size() != basis_.size())
    throw ContractError("density matrix size does not match its basis");
}

std::vector<OamPair> PairDensityMatrix::populated_pairs() const {
  std::vector<OamPair> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (entries_(i, i) != cplx{}) out.push_back(basis_[i]);
  return out;
}

cplx unit_phase(double x_over_pi) {
  const double twice = 2.0 * x_over_pi;
  if (twice == std::round(twice) && std::abs(twice) < 1e15) {
    const auto quarter = static_cast<long long>(std::round(twice));
    switch (((quarter % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, std::numbers::pi * x_over_pi);
}

QubitState QubitState::from_polar(double mag_a, double phase_a_pi, double mag_b,
                                  double phase_b_pi) {
  if (!(mag_a >= 0.0) || !(mag_b >= 0.0))
    throw DomainError("qubit: magnitudes must be >= 0");
  const double norm = std::hypot(mag_a, mag_b);
  if (!(norm > 0.0)) throw DomainError("qubit: both amplitudes are zero");
  QubitState q{mag_a / norm * unit_phase(phase_a_pi),
               mag_b / norm * unit_phase(phase_b_pi)};
  q.validate();
  return q;
}

void QubitState::validate() const {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-12)
    throw DomainError("qubit: |a|^2 + |b|^2 must equal 1");
}

PairDensityMatrix rho_cp(WindingNumber ls, const OamPairBasis& basis,
                         const KappaTable& kappa) {
  require_nonempty(basis);
  require_sector(basis, ls.ls);
  const std::size_t n = basis.size();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (basis[i].total() != ls.ls) continue;
    const double ki = pair_kappa(kappa, basis[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (basis[j].total() == ls.ls) m(i, j) = ki * pair_kappa(kappa, basis[j]);
  }
  return {basis, std::move(m)};
}

PairDensityMatrix rho_cp(WindingNumber ls, const OamPairBasis& basis,
                         const AnnulusGeometry& geom) {
  return rho_cp(ls, basis, KappaTable(geom, modes_of(basis)));
}

PairDensityMatrix rho_bqp(const OamPairBasis& basis, const KappaTable& kappa) {
  require_nonempty(basis);
  const std::size_t n = basis.size();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = pair_kappa(kappa, basis[i]);
    m(i, i) = k * k;
  }
  return {basis, std::move(m)};
}

PairDensityMatrix rho_bqp(const OamPairBasis& basis,
                          const AnnulusGeometry& geom) {
  return rho_bqp(basis, KappaTable(geom, modes_of(basis)));
}

PairDensityMatrix rho_superposition(const QubitState& q, WindingNumber ls,
                                    const OamPairBasis& basis,
                                    const KappaTable& kappa) {
  q.validate();
  require_nonempty(basis);
  if (q.a != cplx{}) require_sector(basis, ls.ls);
  if (q.b != cplx{}) require_sector(basis, -ls.ls);

  const cplx aa = std::norm(q.a);
  const cplx ab = q.a * std::conj(q.b);
  const cplx ba = std::conj(q.a) * q.b;
  const cplx bb = std::norm(q.b);

  const std::size_t n = basis.size();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool i_plus = basis[i].total() == ls.ls;
    const bool i_minus = basis[i].total() == -ls.ls;
    if (!i_plus && !i_minus) continue;
    const double ki = pair_kappa(kappa, basis[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const bool j_plus = basis[j].total() == ls.ls;
      const bool j_minus = basis[j].total() == -ls.ls;
      if (!j_plus && !j_minus) continue;
      cplx w = 0.0;
      if (i_plus && j_plus) w += aa;
      if (i_plus && j_minus) w += ab;
      if (i_minus && j_plus) w += ba;
      if (i_minus && j_minus) w += bb;
      m(i, j) = (ki * pair_kappa(kappa, basis[j])) * w;
    }
  }
  return {basis, std::move(m)};
}

PairDensityMatrix rho_superposition(const QubitState& q, WindingNumber ls,
                                    const OamPairBasis& basis,
                                    const AnnulusGeometry& geom) {
  return rho_superposition(q, ls, basis, KappaTable(geom, modes_of(basis)));
}

PairDensityMatrix normalize(const PairDensityMatrix& m) {
  const double tr = m.trace();
  if (!(tr > 0.0))
    throw NumericalError("normalize: trace must be > 0");
  return {m.basis(), m.entries() * cplx(1.0 / tr)};
}

PairDensityMatrix mix(const PairDensityMatrix& coherent,
                      const PairDensityMatrix& incoherent,
                      const MixingRates& rates) {
  if (coherent.basis() != incoherent.basis())
    throw ContractError("mix: component bases differ");
  const double total = rates.r_cp + rates.r_bqp;
  if (!(total > 0.0) || rates.r_cp < 0.0 || rates.r_bqp < 0.0)
    throw NumericalError("degenerate mixture: total emission rate is zero");
  const auto cp = normalize(coherent);
  const auto bqp = normalize(incoherent);
  ComplexMatrix m = cp.entries() * cplx(rates.r_cp / total) +
                    bqp.entries() * cplx(rates.r_bqp / total);
  return normalize({coherent.basis(), std::move(m)});
}

PairDensityMatrix rho_total(WindingNumber ls, const OamPairBasis& basis,
                            const AnnulusGeometry& geom, EmissionPoint at,
                            const JunctionParams& jp,
                            const CoherenceParams& coh,
                            const KIntegration& k) {
  const KappaTable kappa(geom, modes_of(basis));
  const auto rates = mixing_rates(at.detuning, at.t, jp, coh, k);
  return mix(rho_cp(ls, basis, kappa), rho_bqp(basis, kappa), rates);
}

PairDensityMatrix rho_total_superposition(const QubitState& q,
                                          WindingNumber ls,
                                          const OamPairBasis& basis,
                                          const AnnulusGeometry& geom,
                                          EmissionPoint at,
                                          const JunctionParams& jp,
                                          const CoherenceParams& coh,
                                          const KIntegration& k) {
  const KappaTable kappa(geom, modes_of(basis));
  const auto rates = mixing_rates(at.detuning, at.t, jp, coh, k);
  return mix(rho_superposition(q, ls, basis, kappa), rho_bqp(basis, kappa),
             rates);
}

double off_sector_diagonal_weight(const PairDensityMatrix& m, WindingNumber ls) {
  double w = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const int total = m.basis()[i].total();
    if (total != ls.ls && total != -ls.ls) w += m(i, i).real();
  }
  return w;
}

}  // namespace sled
