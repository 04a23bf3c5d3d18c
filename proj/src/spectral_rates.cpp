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

#include "sled/spectral_rates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>

#include "sled/errors.hpp"
#include "sled/parallel.hpp"

namespace sled {
namespace {

using cplx = std::complex<double>;

constexpr double kConvergenceTolerance = 1e-3;

void require_reduced_temperature(double t) {
  if (!(t > 0.0 && t < 1.0))
    throw DomainError("reduced temperature must lie in (0, 1)");
}

// Per-k quantities of one node, energies in units of Delta0.
struct Node {
  std::array<double, 4> occupation;  // fbar fbar, fbar f, f fbar, f f
  std::array<double, 4> shift;       // En+Ep, En-Ep, -En+Ep, -En-Ep
  std::array<double, 4> bqp_weight;
  double anomalous;                  // u_n v_n u_p v_p
};

class Integrand {
 public:
  Integrand(double t, const JunctionParams& jp, const KIntegration& k)
      : jp_(jp) {
    require_reduced_temperature(t);
    jp.validate();
    k.validate();
    d0_ = jp.sc.delta0_mev;
    temperature_k_ = t * jp.sc.tc_k;
    gap_n_ = gap_at_temperature(jp.sc, temperature_k_);
    gap_p_ = gap_n_ * jp.valence_gap_scale;
    gamma_ = jp.broadening_mev() / d0_;
    if (!(gamma_ > 0.0)) throw DomainError("broadening must be > 0");
    mass_ratio_ = jp.conduction.effective_mass / jp.valence.effective_mass;
    eps_max_ = jp.conduction.quasi_fermi_level_mev + k.cutoff_delta0 * d0_;
  }

  double eps_max() const { return eps_max_; }
  double gamma() const { return gamma_; }

  Node node(double eps_mev) const {
    const double xi_n = eps_mev - jp_.conduction.quasi_fermi_level_mev;
    const double xi_p = mass_ratio_ * eps_mev - jp_.valence.quasi_fermi_level_mev;
    const double e_n = quasiparticle_energy(xi_n, gap_n_);
    const double e_p = quasiparticle_energy(xi_p, gap_p_);
    const auto cn = coherence_factors(xi_n, gap_n_);
    const auto cpv = coherence_factors(xi_p, gap_p_);
    const double f_n = fermi_occupation(e_n, temperature_k_);
    const double f_p = fermi_occupation(e_p, temperature_k_);
    const double fb_n = fermi_complement(e_n, temperature_k_);
    const double fb_p = fermi_complement(e_p, temperature_k_);
    const double en = e_n / d0_;
    const double ep = e_p / d0_;

    Node out;
    out.occupation = {fb_n * fb_p, fb_n * f_p, f_n * fb_p, f_n * f_p};
    out.shift = {en + ep, en - ep, -en + ep, -en - ep};
    const double pairing = cn.u_sq * cn.v_sq * cpv.u_sq * cpv.v_sq;
    out.anomalous = std::sqrt(pairing);
    out.bqp_weight = {pairing * out.occupation[0],
                      cn.v_sq * cpv.u_sq * out.occupation[1],
                      cn.u_sq * cpv.v_sq * out.occupation[2],
                      cn.u_sq * cpv.u_sq * out.occupation[3]};
    return out;
  }

  // Both photon orderings of resonance channel j.
  cplx resonance(const Node& n, int j, double d) const {
    const cplx ig(0.0, gamma_);
    return 1.0 / (d - n.shift[j] + ig) + 1.0 / (-d - n.shift[j] + ig);
  }

  cplx cp_amplitude(const Node& n, double d) const {
    cplx sum = 0.0;
    for (int j = 0; j < 4; ++j) sum += n.occupation[j] * resonance(n, j, d);
    return n.anomalous * sum;
  }

  double bqp_density(const Node& n, double d) const {
    double sum = 0.0;
    for (int j = 0; j < 4; ++j) sum += n.bqp_weight[j] * std::norm(resonance(n, j, d));
    return sum;
  }

 private:
  const JunctionParams& jp_;
  double d0_ = 1.0;
  double temperature_k_ = 0.0;
  double gap_n_ = 0.0;
  double gap_p_ = 0.0;
  double gamma_ = 0.0;
  double mass_ratio_ = 1.0;
  double eps_max_ = 0.0;
};

// Trapezoid sums on `nodes` points and on the grid with half the spacing.
// The coarse sum reuses the even points of the fine grid.
template <class Accumulate>
std::pair<double, double> trapezoid_pair(const Integrand& integ, int nodes,
                                         Accumulate&& acc) {
  const std::size_t intervals = static_cast<std::size_t>(nodes) - 1;
  const std::size_t fine_points = 2 * intervals + 1;
  const double eps_max = integ.eps_max();
  auto coarse = acc.zero();
  auto fine = acc.zero();
  for (std::size_t i = 0; i < fine_points; ++i) {
    const double eps = eps_max * static_cast<double>(i) /
                       static_cast<double>(fine_points - 1);
    const auto value = acc(integ.node(eps));
    const double end_weight = (i == 0 || i + 1 == fine_points) ? 0.5 : 1.0;
    fine += end_weight * value;
    if (i % 2 == 0) coarse += end_weight * value;
  }
  return acc.finish(coarse, fine, intervals);
}

void check_convergence(const char* what, double d, double t, double coarse,
                       double fine) {
  const double scale = std::max(std::abs(coarse), std::abs(fine));
  if (std::abs(fine - coarse) > kConvergenceTolerance * scale ||
      !std::isfinite(coarse) || !std::isfinite(fine)) {
    std::ostringstream msg;
    msg << what << ": k-quadrature not converged at d=" << d << ", t=" << t
        << " (coarse " << coarse << ", refined " << fine << ")";
    throw ConvergenceError(msg.str(), coarse, fine);
  }
}

}  // namespace

void KIntegration::validate() const {
  if (nodes < 64) throw DomainError("k-integration: node count must be >= 64");
  if (!(cutoff_delta0 > 0.0))
    throw DomainError("k-integration: cutoff must be > 0");
}

std::vector<double> SpectralGrid::symmetric_detunings(double half_width,
                                                      std::size_t count) {
  if (count < 2 || !(half_width > 0.0))
    throw DomainError("symmetric_detunings: need count >= 2 and width > 0");
  std::vector<double> d(count);
  const auto denom = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double k = 2.0 * static_cast<double>(i) - denom;
    d[i] = half_width * k / denom;
  }
  return d;
}

void SpectralGrid::validate() const {
  if (detunings.empty()) throw DomainError("grid: no detunings");
  if (temperatures.empty()) throw DomainError("grid: no temperatures");
  for (std::size_t i = 1; i < detunings.size(); ++i)
    if (!(detunings[i] > detunings[i - 1]))
      throw DomainError("grid: detunings must be strictly increasing");
  double scale = 0.0;
  for (double d : detunings) scale = std::max(scale, std::abs(d));
  const std::size_t n = detunings.size();
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(detunings[i] + detunings[n - 1 - i]) > 1e-9 * scale)
      throw DomainError("grid: detunings must be symmetric about 0");
  for (double t : temperatures)
    if (!(t > 0.0 && t < 1.0))
      throw DomainError("grid: temperatures must lie in (0, 1)");
  k.validate();
}

std::string_view to_string(Channel c) { return c == Channel::cp ? "cp" : "bqp"; }

CoherenceParams CoherenceParams::from_lengths(double ring_circumference,
                                              double dephasing_length) {
  if (!(ring_circumference > 0.0) || !(dephasing_length > 0.0))
    throw DomainError("coherence: lengths must be > 0");
  CoherenceParams c{ring_circumference / dephasing_length};
  c.validate();
  return c;
}

void CoherenceParams::validate() const {
  if (!(enhancement >= 1.0) || !std::isfinite(enhancement))
    throw DomainError("coherence: enhancement L/L_phi must be >= 1");
}

double RateSurface::max_normalized() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, v / normalization);
  return m;
}

double s_cp(double d, double t, const JunctionParams& jp,
            const KIntegration& k) {
  const Integrand integ(t, jp, k);
  struct {
    const Integrand& integ;
    double d;
    cplx zero() const { return 0.0; }
    cplx operator()(const Node& n) const { return integ.cp_amplitude(n, d); }
    std::pair<double, double> finish(cplx coarse, cplx fine,
                                     std::size_t intervals) const {
      // Unit-interval step; the caller rescales to the eps/Delta0 span.
      const double h = 1.0 / static_cast<double>(intervals);
      return {std::norm(coarse * h), std::norm(fine * (0.5 * h))};
    }
  } acc{integ, d};
  auto [coarse, fine] = trapezoid_pair(integ, k.nodes, acc);
  const double span = integ.eps_max() / jp.sc.delta0_mev;
  coarse *= span * span;
  fine *= span * span;
  check_convergence("s_cp", d, t, coarse, fine);
  return coarse;
}

double s_bqp(double d, double t, const JunctionParams& jp,
             const KIntegration& k) {
  const Integrand integ(t, jp, k);
  struct {
    const Integrand& integ;
    double d;
    double zero() const { return 0.0; }
    double operator()(const Node& n) const { return integ.bqp_density(n, d); }
    std::pair<double, double> finish(double coarse, double fine,
                                     std::size_t intervals) const {
      const double h = 1.0 / static_cast<double>(intervals);
      return {coarse * h, fine * (0.5 * h)};
    }
  } acc{integ, d};
  auto [coarse, fine] = trapezoid_pair(integ, k.nodes, acc);
  const double span = integ.eps_max() / jp.sc.delta0_mev;
  coarse *= span;
  fine *= span;
  check_convergence("s_bqp", d, t, coarse, fine);
  return coarse;
}

double spectral_rate(Channel c, double d, double t, const JunctionParams& jp,
                     const KIntegration& k) {
  return c == Channel::cp ? s_cp(d, t, jp, k) : s_bqp(d, t, jp, k);
}

namespace {

std::vector<double> evaluate_surface(const SpectralGrid& grid,
                                     const JunctionParams& jp, Channel channel,
                                     double scale, unsigned threads) {
  const std::size_t cols = grid.detunings.size();
  std::vector<double> values(grid.temperatures.size() * cols);
  parallel_for(values.size(), threads, [&](std::size_t idx) {
    const double t = grid.temperatures[idx / cols];
    const double d = grid.detunings[idx % cols];
    try {
      values[idx] = scale * spectral_rate(channel, d, t, jp, grid.k);
    } catch (const Error&) {
      std::ostringstream ctx;
      ctx << "[grid point t_index=" << idx / cols << ", d_index=" << idx % cols
          << "]";
      rethrow_with_context(ctx.str());
    }
  });
  return values;
}

double surface_max(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace

SurfacePair rate_surfaces(const SpectralGrid& grid, const JunctionParams& jp,
                          const CoherenceParams& coh, unsigned threads) {
  grid.validate();
  jp.validate();
  coh.validate();
  SurfacePair out;
  out.cp.grid = grid;
  out.cp.channel = Channel::cp;
  out.cp.values =
      evaluate_surface(grid, jp, Channel::cp, coh.enhancement, threads);
  out.bqp.grid = grid;
  out.bqp.channel = Channel::bqp;
  out.bqp.values = evaluate_surface(grid, jp, Channel::bqp, 1.0, threads);
  const double norm = surface_max(out.cp.values);
  if (!(norm > 0.0))
    throw NumericalError("rate_surfaces: CP surface is identically zero");
  out.cp.normalization = norm;
  out.bqp.normalization = norm;
  return out;
}

RateSurface rate_surface(const SpectralGrid& grid, const JunctionParams& jp,
                         Channel channel, const CoherenceParams& coh,
                         unsigned threads) {
  if (channel == Channel::bqp)
    return rate_surfaces(grid, jp, coh, threads).bqp;
  grid.validate();
  jp.validate();
  coh.validate();
  RateSurface s;
  s.grid = grid;
  s.channel = Channel::cp;
  s.values = evaluate_surface(grid, jp, Channel::cp, coh.enhancement, threads);
  s.normalization = surface_max(s.values);
  if (!(s.normalization > 0.0))
    throw NumericalError("rate_surface: CP surface is identically zero");
  return s;
}

MixingRates mixing_rates(double d, double t, const JunctionParams& jp,
                         const CoherenceParams& coh, const KIntegration& k) {
  coh.validate();
  return {coh.enhancement * s_cp(d, t, jp, k), s_bqp(d, t, jp, k)};
}

}  // namespace sled
