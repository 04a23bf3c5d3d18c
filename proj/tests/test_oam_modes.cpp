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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "sled/errors.hpp"
#include "sled/oam_modes.hpp"

using namespace sled;

namespace {

// Midpoint rule, independent of the adaptive integrator under test.
double riemann_kappa(ModeIndex a, ModeIndex b, double lo, double hi, double w,
                     int nodes, double* l1 = nullptr) {
  const double h = (hi - lo) / nodes;
  double sum = 0.0, abs_sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double r = lo + (i + 0.5) * h;
    const double f = lg_radial(a, w, r) * lg_radial(b, w, r) * r;
    sum += f;
    abs_sum += std::abs(f);
  }
  if (l1) *l1 = abs_sum * h;
  return sum * h;
}

}  // namespace

TEST_CASE("Laguerre polynomials match closed forms") {
  for (double x : {0.0, 0.3, 1.7, 6.0}) {
    CHECK(laguerre(0, 3, x) == 1.0);
    CHECK(laguerre(1, 2, x) == doctest::Approx(3.0 - x));
    CHECK(laguerre(2, 0, x) == doctest::Approx((x * x - 4 * x + 2) / 2));
    CHECK(laguerre(2, 1, x) == doctest::Approx((x * x - 6 * x + 6) / 2));
  }
}

TEST_CASE("LG radial profile basics") {
  const double w = 3.0;
  CHECK(lg_radial({0, 2}, w, 0.0) == 0.0);
  CHECK(lg_radial({0, -1}, w, 0.0) == 0.0);
  const double centre = std::abs(lg_radial({0, 0}, w, 0.0));
  for (double r = 0.05; r < 10.0; r += 0.05)
    CHECK(std::abs(lg_radial({0, 0}, w, r)) < centre);
  CHECK_THROWS_AS(lg_radial({9, 0}, w, 1.0), DomainError);
  CHECK_THROWS_AS(lg_radial({0, 13}, w, 1.0), DomainError);
  CHECK_THROWS_AS(lg_radial({0, 0}, w, -1.0), DomainError);
}

TEST_CASE("profiles are unit-normalized on the full plane") {
  for (double w : {1.0, 4.0}) {
    const auto full = AnnulusGeometry::full_plane(w);
    for (ModeIndex m : {ModeIndex{0, 2}, ModeIndex{0, 0}, ModeIndex{3, -5},
                        ModeIndex{8, 12}, ModeIndex{1, 1}})
      CHECK(std::abs(kappa(m, m, full) - 1.0) <= 1e-10);
  }
}

TEST_CASE("kappa symmetry and full-plane diagonal dominance") {
  const AnnulusGeometry annulus;
  const auto full = AnnulusGeometry::full_plane(annulus.waist);
  for (int la = -5; la <= 5; ++la)
    for (int lb = -5; lb <= 5; ++lb) {
      const ModeIndex a{0, la}, b{0, lb};
      CHECK(kappa(a, b, annulus) == kappa(b, a, annulus));
      CHECK(std::abs(kappa(a, b, full)) <= 1.0 + 1e-10);
    }
}

TEST_CASE("kappa for annulus (4, 5), w = 4, modes (0,0) x (0,1)") {
  const AnnulusGeometry g{4.0, 5.0, 4.0};
  const double adaptive = kappa({0, 0}, {0, 1}, g);
  const double brute = riemann_kappa({0, 0}, {0, 1}, 4.0, 5.0, 4.0, 1000000);
  CHECK(std::abs(adaptive - brute) <= 1e-8 * std::abs(brute));
}

TEST_CASE("kappa agrees with a 1e6-node Riemann sum on random cases") {
  std::mt19937_64 rng(20261019);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> l_dist(-6, 6);
  std::uniform_int_distribution<int> m_dist(0, 3);
  for (int c = 0; c < 20; ++c) {
    const double ri = 5.0 * u(rng);
    const double ro = ri + 0.5 + 4.5 * u(rng);
    const double w = 1.0 + 7.0 * u(rng);
    // Odd cases include radial nodes; their sign changes make the overlap
    // a difference of comparable lobes, so compare against the L1 mass.
    const bool nodes = c % 2 == 1;
    const ModeIndex a{nodes ? m_dist(rng) : 0, l_dist(rng)};
    const ModeIndex b{nodes ? m_dist(rng) : 0, l_dist(rng)};
    double l1 = 0.0;
    const double brute = riemann_kappa(a, b, ri, ro, w, 1000000, &l1);
    const double adaptive = kappa(a, b, {ri, ro, w});
    INFO("case " << c << " a=(" << a.m << "," << a.l << ") b=(" << b.m << ","
                 << b.l << ") ri=" << ri << " ro=" << ro << " w=" << w);
    CHECK(std::abs(adaptive - brute) <= 1e-8 * (nodes ? l1 : std::abs(brute)));
  }
}

TEST_CASE("kappa is invariant under a common length scale") {
  const AnnulusGeometry g{4.0, 5.0, 6.3};
  for (double s : {0.1, 2.5, 40.0}) {
    const AnnulusGeometry gs{4.0 * s, 5.0 * s, 6.3 * s};
    for (int la = -3; la <= 3; ++la)
      for (int lb = -3; lb <= 3; ++lb)
        CHECK(std::abs(kappa({0, la}, {1, lb}, gs) - kappa({0, la}, {1, lb}, g)) <= 1e-10);
  }
}

TEST_CASE("k_factor") {
  const auto full = AnnulusGeometry::full_plane(2.0);
  const ModeIndex a{0, 1};
  CHECK(std::abs(k_factor(a, a, a, a, full) - 1.0) <= 1e-10);
  const AnnulusGeometry g;
  const ModeIndex al{0, -1}, be{0, 3}, ga{0, 2}, de{0, 0};
  CHECK(k_factor(al, be, ga, de, g) == k_factor(ga, de, al, be, g));
  CHECK(k_factor(al, be, ga, de, g) == kappa(al, be, g) * kappa(ga, de, g));
  const AnnulusGeometry empty{4.0, 4.0, 6.0};
  CHECK(kappa(al, be, empty) == 0.0);
  CHECK(k_factor(al, be, ga, de, empty) == 0.0);
}

TEST_CASE("geometry validation and default waist") {
  CHECK(AnnulusGeometry::default_waist(4.0, 5.0) == doctest::Approx(9.0 / std::sqrt(2.0)));
  CHECK_THROWS_AS((AnnulusGeometry{5.0, 4.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((AnnulusGeometry{-1.0, 4.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((AnnulusGeometry{1.0, 4.0, 0.0}.validate()), DomainError);
  CHECK_NOTHROW(AnnulusGeometry::full_plane(1.0).validate());
}

TEST_CASE("KappaTable memoizes symmetric lookups") {
  const AnnulusGeometry g;
  std::vector<ModeIndex> modes;
  for (int l = -3; l <= 3; ++l) modes.push_back({0, l});
  const KappaTable serial(g, modes, 1);
  const KappaTable parallel(g, modes, 8);
  CHECK(serial.size() == parallel.size());
  for (auto a : modes)
    for (auto b : modes) {
      CHECK(serial(a, b) == parallel(a, b));
      CHECK(serial(a, b) == serial(b, a));
      CHECK(serial(a, b) == kappa(a, b, g));
    }
  const KappaTable lazy(g);
  CHECK(lazy.size() == 0);
  CHECK(lazy({0, 1}, {0, 2}) == kappa({0, 1}, {0, 2}, g));
  CHECK(lazy.size() == 1);
}
