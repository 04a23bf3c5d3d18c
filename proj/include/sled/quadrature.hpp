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

#ifndef SLED_QUADRATURE_HPP
#define SLED_QUADRATURE_HPP

#include <functional>

namespace sled {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// Adaptive Simpson on [a, b] to a relative tolerance.
///
/// The interval is first cut into `initial_panels` panels so integrands that
/// happen to vanish at the first few sample points (vortex profiles at r = 0)
/// are not mistaken for zero. The absolute target is rel_tol times the L1 norm
/// of the integrand, which stays meaningful for overlaps that cancel to ~0.
/// Throws ConvergenceError when the recursion depth is exhausted.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double rel_tol,
                                  int max_depth = 48, int initial_panels = 32);

}  // namespace sled

#endif  // SLED_QUADRATURE_HPP
