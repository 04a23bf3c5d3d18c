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

#include "sled/quadrature.hpp"

#include <cmath>
#include <vector>

#include "sled/errors.hpp"

namespace sled {
namespace {

struct Panel {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

class Integrator {
 public:
  Integrator(const std::function<double(double)>& f, int max_depth)
      : f_(f), max_depth_(max_depth) {}

  double eval(double x) {
    ++evaluations_;
    return f_(x);
  }

  double refine(const Panel& p, double tol, int depth) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = simpson(p.a, m, p.fa, flm, p.fm);
    const double right = simpson(m, p.b, p.fm, frm, p.fb);
    const double delta = left + right - p.whole;
    if (std::abs(delta) <= 15.0 * tol) {
      error_ += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth_) {
      exhausted_ = true;
      error_ += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine({p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth + 1) +
           refine({m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth + 1);
  }

  int evaluations() const { return evaluations_; }
  double error() const { return error_; }
  bool exhausted() const { return exhausted_; }

 private:
  const std::function<double(double)>& f_;
  int max_depth_;
  int evaluations_ = 0;
  double error_ = 0.0;
  bool exhausted_ = false;
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double rel_tol,
                                  int max_depth, int initial_panels) {
  if (!(b > a)) return {};
  Integrator integ(f, max_depth);

  const int n = initial_panels < 1 ? 1 : initial_panels;
  const double h = (b - a) / n;
  std::vector<Panel> panels;
  panels.reserve(n);
  double l1 = 0.0;
  double prev = integ.eval(a);
  for (int i = 0; i < n; ++i) {
    const double pa = a + i * h;
    const double pb = i + 1 == n ? b : a + (i + 1) * h;
    const double fm = integ.eval(0.5 * (pa + pb));
    const double fb = integ.eval(pb);
    panels.push_back({pa, pb, prev, fm, fb, simpson(pa, pb, prev, fm, fb)});
    l1 += simpson(pa, pb, std::abs(prev), std::abs(fm), std::abs(fb));
    prev = fb;
  }

  const double tol = rel_tol * (l1 > 0.0 ? l1 : 1.0);
  double total = 0.0;
  for (const auto& p : panels) total += integ.refine(p, tol / n, 0);

  if (integ.exhausted())
    throw ConvergenceError("adaptive_simpson: recursion depth exhausted",
                           total - integ.error(), total);
  return {total, integ.error(), integ.evaluations()};
}

}  // namespace sled
