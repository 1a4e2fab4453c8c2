// Copyright 2026 The waning authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WANING_OPTIMIZE_HPP
#define WANING_OPTIMIZE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace waning {

struct NelderMeadOptions {
  int max_iter = 10000;
  double diameter_tol = 1e-8;  // max vertex distance (L-inf) at convergence
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  bool converged;
  int iterations;
};

// Downhill simplex minimizer (reflection 1, expansion 2, contraction 0.5,
// shrink 0.5). Deterministic: ties broken by vertex index. The objective may
// return +inf to veto a point.
template <class F>
NelderMeadResult nelder_mead(F&& f, const std::vector<double>& x0, double step,
                             NelderMeadOptions opts = {}) {
  const std::size_t n = x0.size();
  if (n == 0) {
    throw std::invalid_argument("nelder_mead: empty start point");
  }

  std::vector<std::vector<double>> verts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    verts[i + 1][i] += step;
  }
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    fv[i] = f(verts[i]);
  }

  std::vector<std::size_t> order(n + 1);
  auto sort_order = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
  };
  auto diameter = [&] {
    const auto& best = verts[order[0]];
    double d = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        d = std::max(d, std::abs(verts[order[i]][k] - best[k]));
      }
    }
    return d;
  };

  int iter = 0;
  bool converged = false;
  for (; iter < opts.max_iter; ++iter) {
    sort_order();
    if (diameter() < opts.diameter_tol) {
      converged = true;
      break;
    }

    const std::size_t worst = order[n];
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        centroid[k] += verts[order[i]][k] / static_cast<double>(n);
      }
    }

    auto blend = [&](double coef) {
      std::vector<double> p(n);
      for (std::size_t k = 0; k < n; ++k) {
        p[k] = centroid[k] + coef * (centroid[k] - verts[worst][k]);
      }
      return p;
    };

    std::vector<double> reflected = blend(1.0);
    const double fr = f(reflected);
    if (fr < fv[order[0]]) {
      std::vector<double> expanded = blend(2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        verts[worst] = std::move(expanded);
        fv[worst] = fe;
      } else {
        verts[worst] = std::move(reflected);
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[order[n - 1]]) {
      verts[worst] = std::move(reflected);
      fv[worst] = fr;
      continue;
    }

    // Outside contraction against the reflected point when it improved on
    // the worst vertex, inside contraction otherwise.
    std::vector<double> contracted = blend(fr < fv[worst] ? 0.5 : -0.5);
    const double fc = f(contracted);
    if (fc < std::min(fr, fv[worst])) {
      verts[worst] = std::move(contracted);
      fv[worst] = fc;
      continue;
    }

    const auto& best = verts[order[0]];
    for (std::size_t i = 1; i <= n; ++i) {
      auto& v = verts[order[i]];
      for (std::size_t k = 0; k < n; ++k) {
        v[k] = best[k] + 0.5 * (v[k] - best[k]);
      }
      fv[order[i]] = f(v);
    }
  }

  sort_order();
  return {verts[order[0]], fv[order[0]], converged, iter};
}

}  // namespace waning

#endif  // WANING_OPTIMIZE_HPP
