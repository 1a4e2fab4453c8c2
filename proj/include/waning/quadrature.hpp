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

#ifndef WANING_QUADRATURE_HPP
#define WANING_QUADRATURE_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace waning {

struct QuadResult {
  double value;
  double error;  // estimated absolute error
};

// Adaptive Gauss-Kronrod (G7-K15) on a finite interval. rtol is the target
// relative accuracy of the result; depth 15 allows up to 2^15 panels.
template <class F>
QuadResult integrate(F&& f, double a, double b, double rtol = 1e-10,
                     int max_depth = 15) {
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          f, a, b, max_depth, rtol, &error);
  return {value, error};
}

}  // namespace waning

#endif  // WANING_QUADRATURE_HPP
