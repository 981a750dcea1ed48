// Copyright 2026 The setcover-kit Authors
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

#include <cmath>

#include "setcover/kernels.hpp"

namespace setcover::kernels::scalar {

void Distances(const DistanceArgs& a, std::span<double> out) {
  const double* soa = a.soa.data();
  const double* y = a.query.data();
  for (std::size_t i = 0; i < a.n; ++i) {
    double acc = 0.0;
    switch (a.metric) {
      case Metric::kL2:
        for (std::size_t k = 0; k < a.dim; ++k) {
          const double d = soa[k * a.n + i] - y[k];
          acc = acc + d * d;
        }
        acc = std::sqrt(acc);
        break;
      case Metric::kLinf:
        for (std::size_t k = 0; k < a.dim; ++k) {
          const double d = std::abs(soa[k * a.n + i] - y[k]);
          acc = acc < d ? d : acc;
        }
        break;
      case Metric::kL1:
        for (std::size_t k = 0; k < a.dim; ++k) {
          acc = acc + std::abs(soa[k * a.n + i] - y[k]);
        }
        break;
      case Metric::kLp: {
        double m = 0.0;
        for (std::size_t k = 0; k < a.dim; ++k) {
          const double d = std::abs(soa[k * a.n + i] - y[k]);
          m = m < d ? d : m;
        }
        if (m > 0.0) {
          for (std::size_t k = 0; k < a.dim; ++k) {
            acc = acc + std::pow(std::abs(soa[k * a.n + i] - y[k]) / m, a.p);
          }
          acc = m * std::pow(acc, 1.0 / a.p);
        }
        break;
      }
    }
    out[i] = acc;
  }
}

}  // namespace setcover::kernels::scalar
