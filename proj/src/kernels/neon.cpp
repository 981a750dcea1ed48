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

#include <arm_neon.h>

#include <cmath>

#include "setcover/kernels.hpp"

namespace setcover::kernels::neon {

void Distances(const DistanceArgs& a, std::span<double> out) {
  if (a.metric == Metric::kLp) {
    scalar::Distances(a, out);
    return;
  }
  const double* soa = a.soa.data();
  const double* y = a.query.data();
  const std::size_t n = a.n;
  const std::size_t body = n - n % 2;

  for (std::size_t i = 0; i < body; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < a.dim; ++k) {
      const float64x2_t d = vsubq_f64(vld1q_f64(soa + k * n + i), vdupq_n_f64(y[k]));
      switch (a.metric) {
        case Metric::kL2: acc = vaddq_f64(acc, vmulq_f64(d, d)); break;
        case Metric::kLinf: acc = vmaxq_f64(acc, vabsq_f64(d)); break;
        case Metric::kL1: acc = vaddq_f64(acc, vabsq_f64(d)); break;
        case Metric::kLp: break;
      }
    }
    if (a.metric == Metric::kL2) acc = vsqrtq_f64(acc);
    vst1q_f64(out.data() + i, acc);
  }
  for (std::size_t i = body; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.dim; ++k) {
      const double d = soa[k * n + i] - y[k];
      const double ad = d < 0 ? -d : d;
      switch (a.metric) {
        case Metric::kL2: acc = acc + d * d; break;
        case Metric::kLinf: acc = acc < ad ? ad : acc; break;
        case Metric::kL1: acc = acc + ad; break;
        case Metric::kLp: break;
      }
    }
    out[i] = a.metric == Metric::kL2 ? std::sqrt(acc) : acc;
  }
}

}  // namespace setcover::kernels::neon
