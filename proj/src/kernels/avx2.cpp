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

#include <immintrin.h>

#include <cmath>

#include "setcover/kernels.hpp"

namespace setcover::kernels::avx2 {

void Distances(const DistanceArgs& a, std::span<double> out) {
  if (a.metric == Metric::kLp) {
    scalar::Distances(a, out);
    return;
  }
  const double* soa = a.soa.data();
  const double* y = a.query.data();
  const std::size_t n = a.n;
  const std::size_t body = n - n % 4;
  const __m256d sign = _mm256_set1_pd(-0.0);

  for (std::size_t i = 0; i < body; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < a.dim; ++k) {
      const __m256d d =
          _mm256_sub_pd(_mm256_loadu_pd(soa + k * n + i), _mm256_set1_pd(y[k]));
      switch (a.metric) {
        case Metric::kL2:
          acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
          break;
        case Metric::kLinf:
          // max(acc, |d|) with the scalar operand order acc < d ? d : acc.
          acc = _mm256_max_pd(_mm256_andnot_pd(sign, d), acc);
          break;
        case Metric::kL1:
          acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
          break;
        case Metric::kLp:
          break;
      }
    }
    if (a.metric == Metric::kL2) acc = _mm256_sqrt_pd(acc);
    _mm256_storeu_pd(out.data() + i, acc);
  }

  if (body < n) {
    for (std::size_t i = body; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.dim; ++k) {
        const double d = soa[k * n + i] - y[k];
        switch (a.metric) {
          case Metric::kL2: acc = acc + d * d; break;
          case Metric::kLinf: {
            const double ad = d < 0 ? -d : d;
            acc = acc < ad ? ad : acc;
            break;
          }
          case Metric::kL1: acc = acc + (d < 0 ? -d : d); break;
          case Metric::kLp: break;
        }
      }
      if (a.metric == Metric::kL2) acc = std::sqrt(acc);
      out[i] = acc;
    }
  }
}

}  // namespace setcover::kernels::avx2
