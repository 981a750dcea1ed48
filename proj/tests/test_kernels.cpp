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

// Scalar/SIMD equivalence of the distance kernels: every backend must
// produce bit-identical results because reports are compared byte for byte.
#include <cstring>
#include <vector>

#include "doctest.h"
#include "setcover/kernels.hpp"
#include "setcover/rng.hpp"

namespace {

using setcover::Rng;
namespace k = setcover::kernels;

std::vector<double> RandomValues(Rng& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (auto& x : v) x = scale * (2.0 * rng.uniform() - 1.0);
  return v;
}

void ExpectBitIdentical(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace

TEST_CASE("scalar kernel matches hand-computed distances") {
  // Two points in R^2 stored structure-of-arrays: (3, 4) and (-1, 0).
  const std::vector<double> soa = {3.0, -1.0, 4.0, 0.0};
  const std::vector<double> q = {0.0, 0.0};
  std::vector<double> out(2);
  k::DistanceArgs a{k::Metric::kL2, 2.0, soa, 2, 2, q};
  k::scalar::Distances(a, out);
  CHECK(out[0] == 5.0);
  CHECK(out[1] == 1.0);
  a.metric = k::Metric::kLinf;
  k::scalar::Distances(a, out);
  CHECK(out[0] == 4.0);
  a.metric = k::Metric::kL1;
  k::scalar::Distances(a, out);
  CHECK(out[0] == 7.0);
  a.metric = k::Metric::kLp;
  a.p = 3.0;
  k::scalar::Distances(a, out);
  CHECK(out[0] == doctest::Approx(std::cbrt(27.0 + 64.0)).epsilon(1e-14));
}

TEST_CASE("every available backend is bit-identical to the scalar reference") {
  Rng rng(2024);
  int compared = 0;
  for (k::Backend b : {k::Backend::kAvx2, k::Backend::kNeon}) {
    if (!k::Available(b)) continue;
    for (k::Metric m : {k::Metric::kL2, k::Metric::kLinf, k::Metric::kL1, k::Metric::kLp}) {
      for (std::size_t dim = 1; dim <= 9; ++dim) {
        for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 257u}) {
          const auto soa = RandomValues(rng, n * dim, 1e3);
          const auto q = RandomValues(rng, dim, 1e3);
          k::DistanceArgs a{m, 1.5 + rng.uniform() * 3.0, soa, n, dim, q};
          std::vector<double> ref(n), got(n);
          k::Distances(k::Backend::kScalar, a, ref);
          k::Distances(b, a, got);
          ExpectBitIdentical(ref, got);
          ++compared;
        }
      }
    }
  }
  MESSAGE("compared " << compared << " SIMD configurations");
}

TEST_CASE("dispatch switches backends and MinDistance agrees with the scan") {
  const k::Backend before = k::Active();
  Rng rng(7);
  const std::size_t n = 101, dim = 3;
  const auto soa = RandomValues(rng, n * dim, 10.0);
  const auto q = RandomValues(rng, dim, 10.0);
  const k::DistanceArgs a{k::Metric::kL2, 2.0, soa, n, dim, q};
  std::vector<double> ref(n);
  k::Distances(k::Backend::kScalar, a, ref);
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (ref[i] < ref[best]) best = i;
  }
  for (k::Backend b : {k::Backend::kScalar, k::Backend::kAvx2, k::Backend::kNeon}) {
    if (!k::Available(b)) continue;
    k::SetActive(b);
    CHECK(k::Active() == b);
    const auto mr = k::MinDistance(a);
    CHECK(mr.index == best);
    CHECK(mr.value == ref[best]);
  }
  k::SetActive(before);
  CHECK(k::Available(k::Backend::kScalar));
  CHECK(k::Name(k::Backend::kScalar) == "scalar");
}
