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

#pragma once

// Batched point-to-point distance kernels.
//
// Point sets are stored structure-of-arrays: coordinate k of point i lives at
// soa[k * n + i].  That layout lets the vector backends process several points
// per instruction without gathers.  Every backend performs the same sequence
// of IEEE operations per point (no FMA, coordinate-ordered accumulation), so
// results are bit-identical across backends.

#include <cstddef>
#include <span>
#include <string_view>

namespace setcover::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

enum class Metric { kL2, kLinf, kL1, kLp };

struct DistanceArgs {
  Metric metric = Metric::kL2;
  double p = 2.0;  // only read for kLp
  std::span<const double> soa;
  std::size_t n = 0;
  std::size_t dim = 0;
  std::span<const double> query;  // length dim
};

using DistanceFn = void (*)(const DistanceArgs&, std::span<double> out);

namespace scalar {
void Distances(const DistanceArgs& args, std::span<double> out);
}
#if defined(SETCOVER_HAVE_AVX2_TU) || defined(__x86_64__)
namespace avx2 {
void Distances(const DistanceArgs& args, std::span<double> out);
}
#endif
#if defined(__aarch64__)
namespace neon {
void Distances(const DistanceArgs& args, std::span<double> out);
}
#endif

bool Available(Backend backend);
// Picks the best available backend on first use; SETCOVER_KERNEL=scalar|avx2|
// neon in the environment overrides the choice.
Backend Active();
// Throws std::invalid_argument when the backend is not available.
void SetActive(Backend backend);
std::string_view Name(Backend backend);

// out[i] = ||point_i - query|| with the active backend.
void Distances(const DistanceArgs& args, std::span<double> out);
void Distances(Backend backend, const DistanceArgs& args, std::span<double> out);

struct MinResult {
  double value;
  std::size_t index;
};
// Nearest point; ties resolve to the smallest index.
MinResult MinDistance(const DistanceArgs& args);

}  // namespace setcover::kernels
