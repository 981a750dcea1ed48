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

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "setcover/kernels.hpp"

namespace setcover::kernels {
namespace {

bool CpuHasAvx2() {
#if defined(SETCOVER_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend DetectBest() {
  if (const char* env = std::getenv("SETCOVER_KERNEL")) {
    const std::string want(env);
    if (want == "scalar") return Backend::kScalar;
    if (want == "avx2" && Available(Backend::kAvx2)) return Backend::kAvx2;
    if (want == "neon" && Available(Backend::kNeon)) return Backend::kNeon;
  }
  if (Available(Backend::kAvx2)) return Backend::kAvx2;
  if (Available(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

std::atomic<int>& ActiveSlot() {
  static std::atomic<int> slot{static_cast<int>(DetectBest())};
  return slot;
}

}  // namespace

bool Available(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return true;
    case Backend::kAvx2: return CpuHasAvx2();
    case Backend::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend Active() { return static_cast<Backend>(ActiveSlot().load()); }

void SetActive(Backend backend) {
  if (!Available(backend)) {
    throw std::invalid_argument("kernel backend not available: " +
                                std::string(Name(backend)));
  }
  ActiveSlot().store(static_cast<int>(backend));
}

std::string_view Name(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
  }
  return "unknown";
}

void Distances(Backend backend, const DistanceArgs& args, std::span<double> out) {
  if (out.size() < args.n || args.query.size() < args.dim ||
      args.soa.size() < args.n * args.dim) {
    throw std::invalid_argument("kernels::Distances: buffer too small");
  }
  switch (backend) {
    case Backend::kScalar: scalar::Distances(args, out); return;
    case Backend::kAvx2:
#if defined(SETCOVER_HAVE_AVX2_TU)
      avx2::Distances(args, out);
      return;
#else
      break;
#endif
    case Backend::kNeon:
#if defined(__aarch64__)
      neon::Distances(args, out);
      return;
#else
      break;
#endif
  }
  scalar::Distances(args, out);
}

void Distances(const DistanceArgs& args, std::span<double> out) {
  Distances(Active(), args, out);
}

MinResult MinDistance(const DistanceArgs& args) {
  thread_local std::vector<double> buf;
  buf.resize(args.n);
  Distances(args, buf);
  MinResult best{buf.empty() ? 0.0 : buf[0], 0};
  for (std::size_t i = 1; i < buf.size(); ++i) {
    if (buf[i] < best.value) best = {buf[i], i};
  }
  return best;
}

}  // namespace setcover::kernels
