// Copyright 2026 The Qgen Authors.
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

#ifndef QGEN_COMMON_HASH_H_
#define QGEN_COMMON_HASH_H_

#include <cstdint>
#include <string_view>

namespace qgen {

// 64-bit FNV-1a. Stable across platforms and runs; used wherever a
// reproducible digest of text is needed (mock backends, seeded baselines).
constexpr uint64_t Fnv1a64(std::string_view data,
                           uint64_t seed = 0xcbf29ce484222325ULL) {
  uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// One step of the splitmix64 generator.
constexpr uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Small deterministic generator. Unlike the <random> distributions its output
// does not depend on the standard library implementation.
class HashChain {
 public:
  explicit HashChain(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    state_ = SplitMix64(state_);
    return state_;
  }

  // Uniform integer in [0, bound). bound must be positive.
  uint64_t Below(uint64_t bound) { return Next() % bound; }

  // Uniform real in [0, 1).
  double Unit() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

}  // namespace qgen

#endif  // QGEN_COMMON_HASH_H_
