// Copyright 2026 The Authors.
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

#ifndef GSMARKET_PRNG_H_
#define GSMARKET_PRNG_H_

#include <cstdint>

namespace gsmarket {

// PCG32 (XSH-RR output, 64-bit LCG state), seeded with pcg32_srandom(seed, 54).
class Pcg32 {
 public:
  explicit Pcg32(uint64_t seed, uint64_t stream = 54u) {
    inc_ = (stream << 1u) | 1u;
    state_ = 0;
    Next();
    state_ += seed;
    Next();
  }

  uint32_t Next() {
    const uint64_t old = state_;
    state_ = old * 6364136223846793005ull + inc_;
    const uint32_t xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
    const uint32_t rot = static_cast<uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  // Uniform on [0, bound), rejection as in pcg32_boundedrand.
  uint32_t Below(uint32_t bound) {
    const uint32_t threshold = (-bound) % bound;
    for (;;) {
      const uint32_t r = Next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform on [lo, hi].
  int64_t Between(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(Below(static_cast<uint32_t>(hi - lo + 1)));
  }

 private:
  uint64_t state_;
  uint64_t inc_;
};

}  // namespace gsmarket

#endif  // GSMARKET_PRNG_H_
