// Copyright 2026 The djump Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DJUMP_RNG_HPP
#define DJUMP_RNG_HPP

#include <array>
#include <cstdint>

// Counter-based random numbers (Philox4x32-10, Salmon et al. SC 2011).
//
// Stream split contract: the 64-bit master seed is the Philox key and the
// 64-bit stream index occupies the upper counter words, so stream k of seed s
// is a fixed function of (s, k) alone. One trajectory = one stream = its
// trajectory index; results are therefore independent of worker scheduling.
namespace djump::rng {

// One 128-bit Philox block: counter (4x32) -> output (4x32) under key (2x32).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream);

  // Next 64 random bits.
  std::uint64_t next_u64();

  // Uniform double in [0, 1), 53 significant bits.
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t block_ = 0;     // low 64 counter bits, increments per block
  std::array<std::uint64_t, 2> buf_{};
  int avail_ = 0;
};

}  // namespace djump::rng

#endif  // DJUMP_RNG_HPP
