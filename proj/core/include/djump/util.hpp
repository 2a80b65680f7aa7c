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

#ifndef DJUMP_UTIL_HPP
#define DJUMP_UTIL_HPP

#include <cstddef>
#include <functional>
#include <string>

namespace djump::util {

// Runs fn(0..n-1) on up to `workers` threads (0 = hardware concurrency).
// Tasks own disjoint output slots; the first exception wins and is rethrown
// on the calling thread after all workers join.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn);

int resolve_workers(int workers);

// Shortest-round-trip style formatting used in all data files.
std::string format_double(double v, int significant_digits = 12);

}  // namespace djump::util

#endif  // DJUMP_UTIL_HPP
