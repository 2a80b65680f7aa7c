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

#ifndef DJUMP_STATS_HPP
#define DJUMP_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace djump::stats {

double mean(std::span<const double> xs);

// Unbiased sample standard deviation.
double sample_std(std::span<const double> xs);

double pearson(std::span<const double> xs, std::span<const double> ys);

// Kolmogorov distribution tail Q(lambda) = 2 sum_k (-1)^{k-1} exp(-2k^2 l^2).
double kolmogorov_q(double lambda);

// Two-sided KS test of the sample against Exp(rate). Returns the p-value
// using the finite-n corrected asymptotic distribution.
double ks_test_exponential(std::vector<double> samples, double rate,
                           double* d_out = nullptr);

}  // namespace djump::stats

#endif  // DJUMP_STATS_HPP
