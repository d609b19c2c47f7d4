// Copyright 2026 the ratemodel project
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

#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace ratemodel {

struct MetricsReport {
    double pearson = 0.0;
    double mae = 0.0;            // bits
    double mre = 0.0;            // ratio (0.1 = 10%)
    size_t n_total = 0;
    size_t n_mre_excluded = 0;   // samples with measured rate 0, skipped by MRE
    double wall_time_per_block = 0.0;  // seconds; prediction path only
};

// Pearson correlation with population covariance/std on both sides.
// Throws DataError for n < 2, NumericError if either side has zero variance.
double pearson(std::span<const double> actual, std::span<const double> predicted);

// Mean absolute error. Throws DataError on empty or mismatched input.
double mean_abs_error(std::span<const double> actual, std::span<const double> predicted);

// Mean relative error over samples with actual > 0; returns the error and the
// number of excluded zero-rate samples. Throws NumericError if every sample
// is excluded.
std::pair<double, size_t> mean_rel_error(std::span<const double> actual,
                                         std::span<const double> predicted);

}  // namespace ratemodel
