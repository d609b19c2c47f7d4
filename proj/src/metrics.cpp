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

#include "ratemodel/metrics.h"

#include <cmath>
#include <string>

#include "ratemodel/errors.h"

namespace ratemodel {

namespace {

void check_paired(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.empty()) {
        throw DataError("metrics require a non-empty sample set");
    }
    if (actual.size() != predicted.size()) {
        throw DataError("metrics require equal-length sequences: " +
                        std::to_string(actual.size()) + " vs " +
                        std::to_string(predicted.size()));
    }
}

}  // namespace

double pearson(std::span<const double> actual, std::span<const double> predicted) {
    check_paired(actual, predicted);
    if (actual.size() < 2) {
        throw DataError("pearson requires at least 2 samples");
    }
    const double n = static_cast<double>(actual.size());
    double mean_a = 0.0;
    double mean_p = 0.0;
    for (size_t i = 0; i < actual.size(); ++i) {
        mean_a += actual[i];
        mean_p += predicted[i];
    }
    mean_a /= n;
    mean_p /= n;

    double cov = 0.0;
    double var_a = 0.0;
    double var_p = 0.0;
    for (size_t i = 0; i < actual.size(); ++i) {
        const double da = actual[i] - mean_a;
        const double dp = predicted[i] - mean_p;
        cov += da * dp;
        var_a += da * da;
        var_p += dp * dp;
    }
    if (var_a == 0.0 || var_p == 0.0) {
        throw NumericError("pearson undefined: zero variance in " +
                           std::string(var_a == 0.0 ? "actual" : "predicted") + " sequence");
    }
    return (cov / n) / (std::sqrt(var_a / n) * std::sqrt(var_p / n));
}

double mean_abs_error(std::span<const double> actual, std::span<const double> predicted) {
    check_paired(actual, predicted);
    double acc = 0.0;
    for (size_t i = 0; i < actual.size(); ++i) {
        acc += std::abs(actual[i] - predicted[i]);
    }
    return acc / static_cast<double>(actual.size());
}

std::pair<double, size_t> mean_rel_error(std::span<const double> actual,
                                         std::span<const double> predicted) {
    check_paired(actual, predicted);
    double acc = 0.0;
    size_t excluded = 0;
    for (size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0) {
            ++excluded;
            continue;
        }
        acc += std::abs(actual[i] - predicted[i]) / actual[i];
    }
    const size_t used = actual.size() - excluded;
    if (used == 0) {
        throw NumericError("MRE undefined: every sample has zero measured rate");
    }
    return {acc / static_cast<double>(used), excluded};
}

}  // namespace ratemodel
