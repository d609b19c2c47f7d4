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

#include <array>
#include <cstdint>
#include <utility>

#include "ratemodel/block.h"

namespace ratemodel {

// The four block features. Each is computed per 4x4 sub-block and summed over
// the block:
//   s  count of nonzero coefficients
//   l  sum of max(0, log2|c|) over all coefficients
//   z  1-based zig-zag position of the last nonzero coefficient per sub-block
//      (0 for an all-zero sub-block), summed
//   e  binary entropy H2(C1/16) per sub-block, where C1 counts |c| > 1
// All four depend on |c| only, are additive over sub-blocks, and are exactly
// zero for an all-zero block.
struct FeatureVector {
    double s = 0.0;
    double l = 0.0;
    double z = 0.0;
    double e = 0.0;

    std::array<double, 4> as_array() const { return {s, l, z, e}; }
};

// 4x4 scan order as (row, col) pairs, low to high frequency. This is the
// single replaceable constant behind the Z feature and the bit-count oracle;
// a different codec scan can be swapped in here without touching anything
// else.
inline constexpr std::array<std::pair<int, int>, 16> kZigZag4x4 = {{
    {0, 0}, {0, 1}, {1, 0}, {2, 0}, {1, 1}, {0, 2}, {0, 3}, {1, 2},
    {2, 1}, {3, 0}, {3, 1}, {2, 2}, {1, 3}, {2, 3}, {3, 2}, {3, 3},
}};

// H2(k/16) for k = 0..16, with H2(0) = H2(1) = 0.
const std::array<double, 17>& binary_entropy_table();

// Binary entropy function H2(p) = -p*log2(p) - (1-p)*log2(1-p), 0*log2(0) := 0.
double binary_entropy(double p);

// Extracts all four features using the active kernel (see kernels.h).
// Throws DataError on an invalid block.
FeatureVector extract(const CoeffBlock& block);

double feature_s(const CoeffBlock& block);
double feature_l(const CoeffBlock& block);
double feature_z(const CoeffBlock& block);
double feature_e(const CoeffBlock& block);

}  // namespace ratemodel
