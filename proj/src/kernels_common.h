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

// Shared tail of every feature kernel. A kernel reduces each 4x4 sub-block to
//   sig  16-bit significance mask, bit i = (coefficient at raster index i) != 0
//   big  16-bit mask of |c| > 1
//   mag  the 16 magnitudes, raster order
// and hands them to accumulate_subblock(). Keeping the floating-point
// summation order here, in one place, is what makes scalar and SIMD kernels
// bit-identical.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <utility>

#include "ratemodel/features.h"

namespace ratemodel::detail {

// Scan position of each raster index (inverse of kZigZag4x4).
inline constexpr std::array<int, 16> kScanOfRaster = [] {
    std::array<int, 16> inv{};
    for (int p = 0; p < 16; ++p) {
        inv[static_cast<size_t>(kZigZag4x4[static_cast<size_t>(p)].first * 4 +
                                kZigZag4x4[static_cast<size_t>(p)].second)] = p;
    }
    return inv;
}();

// Byte-wise permutation of a raster-order significance mask into scan order,
// so the last significant scan position is just bit_width() of the result.
struct ScanMaskTables {
    std::array<uint16_t, 256> lo{};
    std::array<uint16_t, 256> hi{};
};

inline constexpr ScanMaskTables kScanMask = [] {
    ScanMaskTables t{};
    for (unsigned m = 0; m < 256; ++m) {
        uint16_t lo = 0;
        uint16_t hi = 0;
        for (int b = 0; b < 8; ++b) {
            if (m & (1u << b)) {
                lo = static_cast<uint16_t>(lo | (1u << kScanOfRaster[static_cast<size_t>(b)]));
                hi = static_cast<uint16_t>(hi | (1u << kScanOfRaster[static_cast<size_t>(b + 8)]));
            }
        }
        t.lo[m] = lo;
        t.hi[m] = hi;
    }
    return t;
}();

struct BlockAccum {
    double s = 0.0;
    double l = 0.0;
    double z = 0.0;
    double e = 0.0;
};

inline void accumulate_subblock(unsigned sig, unsigned big, const int32_t* mag,
                                const std::array<double, 17>& h2, BlockAccum& a) {
    a.s += std::popcount(sig);
    const unsigned scan = kScanMask.lo[sig & 0xffu] | kScanMask.hi[(sig >> 8) & 0xffu];
    a.z += std::bit_width(scan);  // 1-based last position, 0 when empty
    a.e += h2[static_cast<size_t>(std::popcount(big))];
    if (big) {
        // |c| == 1 contributes log2(1) = 0, so only |c| > 1 terms are summed.
        double lsum = 0.0;
        do {
            const int i = std::countr_zero(big);
            big &= big - 1;
            lsum += std::log2(static_cast<double>(mag[i]));
        } while (big);
        a.l += lsum;
    }
}

inline uint32_t magnitude(int32_t v) {
    return v < 0 ? 0u - static_cast<uint32_t>(v) : static_cast<uint32_t>(v);
}

}  // namespace ratemodel::detail
