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

#include "ratemodel/kernels.h"

#if defined(RATEMODEL_HAVE_NEON)

#include <arm_neon.h>

#include "kernels_common.h"

namespace ratemodel::neon {

namespace {

// Packs four compare results (all-ones/all-zero 32-bit lanes, rows 0..3 of a
// sub-block) into one 16-bit mask, raster order.
inline unsigned lane_mask16(uint32x4_t c0, uint32x4_t c1, uint32x4_t c2, uint32x4_t c3) {
    const uint16x8_t n01 = vcombine_u16(vmovn_u32(c0), vmovn_u32(c1));
    const uint16x8_t n23 = vcombine_u16(vmovn_u32(c2), vmovn_u32(c3));
    const uint8x16_t bytes = vcombine_u8(vmovn_u16(n01), vmovn_u16(n23));
    const uint8x16_t weights = {1, 2, 4, 8, 16, 32, 64, 128, 1, 2, 4, 8, 16, 32, 64, 128};
    const uint8x16_t bits = vandq_u8(bytes, weights);
    const unsigned lo = vaddv_u8(vget_low_u8(bits));
    const unsigned hi = vaddv_u8(vget_high_u8(bits));
    return lo | (hi << 8);
}

}  // namespace

void block_features(const int32_t* coeffs, int width, int height, FeatureVector& acc) {
    const auto& h2 = binary_entropy_table();
    const int32x4_t one = vdupq_n_s32(1);
    detail::BlockAccum a;
    for (int by = 0; by < height; by += 4) {
        for (int bx = 0; bx < width; bx += 4) {
            const int32_t* base = coeffs + static_cast<size_t>(by) * width + bx;
            const int32x4_t m0 = vabsq_s32(vld1q_s32(base));
            const int32x4_t m1 = vabsq_s32(vld1q_s32(base + width));
            const int32x4_t m2 = vabsq_s32(vld1q_s32(base + 2 * static_cast<size_t>(width)));
            const int32x4_t m3 = vabsq_s32(vld1q_s32(base + 3 * static_cast<size_t>(width)));

            const unsigned sig = lane_mask16(vtstq_s32(m0, m0), vtstq_s32(m1, m1),
                                             vtstq_s32(m2, m2), vtstq_s32(m3, m3));
            const unsigned big = lane_mask16(vcgtq_s32(m0, one), vcgtq_s32(m1, one),
                                             vcgtq_s32(m2, one), vcgtq_s32(m3, one));

            int32_t mag[16];
            vst1q_s32(mag, m0);
            vst1q_s32(mag + 4, m1);
            vst1q_s32(mag + 8, m2);
            vst1q_s32(mag + 12, m3);
            detail::accumulate_subblock(sig, big, mag, h2, a);
        }
    }
    acc.s += a.s;
    acc.l += a.l;
    acc.z += a.z;
    acc.e += a.e;
}

}  // namespace ratemodel::neon

#endif  // RATEMODEL_HAVE_NEON
