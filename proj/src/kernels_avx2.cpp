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

#if defined(RATEMODEL_HAVE_AVX2)

#include <immintrin.h>

#include "kernels_common.h"

namespace ratemodel::avx2 {

namespace {

// Sign bit of each 32-bit lane as one mask bit, element 0 -> bit 0.
inline unsigned lane_mask(__m256i cmp) {
    return static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(cmp)));
}

}  // namespace

void block_features(const int32_t* coeffs, int width, int height, FeatureVector& acc) {
    const auto& h2 = binary_entropy_table();
    const __m256i zero = _mm256_setzero_si256();
    const __m256i one = _mm256_set1_epi32(1);
    detail::BlockAccum a;
    for (int by = 0; by < height; by += 4) {
        for (int bx = 0; bx < width; bx += 4) {
            const int32_t* base = coeffs + static_cast<size_t>(by) * width + bx;
            const __m128i r0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(base));
            const __m128i r1 =
                _mm_loadu_si128(reinterpret_cast<const __m128i*>(base + width));
            const __m128i r2 =
                _mm_loadu_si128(reinterpret_cast<const __m128i*>(base + 2 * static_cast<size_t>(width)));
            const __m128i r3 =
                _mm_loadu_si128(reinterpret_cast<const __m128i*>(base + 3 * static_cast<size_t>(width)));
            const __m256i m01 = _mm256_abs_epi32(_mm256_set_m128i(r1, r0));
            const __m256i m23 = _mm256_abs_epi32(_mm256_set_m128i(r3, r2));

            const unsigned zero01 = lane_mask(_mm256_cmpeq_epi32(m01, zero));
            const unsigned zero23 = lane_mask(_mm256_cmpeq_epi32(m23, zero));
            const unsigned sig = (~zero01 & 0xffu) | ((~zero23 & 0xffu) << 8);
            const unsigned big = (lane_mask(_mm256_cmpgt_epi32(m01, one)) & 0xffu) |
                                 ((lane_mask(_mm256_cmpgt_epi32(m23, one)) & 0xffu) << 8);

            alignas(32) int32_t mag[16];
            _mm256_store_si256(reinterpret_cast<__m256i*>(mag), m01);
            _mm256_store_si256(reinterpret_cast<__m256i*>(mag + 8), m23);
            detail::accumulate_subblock(sig, big, mag, h2, a);
        }
    }
    acc.s += a.s;
    acc.l += a.l;
    acc.z += a.z;
    acc.e += a.e;
}

}  // namespace ratemodel::avx2

#endif  // RATEMODEL_HAVE_AVX2
