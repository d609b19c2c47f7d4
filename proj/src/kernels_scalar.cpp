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

#include "kernels_common.h"
#include "ratemodel/kernels.h"

namespace ratemodel::scalar {

void block_features(const int32_t* coeffs, int width, int height, FeatureVector& acc) {
    const auto& h2 = binary_entropy_table();
    detail::BlockAccum a;
    for (int by = 0; by < height; by += 4) {
        for (int bx = 0; bx < width; bx += 4) {
            const int32_t* base = coeffs + static_cast<size_t>(by) * width + bx;
            unsigned sig = 0;
            unsigned big = 0;
            int32_t mag[16];
            for (int r = 0; r < 4; ++r) {
                const int32_t* row = base + static_cast<size_t>(r) * width;
                for (int c = 0; c < 4; ++c) {
                    const int i = r * 4 + c;
                    const uint32_t m = detail::magnitude(row[c]);
                    mag[i] = static_cast<int32_t>(m);
                    sig |= (m != 0 ? 1u : 0u) << i;
                    big |= (m > 1 ? 1u : 0u) << i;
                }
            }
            detail::accumulate_subblock(sig, big, mag, h2, a);
        }
    }
    acc.s += a.s;
    acc.l += a.l;
    acc.z += a.z;
    acc.e += a.e;
}

}  // namespace ratemodel::scalar
