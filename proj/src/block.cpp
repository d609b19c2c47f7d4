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

#include "ratemodel/block.h"

#include "ratemodel/errors.h"

namespace ratemodel {

void validate_block(const CoeffBlock& block) {
    if (block.width <= 0 || block.height <= 0 || block.width % 4 != 0 ||
        block.height % 4 != 0) {
        throw DataError("invalid block '" + block.source_id + "': dimensions " +
                        std::to_string(block.width) + "x" + std::to_string(block.height) +
                        " must be positive multiples of 4");
    }
    const size_t expected = static_cast<size_t>(block.width) * static_cast<size_t>(block.height);
    if (block.coeffs.size() != expected) {
        throw DataError("invalid block '" + block.source_id + "': " +
                        std::to_string(block.coeffs.size()) + " coefficients, expected " +
                        std::to_string(expected));
    }
}

std::vector<SubBlockView> subblocks(const CoeffBlock& block) {
    validate_block(block);
    const int rows = block.height / 4;
    const int cols = block.width / 4;
    std::vector<SubBlockView> out;
    out.reserve(static_cast<size_t>(rows) * static_cast<size_t>(cols));
    for (int by = 0; by < rows; ++by) {
        for (int bx = 0; bx < cols; ++bx) {
            SubBlockView view;
            view.row = by * 4;
            view.col = bx * 4;
            const int32_t* base = block.coeffs.data() +
                                  static_cast<size_t>(view.row) * block.width + view.col;
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) {
                    view.values[static_cast<size_t>(r * 4 + c)] =
                        base[static_cast<size_t>(r) * block.width + c];
                }
            }
            out.push_back(view);
        }
    }
    return out;
}

}  // namespace ratemodel
