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
#include <string>
#include <vector>

namespace ratemodel {

// A quantized transform-coefficient block. Coefficients are stored row-major;
// width and height must each be a positive multiple of 4 so the block tiles
// exactly into 4x4 sub-blocks. All feature and rate computations operate on
// these values only (no pixel data, no prediction signals).
struct CoeffBlock {
    int width = 0;
    int height = 0;
    std::vector<int32_t> coeffs;  // row-major, size == width * height
    int qp = 0;
    std::string source_id;
};

// One 4x4 tile of a parent block, copied into a flat row-major array.
// `row`/`col` are the tile's top-left coordinates in the parent.
struct SubBlockView {
    std::array<int32_t, 16> values{};
    int row = 0;
    int col = 0;
};

// A block paired with its measured rate in bits (the training/eval target).
struct DatasetRecord {
    CoeffBlock block;
    double rate_bits = 0.0;
};

// Throws DataError if dimensions are not positive multiples of 4 or the
// coefficient count does not match width*height.
void validate_block(const CoeffBlock& block);

// Tiles the block into (width/4)*(height/4) sub-blocks in raster order of
// their origins. Throws DataError on an invalid block.
std::vector<SubBlockView> subblocks(const CoeffBlock& block);

}  // namespace ratemodel
