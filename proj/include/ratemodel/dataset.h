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

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ratemodel/block.h"

namespace ratemodel {

// Dataset container. On disk this is JSON Lines: an optional
// {"format_version":1} header followed by one record object per line with
// fields source_id, width, height, qp, coeffs (row-major integers), rate.
// See the README for the exact format and hand-written examples.
struct DatasetFile {
    std::vector<DatasetRecord> records;
    int format_version = 1;
};

std::string serialize_record(const DatasetRecord& record);
std::string serialize_dataset(const DatasetFile& dataset);

void write_dataset(const DatasetFile& dataset, const std::string& path);

// Loads a whole dataset; validation failures name the offending line.
DatasetFile read_dataset(const std::string& path);

// Streaming reader (O(1) memory in the dataset size).
void for_each_record(const std::string& path,
                     const std::function<void(DatasetRecord&&)>& consume);

// Synthetic data generation: blocks with seeded random sizes, sparsity and
// geometric magnitudes, each labeled with the deterministic bit-count oracle
// below. Per-record sub-seeds make the output independent of generation
// order.
struct SynthConfig {
    size_t n_blocks = 1000;
    uint64_t seed = 1;
    std::vector<std::pair<int, int>> size_set = {{4, 4}, {8, 8}, {16, 16}};
    double sparsity = 0.7;        // probability a coefficient is zero
    double magnitude_scale = 2.0; // mean of the geometric nonzero magnitudes
    int qp_label = 32;
};

DatasetFile generate(const SynthConfig& config);

// Exp-Golomb order-0 code length for v >= 0: 2*floor(log2(v+1)) + 1.
uint64_t eg0_bits(uint64_t v);

// Deterministic stand-in for residual entropy coding, defined per 4x4
// sub-block: 1 flag bit; if any coefficient is nonzero, the 1-based last
// significant zig-zag position in significance bits, plus per nonzero
// coefficient 1 sign bit, 1 greater-than-1 flag and, when |c| > 1,
// eg0_bits(|c| - 2). Simple enough to cross-check bit-exactly; not a claim
// about real CABAC rates.
uint64_t oracle_rate(const CoeffBlock& block);

}  // namespace ratemodel
