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
#include <span>
#include <string_view>

#include "ratemodel/features.h"

namespace ratemodel {

// A feature kernel accumulates the four features of one block (row-major
// coefficients, dimensions already validated as multiples of 4) into `acc`.
// All kernels must produce bit-identical results: they share the entropy
// lookup table and sum sub-blocks in raster order with the same per-sub-block
// term order, so SIMD variants are exact drop-ins for the scalar reference.
//
// Kernels assume |c| < 2^30 (quantized video coefficients are far smaller).
using BlockFeatureFn = void (*)(const int32_t* coeffs, int width, int height,
                                FeatureVector& acc);

struct FeatureKernel {
    const char* name;
    BlockFeatureFn fn;
};

// Scalar reference, always available.
namespace scalar {
void block_features(const int32_t* coeffs, int width, int height, FeatureVector& acc);
}

#if defined(RATEMODEL_HAVE_AVX2)
namespace avx2 {
void block_features(const int32_t* coeffs, int width, int height, FeatureVector& acc);
}
#endif

#if defined(RATEMODEL_HAVE_NEON)
namespace neon {
void block_features(const int32_t* coeffs, int width, int height, FeatureVector& acc);
}
#endif

// All kernels compiled into this binary (scalar first).
std::span<const FeatureKernel> feature_kernels();

// Kernel used by extract(). Defaults to the fastest one the CPU supports;
// the RATEMODEL_KERNEL environment variable ("scalar", "avx2", "neon")
// overrides the default at startup.
const FeatureKernel& active_feature_kernel();

// Forces a specific kernel (mainly for tests and benchmarks). Throws
// DataError if the name is unknown or unsupported on this CPU.
void set_feature_kernel(std::string_view name);

}  // namespace ratemodel
