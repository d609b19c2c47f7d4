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

#include "ratemodel/features.h"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "ratemodel/errors.h"
#include "ratemodel/kernels.h"

namespace ratemodel {

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) {
        return 0.0;
    }
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

const std::array<double, 17>& binary_entropy_table() {
    static const std::array<double, 17> table = [] {
        std::array<double, 17> t{};
        for (int k = 0; k <= 16; ++k) {
            t[static_cast<size_t>(k)] = binary_entropy(k / 16.0);
        }
        return t;
    }();
    return table;
}

namespace {

std::vector<FeatureKernel> build_kernel_list() {
    std::vector<FeatureKernel> kernels;
    kernels.push_back({"scalar", &scalar::block_features});
#if defined(RATEMODEL_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) {
        kernels.push_back({"avx2", &avx2::block_features});
    }
#endif
#if defined(RATEMODEL_HAVE_NEON)
    kernels.push_back({"neon", &neon::block_features});
#endif
    return kernels;
}

const std::vector<FeatureKernel>& kernel_list() {
    static const std::vector<FeatureKernel> kernels = build_kernel_list();
    return kernels;
}

const FeatureKernel* find_kernel(std::string_view name) {
    for (const FeatureKernel& k : kernel_list()) {
        if (name == k.name) {
            return &k;
        }
    }
    return nullptr;
}

const FeatureKernel* default_kernel() {
    if (const char* env = std::getenv("RATEMODEL_KERNEL")) {
        if (const FeatureKernel* k = find_kernel(env)) {
            return k;
        }
        // Unknown override: fall through to the auto pick rather than abort.
    }
    return &kernel_list().back();  // widest supported variant
}

const FeatureKernel*& active_kernel_slot() {
    static const FeatureKernel* active = default_kernel();
    return active;
}

}  // namespace

std::span<const FeatureKernel> feature_kernels() { return kernel_list(); }

const FeatureKernel& active_feature_kernel() { return *active_kernel_slot(); }

void set_feature_kernel(std::string_view name) {
    const FeatureKernel* k = find_kernel(name);
    if (k == nullptr) {
        throw DataError("unknown or unsupported feature kernel '" + std::string(name) + "'");
    }
    active_kernel_slot() = k;
}

FeatureVector extract(const CoeffBlock& block) {
    validate_block(block);
    FeatureVector fv;
    active_feature_kernel().fn(block.coeffs.data(), block.width, block.height, fv);
    return fv;
}

double feature_s(const CoeffBlock& block) { return extract(block).s; }
double feature_l(const CoeffBlock& block) { return extract(block).l; }
double feature_z(const CoeffBlock& block) { return extract(block).z; }
double feature_e(const CoeffBlock& block) { return extract(block).e; }

}  // namespace ratemodel
