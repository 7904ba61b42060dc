// Copyright 2026-present the mvfuse authors
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

#include <cstdlib>
#include <cstring>

#include "mvf/kernels.hpp"

namespace mvf::kernels {

#if defined(MVF_WITH_AVX2)
bool avx2_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

namespace {

bool use_avx2() {
#if defined(MVF_WITH_AVX2)
    const char* env = std::getenv("MVFUSE_KERNELS");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) {
            return false;
        }
        if (std::strcmp(env, "avx2") == 0) {
            return avx2_supported();
        }
        // Anything else (including "auto") falls through to detection.
    }
    return avx2_supported();
#else
    return false;
#endif
}

const bool g_avx2 = use_avx2();

}  // namespace

#if defined(MVF_WITH_AVX2)
const ProductMomentsFn product_moments = g_avx2 ? avx2::product_moments : scalar::product_moments;
const BilinearSampleFn bilinear_sample = g_avx2 ? avx2::bilinear_sample : scalar::bilinear_sample;
const BlobAccumulateFn blob_accumulate = g_avx2 ? avx2::blob_accumulate : scalar::blob_accumulate;
#else
const ProductMomentsFn product_moments = scalar::product_moments;
const BilinearSampleFn bilinear_sample = scalar::bilinear_sample;
const BlobAccumulateFn blob_accumulate = scalar::blob_accumulate;
#endif

const char* backend_name() {
    return g_avx2 ? "avx2" : "scalar";
}

}  // namespace mvf::kernels
