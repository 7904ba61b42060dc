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

#pragma once

#include <cstddef>

namespace mvf::kernels {

// The data-parallel inner loops of the pipeline. Each kernel has a scalar
// reference implementation and, on x86-64 builds, an AVX2 variant; the
// exported function pointers are bound once at startup to the best variant
// the running CPU supports. MVFUSE_KERNELS=scalar|avx2|auto overrides the
// choice (requests the CPU cannot honor fall back to scalar).

struct ProductMoments {
    double s0;  // sum of b[k]*c[k]
    double s1;  // sum of b[k]*c[k]*z[k]
    double s2;  // sum of b[k]*c[k]*zz[k]
};

// Triple reduction over the product of two sample rows; the core of the
// per-joint Q accumulation in fusion (zz is the caller's precomputed z^2).
using ProductMomentsFn = ProductMoments (*)(const double* b, const double* c,
                                            const double* z, const double* zz,
                                            std::size_t n);

// Bilinear interpolation of a row-major float map at n continuous pixel
// coordinates. Pixel centers sit at (i + 0.5, j + 0.5); coordinates clamp
// to the edge and negative stored values clamp to 0 before interpolation.
using BilinearSampleFn = void (*)(const float* map, int width, int height,
                                  const double* u, const double* v,
                                  std::size_t n, double* out);

// map[j][i] += amplitude * col_v[j] * row_u[i]; the separable accumulation
// behind Gaussian blob synthesis. Both variants use fused multiply-add, so
// their results are bitwise identical.
using BlobAccumulateFn = void (*)(float* map, int width, int height,
                                  const float* row_u, const float* col_v,
                                  float amplitude);

extern const ProductMomentsFn product_moments;
extern const BilinearSampleFn bilinear_sample;
extern const BlobAccumulateFn blob_accumulate;

// Name of the selected backend ("scalar" or "avx2").
const char* backend_name();

namespace scalar {
ProductMoments product_moments(const double* b, const double* c, const double* z,
                               const double* zz, std::size_t n);
void bilinear_sample(const float* map, int width, int height, const double* u,
                     const double* v, std::size_t n, double* out);
void blob_accumulate(float* map, int width, int height, const float* row_u,
                     const float* col_v, float amplitude);
}  // namespace scalar

#if defined(MVF_WITH_AVX2)
namespace avx2 {
ProductMoments product_moments(const double* b, const double* c, const double* z,
                               const double* zz, std::size_t n);
void bilinear_sample(const float* map, int width, int height, const double* u,
                     const double* v, std::size_t n, double* out);
void blob_accumulate(float* map, int width, int height, const float* row_u,
                     const float* col_v, float amplitude);
}  // namespace avx2

// True when the running CPU exposes AVX2 and FMA.
bool avx2_supported();
#endif

}  // namespace mvf::kernels
