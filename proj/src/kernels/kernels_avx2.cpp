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

// This translation unit is compiled with -mavx2 -mfma. Runtime dispatch
// guarantees these entry points only run on CPUs with AVX2 and FMA.

#if defined(MVF_WITH_AVX2)

#include <immintrin.h>

#include <cstddef>

#include "mvf/kernels.hpp"

namespace mvf::kernels::avx2 {

ProductMoments product_moments(const double* b, const double* c, const double* z,
                               const double* zz, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d w = _mm256_mul_pd(_mm256_loadu_pd(b + k), _mm256_loadu_pd(c + k));
        acc0 = _mm256_add_pd(acc0, w);
        acc1 = _mm256_fmadd_pd(w, _mm256_loadu_pd(z + k), acc1);
        acc2 = _mm256_fmadd_pd(w, _mm256_loadu_pd(zz + k), acc2);
    }
    alignas(32) double lanes[12];
    _mm256_store_pd(lanes + 0, acc0);
    _mm256_store_pd(lanes + 4, acc1);
    _mm256_store_pd(lanes + 8, acc2);
    double s0 = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    double s1 = (lanes[4] + lanes[5]) + (lanes[6] + lanes[7]);
    double s2 = (lanes[8] + lanes[9]) + (lanes[10] + lanes[11]);
    for (; k < n; ++k) {
        const double w = b[k] * c[k];
        s0 += w;
        s1 += w * z[k];
        s2 += w * zz[k];
    }
    return {s0, s1, s2};
}

void bilinear_sample(const float* map, int width, int height, const double* u,
                     const double* v, std::size_t n, double* out) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d zero_d = _mm256_setzero_pd();
    const __m256d xmax = _mm256_set1_pd(static_cast<double>(width - 1));
    const __m256d ymax = _mm256_set1_pd(static_cast<double>(height - 1));
    const __m128i imax = _mm_set1_epi32(width - 2 > 0 ? width - 2 : 0);
    const __m128i jmax = _mm_set1_epi32(height - 2 > 0 ? height - 2 : 0);
    const __m128i ilast = _mm_set1_epi32(width - 1);
    const __m128i jlast = _mm_set1_epi32(height - 1);
    const __m128i izero = _mm_setzero_si128();
    const __m128i one = _mm_set1_epi32(1);
    const __m128i wvec = _mm_set1_epi32(width);
    const __m128 zero_f = _mm_setzero_ps();

    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d x = _mm256_sub_pd(_mm256_loadu_pd(u + k), half);
        __m256d y = _mm256_sub_pd(_mm256_loadu_pd(v + k), half);
        x = _mm256_min_pd(_mm256_max_pd(x, zero_d), xmax);
        y = _mm256_min_pd(_mm256_max_pd(y, zero_d), ymax);
        // After floor the values are exact small integers, so truncation
        // conversion equals floor.
        const __m256d xf = _mm256_floor_pd(x);
        const __m256d yf = _mm256_floor_pd(y);
        __m128i i0 = _mm_min_epi32(_mm256_cvttpd_epi32(xf), imax);
        __m128i j0 = _mm_min_epi32(_mm256_cvttpd_epi32(yf), jmax);
        i0 = _mm_max_epi32(i0, izero);
        j0 = _mm_max_epi32(j0, izero);
        const __m128i i1 = _mm_min_epi32(_mm_add_epi32(i0, one), ilast);
        const __m128i j1 = _mm_min_epi32(_mm_add_epi32(j0, one), jlast);
        const __m256d tx = _mm256_sub_pd(x, _mm256_cvtepi32_pd(i0));
        const __m256d ty = _mm256_sub_pd(y, _mm256_cvtepi32_pd(j0));

        const __m128i row0 = _mm_mullo_epi32(j0, wvec);
        const __m128i row1 = _mm_mullo_epi32(j1, wvec);
        const __m128 f00 = _mm_max_ps(_mm_i32gather_ps(map, _mm_add_epi32(row0, i0), 4), zero_f);
        const __m128 f01 = _mm_max_ps(_mm_i32gather_ps(map, _mm_add_epi32(row0, i1), 4), zero_f);
        const __m128 f10 = _mm_max_ps(_mm_i32gather_ps(map, _mm_add_epi32(row1, i0), 4), zero_f);
        const __m128 f11 = _mm_max_ps(_mm_i32gather_ps(map, _mm_add_epi32(row1, i1), 4), zero_f);
        const __m256d v00 = _mm256_cvtps_pd(f00);
        const __m256d v01 = _mm256_cvtps_pd(f01);
        const __m256d v10 = _mm256_cvtps_pd(f10);
        const __m256d v11 = _mm256_cvtps_pd(f11);

        const __m256d top = _mm256_add_pd(v00, _mm256_mul_pd(tx, _mm256_sub_pd(v01, v00)));
        const __m256d bot = _mm256_add_pd(v10, _mm256_mul_pd(tx, _mm256_sub_pd(v11, v10)));
        _mm256_storeu_pd(out + k, _mm256_add_pd(top, _mm256_mul_pd(ty, _mm256_sub_pd(bot, top))));
    }
    if (k < n) {
        scalar::bilinear_sample(map, width, height, u + k, v + k, n - k, out + k);
    }
}

void blob_accumulate(float* map, int width, int height, const float* row_u,
                     const float* col_v, float amplitude) {
    for (int j = 0; j < height; ++j) {
        const float a = amplitude * col_v[j];
        const __m256 av = _mm256_set1_ps(a);
        float* row = map + static_cast<std::size_t>(j) * width;
        int i = 0;
        for (; i + 8 <= width; i += 8) {
            const __m256 m = _mm256_loadu_ps(row + i);
            _mm256_storeu_ps(row + i, _mm256_fmadd_ps(av, _mm256_loadu_ps(row_u + i), m));
        }
        for (; i < width; ++i) {
            row[i] = __builtin_fmaf(a, row_u[i], row[i]);
        }
    }
}

}  // namespace mvf::kernels::avx2

#endif  // MVF_WITH_AVX2
