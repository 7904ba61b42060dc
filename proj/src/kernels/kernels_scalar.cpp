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

#include <algorithm>
#include <cmath>

#include "mvf/kernels.hpp"

namespace mvf::kernels::scalar {

ProductMoments product_moments(const double* b, const double* c, const double* z,
                               const double* zz, std::size_t n) {
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = b[k] * c[k];
        s0 += w;
        s1 += w * z[k];
        s2 += w * zz[k];
    }
    return {s0, s1, s2};
}

void bilinear_sample(const float* map, int width, int height, const double* u,
                     const double* v, std::size_t n, double* out) {
    const double xmax = static_cast<double>(width - 1);
    const double ymax = static_cast<double>(height - 1);
    const int imax = std::max(width - 2, 0);
    const int jmax = std::max(height - 2, 0);
    for (std::size_t k = 0; k < n; ++k) {
        double x = std::min(std::max(u[k] - 0.5, 0.0), xmax);
        double y = std::min(std::max(v[k] - 0.5, 0.0), ymax);
        int i0 = std::min(static_cast<int>(std::floor(x)), imax);
        int j0 = std::min(static_cast<int>(std::floor(y)), jmax);
        const int i1 = std::min(i0 + 1, width - 1);
        const int j1 = std::min(j0 + 1, height - 1);
        const double tx = x - static_cast<double>(i0);
        const double ty = y - static_cast<double>(j0);
        const double v00 = static_cast<double>(std::max(0.0f, map[j0 * width + i0]));
        const double v01 = static_cast<double>(std::max(0.0f, map[j0 * width + i1]));
        const double v10 = static_cast<double>(std::max(0.0f, map[j1 * width + i0]));
        const double v11 = static_cast<double>(std::max(0.0f, map[j1 * width + i1]));
        const double top = v00 + tx * (v01 - v00);
        const double bot = v10 + tx * (v11 - v10);
        out[k] = top + ty * (bot - top);
    }
}

void blob_accumulate(float* map, int width, int height, const float* row_u,
                     const float* col_v, float amplitude) {
    for (int j = 0; j < height; ++j) {
        const float a = amplitude * col_v[j];
        float* row = map + static_cast<std::size_t>(j) * width;
        for (int i = 0; i < width; ++i) {
            row[i] = std::fmaf(a, row_u[i], row[i]);
        }
    }
}

}  // namespace mvf::kernels::scalar
