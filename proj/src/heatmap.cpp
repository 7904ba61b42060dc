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

#include "mvf/heatmap.hpp"

#include <cmath>
#include <vector>

#include "mvf/kernels.hpp"
#include "mvf/rng.hpp"

namespace mvf {

namespace {

void check_link(const ViewLink& link) {
    if (link.view_width <= 0 || link.view_height <= 0) {
        throw Error(ErrorCode::view_mismatch, "view link has no resolution");
    }
}

// Separable blob factors along one axis, evaluated at pixel centers. The
// float rounding happens here once so synthesis and its tests share bits.
std::vector<float> axis_factors(int size, double center, double sigma) {
    std::vector<float> factors(static_cast<std::size_t>(size));
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (int i = 0; i < size; ++i) {
        const double d = (i + 0.5) - center;
        factors[static_cast<std::size_t>(i)] = static_cast<float>(std::exp(-d * d * inv));
    }
    return factors;
}

void accumulate_blob(HeatMapStack& stack, int joint, const Eigen::Vector2d& center_uv,
                     double sigma, double amplitude) {
    const double cu = center_uv.x() * (static_cast<double>(stack.width) / stack.link.view_width);
    const double cv = center_uv.y() * (static_cast<double>(stack.height) / stack.link.view_height);
    const std::vector<float> row_u = axis_factors(stack.width, cu, sigma);
    const std::vector<float> col_v = axis_factors(stack.height, cv, sigma);
    kernels::blob_accumulate(stack.map(joint), stack.width, stack.height, row_u.data(),
                             col_v.data(), static_cast<float>(amplitude));
}

}  // namespace

HeatMapStack synthesize_heatmaps(Plane plane, const std::vector<Eigen::Vector2d>& joints_uv,
                                 double sigma, int width, int height, const ViewLink& link) {
    if (!(sigma > 0.0)) {
        throw Error(ErrorCode::out_of_range, "blob sigma must be positive");
    }
    check_link(link);
    HeatMapStack stack;
    stack.plane = plane;
    stack.joints = static_cast<int>(joints_uv.size());
    stack.width = width;
    stack.height = height;
    stack.link = link;
    stack.values.assign(static_cast<std::size_t>(stack.joints) * height * width, 0.0f);
    for (int k = 0; k < stack.joints; ++k) {
        accumulate_blob(stack, k, joints_uv[static_cast<std::size_t>(k)], sigma, 1.0);
    }
    return stack;
}

double sample(const HeatMapStack& stack, int joint, const Eigen::Vector2d& view_uv) {
    double out = 0.0;
    sample_many(stack, joint, &view_uv.x(), &view_uv.y(), 1, &out);
    return out;
}

void sample_many(const HeatMapStack& stack, int joint, const double* view_u,
                 const double* view_v, int count, double* out) {
    if (joint < 0 || joint >= stack.joints) {
        throw Error(ErrorCode::out_of_range, "joint index outside the stack");
    }
    check_link(stack.link);
    const double rx = static_cast<double>(stack.width) / stack.link.view_width;
    const double ry = static_cast<double>(stack.height) / stack.link.view_height;
    std::vector<double> hu(static_cast<std::size_t>(count));
    std::vector<double> hv(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        hu[static_cast<std::size_t>(i)] = view_u[i] * rx;
        hv[static_cast<std::size_t>(i)] = view_v[i] * ry;
    }
    kernels::bilinear_sample(stack.map(joint), stack.width, stack.height, hu.data(), hv.data(),
                             static_cast<std::size_t>(count), out);
}

void add_gaussian_noise(HeatMapStack& stack, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) {
        throw Error(ErrorCode::out_of_range, "noise sigma must be non-negative");
    }
    if (sigma == 0.0) {
        return;
    }
    Rng rng(seed);
    for (float& v : stack.values) {
        const double noisy = static_cast<double>(v) + sigma * rng.normal();
        v = noisy > 0.0 ? static_cast<float>(noisy) : 0.0f;
    }
}

void add_hotspot(HeatMapStack& stack, int joint, const Eigen::Vector2d& center_uv, double sigma,
                 double amplitude) {
    if (joint < 0 || joint >= stack.joints) {
        throw Error(ErrorCode::out_of_range, "joint index outside the stack");
    }
    if (!(sigma > 0.0) || amplitude < 0.0) {
        throw Error(ErrorCode::out_of_range, "hotspot sigma/amplitude out of range");
    }
    accumulate_blob(stack, joint, center_uv, sigma, amplitude);
}

}  // namespace mvf
