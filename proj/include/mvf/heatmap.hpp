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

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "mvf/common.hpp"
#include "mvf/geometry.hpp"

namespace mvf {

// Registration of a heat-map stack against the projected view it scores:
// the plane-mm -> view-pixel affine map plus the view resolution. Sampling
// rescales view pixels to heat-map pixels by (width / view_width,
// height / view_height).
struct ViewLink {
    Eigen::Vector2d uv_scale = Eigen::Vector2d::Ones();
    Eigen::Vector2d uv_origin = Eigen::Vector2d::Zero();
    int view_width = 0;
    int view_height = 0;
};

inline ViewLink view_link_of(const ProjectedView& view) {
    return ViewLink{view.uv_scale, view.uv_origin, view.width, view.height};
}

// k per-joint confidence grids for one projection plane. Values are stored
// as written (negatives possible in externally produced maps); sampling
// clamps at zero.
struct HeatMapStack {
    Plane plane = Plane::xy;
    int joints = 0;
    int width = 0;
    int height = 0;
    std::vector<float> values;  // joints * height * width, row-major per joint
    ViewLink link;

    const float* map(int joint) const {
        return values.data() + static_cast<std::size_t>(joint) * height * width;
    }
    float* map(int joint) {
        return values.data() + static_cast<std::size_t>(joint) * height * width;
    }
};

// Renders one unnormalized Gaussian blob (peak 1 at the joint location) per
// joint. Centers are given in view pixels of `link`; sigma is in heat-map
// pixels. Joints outside the image leave truncated blobs.
HeatMapStack synthesize_heatmaps(Plane plane, const std::vector<Eigen::Vector2d>& joints_uv,
                                 double sigma, int width, int height, const ViewLink& link);

// Bilinear lookup at continuous view-pixel coordinates, clamped to the map
// border; stored negatives read as 0. Exact at heat-map pixel centers.
double sample(const HeatMapStack& stack, int joint, const Eigen::Vector2d& view_uv);

// Batch variant used by the fusion grid: samples one joint's map at `count`
// view-space points.
void sample_many(const HeatMapStack& stack, int joint, const double* view_u,
                 const double* view_v, int count, double* out);

// Adds i.i.d. Gaussian noise of standard deviation sigma to every stored
// value, then clamps at 0. sigma = 0 leaves the stack bitwise unchanged.
void add_gaussian_noise(HeatMapStack& stack, double sigma, std::uint64_t seed);

// Adds a second blob of the given amplitude to one joint's map. Center is
// in view pixels; sigma in heat-map pixels. Other joints and other stacks
// are untouched.
void add_hotspot(HeatMapStack& stack, int joint, const Eigen::Vector2d& center_uv, double sigma,
                 double amplitude);

}  // namespace mvf
