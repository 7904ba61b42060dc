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
#include <array>
#include <cstdint>
#include <vector>

#include "mvf/common.hpp"

namespace mvf {

/// Pinhole camera parameters in pixels.
struct CameraIntrinsics {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    int image_width = 0;
    int image_height = 0;

    void validate() const;
};

/// A cropped depth image in millimeters; 0 marks invalid/background pixels.
struct DepthFrame {
    int width = 0;
    int height = 0;
    std::vector<float> depth;  // row-major, width*height

    float at(int x, int y) const { return depth[static_cast<std::size_t>(y) * width + x]; }
};

/// 3D points in camera-space millimeters.
struct PointCloud {
    std::vector<Eigen::Vector3d> points;

    std::size_t size() const { return points.size(); }
};

/// The projection coordinate system: a PCA-aligned oriented bounding box.
///
/// Columns of `axes` are the box x, y, z directions ordered by descending
/// explained variance; the matrix is orthonormal and right-handed. `extents`
/// are half-lengths, so local coordinates of all input points lie in
/// [-extents, extents].
struct ObbFrame {
    Eigen::Vector3d origin = Eigen::Vector3d::Zero();
    Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();
    Eigen::Vector3d extents = Eigen::Vector3d::Zero();

    Eigen::Vector3d to_local(const Eigen::Vector3d& p) const {
        return axes.transpose() * (p - origin);
    }
    Eigen::Vector3d to_camera(const Eigen::Vector3d& q) const { return origin + axes * q; }
};

/// One orthographic projection of the cloud onto a box plane.
///
/// `values` hold the normalized distance along the plane's normal axis
/// (0 = nearest point of the view, 1 = farthest); `mask` marks pixels at
/// least one point landed on. `near_mm`/`far_mm` are the signed box-local
/// normal coordinates the normalization maps to 0 and 1. The affine map
/// pixel_uv = uv_scale .* plane_coords + uv_origin takes box-plane
/// millimeters to continuous pixel coordinates.
struct ProjectedView {
    Plane plane = Plane::xy;
    int width = 0;
    int height = 0;
    std::vector<float> values;
    std::vector<std::uint8_t> mask;
    double near_mm = 0.0;
    double far_mm = 0.0;
    Eigen::Vector2d uv_scale{1.0, 1.0};
    Eigen::Vector2d uv_origin{0.0, 0.0};

    Eigen::Vector2d plane_to_uv(const Eigen::Vector2d& plane_mm) const {
        return uv_scale.cwiseProduct(plane_mm) + uv_origin;
    }
    Eigen::Vector2d uv_to_plane(const Eigen::Vector2d& uv) const {
        return (uv - uv_origin).cwiseQuotient(uv_scale);
    }
    bool in_bounds(int ix, int iy) const {
        return ix >= 0 && ix < width && iy >= 0 && iy < height;
    }
    float value_at(int ix, int iy) const {
        return values[static_cast<std::size_t>(iy) * width + ix];
    }
    bool foreground(int ix, int iy) const {
        return mask[static_cast<std::size_t>(iy) * width + ix] != 0;
    }
};

/// Back-projects every valid pixel through the pinhole model:
/// x = (u - cx) d / fx, y = (v - cy) d / fy, z = d, with (u, v) at pixel
/// centers. Throws EmptyFrame when no pixel has depth > 0.
PointCloud depth_to_pointcloud(const DepthFrame& frame, const CameraIntrinsics& cam);

/// Fits the PCA oriented bounding box. Axis signs are fixed by the skewness
/// rule (third central moment >= 0, camera-z fallback, first-nonzero
/// fallback); the third axis is the cross product of the first two. Moment
/// accumulation runs over a lexicographically sorted copy of the points so
/// the result is independent of input ordering. Throws DegenerateCloud when
/// all points coincide.
ObbFrame compute_obb(const PointCloud& cloud);

/// Rasterizes one plane: each point bins by floor of its affine-mapped plane
/// coordinates (clamped into range) and the pixel keeps the smallest
/// normalized normal-axis distance. No cleanup filtering is applied.
ProjectedView rasterize_view(const PointCloud& cloud, const ObbFrame& obb, Plane plane,
                             int resolution);

/// In-place cleanup: 3x3 median filter over foreground values (window
/// restricted to foreground pixels) followed by a 3x3 morphological opening
/// of the mask. The filtered mask is always a subset of the input mask.
void apply_view_filters(ProjectedView& view);

/// Rasterizes all three planes and applies the cleanup filters.
std::array<ProjectedView, 3> project_to_planes(const PointCloud& cloud, const ObbFrame& obb,
                                               int resolution);

/// Inverse of the distance normalization: near + value * (far - near),
/// i.e. the signed box-local coordinate along the view's normal axis.
/// Throws OutOfRange unless value is in [0, 1] and pixel_uv is inside the
/// view.
double unproject_view_value(const ProjectedView& view, const Eigen::Vector2d& pixel_uv,
                            double value);

}  // namespace mvf
