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

#include "mvf/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <limits>

namespace mvf {

namespace {

constexpr double kSkewTie = 1e-12;
constexpr double kFlatExtent = 1e-9;

// Sign rule for a principal axis: positive skewness of the point coordinates
// along it; ties fall back to a non-negative camera-z component, then to a
// positive first nonzero component.
Eigen::Vector3d fix_axis_sign(const Eigen::Vector3d& axis,
                              const std::vector<Eigen::Vector3d>& pts,
                              const Eigen::Vector3d& mean) {
    double m2 = 0.0;
    double m3 = 0.0;
    for (const auto& p : pts) {
        const double c = axis.dot(p - mean);
        m2 += c * c;
        m3 += c * c * c;
    }
    const double n = static_cast<double>(pts.size());
    m2 /= n;
    m3 /= n;
    if (m2 > 0.0) {
        const double skew = m3 / std::pow(m2, 1.5);
        if (std::abs(skew) >= kSkewTie) {
            return skew < 0.0 ? Eigen::Vector3d(-axis) : axis;
        }
    }
    if (axis.z() != 0.0) {
        return axis.z() < 0.0 ? Eigen::Vector3d(-axis) : axis;
    }
    for (int i = 0; i < 3; ++i) {
        if (axis[i] != 0.0) {
            return axis[i] < 0.0 ? Eigen::Vector3d(-axis) : axis;
        }
    }
    return axis;
}

}  // namespace

void CameraIntrinsics::validate() const {
    if (!(fx > 0.0) || !(fy > 0.0)) {
        throw Error(ErrorCode::out_of_range, "focal lengths must be positive");
    }
    if (cx < 0.0 || cx >= image_width || cy < 0.0 || cy >= image_height) {
        throw Error(ErrorCode::out_of_range, "principal point outside the image");
    }
}

PointCloud depth_to_pointcloud(const DepthFrame& frame, const CameraIntrinsics& cam) {
    cam.validate();
    PointCloud cloud;
    cloud.points.reserve(frame.depth.size() / 4);
    for (int iy = 0; iy < frame.height; ++iy) {
        const float* row = frame.depth.data() + static_cast<std::size_t>(iy) * frame.width;
        const double v = iy + 0.5;
        for (int ix = 0; ix < frame.width; ++ix) {
            const double d = row[ix];
            if (!(d > 0.0)) {
                continue;
            }
            const double u = ix + 0.5;
            cloud.points.emplace_back((u - cam.cx) * d / cam.fx, (v - cam.cy) * d / cam.fy, d);
        }
    }
    if (cloud.points.empty()) {
        throw Error(ErrorCode::empty_frame, "no pixel with depth > 0");
    }
    return cloud;
}

ObbFrame compute_obb(const PointCloud& cloud) {
    if (cloud.points.empty()) {
        throw Error(ErrorCode::degenerate_cloud, "empty point cloud");
    }
    // Accumulate moments over a lexicographically sorted copy so identical
    // clouds give bitwise-identical boxes regardless of point order.
    std::vector<Eigen::Vector3d> pts = cloud.points;
    std::sort(pts.begin(), pts.end(), [](const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
        if (a.x() != b.x()) return a.x() < b.x();
        if (a.y() != b.y()) return a.y() < b.y();
        return a.z() < b.z();
    });
    if (pts.front() == pts.back()) {
        throw Error(ErrorCode::degenerate_cloud, "all points identical");
    }

    const double n = static_cast<double>(pts.size());
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& p : pts) {
        mean += p;
    }
    mean /= n;

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const auto& p : pts) {
        const Eigen::Vector3d d = p - mean;
        cov += d * d.transpose();
    }
    cov /= n;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    // Eigen returns ascending eigenvalues; the box wants descending variance.
    Eigen::Vector3d axis1 = fix_axis_sign(eig.eigenvectors().col(2), pts, mean);
    Eigen::Vector3d axis2 = fix_axis_sign(eig.eigenvectors().col(1), pts, mean);
    const Eigen::Vector3d axis3 = axis1.cross(axis2);

    ObbFrame obb;
    obb.axes.col(0) = axis1;
    obb.axes.col(1) = axis2;
    obb.axes.col(2) = axis3;

    Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector3d hi = -lo;
    for (const auto& p : pts) {
        const Eigen::Vector3d c = obb.axes.transpose() * p;
        lo = lo.cwiseMin(c);
        hi = hi.cwiseMax(c);
    }
    const Eigen::Vector3d center = 0.5 * (lo + hi);
    obb.origin = obb.axes * center;
    obb.extents = 0.5 * (hi - lo);
    return obb;
}

ProjectedView rasterize_view(const PointCloud& cloud, const ObbFrame& obb, Plane plane,
                             int resolution) {
    const int ua = plane_u_axis(plane);
    const int va = plane_v_axis(plane);
    const int na = plane_normal_axis(plane);

    ProjectedView view;
    view.plane = plane;
    view.width = resolution;
    view.height = resolution;
    view.values.assign(static_cast<std::size_t>(resolution) * resolution, 0.0f);
    view.mask.assign(static_cast<std::size_t>(resolution) * resolution, 0);

    // Uniform scale placing the face edges on the centers of the pixels two
    // in from the border; flat axes do not constrain it. Edge points land
    // half a pixel from the nearest bin boundary, which keeps the floor
    // binning stable against rounding in the box fit.
    double scale = std::numeric_limits<double>::infinity();
    for (int a : {ua, va}) {
        if (obb.extents[a] > kFlatExtent) {
            scale = std::min(scale, (resolution - 5) / (2.0 * obb.extents[a]));
        }
    }
    if (!std::isfinite(scale)) {
        scale = 1.0;
    }
    view.uv_scale = Eigen::Vector2d(scale, scale);
    view.uv_origin = Eigen::Vector2d(resolution / 2.0, resolution / 2.0);

    std::vector<Eigen::Vector3d> locals(cloud.points.size());
    double near = std::numeric_limits<double>::infinity();
    double far = -near;
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        locals[i] = obb.to_local(cloud.points[i]);
        near = std::min(near, locals[i][na]);
        far = std::max(far, locals[i][na]);
    }
    view.near_mm = near;
    view.far_mm = far;
    const double range = far - near;

    for (const auto& c : locals) {
        const double u = scale * c[ua] + view.uv_origin.x();
        const double v = scale * c[va] + view.uv_origin.y();
        const int ix = std::clamp(static_cast<int>(std::floor(u)), 0, resolution - 1);
        const int iy = std::clamp(static_cast<int>(std::floor(v)), 0, resolution - 1);
        const float d = range > 0.0 ? static_cast<float>((c[na] - near) / range) : 0.0f;
        const std::size_t idx = static_cast<std::size_t>(iy) * resolution + ix;
        if (view.mask[idx] == 0 || d < view.values[idx]) {
            view.values[idx] = d;
        }
        view.mask[idx] = 1;
    }
    return view;
}

void apply_view_filters(ProjectedView& view) {
    const int w = view.width;
    const int h = view.height;

    // 3x3 median over foreground values; even windows average the two
    // central elements.
    std::vector<float> filtered = view.values;
    float window[9];
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!view.foreground(x, y)) {
                continue;
            }
            int count = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = x + dx;
                    const int ny = y + dy;
                    if (nx >= 0 && nx < w && ny >= 0 && ny < h && view.foreground(nx, ny)) {
                        window[count++] = view.value_at(nx, ny);
                    }
                }
            }
            std::sort(window, window + count);
            filtered[static_cast<std::size_t>(y) * w + x] =
                (count % 2 == 1) ? window[count / 2]
                                 : 0.5f * (window[count / 2 - 1] + window[count / 2]);
        }
    }

    // Opening: erosion then dilation, pixels outside the image count as
    // background. The result is a subset of the original mask.
    std::vector<std::uint8_t> eroded(view.mask.size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool all = true;
            for (int dy = -1; dy <= 1 && all; ++dy) {
                for (int dx = -1; dx <= 1 && all; ++dx) {
                    const int nx = x + dx;
                    const int ny = y + dy;
                    all = nx >= 0 && nx < w && ny >= 0 && ny < h && view.foreground(nx, ny);
                }
            }
            if (all) {
                eroded[static_cast<std::size_t>(y) * w + x] = 1;
            }
        }
    }
    std::vector<std::uint8_t> opened(view.mask.size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool any = false;
            for (int dy = -1; dy <= 1 && !any; ++dy) {
                for (int dx = -1; dx <= 1 && !any; ++dx) {
                    const int nx = x + dx;
                    const int ny = y + dy;
                    any = nx >= 0 && nx < w && ny >= 0 && ny < h &&
                          eroded[static_cast<std::size_t>(ny) * w + nx] != 0;
                }
            }
            if (any) {
                opened[static_cast<std::size_t>(y) * w + x] = 1;
            }
        }
    }

    view.mask = std::move(opened);
    for (std::size_t i = 0; i < view.values.size(); ++i) {
        view.values[i] = view.mask[i] != 0 ? filtered[i] : 0.0f;
    }
}

std::array<ProjectedView, 3> project_to_planes(const PointCloud& cloud, const ObbFrame& obb,
                                               int resolution) {
    std::array<ProjectedView, 3> views{rasterize_view(cloud, obb, Plane::xy, resolution),
                                       rasterize_view(cloud, obb, Plane::yz, resolution),
                                       rasterize_view(cloud, obb, Plane::zx, resolution)};
    for (auto& view : views) {
        apply_view_filters(view);
    }
    return views;
}

double unproject_view_value(const ProjectedView& view, const Eigen::Vector2d& pixel_uv,
                            double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw Error(ErrorCode::out_of_range, "normalized value outside [0, 1]");
    }
    if (pixel_uv.x() < 0.0 || pixel_uv.x() > view.width || pixel_uv.y() < 0.0 ||
        pixel_uv.y() > view.height) {
        throw Error(ErrorCode::out_of_range, "pixel coordinates outside the view");
    }
    return view.near_mm + value * (view.far_mm - view.near_mm);
}

}  // namespace mvf
