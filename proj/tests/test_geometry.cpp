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

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "mvf/geometry.hpp"
#include "mvf/rng.hpp"
#include "mvf/synth.hpp"
#include "support/oracles.hpp"

using namespace mvf;

namespace {

CameraIntrinsics test_camera() {
    CameraIntrinsics cam;
    cam.fx = 300.0;
    cam.fy = 300.0;
    cam.cx = 320.5;
    cam.cy = 240.5;
    cam.image_width = 640;
    cam.image_height = 480;
    return cam;
}

DepthFrame blank_frame(int w, int h) {
    DepthFrame frame;
    frame.width = w;
    frame.height = h;
    frame.depth.assign(static_cast<std::size_t>(w) * h, 0.0f);
    return frame;
}

// Random anisotropic cloud with per-axis skew bounded away from zero, so the
// OBB sign rule is deterministic across rigid motions.
PointCloud skewed_cloud(Rng& rng, int count) {
    PointCloud cloud;
    cloud.points.reserve(static_cast<std::size_t>(count));
    const Eigen::Vector3d scale(30.0, 12.0, 4.0);
    for (int i = 0; i < count; ++i) {
        Eigen::Vector3d p;
        for (int a = 0; a < 3; ++a) {
            // squared uniform keeps the third moment clearly positive
            const double u = rng.uniform();
            p[a] = scale[a] * (u * u * 2.0 - 0.5);
        }
        cloud.points.push_back(p);
    }
    return cloud;
}

Eigen::Matrix3d random_rotation(Rng& rng) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double u3 = rng.uniform();
    const double two_pi = 6.283185307179586;
    Eigen::Quaterniond q(std::sqrt(1.0 - u1) * std::sin(two_pi * u2),
                         std::sqrt(1.0 - u1) * std::cos(two_pi * u2),
                         std::sqrt(u1) * std::sin(two_pi * u3),
                         std::sqrt(u1) * std::cos(two_pi * u3));
    return q.normalized().toRotationMatrix();
}

// 3x3 opening of a binary mask, border counted as background.
std::vector<std::uint8_t> open_mask(const std::vector<std::uint8_t>& mask, int w, int h) {
    std::vector<std::uint8_t> eroded(mask.size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool all = true;
            for (int dy = -1; dy <= 1 && all; ++dy) {
                for (int dx = -1; dx <= 1 && all; ++dx) {
                    const int nx = x + dx;
                    const int ny = y + dy;
                    all = nx >= 0 && ny >= 0 && nx < w && ny < h &&
                          mask[static_cast<std::size_t>(ny) * w + nx] != 0;
                }
            }
            eroded[static_cast<std::size_t>(y) * w + x] = all ? 1 : 0;
        }
    }
    std::vector<std::uint8_t> dilated(mask.size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool any = false;
            for (int dy = -1; dy <= 1 && !any; ++dy) {
                for (int dx = -1; dx <= 1 && !any; ++dx) {
                    const int nx = x + dx;
                    const int ny = y + dy;
                    any = nx >= 0 && ny >= 0 && nx < w && ny < h &&
                          eroded[static_cast<std::size_t>(ny) * w + nx] != 0;
                }
            }
            dilated[static_cast<std::size_t>(y) * w + x] = any ? 1 : 0;
        }
    }
    return dilated;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("principal point back-projects to the optical axis") {
    const CameraIntrinsics cam = test_camera();
    DepthFrame frame = blank_frame(cam.image_width, cam.image_height);
    frame.depth[static_cast<std::size_t>(240) * frame.width + 320] = 500.0f;

    const PointCloud cloud = depth_to_pointcloud(frame, cam);
    REQUIRE(cloud.size() == 1);
    CHECK(cloud.points[0].x() == 0.0);
    CHECK(cloud.points[0].y() == 0.0);
    CHECK(cloud.points[0].z() == doctest::Approx(500.0));
}

TEST_CASE("one focal length off-center forces x = z") {
    const CameraIntrinsics cam = test_camera();
    DepthFrame frame = blank_frame(cam.image_width, cam.image_height);
    // pixel center 620.5 = cx + fx
    frame.depth[static_cast<std::size_t>(240) * frame.width + 620] = 321.0f;

    const PointCloud cloud = depth_to_pointcloud(frame, cam);
    REQUIRE(cloud.size() == 1);
    CHECK(cloud.points[0].x() == doctest::Approx(321.0).epsilon(1e-12));
    CHECK(cloud.points[0].y() == 0.0);
    CHECK(cloud.points[0].z() == doctest::Approx(321.0));
}

TEST_CASE("invalid pixels are skipped and counts match") {
    const CameraIntrinsics cam = test_camera();
    DepthFrame frame = blank_frame(320, 240);
    frame.depth[1234] = 400.0f;
    CHECK(depth_to_pointcloud(frame, cam).size() == 1);

    Rng rng(99);
    int valid = 0;
    for (auto& d : frame.depth) {
        if (rng.uniform() < 0.3) {
            d = static_cast<float>(rng.uniform(100.0, 900.0));
            ++valid;
        } else {
            d = 0.0f;
        }
    }
    CHECK(depth_to_pointcloud(frame, cam).size() == static_cast<std::size_t>(valid));
}

TEST_CASE("all-background frame raises empty_frame") {
    const CameraIntrinsics cam = test_camera();
    const DepthFrame frame = blank_frame(8, 8);
    try {
        depth_to_pointcloud(frame, cam);
        FAIL("expected empty_frame");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::empty_frame);
    }
}

TEST_CASE("collinear cloud yields a line-aligned box") {
    PointCloud cloud;
    for (int i = -10; i <= 10; ++i) {
        cloud.points.emplace_back(static_cast<double>(i), 0.0, 0.0);
    }
    // duplicate one end so the skewness sign rule has a clear answer
    cloud.points.emplace_back(10.0, 0.0, 0.0);

    // origin shifts slightly from the duplicate? no: origin is the center of
    // the min/max interval, which stays [-10, 10]
    const ObbFrame obb = compute_obb(cloud);
    CHECK(std::abs(obb.axes.col(0).x()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(obb.axes.col(0).y() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(obb.axes.col(0).z() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(obb.origin.norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(obb.extents.x() == doctest::Approx(10.0));
    CHECK(obb.extents.y() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(obb.extents.z() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("identical points raise degenerate_cloud") {
    PointCloud cloud;
    for (int i = 0; i < 5; ++i) {
        cloud.points.emplace_back(3.0, -2.0, 7.0);
    }
    try {
        compute_obb(cloud);
        FAIL("expected degenerate_cloud");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::degenerate_cloud);
    }
}

TEST_CASE("obb axes match a Jacobi eigensolve of the sample covariance") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const PointCloud cloud = skewed_cloud(rng, 500);
        const ObbFrame obb = compute_obb(cloud);

        Eigen::Vector3d mean = Eigen::Vector3d::Zero();
        for (const auto& p : cloud.points) {
            mean += p;
        }
        mean /= static_cast<double>(cloud.size());
        std::vector<double> cov(9, 0.0);
        for (const auto& p : cloud.points) {
            const Eigen::Vector3d d = p - mean;
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    cov[static_cast<std::size_t>(i) * 3 + j] += d[i] * d[j];
                }
            }
        }
        for (auto& c : cov) {
            c /= static_cast<double>(cloud.size());
        }

        const test::EigenSym eig = test::jacobi_eigensym(cov, 3);
        for (int a = 0; a < 2; ++a) {
            Eigen::Vector3d oracle(eig.vectors[static_cast<std::size_t>(a) * 3 + 0],
                                   eig.vectors[static_cast<std::size_t>(a) * 3 + 1],
                                   eig.vectors[static_cast<std::size_t>(a) * 3 + 2]);
            // apply the library's documented sign rule to the oracle vector
            double m3 = 0.0;
            for (const auto& p : cloud.points) {
                const double c = oracle.dot(p - mean);
                m3 += c * c * c;
            }
            if (m3 < 0.0) {
                oracle = -oracle;
            }
            CHECK((obb.axes.col(a) - oracle).norm() <= 1e-9);
        }
        const Eigen::Vector3d third = obb.axes.col(0).cross(obb.axes.col(1));
        CHECK((obb.axes.col(2) - third).norm() <= 1e-9);
    }
}

TEST_CASE("obb invariants: orthonormal, right-handed, containing") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const PointCloud cloud = skewed_cloud(rng, 300);
        const ObbFrame obb = compute_obb(cloud);

        const Eigen::Matrix3d gram = obb.axes.transpose() * obb.axes;
        CHECK((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(obb.axes.determinant() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(obb.extents.minCoeff() >= 0.0);
        for (const auto& p : cloud.points) {
            const Eigen::Vector3d local = obb.to_local(p).cwiseAbs();
            for (int a = 0; a < 3; ++a) {
                CHECK(local[a] <= obb.extents[a] + 1e-6);
            }
        }
    }
}

TEST_CASE("obb is deterministic under point reordering") {
    Rng rng(31);
    PointCloud cloud = skewed_cloud(rng, 400);
    const ObbFrame a = compute_obb(cloud);

    std::reverse(cloud.points.begin(), cloud.points.end());
    std::swap(cloud.points[3], cloud.points[77]);
    const ObbFrame b = compute_obb(cloud);

    CHECK(std::memcmp(a.origin.data(), b.origin.data(), 3 * sizeof(double)) == 0);
    CHECK(std::memcmp(a.axes.data(), b.axes.data(), 9 * sizeof(double)) == 0);
    CHECK(std::memcmp(a.extents.data(), b.extents.data(), 3 * sizeof(double)) == 0);
}

TEST_CASE("obb axes rotate with the cloud") {
    Rng rng(55);
    const PointCloud cloud = skewed_cloud(rng, 400);
    const ObbFrame base = compute_obb(cloud);

    const Eigen::Matrix3d rot = random_rotation(rng);
    PointCloud turned;
    for (const auto& p : cloud.points) {
        turned.points.push_back(rot * p);
    }
    const ObbFrame moved = compute_obb(turned);
    for (int a = 0; a < 3; ++a) {
        CHECK((moved.axes.col(a) - rot * base.axes.col(a)).norm() <= 1e-7);
    }
}

TEST_CASE("z-buffer keeps the nearest point and endpoints map to 0 and 1") {
    // axis-aligned box frame so pixels are easy to predict
    ObbFrame obb;
    obb.extents = Eigen::Vector3d(50.0, 50.0, 50.0);

    PointCloud shared;
    shared.points.emplace_back(-20.0, -20.0, 30.0);
    shared.points.emplace_back(-20.0, -20.0, 70.0);
    // the view normalizes over all points, so 30 and 70 are min and max
    ProjectedView xy = rasterize_view(shared, obb, Plane::xy, 96);
    const Eigen::Vector2d uv = xy.plane_to_uv(Eigen::Vector2d(-20.0, -20.0));
    const int ix = static_cast<int>(std::floor(uv.x()));
    const int iy = static_cast<int>(std::floor(uv.y()));
    REQUIRE(xy.foreground(ix, iy));
    CHECK(xy.value_at(ix, iy) == 0.0f);

    PointCloud distinct;
    distinct.points.emplace_back(-20.0, -20.0, 30.0);
    distinct.points.emplace_back(20.0, 20.0, 70.0);
    xy = rasterize_view(distinct, obb, Plane::xy, 96);
    const Eigen::Vector2d uv0 = xy.plane_to_uv(Eigen::Vector2d(-20.0, -20.0));
    const Eigen::Vector2d uv1 = xy.plane_to_uv(Eigen::Vector2d(20.0, 20.0));
    CHECK(xy.value_at(static_cast<int>(uv0.x()), static_cast<int>(uv0.y())) == 0.0f);
    CHECK(xy.value_at(static_cast<int>(uv1.x()), static_cast<int>(uv1.y())) == 1.0f);
}

TEST_CASE("rasterization matches the brute-force oracle exactly") {
    PosePrior gen = default_hand_generator();
    for (std::uint64_t seed : {11u, 22u, 33u}) {
        const JointSet pose = generate_pose(gen, seed);
        const PointCloud cloud = render_cloud(pose, 4.0, 7.0, seed);
        const ObbFrame obb = compute_obb(cloud);
        for (Plane plane : {Plane::xy, Plane::yz, Plane::zx}) {
            const ProjectedView got = rasterize_view(cloud, obb, plane, 96);
            const ProjectedView want = test::rasterize_brute(cloud, obb, plane, 96);
            REQUIRE(got.mask == want.mask);
            REQUIRE(got.values.size() == want.values.size());
            for (std::size_t i = 0; i < got.values.size(); ++i) {
                CHECK(got.values[i] == want.values[i]);
            }
            CHECK(got.near_mm == doctest::Approx(want.near_mm).epsilon(1e-12));
            CHECK(got.far_mm == doctest::Approx(want.far_mm).epsilon(1e-12));
        }
    }
}

TEST_CASE("filters touch the mask only through the documented opening") {
    PosePrior gen = default_hand_generator();
    const JointSet pose = generate_pose(gen, 5);
    const PointCloud cloud = render_cloud(pose, 6.0, 7.0, 5);
    const ObbFrame obb = compute_obb(cloud);

    for (Plane plane : {Plane::xy, Plane::yz, Plane::zx}) {
        ProjectedView raw = rasterize_view(cloud, obb, plane, 96);
        ProjectedView filtered = raw;
        apply_view_filters(filtered);

        const std::vector<std::uint8_t> expect = open_mask(raw.mask, raw.width, raw.height);
        CHECK(filtered.mask == expect);
        for (int y = 0; y < filtered.height; ++y) {
            for (int x = 0; x < filtered.width; ++x) {
                if (!filtered.foreground(x, y)) {
                    CHECK(filtered.value_at(x, y) == 0.0f);
                    continue;
                }
                CHECK(filtered.value_at(x, y) >= 0.0f);
                CHECK(filtered.value_at(x, y) <= 1.0f);
                // surviving values are the 3x3 foreground median of the raw
                // view, even windows averaging the two central elements
                std::vector<float> window;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (raw.in_bounds(nx, ny) && raw.foreground(nx, ny)) {
                            window.push_back(raw.value_at(nx, ny));
                        }
                    }
                }
                std::sort(window.begin(), window.end());
                const std::size_t n = window.size();
                const float med = (n % 2 == 1)
                                      ? window[n / 2]
                                      : 0.5f * (window[n / 2 - 1] + window[n / 2]);
                CHECK(filtered.value_at(x, y) == med);
            }
        }
    }
}

TEST_CASE("full projections keep foreground values inside [0,1]") {
    PosePrior gen = default_hand_generator();
    const JointSet pose = generate_pose(gen, 17);
    const PointCloud cloud = render_cloud(pose, 6.0, 7.0, 17);
    const ObbFrame obb = compute_obb(cloud);
    const auto views = project_to_planes(cloud, obb, 96);
    for (const auto& view : views) {
        for (int y = 0; y < view.height; ++y) {
            for (int x = 0; x < view.width; ++x) {
                if (view.foreground(x, y)) {
                    CHECK(view.value_at(x, y) >= 0.0f);
                    CHECK(view.value_at(x, y) <= 1.0f);
                }
            }
        }
    }
}

TEST_CASE("rigid motion leaves the raw projections unchanged") {
    Rng rng(404);
    int trials = 0;
    for (int t = 0; t < 25; ++t) {
        const PointCloud cloud = skewed_cloud(rng, 600);
        const ObbFrame obb = compute_obb(cloud);

        const Eigen::Matrix3d rot = random_rotation(rng);
        const Eigen::Vector3d shift(rng.uniform(-80.0, 80.0), rng.uniform(-80.0, 80.0),
                                    rng.uniform(-80.0, 80.0));
        PointCloud moved;
        for (const auto& p : cloud.points) {
            moved.points.push_back(rot * p + shift);
        }
        const ObbFrame obb2 = compute_obb(moved);

        for (Plane plane : {Plane::xy, Plane::yz, Plane::zx}) {
            const ProjectedView a = rasterize_view(cloud, obb, plane, 96);
            const ProjectedView b = rasterize_view(moved, obb2, plane, 96);
            REQUIRE(a.mask == b.mask);
            for (std::size_t i = 0; i < a.values.size(); ++i) {
                if (a.mask[i]) {
                    CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-6f);
                }
            }
        }
        ++trials;
    }
    CHECK(trials == 25);
}

TEST_CASE("unproject inverts the normalization") {
    PosePrior gen = default_hand_generator();
    const JointSet pose = generate_pose(gen, 8);
    const PointCloud cloud = render_cloud(pose, 6.0, 7.0, 8);
    const ObbFrame obb = compute_obb(cloud);
    const ProjectedView view = rasterize_view(cloud, obb, Plane::xy, 96);

    const int na = plane_normal_axis(Plane::xy);
    CHECK(unproject_view_value(view, Eigen::Vector2d(10.0, 10.0), 0.0) ==
          doctest::Approx(view.near_mm));
    CHECK(unproject_view_value(view, Eigen::Vector2d(10.0, 10.0), 1.0) ==
          doctest::Approx(view.far_mm));
    CHECK_THROWS_AS(unproject_view_value(view, Eigen::Vector2d(0.0, 0.0), 1.5), Error);

    // round-trip through a known point's pixel
    const Eigen::Vector3d local = obb.to_local(cloud.points[100]);
    const Eigen::Vector2d uv = view.plane_to_uv(Eigen::Vector2d(local.x(), local.y()));
    const int ix = static_cast<int>(std::floor(uv.x()));
    const int iy = static_cast<int>(std::floor(uv.y()));
    REQUIRE(view.foreground(ix, iy));
    const double back = unproject_view_value(view, uv, view.value_at(ix, iy));
    // the pixel may be owned by a nearer point of the same capsule cloud
    CHECK(back <= local[na] + 0.5 * (view.far_mm - view.near_mm) / 255.0 + 1e-9);
    CHECK(back >= view.near_mm - 1e-9);
}

}  // TEST_SUITE
