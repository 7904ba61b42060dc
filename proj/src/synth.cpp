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

#include "mvf/synth.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mvf/rng.hpp"

namespace mvf {

namespace {

constexpr int kJoints = kDefaultJointCount;
constexpr double kTau = 2.0 * 3.14159265358979323846;

// Stream salts, so pose, cloud and noise draws never overlap.
constexpr std::uint64_t kPoseSalt = 0x706f7365;
constexpr std::uint64_t kCloudSalt = 0x636c6f75;
constexpr std::uint64_t kNoiseSalt = 0x6e6f6973;

struct Finger {
    int mcp;
    Eigen::Vector3d dir;      // unit, pointing away from the palm
    double lengths[3];        // proximal, middle, distal segment mm
};

// Right hand, palm toward the camera, camera-space mm around z = 400.
// The wrist keypoint sits at the carpal center just below the palm, and the
// palm is arched: finger chains carry per-finger depth offsets.
// Joint order: wrist, 5 MCP, 5 PIP, 5 DIP, 5 tips, thumb to little.
Eigen::VectorXd build_rest_pose() {
    const Eigen::Vector3d wrist(0.0, -34.0, 400.0);
    const Eigen::Vector3d mcp[5] = {
        {-38.0, -28.0, 414.0}, {-22.0, 2.0, 404.0}, {-2.0, 6.0, 394.0},
        {16.0, 3.0, 384.0},    {32.0, -4.0, 406.0},
    };
    const Finger fingers[5] = {
        {1, Eigen::Vector3d(-0.66, 0.75, 0.0).normalized(), {32.0, 22.0, 20.0}},
        {2, Eigen::Vector3d(-0.08, 1.0, 0.0).normalized(), {38.0, 22.0, 18.0}},
        {3, Eigen::Vector3d(0.0, 1.0, 0.0), {42.0, 25.0, 20.0}},
        {4, Eigen::Vector3d(0.08, 1.0, 0.0).normalized(), {38.0, 23.0, 19.0}},
        {5, Eigen::Vector3d(0.18, 1.0, 0.0).normalized(), {30.0, 18.0, 16.0}},
    };

    Eigen::VectorXd pose(3 * kJoints);
    pose.segment<3>(0) = wrist;
    for (int f = 0; f < 5; ++f) {
        const Eigen::Vector3d base = mcp[f];
        const Eigen::Vector3d pip = base + fingers[f].lengths[0] * fingers[f].dir;
        const Eigen::Vector3d dip = pip + fingers[f].lengths[1] * fingers[f].dir;
        const Eigen::Vector3d tip = dip + fingers[f].lengths[2] * fingers[f].dir;
        pose.segment<3>(3 * (1 + f)) = base;
        pose.segment<3>(3 * (6 + f)) = pip;
        pose.segment<3>(3 * (11 + f)) = dip;
        pose.segment<3>(3 * (16 + f)) = tip;
    }
    return pose;
}

}  // namespace

const std::vector<std::pair<int, int>>& default_bones() {
    static const std::vector<std::pair<int, int>> bones = [] {
        std::vector<std::pair<int, int>> b;
        for (int f = 0; f < 5; ++f) {
            b.emplace_back(0, 1 + f);        // wrist -> MCP
            b.emplace_back(1 + f, 6 + f);    // MCP -> PIP
            b.emplace_back(6 + f, 11 + f);   // PIP -> DIP
            b.emplace_back(11 + f, 16 + f);  // DIP -> tip
        }
        return b;
    }();
    return bones;
}

JointSet default_rest_pose() {
    return JointSet(CoordFrame::camera, build_rest_pose());
}

PosePrior default_hand_generator() {
    const Eigen::VectorXd rest = build_rest_pose();
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (int k = 0; k < kJoints; ++k) {
        centroid += rest.segment<3>(3 * k);
    }
    centroid /= kJoints;

    std::vector<Eigen::VectorXd> modes;
    std::vector<double> variances;
    const auto add_mode = [&](const Eigen::VectorXd& mode, double variance) {
        modes.push_back(mode);
        variances.push_back(variance);
    };

    // Global translations.
    for (int axis = 0; axis < 3; ++axis) {
        Eigen::VectorXd mode = Eigen::VectorXd::Zero(3 * kJoints);
        for (int k = 0; k < kJoints; ++k) {
            mode[3 * k + axis] = 1.0;
        }
        add_mode(mode, axis == 2 ? 625.0 : 900.0);
    }

    // Linearized rotations about the centroid.
    const Eigen::Vector3d axes[3] = {Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitX(),
                                     Eigen::Vector3d::UnitY()};
    const double rot_var[3] = {400.0, 400.0, 361.0};
    for (int r = 0; r < 3; ++r) {
        Eigen::VectorXd mode(3 * kJoints);
        for (int k = 0; k < kJoints; ++k) {
            mode.segment<3>(3 * k) = axes[r].cross(rest.segment<3>(3 * k) - centroid);
        }
        add_mode(mode, rot_var[r]);
    }

    // Per-finger curls: chain joints swing toward the camera, tips most.
    const double curl_var[5] = {120.0, 105.0, 90.0, 80.0, 70.0};
    for (int f = 0; f < 5; ++f) {
        Eigen::VectorXd mode = Eigen::VectorXd::Zero(3 * kJoints);
        mode.segment<3>(3 * (6 + f)) = Eigen::Vector3d(0.0, 0.0, -0.35);
        mode.segment<3>(3 * (11 + f)) = Eigen::Vector3d(0.0, 0.0, -0.75);
        mode.segment<3>(3 * (16 + f)) = Eigen::Vector3d(0.0, 0.0, -1.0);
        add_mode(mode, curl_var[f]);
    }

    // Finger fan: non-thumb fingers pivot about their knuckles in the palm
    // plane, lateral motion growing with height above the knuckle row.
    {
        Eigen::VectorXd mode = Eigen::VectorXd::Zero(3 * kJoints);
        const double fan_gain[5] = {0.0, -1.0, -0.33, 0.33, 1.0};
        for (int f = 1; f < 5; ++f) {
            const int chain[4] = {1 + f, 6 + f, 11 + f, 16 + f};
            const double knuckle_y = rest[3 * (1 + f) + 1];
            for (int d = 0; d < 4; ++d) {
                mode[3 * chain[d] + 0] =
                    fan_gain[f] * 0.02 * (rest[3 * chain[d] + 1] - knuckle_y + 15.0);
            }
        }
        add_mode(mode, 169.0);
    }

    // Gram-Schmidt over the declared modes; variances keep their order.
    PosePrior prior;
    prior.frame = CoordFrame::camera;
    prior.mean = rest;
    prior.basis.resize(3 * kJoints, static_cast<Eigen::Index>(modes.size()));
    prior.eigenvalues.resize(static_cast<Eigen::Index>(modes.size()));
    Eigen::Index kept = 0;
    for (std::size_t m = 0; m < modes.size(); ++m) {
        Eigen::VectorXd v = modes[m];
        for (Eigen::Index j = 0; j < kept; ++j) {
            v -= prior.basis.col(j).dot(v) * prior.basis.col(j);
        }
        const double norm = v.norm();
        if (norm < 1e-8) {
            continue;
        }
        prior.basis.col(kept) = v / norm;
        prior.eigenvalues[kept] = variances[m];
        ++kept;
    }
    prior.basis.conservativeResize(Eigen::NoChange, kept);
    prior.eigenvalues.conservativeResize(kept);

    // Priors carry eigenvalues in non-increasing order; the declaration
    // order above is anatomical, not sorted.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(kept));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return prior.eigenvalues[a] > prior.eigenvalues[b];
    });
    Eigen::MatrixXd basis(prior.basis.rows(), kept);
    Eigen::VectorXd eigenvalues(kept);
    for (Eigen::Index i = 0; i < kept; ++i) {
        basis.col(i) = prior.basis.col(order[static_cast<std::size_t>(i)]);
        eigenvalues[i] = prior.eigenvalues[order[static_cast<std::size_t>(i)]];
    }
    prior.basis = std::move(basis);
    prior.eigenvalues = std::move(eigenvalues);
    return prior;
}

JointSet generate_pose(const PosePrior& generator, std::uint64_t seed) {
    Rng rng(mix_seed(seed, kPoseSalt));
    Eigen::VectorXd alpha(generator.components());
    for (Eigen::Index m = 0; m < alpha.size(); ++m) {
        alpha[m] = std::sqrt(generator.eigenvalues[m]) * rng.normal();
    }
    return reconstruct(generator, alpha);
}

PointCloud render_cloud(const JointSet& pose, double density, double radius, std::uint64_t seed,
                        const std::vector<std::pair<int, int>>& bones) {
    if (!(density > 0.0) || !(radius > 0.0)) {
        throw Error(ErrorCode::out_of_range, "density and radius must be positive");
    }
    Rng rng(mix_seed(seed, kCloudSalt));
    PointCloud cloud;
    for (const auto& [pa, pb] : bones) {
        const Eigen::Vector3d a = pose.joint(pa);
        const Eigen::Vector3d b = pose.joint(pb);
        const Eigen::Vector3d ab = b - a;
        const double length = ab.norm();
        const long count = std::lround(length * density);
        if (count <= 0) {
            continue;
        }
        const Eigen::Vector3d d = ab / length;
        const Eigen::Vector3d helper =
            std::abs(d.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
        const Eigen::Vector3d b1 = d.cross(helper).normalized();
        const Eigen::Vector3d b2 = d.cross(b1);
        for (long i = 0; i < count; ++i) {
            const double t = rng.uniform();
            const double theta = rng.uniform(0.0, kTau);
            Eigen::Vector3d r = std::cos(theta) * b1 + std::sin(theta) * b2;
            if (r.z() > 0.0) {
                r = -r;  // keep the camera-facing half of the surface
            }
            cloud.points.emplace_back(a + t * ab + radius * r);
        }
    }
    return cloud;
}

Eigen::Vector2d project_joint_uv(const Eigen::Vector3d& local, const ProjectedView& view) {
    return view.plane_to_uv(Eigen::Vector2d(local[plane_u_axis(view.plane)],
                                            local[plane_v_axis(view.plane)]));
}

SyntheticScene make_scene(const PosePrior& generator, std::uint64_t seed, const NoiseSpec& noise,
                          const SceneOptions& options) {
    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        const std::uint64_t draw_seed = mix_seed(seed, static_cast<std::uint64_t>(attempt));
        SyntheticScene scene;
        scene.seed = seed;
        scene.attempts = attempt + 1;
        scene.pose = generate_pose(generator, draw_seed);
        scene.cloud = render_cloud(scene.pose, options.density, options.radius, draw_seed);
        scene.obb = compute_obb(scene.cloud);
        scene.views = project_to_planes(scene.cloud, scene.obb, options.resolution);
        scene.pose_obb = pose_to_obb(scene.pose, scene.obb);

        bool inside = true;
        std::array<std::vector<Eigen::Vector2d>, 3> centers;
        for (int p = 0; p < 3 && inside; ++p) {
            const ProjectedView& view = scene.views[static_cast<std::size_t>(p)];
            auto& uv = centers[static_cast<std::size_t>(p)];
            uv.resize(static_cast<std::size_t>(scene.pose.joints()));
            for (int k = 0; k < scene.pose.joints(); ++k) {
                uv[static_cast<std::size_t>(k)] = project_joint_uv(scene.pose_obb.joint(k), view);
                const Eigen::Vector2d& c = uv[static_cast<std::size_t>(k)];
                if (!(c.x() >= 0.0 && c.x() < view.width && c.y() >= 0.0 &&
                      c.y() < view.height)) {
                    inside = false;
                    break;
                }
            }
        }
        if (!inside) {
            continue;
        }

        for (int p = 0; p < 3; ++p) {
            scene.clean_stacks[static_cast<std::size_t>(p)] = synthesize_heatmaps(
                static_cast<Plane>(p), centers[static_cast<std::size_t>(p)], options.sigma,
                options.heatmap_size, options.heatmap_size,
                view_link_of(scene.views[static_cast<std::size_t>(p)]));
        }
        scene.stacks = scene.clean_stacks;

        Rng noise_rng(mix_seed(draw_seed, kNoiseSalt));
        if (noise.hotspot_prob > 0.0 && noise_rng.uniform() < noise.hotspot_prob) {
            const int joint = noise_rng.uniform_int(0, scene.pose.joints() - 1);
            const double sign = noise_rng.uniform() < 0.5 ? -1.0 : 1.0;
            const double shift = noise_rng.uniform(0.2, 0.35) *
                                 scene.views[0].width * sign;
            const Eigen::Vector2d center =
                centers[0][static_cast<std::size_t>(joint)] + Eigen::Vector2d(shift, 0.0);
            add_hotspot(scene.stacks[0], joint, center, options.sigma,
                        noise.hotspot_amplitude);
            scene.hotspot_joint = joint;
        }
        if (noise.sigma_n > 0.0) {
            for (int p = 0; p < 3; ++p) {
                add_gaussian_noise(scene.stacks[static_cast<std::size_t>(p)], noise.sigma_n,
                                   mix_seed(draw_seed, kNoiseSalt + 1 + p));
            }
        }
        return scene;
    }
    throw Error(ErrorCode::insufficient_data,
                "no accepted scene draw within max_attempts; widen the views or shrink poses");
}

}  // namespace mvf
