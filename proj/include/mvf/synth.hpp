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

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "mvf/fusion.hpp"
#include "mvf/geometry.hpp"
#include "mvf/heatmap.hpp"
#include "mvf/prior.hpp"

namespace mvf {

// The fixed 20-bone topology over the 21-joint hand: wrist to each MCP,
// then MCP->PIP->DIP->tip chains, thumb to little finger.
const std::vector<std::pair<int, int>>& default_bones();

// Canonical rest pose, camera-space mm, palm centered near (0, 0, 400)
// with a gently arched palm.
JointSet default_rest_pose();

// A structured articulation model doubling as a pose generator and as a
// fusion prior: orthonormalized modes for translation, linearized rotation,
// per-finger curls and a finger fan, with descending variances. Camera frame.
PosePrior default_hand_generator();

// pose = basis * alpha + mean with alpha_m = sqrt(eigenvalue_m) * z_m,
// z standard normal. Deterministic per seed.
JointSet generate_pose(const PosePrior& generator, std::uint64_t seed);

// Samples the camera-visible half of each bone's cylinder surface,
// round(length * density) points per bone. Every returned point lies
// within `radius` of its bone segment.
PointCloud render_cloud(const JointSet& pose, double density, double radius, std::uint64_t seed,
                        const std::vector<std::pair<int, int>>& bones = default_bones());

struct NoiseSpec {
    double sigma_n = 0.0;            // additive Gaussian, clamped at 0
    double hotspot_prob = 0.0;       // chance of one spurious XY blob
    double hotspot_amplitude = 1.0;
};

struct SceneOptions {
    int resolution = kDefaultProjectionResolution;
    int heatmap_size = kDefaultHeatMapSize;
    double sigma = 1.0;        // blob std, heat-map pixels
    double density = 6.0;      // cloud points per mm of bone
    double radius = 7.0;       // bone radius, mm
    int max_attempts = 32;
};

struct SyntheticScene {
    JointSet pose;                              // ground truth, camera space
    JointSet pose_obb;                          // same pose in box coordinates
    PointCloud cloud;
    ObbFrame obb;
    std::array<ProjectedView, 3> views;
    std::array<HeatMapStack, 3> clean_stacks;
    std::array<HeatMapStack, 3> stacks;         // after NoiseSpec
    std::uint64_t seed = 0;
    int attempts = 1;                           // draws until accepted
    int hotspot_joint = -1;                     // -1 when no hotspot landed
};

// Ground-truth projection of one OBB-space joint into a view, in view
// pixels. The same map rasterization uses.
Eigen::Vector2d project_joint_uv(const Eigen::Vector3d& local, const ProjectedView& view);

// Full scene pipeline: draw a pose, render, box, project, synthesize
// heat-maps, apply noise. Draws are re-seeded (seed mixed with the attempt
// index) until every ground-truth joint projects inside all three views;
// gives up with InsufficientData after max_attempts.
SyntheticScene make_scene(const PosePrior& generator, std::uint64_t seed, const NoiseSpec& noise,
                          const SceneOptions& options);

}  // namespace mvf
