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
#include <vector>

#include "mvf/geometry.hpp"
#include "mvf/heatmap.hpp"
#include "mvf/prior.hpp"

namespace mvf {

// Gaussian approximation of one joint's fused posterior, in OBB-space mm.
struct JointGaussian {
    Eigen::Vector3d mu = Eigen::Vector3d::Zero();
    Eigen::Matrix3d sigma = Eigen::Matrix3d::Identity();
    double mass = 0.0;       // total product weight accumulated on the grid
    bool low_mass = false;   // fallback values substituted (mass < 1e-8)
};

// Uniform sampling lattice over the box, n cells per axis spanning the
// extents inflated by `inflation`.
struct SamplingGrid {
    int n = kDefaultGridSamples;
    double inflation = 1.1;
};

// The assembled normal equations of the prior-constrained problem, kept for
// diagnostics and tests.
struct FusionProblem {
    Eigen::MatrixXd a_matrix;   // M x M, symmetric
    Eigen::VectorXd b_vector;   // M
    Eigen::VectorXd alpha;      // M, the solution
    std::vector<JointGaussian> gaussians;
    bool singular = false;      // Tikhonov bump applied before solving
    double condition = 0.0;     // eigenvalue ratio of A before the bump
};

// Evaluates the product of the three per-view heat-map posteriors over the
// grid and reduces it to per-joint Gaussian moments. Covariances carry an
// epsilon floor of max(1 mm^2, (spacing/2)^2) on the diagonal. Joints whose
// total product mass is below 1e-8 fall back to the product argmax with an
// extents-scaled diagonal covariance and are flagged.
std::vector<JointGaussian> estimate_joint_gaussians(const std::array<HeatMapStack, 3>& stacks,
                                                    const ObbFrame& obb,
                                                    const SamplingGrid& grid);

// Closed-form minimizer of sum_k (phi_k - mu_k)^T Sigma_k^-1 (phi_k - mu_k)
// over the prior subspace phi = basis * alpha + mean. Builds
// A_ij = sum_k e_jk^T Sigma_k^-1 e_ik and b_i = sum_k (mu_k - u_k)^T
// Sigma_k^-1 e_ik, then solves A alpha = b by Cholesky. A near-singular A
// (min eigenvalue <= 1e-12 * max) is reported via FusionProblem::singular
// and bumped by 1e-10 * trace(A) / M before solving. The prior must be
// OBB-space.
std::pair<JointSet, FusionProblem> solve_pose(const std::vector<JointGaussian>& gaussians,
                                              const PosePrior& prior);

// Full fine-fusion pipeline for one frame; returns the OBB-space estimate.
std::pair<JointSet, FusionProblem> fuse(const std::array<HeatMapStack, 3>& stacks,
                                        const ObbFrame& obb, const PosePrior& obb_prior,
                                        const SamplingGrid& grid);

// Baseline: XY view only. (x, y) from a half-max-threshold weighted
// centroid on the heat-map; z unprojected from the view value under the
// estimated pixel when it is foreground, otherwise 0 (the box center
// plane).
JointSet single_view_estimate(const HeatMapStack& stack_xy, const ProjectedView& view_xy,
                              const ObbFrame& obb);

// Baseline: per-view 2D centroid fits (same fit as single-view), then each
// coordinate is the unweighted mean of the two views that observe it
// (XY -> x,y; YZ -> y,z; ZX -> z,x).
JointSet coarse_fusion_estimate(const std::array<HeatMapStack, 3>& stacks, const ObbFrame& obb);

// The shared 2D fit: threshold at half the map's max, value-weighted
// centroid of surviving pixels, returned in heat-map pixel coordinates.
Eigen::Vector2d centroid_fit(const HeatMapStack& stack, int joint);

}  // namespace mvf
