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
#include <vector>

#include "mvf/common.hpp"
#include "mvf/geometry.hpp"

namespace mvf {

// One articulated pose: joint positions vectorized joint-major
// (x1, y1, z1, x2, ...) in millimeters, tagged with the coordinate frame
// they live in. Joint order: wrist, 5 MCP, 5 PIP, 5 DIP, 5 tips, thumb to
// little finger within each group.
struct JointSet {
    CoordFrame frame = CoordFrame::camera;
    Eigen::VectorXd positions;

    JointSet() = default;
    JointSet(CoordFrame f, Eigen::VectorXd p) : frame(f), positions(std::move(p)) {}

    int joints() const { return static_cast<int>(positions.size()) / 3; }
    Eigen::Vector3d joint(int k) const { return positions.segment<3>(3 * k); }
    void set_joint(int k, const Eigen::Vector3d& p) { positions.segment<3>(3 * k) = p; }
};

// Low-dimensional affine pose subspace: pose ~ basis * alpha + mean.
// Columns of basis are orthonormal; eigenvalues (mm^2) are the retained
// covariance spectrum, non-increasing.
struct PosePrior {
    CoordFrame frame = CoordFrame::camera;
    Eigen::VectorXd mean;          // 3K
    Eigen::MatrixXd basis;         // 3K x M
    Eigen::VectorXd eigenvalues;   // M
    bool rank_deficient = false;   // trailing component carries ~no variance

    int joints() const { return static_cast<int>(mean.size()) / 3; }
    int components() const { return static_cast<int>(basis.cols()); }
    // Rows 3k..3k+2 of the basis, the per-joint block e_{.,k}.
    Eigen::MatrixXd joint_block(int k) const { return basis.middleRows(3 * k, 3); }
};

// PCA fit of the pose subspace. Covariance uses the 1/N convention over the
// vectorized poses; component signs are fixed by making each column's
// largest-magnitude entry positive (first such entry on ties). Requires at
// least components + 1 poses sharing one frame tag. Sets rank_deficient
// when eigenvalue m <= 1e-12 * eigenvalue 1.
PosePrior fit_pose_prior(const std::vector<JointSet>& poses, int components);

// alpha = basis^T (vec(pose) - mean). Frame tags must match.
Eigen::VectorXd project(const PosePrior& prior, const JointSet& pose);

// vec(pose) = basis * alpha + mean, tagged with the prior's frame.
JointSet reconstruct(const PosePrior& prior, const Eigen::VectorXd& alpha);

// Rewrites a camera-space prior in a box's local frame. Exact: with
// R = obb.axes, basis rows are rotated per joint by R^T and the mean is
// shifted and rotated the same way; eigenvalues are unchanged.
PosePrior rebase_to_obb(const PosePrior& prior, const ObbFrame& obb);

// Per-joint frame changes for pose vectors.
JointSet pose_to_obb(const JointSet& pose, const ObbFrame& obb);
JointSet pose_to_camera(const JointSet& pose, const ObbFrame& obb);

}  // namespace mvf
