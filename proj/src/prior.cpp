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

#include "mvf/prior.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace mvf {

namespace {

// Sign convention: the entry of largest magnitude (first on ties) is made
// positive, so refits of the same data agree column for column.
void fix_column_sign(Eigen::Ref<Eigen::VectorXd> column) {
    int best = 0;
    double best_abs = -1.0;
    for (int i = 0; i < column.size(); ++i) {
        const double a = std::abs(column[i]);
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    if (column[best] < 0.0) {
        column = -column;
    }
}

}  // namespace

PosePrior fit_pose_prior(const std::vector<JointSet>& poses, int components) {
    if (components < 1) {
        throw Error(ErrorCode::out_of_range, "component count must be >= 1");
    }
    if (poses.size() < static_cast<std::size_t>(components) + 1) {
        throw Error(ErrorCode::insufficient_data,
                    "need at least components + 1 poses to fit the prior");
    }
    const Eigen::Index dim = poses.front().positions.size();
    const CoordFrame frame = poses.front().frame;
    if (components > dim) {
        throw Error(ErrorCode::out_of_range, "component count exceeds pose dimension");
    }
    for (const JointSet& pose : poses) {
        if (pose.positions.size() != dim) {
            throw Error(ErrorCode::dimension_mismatch, "poses differ in joint count");
        }
        if (pose.frame != frame) {
            throw Error(ErrorCode::frame_tag_mismatch, "poses differ in coordinate frame");
        }
    }

    const double n = static_cast<double>(poses.size());
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    for (const JointSet& pose : poses) {
        mean += pose.positions;
    }
    mean /= n;

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
    for (const JointSet& pose : poses) {
        const Eigen::VectorXd d = pose.positions - mean;
        cov.noalias() += d * d.transpose();
    }
    cov /= n;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    PosePrior prior;
    prior.frame = frame;
    prior.mean = std::move(mean);
    prior.basis.resize(dim, components);
    prior.eigenvalues.resize(components);
    // Eigen orders ascending; take the top `components` in descending order.
    for (int m = 0; m < components; ++m) {
        const Eigen::Index src = dim - 1 - m;
        prior.basis.col(m) = eig.eigenvectors().col(src);
        prior.eigenvalues[m] = std::max(0.0, eig.eigenvalues()[src]);
        fix_column_sign(prior.basis.col(m));
    }
    prior.rank_deficient =
        prior.eigenvalues[components - 1] <= 1e-12 * prior.eigenvalues[0];
    return prior;
}

Eigen::VectorXd project(const PosePrior& prior, const JointSet& pose) {
    if (pose.positions.size() != prior.mean.size()) {
        throw Error(ErrorCode::dimension_mismatch, "pose dimension differs from the prior");
    }
    if (pose.frame != prior.frame) {
        throw Error(ErrorCode::frame_tag_mismatch, "pose frame differs from the prior");
    }
    return prior.basis.transpose() * (pose.positions - prior.mean);
}

JointSet reconstruct(const PosePrior& prior, const Eigen::VectorXd& alpha) {
    if (alpha.size() != prior.basis.cols()) {
        throw Error(ErrorCode::dimension_mismatch, "coefficient count differs from the prior");
    }
    return JointSet(prior.frame, prior.mean + prior.basis * alpha);
}

PosePrior rebase_to_obb(const PosePrior& prior, const ObbFrame& obb) {
    if (prior.frame != CoordFrame::camera) {
        throw Error(ErrorCode::frame_tag_mismatch, "rebase expects a camera-space prior");
    }
    const int joints = prior.joints();
    const Eigen::Matrix3d rt = obb.axes.transpose();
    PosePrior out;
    out.frame = CoordFrame::obb;
    out.eigenvalues = prior.eigenvalues;
    out.rank_deficient = prior.rank_deficient;
    out.mean.resize(prior.mean.size());
    out.basis.resize(prior.basis.rows(), prior.basis.cols());
    for (int k = 0; k < joints; ++k) {
        out.mean.segment<3>(3 * k) =
            rt * (prior.mean.segment<3>(3 * k) - obb.origin);
        out.basis.middleRows(3 * k, 3) = rt * prior.basis.middleRows(3 * k, 3);
    }
    return out;
}

JointSet pose_to_obb(const JointSet& pose, const ObbFrame& obb) {
    if (pose.frame != CoordFrame::camera) {
        throw Error(ErrorCode::frame_tag_mismatch, "pose is not camera-space");
    }
    JointSet out(CoordFrame::obb, Eigen::VectorXd(pose.positions.size()));
    for (int k = 0; k < pose.joints(); ++k) {
        out.set_joint(k, obb.to_local(pose.joint(k)));
    }
    return out;
}

JointSet pose_to_camera(const JointSet& pose, const ObbFrame& obb) {
    if (pose.frame != CoordFrame::obb) {
        throw Error(ErrorCode::frame_tag_mismatch, "pose is not OBB-space");
    }
    JointSet out(CoordFrame::camera, Eigen::VectorXd(pose.positions.size()));
    for (int k = 0; k < pose.joints(); ++k) {
        out.set_joint(k, obb.to_camera(pose.joint(k)));
    }
    return out;
}

}  // namespace mvf
