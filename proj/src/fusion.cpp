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

#include "mvf/fusion.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "mvf/kernels.hpp"
#include "mvf/parallel.hpp"

namespace mvf {

namespace {

constexpr double kLowMass = 1e-8;
constexpr double kEigenRatioFloor = 1e-12;
constexpr double kTikhonovScale = 1e-10;

void check_stacks(const std::array<HeatMapStack, 3>& stacks) {
    for (int p = 0; p < 3; ++p) {
        if (stacks[static_cast<std::size_t>(p)].plane != static_cast<Plane>(p)) {
            throw Error(ErrorCode::view_mismatch, "stacks must be ordered xy, yz, zx");
        }
        if (stacks[static_cast<std::size_t>(p)].link.view_width <= 0 ||
            stacks[static_cast<std::size_t>(p)].link.view_height <= 0) {
            throw Error(ErrorCode::view_mismatch, "stack view link has no resolution");
        }
    }
    if (stacks[0].joints != stacks[1].joints || stacks[0].joints != stacks[2].joints) {
        throw Error(ErrorCode::view_mismatch, "stacks disagree on joint count");
    }
    if (stacks[0].joints < 1) {
        throw Error(ErrorCode::view_mismatch, "stacks are empty");
    }
}

// Heat-map coordinates of the grid's cell centers along one box axis, for
// the view where that axis maps to u (or v).
std::vector<double> axis_to_heatmap(const std::vector<double>& cells, double scale,
                                    double origin, double hm_per_view) {
    std::vector<double> out(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out[i] = (scale * cells[i] + origin) * hm_per_view;
    }
    return out;
}

struct JointTables {
    // txy[i*n + j], tyz[j*n + l], tzx_t[i*n + l] (the zx table stored
    // transposed so the inner reduction over l is contiguous).
    std::vector<double> txy, tyz, tzx_t;
};

// Converts one grid coordinate array pair into the flattened (u, v) sample
// buffers bilinear_sample expects.
void fill_pairs(const std::vector<double>& major, const std::vector<double>& minor,
                std::vector<double>& us, std::vector<double>& vs) {
    const std::size_t n_major = major.size();
    const std::size_t n_minor = minor.size();
    us.resize(n_major * n_minor);
    vs.resize(n_major * n_minor);
    for (std::size_t a = 0; a < n_major; ++a) {
        for (std::size_t b = 0; b < n_minor; ++b) {
            us[a * n_minor + b] = major[a];
            vs[a * n_minor + b] = minor[b];
        }
    }
}

}  // namespace

std::vector<JointGaussian> estimate_joint_gaussians(const std::array<HeatMapStack, 3>& stacks,
                                                    const ObbFrame& obb,
                                                    const SamplingGrid& grid) {
    check_stacks(stacks);
    if (grid.n < 2) {
        throw Error(ErrorCode::out_of_range, "grid needs at least 2 samples per axis");
    }
    const int n = grid.n;
    const int joints = stacks[0].joints;

    // Cell centers of the inflated box, per axis, OBB-space mm.
    std::array<std::vector<double>, 3> cells;
    Eigen::Vector3d eps;
    for (int a = 0; a < 3; ++a) {
        const double bound = grid.inflation * obb.extents[a];
        const double spacing = 2.0 * bound / n;
        eps[a] = std::max(1.0, 0.25 * spacing * spacing);
        cells[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            cells[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] =
                -bound + (i + 0.5) * spacing;
        }
    }

    std::vector<double> zz(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
        zz[static_cast<std::size_t>(l)] =
            cells[2][static_cast<std::size_t>(l)] * cells[2][static_cast<std::size_t>(l)];
    }

    // Per-view heat-map coordinates of the cell centers. Each view sees two
    // of the box axes: xy = (x, y), yz = (y, z), zx = (z, x).
    const auto hm_axis = [&](int view, int axis, bool is_u) {
        const ViewLink& link = stacks[static_cast<std::size_t>(view)].link;
        const HeatMapStack& s = stacks[static_cast<std::size_t>(view)];
        const double ratio = is_u ? static_cast<double>(s.width) / link.view_width
                                  : static_cast<double>(s.height) / link.view_height;
        const double scale = is_u ? link.uv_scale.x() : link.uv_scale.y();
        const double origin = is_u ? link.uv_origin.x() : link.uv_origin.y();
        return axis_to_heatmap(cells[static_cast<std::size_t>(axis)], scale, origin, ratio);
    };
    const std::vector<double> xy_u = hm_axis(0, 0, true), xy_v = hm_axis(0, 1, false);
    const std::vector<double> yz_u = hm_axis(1, 1, true), yz_v = hm_axis(1, 2, false);
    const std::vector<double> zx_u = hm_axis(2, 2, true), zx_v = hm_axis(2, 0, false);

    // Sample-coordinate buffers are joint-independent.
    std::vector<double> us_xy, vs_xy, us_yz, vs_yz, us_zx, vs_zx;
    fill_pairs(xy_u, xy_v, us_xy, vs_xy);    // txy[i*n + j]
    fill_pairs(yz_u, yz_v, us_yz, vs_yz);    // tyz[j*n + l]
    fill_pairs(zx_v, zx_u, us_zx, vs_zx);    // tzx_t[i*n + l]: u = z varies inner
    std::swap(us_zx, vs_zx);                 // fill_pairs wrote (major=x)->v, (minor=z)->u

    std::vector<JointGaussian> result(static_cast<std::size_t>(joints));
    const std::size_t nn = static_cast<std::size_t>(n) * n;

    parallel_for(joints, [&](int k) {
        JointTables t;
        t.txy.resize(nn);
        t.tyz.resize(nn);
        t.tzx_t.resize(nn);
        kernels::bilinear_sample(stacks[0].map(k), stacks[0].width, stacks[0].height,
                                 us_xy.data(), vs_xy.data(), nn, t.txy.data());
        kernels::bilinear_sample(stacks[1].map(k), stacks[1].width, stacks[1].height,
                                 us_yz.data(), vs_yz.data(), nn, t.tyz.data());
        kernels::bilinear_sample(stacks[2].map(k), stacks[2].width, stacks[2].height,
                                 us_zx.data(), vs_zx.data(), nn, t.tzx_t.data());

        double s = 0.0, sx = 0.0, sy = 0.0, sz = 0.0;
        double sxx = 0.0, syy = 0.0, szz = 0.0, sxy = 0.0, sxz = 0.0, syz = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = cells[0][static_cast<std::size_t>(i)];
            const double* zx_row = t.tzx_t.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) {
                const double w = t.txy[static_cast<std::size_t>(i) * n + j];
                if (w == 0.0) {
                    continue;
                }
                const double y = cells[1][static_cast<std::size_t>(j)];
                const kernels::ProductMoments m = kernels::product_moments(
                    t.tyz.data() + static_cast<std::size_t>(j) * n, zx_row, cells[2].data(),
                    zz.data(), static_cast<std::size_t>(n));
                s += w * m.s0;
                sx += w * x * m.s0;
                sy += w * y * m.s0;
                sz += w * m.s1;
                sxx += w * x * x * m.s0;
                syy += w * y * y * m.s0;
                szz += w * m.s2;
                sxy += w * x * y * m.s0;
                sxz += w * x * m.s1;
                syz += w * y * m.s1;
            }
        }

        JointGaussian g;
        g.mass = s;
        if (s < kLowMass) {
            // Fallback: the product's argmax cell, or the box center when
            // the product vanishes everywhere.
            g.low_mass = true;
            double best = 0.0;
            g.mu = Eigen::Vector3d::Zero();
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    const double w = t.txy[static_cast<std::size_t>(i) * n + j];
                    if (w == 0.0) {
                        continue;
                    }
                    for (int l = 0; l < n; ++l) {
                        const double q = w * t.tyz[static_cast<std::size_t>(j) * n + l] *
                                         t.tzx_t[static_cast<std::size_t>(i) * n + l];
                        if (q > best) {
                            best = q;
                            g.mu = Eigen::Vector3d(cells[0][static_cast<std::size_t>(i)],
                                                   cells[1][static_cast<std::size_t>(j)],
                                                   cells[2][static_cast<std::size_t>(l)]);
                        }
                    }
                }
            }
            g.sigma = Eigen::Matrix3d::Zero();
            for (int a = 0; a < 3; ++a) {
                g.sigma(a, a) = std::max(eps[a], eps[a] * obb.extents[a]);
            }
        } else {
            g.mu = Eigen::Vector3d(sx / s, sy / s, sz / s);
            g.sigma(0, 0) = sxx / s - g.mu.x() * g.mu.x() + eps[0];
            g.sigma(1, 1) = syy / s - g.mu.y() * g.mu.y() + eps[1];
            g.sigma(2, 2) = szz / s - g.mu.z() * g.mu.z() + eps[2];
            g.sigma(0, 1) = g.sigma(1, 0) = sxy / s - g.mu.x() * g.mu.y();
            g.sigma(0, 2) = g.sigma(2, 0) = sxz / s - g.mu.x() * g.mu.z();
            g.sigma(1, 2) = g.sigma(2, 1) = syz / s - g.mu.y() * g.mu.z();
        }
        result[static_cast<std::size_t>(k)] = g;
    });
    return result;
}

std::pair<JointSet, FusionProblem> solve_pose(const std::vector<JointGaussian>& gaussians,
                                              const PosePrior& prior) {
    if (prior.frame != CoordFrame::obb) {
        throw Error(ErrorCode::frame_tag_mismatch, "fusion requires an OBB-space prior");
    }
    const int joints = static_cast<int>(gaussians.size());
    if (joints != prior.joints()) {
        throw Error(ErrorCode::dimension_mismatch, "gaussian count differs from the prior");
    }
    const int m = prior.components();

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    for (int k = 0; k < joints; ++k) {
        const JointGaussian& g = gaussians[static_cast<std::size_t>(k)];
        const Eigen::LLT<Eigen::Matrix3d> llt(g.sigma);
        const Eigen::MatrixXd ek = prior.joint_block(k);            // 3 x M
        const Eigen::MatrixXd wk_ek = llt.solve(ek);                // Sigma^-1 E_k
        const Eigen::Vector3d dk = g.mu - prior.mean.segment<3>(3 * k);
        a.noalias() += ek.transpose() * wk_ek;
        b.noalias() += wk_ek.transpose() * dk;
    }
    a = 0.5 * (a + a.transpose()).eval();

    FusionProblem problem;
    problem.gaussians = gaussians;
    problem.b_vector = b;

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    problem.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    if (lo <= kEigenRatioFloor * hi) {
        problem.singular = true;
        a.diagonal().array() += kTikhonovScale * a.trace() / m;
    }
    problem.a_matrix = a;
    problem.alpha = a.llt().solve(b);

    return {reconstruct(prior, problem.alpha), std::move(problem)};
}

std::pair<JointSet, FusionProblem> fuse(const std::array<HeatMapStack, 3>& stacks,
                                        const ObbFrame& obb, const PosePrior& obb_prior,
                                        const SamplingGrid& grid) {
    return solve_pose(estimate_joint_gaussians(stacks, obb, grid), obb_prior);
}

Eigen::Vector2d centroid_fit(const HeatMapStack& stack, int joint) {
    if (joint < 0 || joint >= stack.joints) {
        throw Error(ErrorCode::out_of_range, "joint index outside the stack");
    }
    const float* map = stack.map(joint);
    const std::size_t size = static_cast<std::size_t>(stack.width) * stack.height;
    float peak = 0.0f;
    for (std::size_t i = 0; i < size; ++i) {
        peak = std::max(peak, map[i]);
    }
    if (peak <= 0.0f) {
        return Eigen::Vector2d(stack.width / 2.0, stack.height / 2.0);
    }
    const float threshold = 0.5f * peak;
    double mass = 0.0, su = 0.0, sv = 0.0;
    for (int j = 0; j < stack.height; ++j) {
        for (int i = 0; i < stack.width; ++i) {
            const float v = map[static_cast<std::size_t>(j) * stack.width + i];
            if (v >= threshold) {
                mass += v;
                su += v * (i + 0.5);
                sv += v * (j + 0.5);
            }
        }
    }
    return Eigen::Vector2d(su / mass, sv / mass);
}

namespace {

// Shared 2D fit mapped back to plane millimeters: heat-map px -> view px ->
// the view's plane coordinates.
Eigen::Vector2d centroid_plane_mm(const HeatMapStack& stack, int joint) {
    const Eigen::Vector2d hm = centroid_fit(stack, joint);
    const double view_u = hm.x() * (static_cast<double>(stack.link.view_width) / stack.width);
    const double view_v = hm.y() * (static_cast<double>(stack.link.view_height) / stack.height);
    return Eigen::Vector2d((view_u - stack.link.uv_origin.x()) / stack.link.uv_scale.x(),
                           (view_v - stack.link.uv_origin.y()) / stack.link.uv_scale.y());
}

}  // namespace

JointSet single_view_estimate(const HeatMapStack& stack_xy, const ProjectedView& view_xy,
                              const ObbFrame& obb) {
    (void)obb;
    if (stack_xy.plane != Plane::xy || view_xy.plane != Plane::xy) {
        throw Error(ErrorCode::view_mismatch, "single-view baseline expects the xy view");
    }
    if (stack_xy.link.view_width != view_xy.width ||
        stack_xy.link.view_height != view_xy.height) {
        throw Error(ErrorCode::view_mismatch, "stack is not registered to this view");
    }
    JointSet out(CoordFrame::obb, Eigen::VectorXd::Zero(3 * stack_xy.joints));
    for (int k = 0; k < stack_xy.joints; ++k) {
        const Eigen::Vector2d hm = centroid_fit(stack_xy, k);
        const double view_u = hm.x() * (static_cast<double>(view_xy.width) / stack_xy.width);
        const double view_v = hm.y() * (static_cast<double>(view_xy.height) / stack_xy.height);
        const Eigen::Vector2d plane = view_xy.uv_to_plane(Eigen::Vector2d(view_u, view_v));
        const int px = std::clamp(static_cast<int>(std::floor(view_u)), 0, view_xy.width - 1);
        const int py = std::clamp(static_cast<int>(std::floor(view_v)), 0, view_xy.height - 1);
        double z = 0.0;
        if (view_xy.foreground(px, py)) {
            z = unproject_view_value(view_xy, Eigen::Vector2d(view_u, view_v),
                                     view_xy.value_at(px, py));
        }
        out.set_joint(k, Eigen::Vector3d(plane.x(), plane.y(), z));
    }
    return out;
}

JointSet coarse_fusion_estimate(const std::array<HeatMapStack, 3>& stacks, const ObbFrame& obb) {
    (void)obb;
    check_stacks(stacks);
    const int joints = stacks[0].joints;
    JointSet out(CoordFrame::obb, Eigen::VectorXd::Zero(3 * joints));
    for (int k = 0; k < joints; ++k) {
        const Eigen::Vector2d xy = centroid_plane_mm(stacks[0], k);  // (x, y)
        const Eigen::Vector2d yz = centroid_plane_mm(stacks[1], k);  // (y, z)
        const Eigen::Vector2d zx = centroid_plane_mm(stacks[2], k);  // (z, x)
        out.set_joint(k, Eigen::Vector3d(0.5 * (xy.x() + zx.y()), 0.5 * (xy.y() + yz.x()),
                                         0.5 * (yz.y() + zx.x())));
    }
    return out;
}

}  // namespace mvf
