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

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "doctest.h"
#include "mvf/geometry.hpp"
#include "mvf/heatmap.hpp"
#include "mvf/io.hpp"
#include "mvf/prior.hpp"
#include "mvf/rng.hpp"

using namespace mvf;

namespace {

// Per-case scratch files live under one throwaway directory.
std::string scratch(const std::string& name) {
    static const std::filesystem::path dir = [] {
        const auto d = std::filesystem::temp_directory_path() / "mvf_io_suite";
        std::filesystem::create_directories(d);
        return d;
    }();
    return (dir / name).string();
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

void put_i32(std::string& out, std::int32_t v) { put_u32(out, static_cast<std::uint32_t>(v)); }

void put_f32(std::string& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

void put_f64(std::string& out, double v) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    put_u32(out, static_cast<std::uint32_t>(bits));
    put_u32(out, static_cast<std::uint32_t>(bits >> 32));
}

void write_raw(const std::string& path, const std::string& bytes) {
    atomic_write_text(path, bytes);
}

// Minimal valid MVHM payload the corruption tests mutate.
std::string mvhm_bytes(std::uint32_t version, std::uint32_t joints, std::uint32_t w,
                       std::uint32_t h, std::uint8_t plane) {
    std::string out;
    out.append("MVHM", 4);
    put_u32(out, version);
    put_u32(out, joints);
    put_u32(out, w);
    put_u32(out, h);
    out.push_back(static_cast<char>(plane));
    out.append(3, '\0');
    for (std::uint32_t i = 0; i < joints * w * h; ++i) {
        put_f32(out, 0.125f * static_cast<float>(i));
    }
    put_f64(out, 0.5);
    put_f64(out, 0.5);
    put_f64(out, 0.0);
    put_f64(out, 0.0);
    put_f64(out, 64.0);
    put_f64(out, 64.0);
    return out;
}

std::optional<ErrorCode> code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

HeatMapStack sample_stack(Rng& rng) {
    HeatMapStack stack;
    stack.plane = Plane::yz;
    stack.joints = 3;
    stack.width = 7;
    stack.height = 5;
    stack.values.resize(static_cast<std::size_t>(3) * 7 * 5);
    for (float& v : stack.values) {
        v = static_cast<float>(rng.uniform(-0.25, 1.0));
    }
    stack.link.uv_scale = Eigen::Vector2d(0.53125, -0.25);
    stack.link.uv_origin = Eigen::Vector2d(3.5, -2.25);
    stack.link.view_width = 96;
    stack.link.view_height = 80;
    return stack;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("mvhm round trip is bitwise") {
    Rng rng(4001);
    const HeatMapStack stack = sample_stack(rng);
    const std::string path = scratch("roundtrip.mvhm");
    write_mvhm(path, stack);
    const HeatMapStack back = read_mvhm(path);

    CHECK(back.plane == stack.plane);
    CHECK(back.joints == stack.joints);
    CHECK(back.width == stack.width);
    CHECK(back.height == stack.height);
    REQUIRE(back.values.size() == stack.values.size());
    CHECK(std::memcmp(back.values.data(), stack.values.data(),
                      stack.values.size() * sizeof(float)) == 0);
    CHECK(back.link.uv_scale == stack.link.uv_scale);
    CHECK(back.link.uv_origin == stack.link.uv_origin);
    CHECK(back.link.view_width == stack.link.view_width);
    CHECK(back.link.view_height == stack.link.view_height);
}

TEST_CASE("mvpp round trip preserves the model and recomputes rank flags") {
    Rng rng(4002);
    std::vector<JointSet> poses;
    for (int i = 0; i < 40; ++i) {
        Eigen::VectorXd p(3 * 4);
        for (Eigen::Index d = 0; d < p.size(); ++d) {
            p[d] = rng.normal() * (1.0 + 0.3 * static_cast<double>(d));
        }
        poses.emplace_back(CoordFrame::camera, std::move(p));
    }
    const PosePrior prior = fit_pose_prior(poses, 5);
    const std::string path = scratch("roundtrip.mvpp");
    write_mvpp(path, prior);

    const PosePrior back = read_mvpp(path, CoordFrame::camera);
    CHECK(back.frame == CoordFrame::camera);
    CHECK(back.joints() == prior.joints());
    CHECK(back.components() == prior.components());
    CHECK((back.mean.array() == prior.mean.array()).all());
    CHECK((back.eigenvalues.array() == prior.eigenvalues.array()).all());
    CHECK((back.basis.array() == prior.basis.array()).all());
    CHECK(back.rank_deficient == prior.rank_deficient);

    // The frame tag is supplied by the caller, not stored in the file.
    const PosePrior rebased = read_mvpp(path, CoordFrame::obb);
    CHECK(rebased.frame == CoordFrame::obb);

    // A spectrum that collapses at the tail must be flagged on load.
    PosePrior flat = prior;
    flat.eigenvalues[flat.eigenvalues.size() - 1] = 0.0;
    const std::string flat_path = scratch("flat.mvpp");
    write_mvpp(flat_path, flat);
    CHECK(read_mvpp(flat_path).rank_deficient);
}

TEST_CASE("mvdf round trip is bitwise and matches the canonical adapter") {
    Rng rng(4003);
    DepthFrame frame;
    frame.width = 9;
    frame.height = 6;
    frame.depth.resize(54);
    for (std::size_t i = 0; i < frame.depth.size(); ++i) {
        frame.depth[i] = (i % 5 == 0) ? 0.0f : static_cast<float>(rng.uniform(100.0, 900.0));
    }
    const std::string path = scratch("roundtrip.mvdf");
    write_mvdf(path, frame);

    const DepthFrame back = read_mvdf(path);
    CHECK(back.width == frame.width);
    CHECK(back.height == frame.height);
    REQUIRE(back.depth.size() == frame.depth.size());
    CHECK(std::memcmp(back.depth.data(), frame.depth.data(),
                      frame.depth.size() * sizeof(float)) == 0);

    const DepthFrame adapted = load_depth_frame(path, DepthAdapter::canonical);
    CHECK(std::memcmp(adapted.depth.data(), frame.depth.data(),
                      frame.depth.size() * sizeof(float)) == 0);
}

TEST_CASE("msra_like adapter places the bbox block inside a zeroed frame") {
    std::string bytes;
    put_i32(bytes, 8);  // image width
    put_i32(bytes, 6);  // image height
    put_i32(bytes, 2);  // left
    put_i32(bytes, 1);  // top
    put_i32(bytes, 5);  // right (exclusive)
    put_i32(bytes, 4);  // bottom (exclusive)
    for (int i = 0; i < 9; ++i) {
        put_f32(bytes, 100.0f + static_cast<float>(i));
    }
    const std::string path = scratch("hand.msra");
    write_raw(path, bytes);

    const DepthFrame frame = load_depth_frame(path, DepthAdapter::msra_like);
    REQUIRE(frame.width == 8);
    REQUIRE(frame.height == 6);
    int inside = 0;
    for (int y = 0; y < 6; ++y) {
        for (int x = 0; x < 8; ++x) {
            const float v = frame.depth[static_cast<std::size_t>(y) * 8 + x];
            if (x >= 2 && x < 5 && y >= 1 && y < 4) {
                const int row = y - 1;
                const int col = x - 2;
                CHECK(v == 100.0f + static_cast<float>(row * 3 + col));
                ++inside;
            } else {
                CHECK(v == 0.0f);
            }
        }
    }
    CHECK(inside == 9);
}

TEST_CASE("msra_like adapter rejects wrong layouts") {
    // Canonical MVDF fed to the adapter is a usage error, not a parse error.
    DepthFrame frame;
    frame.width = 2;
    frame.height = 2;
    frame.depth = {1.0f, 2.0f, 3.0f, 4.0f};
    const std::string canonical = scratch("canonical.mvdf");
    write_mvdf(canonical, frame);
    CHECK(code_of([&] { load_depth_frame(canonical, DepthAdapter::msra_like); }) ==
          ErrorCode::adapter_mismatch);

    // Inverted bbox.
    std::string bad;
    put_i32(bad, 8);
    put_i32(bad, 6);
    put_i32(bad, 5);
    put_i32(bad, 1);
    put_i32(bad, 5);  // right == left
    put_i32(bad, 4);
    const std::string bad_path = scratch("bad_header.msra");
    write_raw(bad_path, bad);
    CHECK(code_of([&] { load_depth_frame(bad_path, DepthAdapter::msra_like); }) ==
          ErrorCode::adapter_mismatch);

    // Header promises a 3x3 block but only 8 floats follow.
    std::string shorted;
    put_i32(shorted, 8);
    put_i32(shorted, 6);
    put_i32(shorted, 2);
    put_i32(shorted, 1);
    put_i32(shorted, 5);
    put_i32(shorted, 4);
    for (int i = 0; i < 8; ++i) {
        put_f32(shorted, 1.0f);
    }
    const std::string short_path = scratch("short.msra");
    write_raw(short_path, shorted);
    CHECK(code_of([&] { load_depth_frame(short_path, DepthAdapter::msra_like); }) ==
          ErrorCode::truncated_file);

    // One extra float after the block.
    std::string padded;
    put_i32(padded, 8);
    put_i32(padded, 6);
    put_i32(padded, 2);
    put_i32(padded, 1);
    put_i32(padded, 5);
    put_i32(padded, 4);
    for (int i = 0; i < 10; ++i) {
        put_f32(padded, 1.0f);
    }
    const std::string padded_path = scratch("padded.msra");
    write_raw(padded_path, padded);
    CHECK(code_of([&] { load_depth_frame(padded_path, DepthAdapter::msra_like); }) ==
          ErrorCode::parse_error);
}

TEST_CASE("joints text round trips doubles exactly") {
    std::vector<JointSet> poses;
    Eigen::VectorXd a(6);
    a << 1.0 / 3.0, -2.718281828459045, 1e-17, 0.0, 123456.78901234567, -0.1;
    poses.emplace_back(CoordFrame::obb, a);
    Eigen::VectorXd b(6);
    b << 5e300, -5e-300, 42.0, 0.30000000000000004, 7.0, -7.0;
    poses.emplace_back(CoordFrame::obb, b);

    const std::string path = scratch("poses.txt");
    write_joints_file(path, poses);
    const std::vector<JointSet> back = load_joints_file(path, CoordFrame::obb);
    REQUIRE(back.size() == poses.size());
    for (std::size_t i = 0; i < poses.size(); ++i) {
        CHECK(back[i].frame == CoordFrame::obb);
        REQUIRE(back[i].positions.size() == poses[i].positions.size());
        CHECK((back[i].positions.array() == poses[i].positions.array()).all());
    }
}

TEST_CASE("joints text validates the frame count and row shape") {
    const std::string path = scratch("bad_poses.txt");

    atomic_write_text(path, "2\n1 2 3\n4 5 6\n7 8 9\n");
    CHECK(code_of([&] { load_joints_file(path, CoordFrame::camera); }) ==
          ErrorCode::count_mismatch);

    atomic_write_text(path, "3\n1 2 3\n4 5 6\n");
    CHECK(code_of([&] { load_joints_file(path, CoordFrame::camera); }) ==
          ErrorCode::count_mismatch);

    atomic_write_text(path, "");
    CHECK(code_of([&] { load_joints_file(path, CoordFrame::camera); }) == ErrorCode::parse_error);

    atomic_write_text(path, "two\n1 2 3\n");
    CHECK(code_of([&] { load_joints_file(path, CoordFrame::camera); }) == ErrorCode::parse_error);

    atomic_write_text(path, "1\n1 2\n");
    CHECK(code_of([&] { load_joints_file(path, CoordFrame::camera); }) == ErrorCode::parse_error);

    atomic_write_text(path, "2\n1 2 3\n4 5\n");
    CHECK(code_of([&] { load_joints_file(path, CoordFrame::camera); }) == ErrorCode::parse_error);

    atomic_write_text(path, "1\n1 x 3\n");
    CHECK(code_of([&] { load_joints_file(path, CoordFrame::camera); }) == ErrorCode::parse_error);

    // Blank lines are cosmetic.
    atomic_write_text(path, "\n2\n\n1 2 3\n\n4 5 6\n\n");
    const std::vector<JointSet> ok = load_joints_file(path, CoordFrame::camera);
    REQUIRE(ok.size() == 2);
    CHECK(ok[1].positions[2] == 6.0);
}

TEST_CASE("view round trip quantizes values and keeps the register") {
    ProjectedView view;
    view.plane = Plane::zx;
    view.width = 5;
    view.height = 4;
    view.near_mm = 312.4375;
    view.far_mm = 391.125;
    view.uv_scale = Eigen::Vector2d(0.4453125, 0.4453125);
    view.uv_origin = Eigen::Vector2d(2.5, 1.75);
    view.values.assign(20, 0.0f);
    view.mask.assign(20, 0);
    Rng rng(4004);
    for (std::size_t i = 0; i < view.values.size(); ++i) {
        if (i % 3 != 1) {
            view.mask[i] = 1;
            view.values[i] = static_cast<float>(rng.uniform(0.0, 1.0));
        } else {
            view.values[i] = 0.75f;  // background values must not survive the trip
        }
    }
    view.values[0] = 0.0f;  // foreground zero stays distinguishable from background
    view.mask[0] = 1;

    const std::string base = scratch("view_roundtrip");
    write_view(base, view);
    const ProjectedView back = read_view(base);

    CHECK(back.plane == view.plane);
    CHECK(back.width == view.width);
    CHECK(back.height == view.height);
    CHECK(back.near_mm == view.near_mm);
    CHECK(back.far_mm == view.far_mm);
    CHECK((back.uv_scale.array() == view.uv_scale.array()).all());
    CHECK((back.uv_origin.array() == view.uv_origin.array()).all());
    for (std::size_t i = 0; i < view.values.size(); ++i) {
        CHECK(back.mask[i] == view.mask[i]);
        if (view.mask[i] == 0) {
            CHECK(back.values[i] == 0.0f);
            continue;
        }
        const long q = std::lround(static_cast<double>(view.values[i]) * 65534.0);
        CHECK(back.values[i] == static_cast<float>(static_cast<double>(q) / 65534.0));
        CHECK(std::abs(back.values[i] - view.values[i]) <= 0.5f / 65534.0f + 1e-9f);
    }
    CHECK(back.mask[0] == 1);
    CHECK(back.values[0] == 0.0f);
}

TEST_CASE("view reader rejects malformed pgm and meta files") {
    ProjectedView view;
    view.plane = Plane::xy;
    view.width = 3;
    view.height = 2;
    view.near_mm = 100.0;
    view.far_mm = 200.0;
    view.uv_scale = Eigen::Vector2d(1.0, 1.0);
    view.uv_origin = Eigen::Vector2d(0.0, 0.0);
    view.values.assign(6, 0.5f);
    view.mask.assign(6, 1);
    const std::string base = scratch("view_bad");
    write_view(base, view);
    const std::string pgm = read_text_file(base + ".pgm");
    const std::string meta = read_text_file(base + ".meta");

    write_raw(base + ".pgm", "P6" + pgm.substr(2));
    CHECK(code_of([&] { read_view(base); }) == ErrorCode::bad_magic);

    write_raw(base + ".pgm", pgm.substr(0, pgm.size() - 3));
    CHECK(code_of([&] { read_view(base); }) == ErrorCode::truncated_file);

    write_raw(base + ".pgm", "P5\n3 2\n255\n" + std::string(6, '\0'));
    CHECK(code_of([&] { read_view(base); }) == ErrorCode::parse_error);

    write_raw(base + ".pgm", "P5\n3 2\n");
    CHECK(code_of([&] { read_view(base); }) == ErrorCode::truncated_file);

    // Restore the image, then break the sidecar.
    write_raw(base + ".pgm", pgm);
    std::string no_plane;
    for (std::size_t pos = 0; pos < meta.size();) {
        const std::size_t end = meta.find('\n', pos);
        const std::string line = meta.substr(pos, end - pos);
        if (line.rfind("plane=", 0) != 0) {
            no_plane += line + "\n";
        }
        pos = end + 1;
    }
    write_raw(base + ".meta", no_plane);
    CHECK(code_of([&] { read_view(base); }) == ErrorCode::parse_error);

    write_raw(base + ".meta", meta + "width=9\n");  // duplicate key
    CHECK(code_of([&] { read_view(base); }) == ErrorCode::parse_error);

    std::string wrong_size = meta;
    const std::size_t w_at = wrong_size.find("width=3");
    REQUIRE(w_at != std::string::npos);
    wrong_size.replace(w_at, 7, "width=4");
    write_raw(base + ".meta", wrong_size);
    CHECK(code_of([&] { read_view(base); }) == ErrorCode::parse_error);

    std::filesystem::remove(base + ".meta");
    CHECK(code_of([&] { read_view(base); }) == ErrorCode::io_error);
}

TEST_CASE("obb text round trips exactly") {
    Rng rng(4005);
    ObbFrame obb;
    obb.origin = Eigen::Vector3d(rng.uniform(-500.0, 500.0), rng.uniform(-500.0, 500.0),
                                 rng.uniform(200.0, 900.0));
    const Eigen::AngleAxisd rot(rng.uniform(0.0, 3.0),
                                Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal())
                                    .normalized());
    obb.axes = rot.toRotationMatrix();
    obb.extents = Eigen::Vector3d(81.25, 60.5, 17.0 / 3.0);

    const std::string path = scratch("frame.obb");
    write_obb(path, obb);
    const ObbFrame back = read_obb(path);
    CHECK((back.origin.array() == obb.origin.array()).all());
    CHECK((back.axes.array() == obb.axes.array()).all());
    CHECK((back.extents.array() == obb.extents.array()).all());

    atomic_write_text(path, "origin=1 2 3\naxis1=1 0 0\naxis2=0 1 0\naxis3=0 0 1\n");
    CHECK(code_of([&] { read_obb(path); }) == ErrorCode::parse_error);  // extents missing

    atomic_write_text(path,
                      "origin=1 2\naxis1=1 0 0\naxis2=0 1 0\naxis3=0 0 1\nextents=1 1 1\n");
    CHECK(code_of([&] { read_obb(path); }) == ErrorCode::parse_error);

    atomic_write_text(path,
                      "origin=1 2 3 4\naxis1=1 0 0\naxis2=0 1 0\naxis3=0 0 1\nextents=1 1 1\n");
    CHECK(code_of([&] { read_obb(path); }) == ErrorCode::parse_error);
}

TEST_CASE("run config parses, falls back, and hashes canonically") {
    const std::string path = scratch("run.cfg");
    atomic_write_text(path,
                      "# comment line\n"
                      "seed=42\n"
                      "  sigma = 2.5  # trailing note\n"
                      "\n"
                      "label=fused output\n");
    const RunConfig config = load_run_config(path);
    CHECK(config.has("seed"));
    CHECK(config.get("seed", "") == "42");
    CHECK(config.get_int("seed", -1) == 42);
    CHECK(config.get_double("sigma", 0.0) == 2.5);
    CHECK(config.get("label", "") == "fused output");
    CHECK(config.get("missing", "fallback") == "fallback");
    CHECK(config.get_int("missing", 7) == 7);
    CHECK(config.get_double("missing", 1.5) == 1.5);
    CHECK(code_of([&] { config.get_int("label", 0); }) == ErrorCode::config_error);
    CHECK(code_of([&] { config.get_double("label", 0.0); }) == ErrorCode::config_error);

    const std::string saved = scratch("run_saved.cfg");
    save_run_config(saved, config);
    const RunConfig reloaded = load_run_config(saved);
    CHECK(reloaded.values == config.values);
    CHECK(config_hash(reloaded) == config_hash(config));

    atomic_write_text(path, "seed=1\nseed=2\n");
    CHECK(code_of([&] { load_run_config(path); }) == ErrorCode::parse_error);
    atomic_write_text(path, "just a bare line\n");
    CHECK(code_of([&] { load_run_config(path); }) == ErrorCode::parse_error);
    atomic_write_text(path, "=value\n");
    CHECK(code_of([&] { load_run_config(path); }) == ErrorCode::parse_error);

    // FNV-1a over "key=value\n" records in map (sorted) order.
    RunConfig probe;
    CHECK(config_hash(probe) == 14695981039346656037ull);
    probe.values["a"] = "1";
    std::uint64_t expected = 14695981039346656037ull;
    for (const char c : std::string("a=1\n")) {
        expected ^= static_cast<std::uint8_t>(c);
        expected *= 1099511628211ull;
    }
    CHECK(config_hash(probe) == expected);
    RunConfig reordered;
    reordered.values["b"] = "2";
    reordered.values["a"] = "1";
    probe.values["b"] = "2";
    CHECK(config_hash(reordered) == config_hash(probe));
    RunConfig touched = probe;
    touched.values["b"] = "3";
    CHECK(config_hash(touched) != config_hash(probe));
}

TEST_CASE("atomic text writes land complete and leave no temp file") {
    const std::string path = scratch("notes.txt");
    atomic_write_text(path, "first\n");
    atomic_write_text(path, "second draft\n");
    CHECK(read_text_file(path) == "second draft\n");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));

    const std::string missing_dir =
        (std::filesystem::temp_directory_path() / "mvf_io_suite_missing" / "x.txt").string();
    CHECK(code_of([&] { atomic_write_text(missing_dir, "y"); }) == ErrorCode::io_error);
    CHECK(code_of([&] { read_text_file(missing_dir); }) == ErrorCode::io_error);
    CHECK(code_of([&] { read_mvhm(missing_dir); }) == ErrorCode::io_error);
}

TEST_CASE("binary readers reject corrupted payloads") {
    const std::string path = scratch("corrupt.bin");

    std::string good = mvhm_bytes(1, 2, 4, 3, 1);
    write_raw(path, good);
    const HeatMapStack parsed = read_mvhm(path);
    CHECK(parsed.joints == 2);
    CHECK(parsed.plane == Plane::yz);

    std::string wrong_magic = good;
    wrong_magic[0] = 'X';
    write_raw(path, wrong_magic);
    CHECK(code_of([&] { read_mvhm(path); }) == ErrorCode::bad_magic);

    write_raw(path, mvhm_bytes(2, 2, 4, 3, 1));
    CHECK(code_of([&] { read_mvhm(path); }) == ErrorCode::parse_error);

    write_raw(path, mvhm_bytes(1, 0, 4, 3, 1));
    CHECK(code_of([&] { read_mvhm(path); }) == ErrorCode::parse_error);

    write_raw(path, mvhm_bytes(1, 2, 4, 3, 3));
    CHECK(code_of([&] { read_mvhm(path); }) == ErrorCode::parse_error);

    write_raw(path, good.substr(0, good.size() - 9));
    CHECK(code_of([&] { read_mvhm(path); }) == ErrorCode::truncated_file);

    write_raw(path, good + "z");
    CHECK(code_of([&] { read_mvhm(path); }) == ErrorCode::parse_error);

    // Non-integer view resolution in the link record.
    std::string bad_link = good;
    bad_link.resize(bad_link.size() - 16);
    put_f64(bad_link, 64.5);
    put_f64(bad_link, 64.0);
    write_raw(path, bad_link);
    CHECK(code_of([&] { read_mvhm(path); }) == ErrorCode::parse_error);

    std::string mvpp;
    mvpp.append("MVPP", 4);
    put_u32(mvpp, 1);
    put_u32(mvpp, 2);   // joints
    put_u32(mvpp, 7);   // components > 3 * joints
    write_raw(path, mvpp);
    CHECK(code_of([&] { read_mvpp(path); }) == ErrorCode::parse_error);

    std::string mvdf;
    mvdf.append("MVDF", 4);
    put_u32(mvdf, 1);
    put_u32(mvdf, 0);
    put_u32(mvdf, 4);
    write_raw(path, mvdf);
    CHECK(code_of([&] { read_mvdf(path); }) == ErrorCode::parse_error);

    write_raw(path, std::string("MV"));
    CHECK(code_of([&] { read_mvdf(path); }) == ErrorCode::truncated_file);
}

}  // TEST_SUITE("io")
