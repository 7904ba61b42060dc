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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mvf/geometry.hpp"
#include "mvf/heatmap.hpp"
#include "mvf/prior.hpp"

namespace mvf {

// ---------------------------------------------------------------------------
// Binary formats. All little-endian with explicit per-field serialization,
// so files are identical across hosts.
//
//   MVHM  heat-map stack   "MVHM" u32 version=1, u32 k, u32 width,
//                          u32 height, u8 plane, 3 reserved bytes,
//                          k*height*width float32 row-major, then the view
//                          link as 6 float64: uv_scale xy, uv_origin xy,
//                          view width, view height.
//   MVPP  pose prior       "MVPP" u32 version=1, u32 K, u32 M, mean
//                          (3K float64), eigenvalues (M float64), basis
//                          column-major (3K*M float64). The frame tag is
//                          carried by context, not the file.
//   MVDF  depth frame      "MVDF" u32 version=1, u32 width, u32 height,
//                          width*height float32 mm row-major.
// ---------------------------------------------------------------------------

void write_mvhm(const std::string& path, const HeatMapStack& stack);
HeatMapStack read_mvhm(const std::string& path);

void write_mvpp(const std::string& path, const PosePrior& prior);
PosePrior read_mvpp(const std::string& path, CoordFrame frame = CoordFrame::camera);

void write_mvdf(const std::string& path, const DepthFrame& frame);
DepthFrame read_mvdf(const std::string& path);

enum class DepthAdapter { canonical = 0, msra_like = 1 };

// msra_like reads the community binary layout: 6 int32 (image width,
// image height, bbox left, top, right, bottom) then float32 mm depths for
// the bbox rows; values are placed back into a full-size frame.
DepthFrame load_depth_frame(const std::string& path, DepthAdapter adapter);

// ---------------------------------------------------------------------------
// Joints text format: first line the frame count N, then N lines of 3K
// whitespace-separated decimals (mm, joint-major), printed with 17
// significant digits. The coordinate frame is assigned by the caller.
// ---------------------------------------------------------------------------

void write_joints_file(const std::string& path, const std::vector<JointSet>& poses);
std::vector<JointSet> load_joints_file(const std::string& path,
                                       CoordFrame frame = CoordFrame::camera);

// ---------------------------------------------------------------------------
// Projected view export: 16-bit binary PGM (P5, big-endian samples per the
// format; background 0, foreground 1 + round(value * 65534)) plus a
// key-value text sidecar `<base>.meta` holding plane, near/far and the
// affine map. read_view reconstructs mask and quantized values.
// ---------------------------------------------------------------------------

void write_view(const std::string& base_path, const ProjectedView& view);
ProjectedView read_view(const std::string& base_path);

void write_obb(const std::string& path, const ObbFrame& obb);
ObbFrame read_obb(const std::string& path);

// ---------------------------------------------------------------------------
// Flat key=value run configuration. Lines are `key=value`, '#' starts a
// comment, keys are unique. Round-trips losslessly. Flags override file
// values by calling set() after load.
// ---------------------------------------------------------------------------

struct RunConfig {
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { values[key] = value; }
    std::string get(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
};

RunConfig load_run_config(const std::string& path);
void save_run_config(const std::string& path, const RunConfig& config);

// FNV-1a over the canonical sorted "key=value\n" rendering; embedded in
// every output so results can be traced to the run that produced them.
std::uint64_t config_hash(const RunConfig& config);

// Writes via a temp file in the same directory plus rename, so readers
// never observe a partial summary.
void atomic_write_text(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

}  // namespace mvf
