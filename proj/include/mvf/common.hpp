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
#include <stdexcept>
#include <string>
#include <string_view>

namespace mvf {

enum class ErrorCode {
    empty_frame,
    degenerate_cloud,
    out_of_range,
    view_mismatch,
    insufficient_data,
    dimension_mismatch,
    length_mismatch,
    frame_tag_mismatch,
    frame_set_mismatch,
    parse_error,
    count_mismatch,
    bad_magic,
    truncated_file,
    adapter_mismatch,
    io_error,
    config_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// The three orthogonal projection planes of the box coordinate system.
/// Tag values are fixed by the heat-map file format.
enum class Plane : std::uint8_t { xy = 0, yz = 1, zx = 2 };

/// Coordinate frame a joint set (or pose prior) lives in.
enum class CoordFrame : std::uint8_t { camera = 0, obb = 1 };

const char* plane_name(Plane p);
Plane plane_from_name(std::string_view name);

// Axis roles per plane, as indices into box-local (x, y, z) coordinates.
// The first letter of the plane name is the image u axis, the second the
// v axis; the remaining axis is the projection normal.
constexpr int plane_u_axis(Plane p) {
    return p == Plane::xy ? 0 : (p == Plane::yz ? 1 : 2);
}
constexpr int plane_v_axis(Plane p) {
    return p == Plane::xy ? 1 : (p == Plane::yz ? 2 : 0);
}
constexpr int plane_normal_axis(Plane p) {
    return p == Plane::xy ? 2 : (p == Plane::yz ? 0 : 1);
}

inline constexpr int kDefaultJointCount = 21;
inline constexpr int kDefaultProjectionResolution = 96;
inline constexpr int kDefaultHeatMapSize = 18;
inline constexpr int kDefaultGridSamples = 32;
inline constexpr int kDefaultPriorComponents = 35;

}  // namespace mvf
