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

#include "mvf/common.hpp"

namespace mvf {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::empty_frame: return "EmptyFrame";
        case ErrorCode::degenerate_cloud: return "DegenerateCloud";
        case ErrorCode::out_of_range: return "OutOfRange";
        case ErrorCode::view_mismatch: return "ViewMismatch";
        case ErrorCode::insufficient_data: return "InsufficientData";
        case ErrorCode::dimension_mismatch: return "DimensionMismatch";
        case ErrorCode::length_mismatch: return "LengthMismatch";
        case ErrorCode::frame_tag_mismatch: return "FrameTagMismatch";
        case ErrorCode::frame_set_mismatch: return "FrameSetMismatch";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::count_mismatch: return "CountMismatch";
        case ErrorCode::bad_magic: return "BadMagic";
        case ErrorCode::truncated_file: return "TruncatedFile";
        case ErrorCode::adapter_mismatch: return "AdapterMismatch";
        case ErrorCode::io_error: return "IoError";
        case ErrorCode::config_error: return "ConfigError";
    }
    return "UnknownError";
}

const char* plane_name(Plane plane) {
    switch (plane) {
        case Plane::xy: return "xy";
        case Plane::yz: return "yz";
        case Plane::zx: return "zx";
    }
    return "invalid";
}

Plane plane_from_name(std::string_view name) {
    if (name == "xy") return Plane::xy;
    if (name == "yz") return Plane::yz;
    if (name == "zx") return Plane::zx;
    throw Error(ErrorCode::parse_error, "unknown plane name: " + std::string(name));
}

}  // namespace mvf
