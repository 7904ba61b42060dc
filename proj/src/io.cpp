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

#include "mvf/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mvf {

namespace {

// ---- little-endian byte plumbing -----------------------------------------

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    put_u32(out, static_cast<std::uint32_t>(v & 0xffffffffull));
    put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

void put_f32(std::string& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }
void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

class ByteReader {
  public:
    ByteReader(std::string data, std::string path)
        : data_(std::move(data)), path_(std::move(path)) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data_[pos_++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(data_[pos_ + i])) << (8 * i);
        }
        pos_ += 4;
        return v;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    std::uint64_t u64() {
        const std::uint64_t lo = u32();
        const std::uint64_t hi = u32();
        return lo | (hi << 32);
    }
    float f32() { return std::bit_cast<float>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }

    void magic(const char* expected) {
        need(4);
        if (std::memcmp(data_.data() + pos_, expected, 4) != 0) {
            throw Error(ErrorCode::bad_magic, path_ + ": expected magic " + expected);
        }
        pos_ += 4;
    }
    void expect_consumed() const {
        if (pos_ != data_.size()) {
            throw Error(ErrorCode::parse_error, path_ + ": trailing bytes after payload");
        }
    }
    std::size_t remaining() const { return data_.size() - pos_; }
    const std::string& path() const { return path_; }

  private:
    void need(std::size_t n) {
        if (data_.size() - pos_ < n) {
            throw Error(ErrorCode::truncated_file, path_ + ": unexpected end of file");
        }
    }
    std::string data_;
    std::string path_;
    std::size_t pos_ = 0;
};

std::string read_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorCode::io_error, "cannot read " + path);
    }
    return std::move(buffer).str();
}

void write_binary_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::io_error, "cannot open " + path + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        throw Error(ErrorCode::io_error, "cannot write " + path);
    }
}

void append_scalar(std::ostringstream& out, double v) {
    out.precision(17);
    out << v;
}

double parse_double(const std::string& token, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE) {
        throw Error(ErrorCode::parse_error, context + ": bad number '" + token + "'");
    }
    return v;
}

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

constexpr std::uint32_t kSaneDim = 1u << 20;

}  // namespace

// ---- MVHM ------------------------------------------------------------------

void write_mvhm(const std::string& path, const HeatMapStack& stack) {
    std::string out;
    out.reserve(24 + stack.values.size() * 4 + 48);
    out.append("MVHM", 4);
    put_u32(out, 1);
    put_u32(out, static_cast<std::uint32_t>(stack.joints));
    put_u32(out, static_cast<std::uint32_t>(stack.width));
    put_u32(out, static_cast<std::uint32_t>(stack.height));
    out.push_back(static_cast<char>(stack.plane));
    out.append(3, '\0');
    for (float v : stack.values) {
        put_f32(out, v);
    }
    put_f64(out, stack.link.uv_scale.x());
    put_f64(out, stack.link.uv_scale.y());
    put_f64(out, stack.link.uv_origin.x());
    put_f64(out, stack.link.uv_origin.y());
    put_f64(out, static_cast<double>(stack.link.view_width));
    put_f64(out, static_cast<double>(stack.link.view_height));
    write_binary_file(path, out);
}

HeatMapStack read_mvhm(const std::string& path) {
    ByteReader in(read_binary_file(path), path);
    in.magic("MVHM");
    if (in.u32() != 1) {
        throw Error(ErrorCode::parse_error, path + ": unsupported MVHM version");
    }
    HeatMapStack stack;
    const std::uint32_t k = in.u32();
    const std::uint32_t w = in.u32();
    const std::uint32_t h = in.u32();
    if (k == 0 || w == 0 || h == 0 || k > kSaneDim || w > kSaneDim || h > kSaneDim) {
        throw Error(ErrorCode::parse_error, path + ": implausible MVHM dimensions");
    }
    const std::uint8_t plane = in.u8();
    if (plane > 2) {
        throw Error(ErrorCode::parse_error, path + ": bad plane tag");
    }
    in.u8();
    in.u8();
    in.u8();
    stack.plane = static_cast<Plane>(plane);
    stack.joints = static_cast<int>(k);
    stack.width = static_cast<int>(w);
    stack.height = static_cast<int>(h);
    stack.values.resize(static_cast<std::size_t>(k) * w * h);
    for (float& v : stack.values) {
        v = in.f32();
    }
    stack.link.uv_scale.x() = in.f64();
    stack.link.uv_scale.y() = in.f64();
    stack.link.uv_origin.x() = in.f64();
    stack.link.uv_origin.y() = in.f64();
    const double vw = in.f64();
    const double vh = in.f64();
    if (!(vw >= 1.0) || !(vh >= 1.0) || vw != std::floor(vw) || vh != std::floor(vh)) {
        throw Error(ErrorCode::parse_error, path + ": bad view resolution in link");
    }
    stack.link.view_width = static_cast<int>(vw);
    stack.link.view_height = static_cast<int>(vh);
    in.expect_consumed();
    return stack;
}

// ---- MVPP ------------------------------------------------------------------

void write_mvpp(const std::string& path, const PosePrior& prior) {
    std::string out;
    out.append("MVPP", 4);
    put_u32(out, 1);
    put_u32(out, static_cast<std::uint32_t>(prior.joints()));
    put_u32(out, static_cast<std::uint32_t>(prior.components()));
    for (Eigen::Index i = 0; i < prior.mean.size(); ++i) {
        put_f64(out, prior.mean[i]);
    }
    for (Eigen::Index i = 0; i < prior.eigenvalues.size(); ++i) {
        put_f64(out, prior.eigenvalues[i]);
    }
    for (Eigen::Index c = 0; c < prior.basis.cols(); ++c) {
        for (Eigen::Index r = 0; r < prior.basis.rows(); ++r) {
            put_f64(out, prior.basis(r, c));
        }
    }
    write_binary_file(path, out);
}

PosePrior read_mvpp(const std::string& path, CoordFrame frame) {
    ByteReader in(read_binary_file(path), path);
    in.magic("MVPP");
    if (in.u32() != 1) {
        throw Error(ErrorCode::parse_error, path + ": unsupported MVPP version");
    }
    const std::uint32_t joints = in.u32();
    const std::uint32_t m = in.u32();
    if (joints == 0 || joints > kSaneDim || m == 0 || m > 3 * joints) {
        throw Error(ErrorCode::parse_error, path + ": implausible MVPP dimensions");
    }
    PosePrior prior;
    prior.frame = frame;
    prior.mean.resize(3 * static_cast<Eigen::Index>(joints));
    for (Eigen::Index i = 0; i < prior.mean.size(); ++i) {
        prior.mean[i] = in.f64();
    }
    prior.eigenvalues.resize(static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < prior.eigenvalues.size(); ++i) {
        prior.eigenvalues[i] = in.f64();
    }
    prior.basis.resize(prior.mean.size(), static_cast<Eigen::Index>(m));
    for (Eigen::Index c = 0; c < prior.basis.cols(); ++c) {
        for (Eigen::Index r = 0; r < prior.basis.rows(); ++r) {
            prior.basis(r, c) = in.f64();
        }
    }
    in.expect_consumed();
    prior.rank_deficient =
        prior.eigenvalues[prior.eigenvalues.size() - 1] <= 1e-12 * prior.eigenvalues[0];
    return prior;
}

// ---- MVDF ------------------------------------------------------------------

void write_mvdf(const std::string& path, const DepthFrame& frame) {
    std::string out;
    out.reserve(16 + frame.depth.size() * 4);
    out.append("MVDF", 4);
    put_u32(out, 1);
    put_u32(out, static_cast<std::uint32_t>(frame.width));
    put_u32(out, static_cast<std::uint32_t>(frame.height));
    for (float v : frame.depth) {
        put_f32(out, v);
    }
    write_binary_file(path, out);
}

DepthFrame read_mvdf(const std::string& path) {
    ByteReader in(read_binary_file(path), path);
    in.magic("MVDF");
    if (in.u32() != 1) {
        throw Error(ErrorCode::parse_error, path + ": unsupported MVDF version");
    }
    DepthFrame frame;
    const std::uint32_t w = in.u32();
    const std::uint32_t h = in.u32();
    if (w == 0 || h == 0 || w > kSaneDim || h > kSaneDim) {
        throw Error(ErrorCode::parse_error, path + ": implausible MVDF dimensions");
    }
    frame.width = static_cast<int>(w);
    frame.height = static_cast<int>(h);
    frame.depth.resize(static_cast<std::size_t>(w) * h);
    for (float& v : frame.depth) {
        v = in.f32();
    }
    in.expect_consumed();
    return frame;
}

DepthFrame load_depth_frame(const std::string& path, DepthAdapter adapter) {
    if (adapter == DepthAdapter::canonical) {
        return read_mvdf(path);
    }
    // msra_like: 6 little-endian int32 (image width/height, bbox left, top,
    // right, bottom), then float32 mm depths covering the bbox only.
    ByteReader in(read_binary_file(path), path);
    if (in.remaining() >= 4) {
        ByteReader peek(read_binary_file(path), path);
        char head[5] = {0};
        for (int i = 0; i < 4; ++i) {
            head[i] = static_cast<char>(peek.u8());
        }
        if (std::strcmp(head, "MVDF") == 0) {
            throw Error(ErrorCode::adapter_mismatch,
                        path + ": canonical MVDF file given to the msra_like adapter");
        }
    }
    const std::int32_t width = in.i32();
    const std::int32_t height = in.i32();
    const std::int32_t left = in.i32();
    const std::int32_t top = in.i32();
    const std::int32_t right = in.i32();
    const std::int32_t bottom = in.i32();
    if (width <= 0 || height <= 0 || width > static_cast<std::int32_t>(kSaneDim) ||
        height > static_cast<std::int32_t>(kSaneDim) || left < 0 || top < 0 || right <= left ||
        bottom <= top || right > width || bottom > height) {
        throw Error(ErrorCode::adapter_mismatch, path + ": header is not an msra_like layout");
    }
    DepthFrame frame;
    frame.width = width;
    frame.height = height;
    frame.depth.assign(static_cast<std::size_t>(width) * height, 0.0f);
    for (std::int32_t y = top; y < bottom; ++y) {
        for (std::int32_t x = left; x < right; ++x) {
            frame.depth[static_cast<std::size_t>(y) * width + x] = in.f32();
        }
    }
    in.expect_consumed();
    return frame;
}

// ---- joints text -------------------------------------------------------------

void write_joints_file(const std::string& path, const std::vector<JointSet>& poses) {
    std::ostringstream out;
    out << poses.size() << "\n";
    for (const JointSet& pose : poses) {
        for (Eigen::Index i = 0; i < pose.positions.size(); ++i) {
            if (i) {
                out << ' ';
            }
            append_scalar(out, pose.positions[i]);
        }
        out << "\n";
    }
    write_binary_file(path, out.str());
}

std::vector<JointSet> load_joints_file(const std::string& path, CoordFrame frame) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot open " + path);
    }
    std::string line;
    int line_no = 0;
    long declared = -1;
    std::vector<JointSet> poses;
    Eigen::Index dim = -1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) {
            continue;
        }
        const std::string context = path + ":" + std::to_string(line_no);
        if (declared < 0) {
            errno = 0;
            char* end = nullptr;
            declared = std::strtol(text.c_str(), &end, 10);
            if (end == text.c_str() || *end != '\0' || declared < 0 || errno == ERANGE) {
                throw Error(ErrorCode::parse_error, context + ": bad frame count");
            }
            continue;
        }
        std::istringstream fields(text);
        std::vector<double> values;
        std::string token;
        while (fields >> token) {
            values.push_back(parse_double(token, context));
        }
        if (dim < 0) {
            if (values.empty() || values.size() % 3 != 0) {
                throw Error(ErrorCode::parse_error,
                            context + ": coordinate count must be a positive multiple of 3");
            }
            dim = static_cast<Eigen::Index>(values.size());
        } else if (static_cast<Eigen::Index>(values.size()) != dim) {
            throw Error(ErrorCode::parse_error, context + ": coordinate count differs");
        }
        JointSet pose(frame, Eigen::VectorXd(dim));
        for (Eigen::Index i = 0; i < dim; ++i) {
            pose.positions[i] = values[static_cast<std::size_t>(i)];
        }
        poses.push_back(std::move(pose));
        if (static_cast<long>(poses.size()) > declared) {
            throw Error(ErrorCode::count_mismatch,
                        path + ": more data lines than the declared frame count");
        }
    }
    if (declared < 0) {
        throw Error(ErrorCode::parse_error, path + ": missing frame count line");
    }
    if (static_cast<long>(poses.size()) != declared) {
        throw Error(ErrorCode::count_mismatch,
                    path + ": declared " + std::to_string(declared) + " frames, found " +
                        std::to_string(poses.size()));
    }
    return poses;
}

// ---- projected views -----------------------------------------------------

void write_view(const std::string& base_path, const ProjectedView& view) {
    std::string pgm = "P5\n" + std::to_string(view.width) + " " + std::to_string(view.height) +
                      "\n65535\n";
    pgm.reserve(pgm.size() + view.values.size() * 2);
    for (std::size_t i = 0; i < view.values.size(); ++i) {
        std::uint16_t sample = 0;
        if (view.mask[i] != 0) {
            const long quantized = 1 + std::lround(static_cast<double>(view.values[i]) * 65534.0);
            sample = static_cast<std::uint16_t>(std::clamp(quantized, 1l, 65535l));
        }
        pgm.push_back(static_cast<char>(sample >> 8));  // PGM samples are big-endian
        pgm.push_back(static_cast<char>(sample & 0xff));
    }
    write_binary_file(base_path + ".pgm", pgm);

    std::ostringstream meta;
    meta << "plane=" << plane_name(view.plane) << "\n";
    meta << "width=" << view.width << "\n";
    meta << "height=" << view.height << "\n";
    meta << "near_mm=";
    append_scalar(meta, view.near_mm);
    meta << "\nfar_mm=";
    append_scalar(meta, view.far_mm);
    meta << "\nuv_scale_x=";
    append_scalar(meta, view.uv_scale.x());
    meta << "\nuv_scale_y=";
    append_scalar(meta, view.uv_scale.y());
    meta << "\nuv_origin_x=";
    append_scalar(meta, view.uv_origin.x());
    meta << "\nuv_origin_y=";
    append_scalar(meta, view.uv_origin.y());
    meta << "\n";
    write_binary_file(base_path + ".meta", meta.str());
}

ProjectedView read_view(const std::string& base_path) {
    const std::string pgm_path = base_path + ".pgm";
    const std::string pgm = read_binary_file(pgm_path);
    std::size_t pos = 0;
    const auto next_token = [&]() {
        while (pos < pgm.size() && std::isspace(static_cast<unsigned char>(pgm[pos]))) ++pos;
        const std::size_t start = pos;
        while (pos < pgm.size() && !std::isspace(static_cast<unsigned char>(pgm[pos]))) ++pos;
        if (start == pos) {
            throw Error(ErrorCode::truncated_file, pgm_path + ": unexpected end of header");
        }
        return pgm.substr(start, pos - start);
    };
    if (next_token() != "P5") {
        throw Error(ErrorCode::bad_magic, pgm_path + ": not a binary PGM");
    }
    const int width = static_cast<int>(parse_double(next_token(), pgm_path));
    const int height = static_cast<int>(parse_double(next_token(), pgm_path));
    const int maxval = static_cast<int>(parse_double(next_token(), pgm_path));
    if (width <= 0 || height <= 0 || maxval != 65535) {
        throw Error(ErrorCode::parse_error, pgm_path + ": unsupported PGM geometry");
    }
    ++pos;  // single whitespace after maxval
    const std::size_t expected = static_cast<std::size_t>(width) * height * 2;
    if (pgm.size() - pos < expected) {
        throw Error(ErrorCode::truncated_file, pgm_path + ": sample data missing");
    }

    ProjectedView view;
    view.width = width;
    view.height = height;
    view.values.resize(static_cast<std::size_t>(width) * height, 0.0f);
    view.mask.resize(view.values.size(), 0);
    for (std::size_t i = 0; i < view.values.size(); ++i) {
        const std::uint16_t sample =
            static_cast<std::uint16_t>((static_cast<std::uint8_t>(pgm[pos + 2 * i]) << 8) |
                                       static_cast<std::uint8_t>(pgm[pos + 2 * i + 1]));
        if (sample > 0) {
            view.mask[i] = 1;
            view.values[i] = static_cast<float>((sample - 1) / 65534.0);
        }
    }

    const RunConfig meta = load_run_config(base_path + ".meta");
    const std::string meta_path = base_path + ".meta";
    const auto require = [&](const std::string& key) {
        if (!meta.has(key)) {
            throw Error(ErrorCode::parse_error, meta_path + ": missing key " + key);
        }
        return meta.get(key, "");
    };
    view.plane = plane_from_name(require("plane"));
    if (static_cast<int>(meta.get_int("width", -1)) != width ||
        static_cast<int>(meta.get_int("height", -1)) != height) {
        throw Error(ErrorCode::parse_error, meta_path + ": resolution disagrees with the PGM");
    }
    view.near_mm = parse_double(require("near_mm"), meta_path);
    view.far_mm = parse_double(require("far_mm"), meta_path);
    view.uv_scale.x() = parse_double(require("uv_scale_x"), meta_path);
    view.uv_scale.y() = parse_double(require("uv_scale_y"), meta_path);
    view.uv_origin.x() = parse_double(require("uv_origin_x"), meta_path);
    view.uv_origin.y() = parse_double(require("uv_origin_y"), meta_path);
    return view;
}

// ---- OBB text --------------------------------------------------------------

void write_obb(const std::string& path, const ObbFrame& obb) {
    std::ostringstream out;
    const auto put_vec = [&](const char* key, const Eigen::Vector3d& v) {
        out << key << "=";
        append_scalar(out, v.x());
        out << " ";
        append_scalar(out, v.y());
        out << " ";
        append_scalar(out, v.z());
        out << "\n";
    };
    put_vec("origin", obb.origin);
    put_vec("axis1", obb.axes.col(0));
    put_vec("axis2", obb.axes.col(1));
    put_vec("axis3", obb.axes.col(2));
    put_vec("extents", obb.extents);
    write_binary_file(path, out.str());
}

ObbFrame read_obb(const std::string& path) {
    const RunConfig kv = load_run_config(path);
    const auto get_vec = [&](const std::string& key) {
        if (!kv.has(key)) {
            throw Error(ErrorCode::parse_error, path + ": missing key " + key);
        }
        std::istringstream fields(kv.get(key, ""));
        Eigen::Vector3d v;
        std::string token;
        for (int i = 0; i < 3; ++i) {
            if (!(fields >> token)) {
                throw Error(ErrorCode::parse_error, path + ": key " + key + " needs 3 values");
            }
            v[i] = parse_double(token, path + ":" + key);
        }
        if (fields >> token) {
            throw Error(ErrorCode::parse_error, path + ": key " + key + " has extra values");
        }
        return v;
    };
    ObbFrame obb;
    obb.origin = get_vec("origin");
    obb.axes.col(0) = get_vec("axis1");
    obb.axes.col(1) = get_vec("axis2");
    obb.axes.col(2) = get_vec("axis3");
    obb.extents = get_vec("extents");
    return obb;
}

// ---- run configuration -----------------------------------------------------

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
    const auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

std::int64_t RunConfig::get_int(const std::string& key, std::int64_t fallback) const {
    const auto it = values.find(key);
    if (it == values.end()) {
        return fallback;
    }
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || *end != '\0' || errno == ERANGE) {
        throw Error(ErrorCode::config_error, "config key " + key + " is not an integer");
    }
    return v;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    const auto it = values.find(key);
    if (it == values.end()) {
        return fallback;
    }
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0' || errno == ERANGE) {
        throw Error(ErrorCode::config_error, "config key " + key + " is not a number");
    }
    return v;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot open " + path);
    }
    RunConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        const std::string text = trim(line);
        if (text.empty()) {
            continue;
        }
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw Error(ErrorCode::parse_error,
                        path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (config.values.count(key)) {
            throw Error(ErrorCode::parse_error,
                        path + ":" + std::to_string(line_no) + ": duplicate key " + key);
        }
        config.values[key] = value;
    }
    return config;
}

void save_run_config(const std::string& path, const RunConfig& config) {
    std::ostringstream out;
    for (const auto& [key, value] : config.values) {
        out << key << "=" << value << "\n";
    }
    write_binary_file(path, out.str());
}

std::uint64_t config_hash(const RunConfig& config) {
    std::uint64_t hash = 14695981039346656037ull;
    const auto feed = [&](const std::string& s) {
        for (char c : s) {
            hash ^= static_cast<std::uint8_t>(c);
            hash *= 1099511628211ull;
        }
    };
    for (const auto& [key, value] : config.values) {
        feed(key);
        feed("=");
        feed(value);
        feed("\n");
    }
    return hash;
}

void atomic_write_text(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    write_binary_file(tmp, content);
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw Error(ErrorCode::io_error, "cannot rename " + tmp + " to " + path);
    }
}

std::string read_text_file(const std::string& path) { return read_binary_file(path); }

}  // namespace mvf
