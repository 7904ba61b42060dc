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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mvf/eval.hpp"
#include "mvf/fusion.hpp"
#include "mvf/geometry.hpp"
#include "mvf/io.hpp"
#include "mvf/parallel.hpp"
#include "mvf/prior.hpp"
#include "mvf/synth.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFrameErrors = 1;
constexpr int kExitConfigError = 2;

// ---- configuration plumbing ------------------------------------------------

struct FlagBinding {
    std::string key;
    std::string value;
    CLI::Option* option = nullptr;
};

// Registers a flag that mirrors a config-file key; flag values win over the
// file after parsing.
void add_cfg_option(CLI::App* sub, std::vector<FlagBinding>& bindings, const std::string& flag,
                    const std::string& key, const std::string& help) {
    bindings.push_back(FlagBinding{key, "", nullptr});
    FlagBinding& binding = bindings.back();
    binding.option = sub->add_option(flag, binding.value, help);
}

mvf::RunConfig resolve_config(const std::string& config_path,
                              const std::vector<FlagBinding>& bindings) {
    mvf::RunConfig config;
    if (!config_path.empty()) {
        config = mvf::load_run_config(config_path);
    }
    for (const FlagBinding& binding : bindings) {
        if (binding.option != nullptr && binding.option->count() > 0) {
            config.set(binding.key, binding.value);
        }
    }
    return config;
}

mvf::CameraIntrinsics intrinsics_from(const mvf::RunConfig& config) {
    mvf::CameraIntrinsics cam;
    cam.fx = config.get_double("fx", 588.0);
    cam.fy = config.get_double("fy", 588.0);
    cam.cx = config.get_double("cx", 320.0);
    cam.cy = config.get_double("cy", 240.0);
    cam.image_width = static_cast<int>(config.get_int("cam_width", 640));
    cam.image_height = static_cast<int>(config.get_int("cam_height", 480));
    return cam;
}

mvf::SceneOptions scene_options_from(const mvf::RunConfig& config) {
    mvf::SceneOptions options;
    options.resolution = static_cast<int>(config.get_int("resolution", mvf::kDefaultProjectionResolution));
    options.heatmap_size = static_cast<int>(config.get_int("heatmap_size", mvf::kDefaultHeatMapSize));
    options.sigma = config.get_double("sigma", 1.0);
    options.density = config.get_double("density", 6.0);
    options.radius = config.get_double("radius", 7.0);
    return options;
}

mvf::NoiseSpec noise_from(const mvf::RunConfig& config) {
    mvf::NoiseSpec noise;
    noise.sigma_n = config.get_double("noise_sigma", 0.0);
    noise.hotspot_prob = config.get_double("hotspot_prob", 0.0);
    noise.hotspot_amplitude = config.get_double("hotspot_amplitude", 1.0);
    return noise;
}

std::vector<double> tolerances_from(const mvf::RunConfig& config) {
    const double max = config.get_double("tol_max", 80.0);
    const double step = config.get_double("tol_step", 2.0);
    if (!(step > 0.0) || !(max >= 0.0)) {
        throw mvf::Error(mvf::ErrorCode::config_error, "tol_max/tol_step out of range");
    }
    std::vector<double> grid;
    for (double t = 0.0; t <= max + 1e-9; t += step) {
        grid.push_back(t);
    }
    return grid;
}

std::string hash_hex(std::uint64_t value) {
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
    return buffer;
}

// ---- frame enumeration -----------------------------------------------------

struct FrameRef {
    std::string id;
    fs::path dir;
};

std::vector<FrameRef> list_frame_dirs(const std::string& root) {
    std::vector<FrameRef> frames;
    if (!fs::is_directory(root)) {
        throw mvf::Error(mvf::ErrorCode::config_error, root + " is not a directory");
    }
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory() && fs::exists(entry.path() / "obb.txt")) {
            frames.push_back(FrameRef{entry.path().filename().string(), entry.path()});
        }
    }
    std::sort(frames.begin(), frames.end(),
              [](const FrameRef& a, const FrameRef& b) { return a.id < b.id; });
    if (frames.empty()) {
        throw mvf::Error(mvf::ErrorCode::config_error, root + " contains no frame directories");
    }
    return frames;
}

std::array<mvf::HeatMapStack, 3> load_stacks(const FrameRef& frame) {
    std::array<mvf::HeatMapStack, 3> stacks;
    for (int p = 0; p < 3; ++p) {
        const std::string name =
            frame.id + "_" + mvf::plane_name(static_cast<mvf::Plane>(p)) + ".mvhm";
        stacks[static_cast<std::size_t>(p)] = mvf::read_mvhm((frame.dir / name).string());
    }
    return stacks;
}

// Collects per-frame failures without aborting the batch.
class FrameErrorLog {
  public:
    void add(const std::string& frame_id, const std::exception& e) {
        std::lock_guard<std::mutex> lock(mutex_);
        entries_.push_back(frame_id + ": " + e.what());
    }
    bool empty() const { return entries_.empty(); }
    const std::vector<std::string>& entries() const { return entries_; }

  private:
    std::mutex mutex_;
    std::vector<std::string> entries_;
};

int finish_batch(const FrameErrorLog& errors) {
    for (const std::string& line : errors.entries()) {
        std::fprintf(stderr, "frame error: %s\n", line.c_str());
    }
    return errors.empty() ? kExitOk : kExitFrameErrors;
}

// ---- subcommand bodies -----------------------------------------------------

int run_project(const mvf::RunConfig& config, const std::string& input, const std::string& out) {
    const mvf::CameraIntrinsics cam = intrinsics_from(config);
    const int resolution = static_cast<int>(config.get_int("resolution", 96));
    const std::string adapter_name = config.get("adapter", "canonical");
    mvf::DepthAdapter adapter;
    if (adapter_name == "canonical") {
        adapter = mvf::DepthAdapter::canonical;
    } else if (adapter_name == "msra_like") {
        adapter = mvf::DepthAdapter::msra_like;
    } else {
        throw mvf::Error(mvf::ErrorCode::config_error, "unknown adapter: " + adapter_name);
    }

    std::vector<fs::path> inputs;
    if (fs::is_directory(input)) {
        for (const auto& entry : fs::directory_iterator(input)) {
            if (entry.is_regular_file()) {
                inputs.push_back(entry.path());
            }
        }
        std::sort(inputs.begin(), inputs.end());
    } else if (fs::exists(input)) {
        inputs.push_back(input);
    }
    if (inputs.empty()) {
        throw mvf::Error(mvf::ErrorCode::config_error, "no input depth frames under " + input);
    }
    fs::create_directories(out);

    FrameErrorLog errors;
    std::vector<std::string> frame_ids(inputs.size());
    mvf::parallel_for(static_cast<int>(inputs.size()), [&](int i) {
        const fs::path& path = inputs[static_cast<std::size_t>(i)];
        const std::string id = path.stem().string();
        frame_ids[static_cast<std::size_t>(i)] = id;
        try {
            const mvf::DepthFrame depth = mvf::load_depth_frame(path.string(), adapter);
            const mvf::PointCloud cloud = mvf::depth_to_pointcloud(depth, cam);
            const mvf::ObbFrame obb = mvf::compute_obb(cloud);
            const auto views = mvf::project_to_planes(cloud, obb, resolution);
            const fs::path dir = fs::path(out) / id;
            fs::create_directories(dir);
            mvf::write_obb((dir / "obb.txt").string(), obb);
            for (const mvf::ProjectedView& view : views) {
                mvf::write_view((dir / mvf::plane_name(view.plane)).string(), view);
            }
        } catch (const std::exception& e) {
            errors.add(id, e);
        }
    });

    nlohmann::json summary;
    summary["command"] = "project";
    summary["config_hash"] = hash_hex(mvf::config_hash(config));
    summary["frames"] = frame_ids;
    summary["failed"] = errors.entries();
    mvf::atomic_write_text((fs::path(out) / "summary.json").string(), summary.dump(2) + "\n");
    return finish_batch(errors);
}

int run_synth(const mvf::RunConfig& config, const std::string& out) {
    const mvf::SceneOptions options = scene_options_from(config);
    const mvf::NoiseSpec noise = noise_from(config);
    const int frames = static_cast<int>(config.get_int("frames", 10));
    const std::uint64_t seed = static_cast<std::uint64_t>(config.get_int("seed", 0));
    if (frames <= 0) {
        throw mvf::Error(mvf::ErrorCode::config_error, "frames must be positive");
    }
    const mvf::PosePrior generator = mvf::default_hand_generator();
    fs::create_directories(out);
    mvf::write_mvpp((fs::path(out) / "generator.mvpp").string(), generator);

    FrameErrorLog errors;
    std::vector<std::optional<mvf::JointSet>> gt(static_cast<std::size_t>(frames));
    std::vector<std::string> frame_ids(static_cast<std::size_t>(frames));
    std::vector<int> attempts(static_cast<std::size_t>(frames), 0);
    std::vector<int> hotspots(static_cast<std::size_t>(frames), -1);

    mvf::parallel_for(frames, [&](int i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%06d", i);
        frame_ids[static_cast<std::size_t>(i)] = name;
        try {
            const mvf::SyntheticScene scene =
                mvf::make_scene(generator, seed + static_cast<std::uint64_t>(i), noise, options);
            const fs::path dir = fs::path(out) / name;
            fs::create_directories(dir);
            mvf::write_obb((dir / "obb.txt").string(), scene.obb);
            for (const mvf::ProjectedView& view : scene.views) {
                mvf::write_view((dir / mvf::plane_name(view.plane)).string(), view);
            }
            for (const mvf::HeatMapStack& stack : scene.stacks) {
                const std::string hm =
                    std::string(name) + "_" + mvf::plane_name(stack.plane) + ".mvhm";
                mvf::write_mvhm((dir / hm).string(), stack);
            }
            mvf::write_joints_file((dir / "joints.txt").string(), {scene.pose});
            gt[static_cast<std::size_t>(i)] = scene.pose;
            attempts[static_cast<std::size_t>(i)] = scene.attempts;
            hotspots[static_cast<std::size_t>(i)] = scene.hotspot_joint;
        } catch (const std::exception& e) {
            errors.add(name, e);
        }
    });

    std::vector<mvf::JointSet> gt_ok;
    for (const auto& pose : gt) {
        if (pose) {
            gt_ok.push_back(*pose);
        }
    }
    if (!gt_ok.empty()) {
        mvf::write_joints_file((fs::path(out) / "gt.txt").string(), gt_ok);
    }

    nlohmann::json summary;
    summary["command"] = "synth";
    summary["config_hash"] = hash_hex(mvf::config_hash(config));
    summary["seed"] = seed;
    summary["frames"] = frame_ids;
    summary["attempts"] = attempts;
    summary["hotspot_joint"] = hotspots;
    summary["failed"] = errors.entries();
    mvf::atomic_write_text((fs::path(out) / "summary.json").string(), summary.dump(2) + "\n");
    return finish_batch(errors);
}

int run_fit_prior(const mvf::RunConfig& config, const std::string& joints_path,
                  const std::string& out_path) {
    const std::string frame_name = config.get("prior_frame", "camera");
    const mvf::CoordFrame frame =
        frame_name == "obb" ? mvf::CoordFrame::obb : mvf::CoordFrame::camera;
    if (frame_name != "obb" && frame_name != "camera") {
        throw mvf::Error(mvf::ErrorCode::config_error, "prior_frame must be camera or obb");
    }
    const int components = static_cast<int>(config.get_int("components", mvf::kDefaultPriorComponents));
    const std::vector<mvf::JointSet> poses = mvf::load_joints_file(joints_path, frame);
    const mvf::PosePrior prior = mvf::fit_pose_prior(poses, components);
    if (prior.rank_deficient) {
        std::fprintf(stderr, "note: prior is rank deficient at %d components\n", components);
    }
    mvf::write_mvpp(out_path, prior);
    std::printf("prior: %d poses, %d components -> %s\n", static_cast<int>(poses.size()),
                components, out_path.c_str());
    return kExitOk;
}

// Shared scaffolding for fuse and the baselines: iterate frames, produce a
// camera-space prediction per frame, write predictions + summary.
template <typename PerFrame>
int run_estimator(const mvf::RunConfig& config, const std::string& scenes, const std::string& out,
                  const std::string& command, const PerFrame& per_frame) {
    const std::vector<FrameRef> frames = list_frame_dirs(scenes);
    fs::create_directories(out);
    FrameErrorLog errors;
    std::vector<std::optional<mvf::JointSet>> preds(frames.size());
    std::vector<nlohmann::json> diags(frames.size());

    mvf::parallel_for(static_cast<int>(frames.size()), [&](int i) {
        const FrameRef& frame = frames[static_cast<std::size_t>(i)];
        try {
            const mvf::ObbFrame obb = mvf::read_obb((frame.dir / "obb.txt").string());
            nlohmann::json diag;
            diag["frame"] = frame.id;
            mvf::JointSet pose_obb = per_frame(frame, obb, diag);
            preds[static_cast<std::size_t>(i)] = mvf::pose_to_camera(pose_obb, obb);
            diags[static_cast<std::size_t>(i)] = std::move(diag);
        } catch (const std::exception& e) {
            errors.add(frame.id, e);
        }
    });

    std::vector<mvf::JointSet> ok;
    std::vector<std::string> ok_ids;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i]) {
            ok.push_back(*preds[i]);
            ok_ids.push_back(frames[i].id);
        }
    }
    if (!ok.empty()) {
        mvf::write_joints_file((fs::path(out) / "predictions.txt").string(), ok);
    }
    const fs::path diag_dir = fs::path(out) / "diagnostics";
    fs::create_directories(diag_dir);
    for (std::size_t i = 0; i < diags.size(); ++i) {
        if (preds[i]) {
            mvf::atomic_write_text((diag_dir / (frames[i].id + ".json")).string(),
                                   diags[i].dump(2) + "\n");
        }
    }

    nlohmann::json summary;
    summary["command"] = command;
    summary["config_hash"] = hash_hex(mvf::config_hash(config));
    summary["frames"] = ok_ids;
    summary["failed"] = errors.entries();
    mvf::atomic_write_text((fs::path(out) / "summary.json").string(), summary.dump(2) + "\n");
    return finish_batch(errors);
}

int run_fuse(const mvf::RunConfig& config, const std::string& scenes,
             const std::string& prior_path, const std::string& out) {
    const std::string frame_name = config.get("prior_frame", "camera");
    if (frame_name != "obb" && frame_name != "camera") {
        throw mvf::Error(mvf::ErrorCode::config_error, "prior_frame must be camera or obb");
    }
    const mvf::CoordFrame prior_frame =
        frame_name == "obb" ? mvf::CoordFrame::obb : mvf::CoordFrame::camera;
    const mvf::PosePrior prior = mvf::read_mvpp(prior_path, prior_frame);
    mvf::SamplingGrid grid;
    grid.n = static_cast<int>(config.get_int("grid_samples", mvf::kDefaultGridSamples));

    return run_estimator(
        config, scenes, out, "fuse",
        [&](const FrameRef& frame, const mvf::ObbFrame& obb, nlohmann::json& diag) {
            const auto stacks = load_stacks(frame);
            const mvf::PosePrior local =
                prior_frame == mvf::CoordFrame::camera ? mvf::rebase_to_obb(prior, obb) : prior;
            auto [pose, problem] = mvf::fuse(stacks, obb, local, grid);
            diag["singular"] = problem.singular;
            diag["condition"] = problem.condition;
            std::vector<double> mass;
            std::vector<int> low_mass;
            for (const mvf::JointGaussian& g : problem.gaussians) {
                mass.push_back(g.mass);
                low_mass.push_back(g.low_mass ? 1 : 0);
            }
            diag["mass"] = mass;
            diag["low_mass"] = low_mass;
            return pose;
        });
}

int run_baseline(const mvf::RunConfig& config, const std::string& mode,
                 const std::string& scenes, const std::string& out) {
    if (mode == "single") {
        return run_estimator(
            config, scenes, out, "baseline single",
            [&](const FrameRef& frame, const mvf::ObbFrame& obb, nlohmann::json&) {
                const auto stacks = load_stacks(frame);
                const mvf::ProjectedView view = mvf::read_view((frame.dir / "xy").string());
                return mvf::single_view_estimate(stacks[0], view, obb);
            });
    }
    if (mode == "coarse") {
        return run_estimator(config, scenes, out, "baseline coarse",
                             [&](const FrameRef& frame, const mvf::ObbFrame& obb,
                                 nlohmann::json&) {
                                 const auto stacks = load_stacks(frame);
                                 return mvf::coarse_fusion_estimate(stacks, obb);
                             });
    }
    throw mvf::Error(mvf::ErrorCode::config_error, "baseline mode must be single or coarse");
}

int run_eval(const mvf::RunConfig& config, const std::string& pred_path,
             const std::string& gt_path, const std::string& method, const std::string& out) {
    const std::vector<mvf::JointSet> preds = mvf::load_joints_file(pred_path);
    const std::vector<mvf::JointSet> gts = mvf::load_joints_file(gt_path);
    const mvf::ErrorReport report =
        mvf::evaluate(method, preds, gts, tolerances_from(config), mvf::config_hash(config));
    fs::create_directories(out);
    mvf::atomic_write_text((fs::path(out) / "joints.csv").string(),
                           mvf::report_joints_csv(report));
    mvf::atomic_write_text((fs::path(out) / "curve.csv").string(), mvf::report_curve_csv(report));
    mvf::atomic_write_text((fs::path(out) / "report.json").string(), mvf::report_json(report));
    std::printf("%s: %d frames, mean error %.4f mm\n", method.c_str(), report.frame_count,
                report.overall_mean);
    return kExitOk;
}

mvf::ErrorReport parse_report_json(const std::string& path) {
    const nlohmann::json doc = nlohmann::json::parse(mvf::read_text_file(path));
    mvf::ErrorReport report;
    report.method = doc.at("method").get<std::string>();
    report.frame_count = doc.at("frame_count").get<int>();
    report.overall_mean = doc.at("overall_mean_mm").get<double>();
    report.per_joint_mean = doc.at("per_joint_mean_mm").get<std::vector<double>>();
    for (const auto& point : doc.at("worst_case_curve")) {
        report.worst_case_curve.emplace_back(point.at("tolerance_mm").get<double>(),
                                             point.at("fraction").get<double>());
    }
    report.config_hash =
        std::strtoull(doc.at("config_hash").get<std::string>().c_str(), nullptr, 16);
    return report;
}

int run_report(const std::vector<std::string>& inputs, const std::string& out) {
    std::vector<mvf::ErrorReport> reports;
    reports.reserve(inputs.size());
    for (const std::string& path : inputs) {
        reports.push_back(parse_report_json(path));
    }
    fs::create_directories(out);
    mvf::atomic_write_text((fs::path(out) / "comparison.csv").string(),
                           mvf::compare_methods_csv(reports));
    mvf::atomic_write_text((fs::path(out) / "comparison.json").string(),
                           mvf::compare_methods_json(reports));
    std::printf("compared %d reports -> %s\n", static_cast<int>(reports.size()), out.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-view projection and heat-map fusion for 3D hand pose estimation"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<FlagBinding> bindings;
    bindings.reserve(64);

    std::string input, out, scenes, prior_path, pred_path, gt_path, joints_path;
    std::string method = "method";
    std::string baseline_mode;
    std::vector<std::string> report_inputs;

    CLI::App* project = app.add_subcommand("project", "depth frames -> OBB views");
    project->add_option("--input", input, "depth frame file or directory")->required();
    project->add_option("--out", out, "output directory")->required();
    add_cfg_option(project, bindings, "--resolution", "resolution", "view resolution (px)");
    add_cfg_option(project, bindings, "--adapter", "adapter", "canonical|msra_like");
    add_cfg_option(project, bindings, "--fx", "fx", "focal length x");
    add_cfg_option(project, bindings, "--fy", "fy", "focal length y");
    add_cfg_option(project, bindings, "--cx", "cx", "principal point x");
    add_cfg_option(project, bindings, "--cy", "cy", "principal point y");
    add_cfg_option(project, bindings, "--cam-width", "cam_width", "depth image width");
    add_cfg_option(project, bindings, "--cam-height", "cam_height", "depth image height");

    CLI::App* synth = app.add_subcommand("synth", "generate labeled synthetic scenes");
    synth->add_option("--out", out, "output directory")->required();
    add_cfg_option(synth, bindings, "--frames", "frames", "number of scenes");
    add_cfg_option(synth, bindings, "--seed", "seed", "base seed");
    add_cfg_option(synth, bindings, "--resolution", "resolution", "view resolution (px)");
    add_cfg_option(synth, bindings, "--heatmap-size", "heatmap_size", "heat-map resolution (px)");
    add_cfg_option(synth, bindings, "--sigma", "sigma", "blob std (heat-map px)");
    add_cfg_option(synth, bindings, "--density", "density", "cloud points per mm of bone");
    add_cfg_option(synth, bindings, "--radius", "radius", "bone radius (mm)");
    add_cfg_option(synth, bindings, "--noise-sigma", "noise_sigma", "heat-map noise std");
    add_cfg_option(synth, bindings, "--hotspot-prob", "hotspot_prob", "spurious blob chance");
    add_cfg_option(synth, bindings, "--hotspot-amplitude", "hotspot_amplitude",
                   "spurious blob amplitude");

    CLI::App* fit = app.add_subcommand("fit-prior", "PCA pose prior from a joints file");
    fit->add_option("--joints", joints_path, "joints text file")->required();
    fit->add_option("--out", out, "output .mvpp path")->required();
    add_cfg_option(fit, bindings, "--components", "components", "retained components");
    add_cfg_option(fit, bindings, "--prior-frame", "prior_frame", "camera|obb");

    CLI::App* fuse = app.add_subcommand("fuse", "fine fusion over a scene directory");
    fuse->add_option("--scenes", scenes, "scene directory (project/synth layout)")->required();
    fuse->add_option("--prior", prior_path, "pose prior .mvpp")->required();
    fuse->add_option("--out", out, "output directory")->required();
    add_cfg_option(fuse, bindings, "--grid-samples", "grid_samples", "grid samples per axis");
    add_cfg_option(fuse, bindings, "--prior-frame", "prior_frame",
                   "frame the prior file is expressed in (camera|obb)");

    CLI::App* baseline = app.add_subcommand("baseline", "single-view or coarse-average baseline");
    baseline->add_option("mode", baseline_mode, "single|coarse")
        ->required()
        ->check(CLI::IsMember({"single", "coarse"}));
    baseline->add_option("--scenes", scenes, "scene directory")->required();
    baseline->add_option("--out", out, "output directory")->required();

    CLI::App* eval = app.add_subcommand("eval", "score predictions against ground truth");
    eval->add_option("--pred", pred_path, "predicted joints text file")->required();
    eval->add_option("--gt", gt_path, "ground-truth joints text file")->required();
    eval->add_option("--method", method, "method name for the report");
    eval->add_option("--out", out, "output directory")->required();
    add_cfg_option(eval, bindings, "--tol-max", "tol_max", "largest tolerance (mm)");
    add_cfg_option(eval, bindings, "--tol-step", "tol_step", "tolerance step (mm)");

    CLI::App* report = app.add_subcommand("report", "side-by-side method comparison");
    report->add_option("--in", report_inputs, "report.json files (repeatable)")
        ->required()
        ->expected(-1);
    report->add_option("--out", out, "output directory")->required();

    for (CLI::App* sub : app.get_subcommands(nullptr)) {
        sub->add_option("--config", config_path,
                        "flat key=value config file; flags override it")
            ->expected(1);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return kExitConfigError;
    }

    try {
        const mvf::RunConfig config = resolve_config(config_path, bindings);
        if (project->parsed()) {
            return run_project(config, input, out);
        }
        if (synth->parsed()) {
            return run_synth(config, out);
        }
        if (fit->parsed()) {
            return run_fit_prior(config, joints_path, out);
        }
        if (fuse->parsed()) {
            return run_fuse(config, scenes, prior_path, out);
        }
        if (baseline->parsed()) {
            return run_baseline(config, baseline_mode, scenes, out);
        }
        if (eval->parsed()) {
            return run_eval(config, pred_path, gt_path, method, out);
        }
        if (report->parsed()) {
            return run_report(report_inputs, out);
        }
    } catch (const mvf::Error& e) {
        // what() already carries the code name prefix.
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.code() == mvf::ErrorCode::config_error ? kExitConfigError : kExitFrameErrors;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFrameErrors;
    }
    return kExitConfigError;
}
