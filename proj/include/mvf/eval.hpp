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
#include <string>
#include <utility>
#include <vector>

#include "mvf/prior.hpp"

namespace mvf {

struct ErrorReport {
    std::string method;
    int frame_count = 0;
    std::vector<double> per_joint_mean;                      // mm, per joint
    double overall_mean = 0.0;                               // mm
    std::vector<std::pair<double, double>> worst_case_curve;  // tolerance mm -> fraction
    std::uint64_t config_hash = 0;
};

// 0, 2, 4, ..., 80 mm.
std::vector<double> default_tolerances();

// Euclidean error per joint averaged over frames, plus the grand mean.
// Sequences must have equal length, equal joint counts, and matching frame
// tags throughout.
std::pair<std::vector<double>, double> mean_joint_error(const std::vector<JointSet>& preds,
                                                        const std::vector<JointSet>& gts);

// Fraction of frames whose maximum per-joint error is within each
// tolerance. Tolerances must be sorted ascending.
std::vector<std::pair<double, double>> worst_case_accuracy(const std::vector<JointSet>& preds,
                                                           const std::vector<JointSet>& gts,
                                                           const std::vector<double>& tolerances);

ErrorReport evaluate(const std::string& method, const std::vector<JointSet>& preds,
                     const std::vector<JointSet>& gts, const std::vector<double>& tolerances,
                     std::uint64_t config_hash = 0);

// Side-by-side tables over reports computed on one frame set (equal counts
// and tolerance grids required). CSV columns: per-joint means per method,
// then the curves.
std::string compare_methods_csv(const std::vector<ErrorReport>& reports);
std::string compare_methods_json(const std::vector<ErrorReport>& reports);

// Serialization of a single report (CSV pair + JSON) lives here so the CLI
// and tests share one formatter.
std::string report_joints_csv(const ErrorReport& report);
std::string report_curve_csv(const ErrorReport& report);
std::string report_json(const ErrorReport& report);

}  // namespace mvf
