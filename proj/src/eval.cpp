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

#include "mvf/eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace mvf {

namespace {

void check_pairs(const std::vector<JointSet>& preds, const std::vector<JointSet>& gts) {
    if (preds.size() != gts.size()) {
        throw Error(ErrorCode::length_mismatch, "prediction and ground-truth counts differ");
    }
    if (preds.empty()) {
        throw Error(ErrorCode::length_mismatch, "no frames to evaluate");
    }
    const Eigen::Index dim = preds.front().positions.size();
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i].positions.size() != dim || gts[i].positions.size() != dim) {
            throw Error(ErrorCode::length_mismatch, "joint counts differ across frames");
        }
        if (preds[i].frame != gts[i].frame) {
            throw Error(ErrorCode::frame_tag_mismatch,
                        "prediction and ground truth are in different frames");
        }
    }
}

std::string hash_hex(std::uint64_t value) {
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << value;
    return out.str();
}

void check_comparable(const std::vector<ErrorReport>& reports) {
    if (reports.empty()) {
        throw Error(ErrorCode::frame_set_mismatch, "no reports to compare");
    }
    const ErrorReport& first = reports.front();
    for (const ErrorReport& r : reports) {
        if (r.frame_count != first.frame_count) {
            throw Error(ErrorCode::frame_set_mismatch, "reports cover different frame counts");
        }
        if (r.per_joint_mean.size() != first.per_joint_mean.size()) {
            throw Error(ErrorCode::frame_set_mismatch, "reports cover different joint counts");
        }
        if (r.worst_case_curve.size() != first.worst_case_curve.size()) {
            throw Error(ErrorCode::frame_set_mismatch, "reports use different tolerance grids");
        }
        for (std::size_t i = 0; i < r.worst_case_curve.size(); ++i) {
            if (r.worst_case_curve[i].first != first.worst_case_curve[i].first) {
                throw Error(ErrorCode::frame_set_mismatch,
                            "reports use different tolerance grids");
            }
        }
    }
}

}  // namespace

std::vector<double> default_tolerances() {
    std::vector<double> grid;
    for (int t = 0; t <= 80; t += 2) {
        grid.push_back(static_cast<double>(t));
    }
    return grid;
}

std::pair<std::vector<double>, double> mean_joint_error(const std::vector<JointSet>& preds,
                                                        const std::vector<JointSet>& gts) {
    check_pairs(preds, gts);
    const int joints = preds.front().joints();
    std::vector<double> per_joint(static_cast<std::size_t>(joints), 0.0);
    for (std::size_t f = 0; f < preds.size(); ++f) {
        for (int k = 0; k < joints; ++k) {
            per_joint[static_cast<std::size_t>(k)] +=
                (preds[f].joint(k) - gts[f].joint(k)).norm();
        }
    }
    double overall = 0.0;
    for (double& v : per_joint) {
        v /= static_cast<double>(preds.size());
        overall += v;
    }
    overall /= static_cast<double>(joints);
    return {std::move(per_joint), overall};
}

std::vector<std::pair<double, double>> worst_case_accuracy(
    const std::vector<JointSet>& preds, const std::vector<JointSet>& gts,
    const std::vector<double>& tolerances) {
    check_pairs(preds, gts);
    if (!std::is_sorted(tolerances.begin(), tolerances.end())) {
        throw Error(ErrorCode::out_of_range, "tolerances must be sorted ascending");
    }
    std::vector<double> worst(preds.size(), 0.0);
    for (std::size_t f = 0; f < preds.size(); ++f) {
        for (int k = 0; k < preds[f].joints(); ++k) {
            worst[f] = std::max(worst[f], (preds[f].joint(k) - gts[f].joint(k)).norm());
        }
    }
    std::vector<std::pair<double, double>> curve;
    curve.reserve(tolerances.size());
    for (double tol : tolerances) {
        std::size_t good = 0;
        for (double w : worst) {
            if (w <= tol) {
                ++good;
            }
        }
        curve.emplace_back(tol, static_cast<double>(good) / static_cast<double>(preds.size()));
    }
    return curve;
}

ErrorReport evaluate(const std::string& method, const std::vector<JointSet>& preds,
                     const std::vector<JointSet>& gts, const std::vector<double>& tolerances,
                     std::uint64_t config_hash) {
    ErrorReport report;
    report.method = method;
    report.frame_count = static_cast<int>(preds.size());
    auto [per_joint, overall] = mean_joint_error(preds, gts);
    report.per_joint_mean = std::move(per_joint);
    report.overall_mean = overall;
    report.worst_case_curve = worst_case_accuracy(preds, gts, tolerances);
    report.config_hash = config_hash;
    return report;
}

std::string compare_methods_csv(const std::vector<ErrorReport>& reports) {
    check_comparable(reports);
    std::ostringstream out;
    out.precision(17);
    out << "record,key";
    for (const ErrorReport& r : reports) {
        out << "," << r.method;
    }
    out << "\n";
    out << "overall,";
    for (const ErrorReport& r : reports) {
        out << "," << r.overall_mean;
    }
    out << "\n";
    for (std::size_t k = 0; k < reports.front().per_joint_mean.size(); ++k) {
        out << "joint," << k;
        for (const ErrorReport& r : reports) {
            out << "," << r.per_joint_mean[k];
        }
        out << "\n";
    }
    for (std::size_t i = 0; i < reports.front().worst_case_curve.size(); ++i) {
        out << "curve," << reports.front().worst_case_curve[i].first;
        for (const ErrorReport& r : reports) {
            out << "," << r.worst_case_curve[i].second;
        }
        out << "\n";
    }
    return out.str();
}

std::string compare_methods_json(const std::vector<ErrorReport>& reports) {
    check_comparable(reports);
    nlohmann::json doc;
    doc["frame_count"] = reports.front().frame_count;
    doc["methods"] = nlohmann::json::array();
    for (const ErrorReport& r : reports) {
        nlohmann::json entry;
        entry["method"] = r.method;
        entry["overall_mean_mm"] = r.overall_mean;
        entry["delta_vs_first_mm"] = r.overall_mean - reports.front().overall_mean;
        entry["per_joint_mean_mm"] = r.per_joint_mean;
        nlohmann::json curve = nlohmann::json::array();
        for (const auto& [tol, frac] : r.worst_case_curve) {
            curve.push_back({{"tolerance_mm", tol}, {"fraction", frac}});
        }
        entry["worst_case_curve"] = curve;
        entry["config_hash"] = hash_hex(r.config_hash);
        doc["methods"].push_back(entry);
    }
    std::vector<std::size_t> order(reports.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return reports[a].overall_mean < reports[b].overall_mean;
    });
    doc["ranking_by_overall_mean"] = nlohmann::json::array();
    for (std::size_t i : order) {
        doc["ranking_by_overall_mean"].push_back(reports[i].method);
    }
    return doc.dump(2) + "\n";
}

std::string report_joints_csv(const ErrorReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "joint_index,mean_error_mm\n";
    for (std::size_t k = 0; k < report.per_joint_mean.size(); ++k) {
        out << k << "," << report.per_joint_mean[k] << "\n";
    }
    return out.str();
}

std::string report_curve_csv(const ErrorReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "tolerance_mm,fraction\n";
    for (const auto& [tol, frac] : report.worst_case_curve) {
        out << tol << "," << frac << "\n";
    }
    return out.str();
}

std::string report_json(const ErrorReport& report) {
    nlohmann::json doc;
    doc["method"] = report.method;
    doc["frame_count"] = report.frame_count;
    doc["config_hash"] = hash_hex(report.config_hash);
    doc["overall_mean_mm"] = report.overall_mean;
    doc["per_joint_mean_mm"] = report.per_joint_mean;
    nlohmann::json curve = nlohmann::json::array();
    for (const auto& [tol, frac] : report.worst_case_curve) {
        curve.push_back({{"tolerance_mm", tol}, {"fraction", frac}});
    }
    doc["worst_case_curve"] = curve;
    return doc.dump(2) + "\n";
}

}  // namespace mvf
