// Copyright 2026 The qdimwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QDW_REPORT_H
#define QDW_REPORT_H

#include <optional>
#include <string>
#include <vector>

#include "qdw/sampler.h"
#include "qdw/witness.h"

namespace qdw {

/// A test fails when a defined z-score reaches this many standard deviations.
inline constexpr double kFailZ = 5.0;

struct ScatterPoint {
    int job_index = 0;
    std::string job_id;
    double W = 0.0;
    /// Variance formula at this job's own counts.
    double sigma = 0.0;
};

struct AnalysisReport {
    std::string config_id;
    std::string device;
    /// Per-job W, then averaged.
    EstimatorOutput method_i;
    /// Counts pooled, then one W.
    EstimatorOutput method_ii;
    /// Variance formula at the pooled counts.
    double sigma_formula = 0.0;
    /// Variance formula per job, propagated to the mean of per-job W.
    double sigma_formula_per_job = 0.0;
    /// (method i mean over its sample standard error, method ii W over sigma_formula).
    std::pair<double, double> z_scores{0.0, 0.0};
    std::pair<bool, bool> z_defined{false, false};
    std::vector<ScatterPoint> per_job_scatter;
    /// Ideal qubit prediction when config_id names a built-in config.
    std::optional<ProbMatrix> ideal;
    std::vector<std::string> warnings;

    bool pass() const;
};

/// Throws std::domain_error when no job has counts in every circuit.
AnalysisReport analyze_record(const ExperimentRecord &record);

std::string format_report(const AnalysisReport &report);

/// Header "job_index,job_id,W,sigma_formula".
std::string scatter_csv(const AnalysisReport &report);

/// One row per estimator: "method,W,stderr,sigma_formula,z,n_jobs".
std::string summary_csv(const AnalysisReport &report);

/// Job index vs W with per-job error bars; red and blue lines at the two estimates.
std::string scatter_svg(const AnalysisReport &report);

}  // namespace qdw

#endif
