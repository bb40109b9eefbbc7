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

#ifndef QDW_SAMPLER_H
#define QDW_SAMPLER_H

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qdw/witness.h"

namespace qdw {

/// Per-cell trial count T = n_jobs * shots * repetitions.
struct ExperimentPlan {
    int n_jobs = 1;
    std::int64_t shots = 1;
    int repetitions = 1;
    std::uint64_t seed = 0;

    std::int64_t total_count() const {
        return static_cast<std::int64_t>(n_jobs) * shots * repetitions;
    }
};

/// Throws std::domain_error unless all counts are positive.
void validate_plan(const ExperimentPlan &plan);

/// Readout counts of one circuit run: how many of `shots` returned outcome 1.
/// Probabilities p_kj refer to outcome 0, so the estimate is 1 - ones/shots.
struct CellCount {
    std::int64_t ones = 0;
    std::int64_t shots = 0;

    bool operator==(const CellCount &) const = default;
};

/// All 20 circuits of one repetition, row-major in (measurement k, preparation j).
using CircuitCounts = std::array<CellCount, kNumCircuits>;

inline constexpr int circuit_index(int k, int j) {
    return k * kNumPreparations + j;
}

struct JobRecord {
    std::string job_id;
    std::int64_t shots = 0;
    int repetitions = 0;
    /// One entry per repetition.
    std::vector<CircuitCounts> counts;

    bool operator==(const JobRecord &) const = default;
};

struct ExperimentRecord {
    std::string config_id;
    std::string device;
    /// Empty for simulated records.
    std::string timestamp;
    std::vector<JobRecord> jobs;

    bool operator==(const ExperimentRecord &) const = default;
};

/// Every job samples each cell binomially with its own stream derived from
/// (plan.seed, job index). `per_job_truth` must hold plan.n_jobs matrices.
ExperimentRecord simulate_record(std::span<const ProbMatrix> per_job_truth, const ExperimentPlan &plan,
                                 const std::string &config_id = "", const std::string &device = "simulator");

ExperimentRecord simulate_record(const ProbMatrix &true_p, const ExperimentPlan &plan,
                                 const std::string &config_id = "", const std::string &device = "simulator");

/// Cell totals over the job's repetitions as (count of outcome 0) / shots.
/// Throws std::domain_error when a cell has no shots.
ProbMatrix empirical_prob_matrix(const JobRecord &job);

/// Total shots per cell over a job's repetitions.
MeasurementRows cell_shot_totals(const JobRecord &job);

enum class EstimatorMethod { kPerJob, kPooled };

struct EstimatorOutput {
    EstimatorMethod method = EstimatorMethod::kPerJob;
    double W_mean = 0.0;
    /// Per-job: sample sd of per_job_W over sqrt(n). Pooled: sqrt of
    /// witness_variance at the pooled cell counts.
    double W_stderr = 0.0;
    bool stderr_defined = false;
    std::vector<double> per_job_W;
    /// Index into record.jobs of each entry of per_job_W.
    std::vector<int> job_indices;
    /// Smallest per-cell trial count entering the estimate.
    std::int64_t total_count = 0;
    ProbMatrix p_hat;
    std::vector<std::string> warnings;
};

/// Method (i): W per job, then averaged. Jobs with an empty cell are skipped
/// with a warning; throws std::domain_error when no job is usable.
EstimatorOutput estimate_per_job(const ExperimentRecord &record);

/// Method (ii): counts pooled cellwise over all usable jobs, then one W.
EstimatorOutput estimate_pooled(const ExperimentRecord &record);

/// Standard error of the per-job mean predicted from the variance formula applied
/// to each job at its own count: sqrt(sum_n var_n) / n.
double per_job_formula_sigma(const ExperimentRecord &record);

struct BiasStudyRow {
    ExperimentPlan plan;
    int replications = 0;
    double per_job_bias = 0.0;
    double per_job_bias_stderr = 0.0;
    double pooled_bias = 0.0;
    double pooled_bias_stderr = 0.0;
};

/// Mean of both estimators minus W(true_p) over `replications` simulated records
/// per plan. Replication r of a plan uses seed derive_seed(plan.seed, r).
/// Requires |W(true_p)| < 1e-10.
///
/// Cells are sampled independently and det is affine in every cell, so both
/// estimators are unbiased for W(true_p); the reported bias is Monte Carlo
/// scatter whose size falls as 1/sqrt(shots * replications * n_jobs).
std::vector<BiasStudyRow> estimator_bias_study(const ProbMatrix &true_p, std::span<const ExperimentPlan> plans,
                                               int replications = 1000);

}  // namespace qdw

#endif
