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

#include "qdw/sampler.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qdw/rng.h"

namespace qdw {

namespace {

std::int64_t sample_ones(Rng &rng, std::int64_t shots, double p_zero) {
    double q = 1.0 - p_zero;
    if (q <= 0.0) {
        return 0;
    }
    if (q >= 1.0) {
        return shots;
    }
    std::binomial_distribution<std::int64_t> dist(shots, q);
    return dist(rng);
}

bool job_is_complete(const JobRecord &job) {
    return (cell_shot_totals(job).array() > 0.0).all();
}

double mean_of(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double> &v, double mean) {
    double s = 0.0;
    for (double x : v) {
        s += (x - mean) * (x - mean);
    }
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

void validate_plan(const ExperimentPlan &plan) {
    if (plan.n_jobs < 1 || plan.shots < 1 || plan.repetitions < 1) {
        throw std::domain_error("ExperimentPlan: jobs, shots and repetitions must all be >= 1");
    }
}

ExperimentRecord simulate_record(std::span<const ProbMatrix> per_job_truth, const ExperimentPlan &plan,
                                 const std::string &config_id, const std::string &device) {
    validate_plan(plan);
    if (per_job_truth.size() != static_cast<std::size_t>(plan.n_jobs)) {
        throw std::domain_error("simulate_record: need one probability matrix per job");
    }
    ExperimentRecord record;
    record.config_id = config_id;
    record.device = device;
    record.jobs.resize(plan.n_jobs);
    for (int n = 0; n < plan.n_jobs; n++) {
        Rng rng(derive_seed(plan.seed, static_cast<std::uint64_t>(n)));
        const ProbMatrix &p = per_job_truth[n];
        JobRecord &job = record.jobs[n];
        job.job_id = "job-" + std::to_string(n);
        job.shots = plan.shots;
        job.repetitions = plan.repetitions;
        job.counts.resize(plan.repetitions);
        for (auto &rep : job.counts) {
            for (int k = 0; k < kNumMeasurements; k++) {
                for (int j = 0; j < kNumPreparations; j++) {
                    rep[circuit_index(k, j)] = {sample_ones(rng, plan.shots, p(k, j)), plan.shots};
                }
            }
        }
    }
    return record;
}

ExperimentRecord simulate_record(const ProbMatrix &true_p, const ExperimentPlan &plan, const std::string &config_id,
                                 const std::string &device) {
    validate_plan(plan);
    std::vector<ProbMatrix> jobs(plan.n_jobs, true_p);
    return simulate_record(jobs, plan, config_id, device);
}

MeasurementRows cell_shot_totals(const JobRecord &job) {
    MeasurementRows shots = MeasurementRows::Zero();
    for (const auto &rep : job.counts) {
        for (int k = 0; k < kNumMeasurements; k++) {
            for (int j = 0; j < kNumPreparations; j++) {
                shots(k, j) += static_cast<double>(rep[circuit_index(k, j)].shots);
            }
        }
    }
    return shots;
}

namespace {

MeasurementRows cell_zero_totals(const JobRecord &job) {
    MeasurementRows zeros = MeasurementRows::Zero();
    for (const auto &rep : job.counts) {
        for (int k = 0; k < kNumMeasurements; k++) {
            for (int j = 0; j < kNumPreparations; j++) {
                const CellCount &c = rep[circuit_index(k, j)];
                zeros(k, j) += static_cast<double>(c.shots - c.ones);
            }
        }
    }
    return zeros;
}

}  // namespace

ProbMatrix empirical_prob_matrix(const JobRecord &job) {
    MeasurementRows shots = cell_shot_totals(job);
    if (!(shots.array() > 0.0).all()) {
        throw std::domain_error("empirical_prob_matrix: job '" + job.job_id + "' has a cell with no shots");
    }
    return ProbMatrix::from_rows(cell_zero_totals(job).cwiseQuotient(shots));
}

EstimatorOutput estimate_per_job(const ExperimentRecord &record) {
    EstimatorOutput out;
    out.method = EstimatorMethod::kPerJob;
    std::int64_t min_count = 0;
    for (std::size_t n = 0; n < record.jobs.size(); n++) {
        const JobRecord &job = record.jobs[n];
        if (!job_is_complete(job)) {
            out.warnings.push_back("job '" + job.job_id + "' skipped: a circuit has zero shots");
            continue;
        }
        out.per_job_W.push_back(witness(empirical_prob_matrix(job)));
        out.job_indices.push_back(static_cast<int>(n));
        auto c = static_cast<std::int64_t>(cell_shot_totals(job).minCoeff());
        min_count += c;
    }
    if (out.per_job_W.empty()) {
        throw std::domain_error("estimate_per_job: no usable jobs");
    }
    out.total_count = min_count;
    out.W_mean = mean_of(out.per_job_W);
    if (out.per_job_W.size() >= 2) {
        out.W_stderr = sample_sd(out.per_job_W, out.W_mean) / std::sqrt(static_cast<double>(out.per_job_W.size()));
        out.stderr_defined = true;
    }
    return out;
}

EstimatorOutput estimate_pooled(const ExperimentRecord &record) {
    EstimatorOutput out;
    out.method = EstimatorMethod::kPooled;
    MeasurementRows shots = MeasurementRows::Zero();
    MeasurementRows zeros = MeasurementRows::Zero();
    for (std::size_t n = 0; n < record.jobs.size(); n++) {
        const JobRecord &job = record.jobs[n];
        if (!job_is_complete(job)) {
            out.warnings.push_back("job '" + job.job_id + "' skipped: a circuit has zero shots");
            continue;
        }
        shots += cell_shot_totals(job);
        zeros += cell_zero_totals(job);
        out.job_indices.push_back(static_cast<int>(n));
    }
    if (out.job_indices.empty()) {
        throw std::domain_error("estimate_pooled: no usable jobs");
    }
    out.p_hat = ProbMatrix::from_rows(zeros.cwiseQuotient(shots));
    out.W_mean = witness(out.p_hat);
    out.per_job_W = {out.W_mean};
    out.total_count = static_cast<std::int64_t>(shots.minCoeff());
    out.W_stderr = std::sqrt(witness_variance(out.p_hat, shots));
    out.stderr_defined = out.W_stderr > 0.0;
    return out;
}

double per_job_formula_sigma(const ExperimentRecord &record) {
    double var = 0.0;
    int n = 0;
    for (const auto &job : record.jobs) {
        if (!job_is_complete(job)) {
            continue;
        }
        var += witness_variance(empirical_prob_matrix(job), cell_shot_totals(job));
        n++;
    }
    if (n == 0) {
        throw std::domain_error("per_job_formula_sigma: no usable jobs");
    }
    return std::sqrt(var) / n;
}

std::vector<BiasStudyRow> estimator_bias_study(const ProbMatrix &true_p, std::span<const ExperimentPlan> plans,
                                               int replications) {
    if (replications < 2) {
        throw std::domain_error("estimator_bias_study: need at least 2 replications");
    }
    double w_true = witness(true_p);
    if (std::abs(w_true) >= 1e-10) {
        throw std::domain_error("estimator_bias_study: true matrix must have W = 0");
    }
    std::vector<BiasStudyRow> rows;
    for (const ExperimentPlan &plan : plans) {
        validate_plan(plan);
        std::vector<double> per_job(replications);
        std::vector<double> pooled(replications);
        for (int r = 0; r < replications; r++) {
            ExperimentPlan rep_plan = plan;
            rep_plan.seed = derive_seed(plan.seed, static_cast<std::uint64_t>(r));
            ExperimentRecord rec = simulate_record(true_p, rep_plan);
            per_job[r] = estimate_per_job(rec).W_mean - w_true;
            pooled[r] = estimate_pooled(rec).W_mean - w_true;
        }
        BiasStudyRow row;
        row.plan = plan;
        row.replications = replications;
        row.per_job_bias = mean_of(per_job);
        row.per_job_bias_stderr = sample_sd(per_job, row.per_job_bias) / std::sqrt(replications);
        row.pooled_bias = mean_of(pooled);
        row.pooled_bias_stderr = sample_sd(pooled, row.pooled_bias) / std::sqrt(replications);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qdw
