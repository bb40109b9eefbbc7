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

#ifndef QDW_NOISE_H
#define QDW_NOISE_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qdw/configs.h"
#include "qdw/witness.h"

namespace qdw {

/// Index-independent leakage: every preparation moves weight lambda_prep to a
/// common external state, on which every effect responds with mu_meas.
struct LeakageParams {
    double lambda_prep = 0.0;
    double mu_meas = 0.0;
};

/// p'_kj = (1 - lambda) p_kj + lambda mu on rows 0..3. W' = (1 - lambda)^4 W.
/// Throws std::domain_error for parameters out of range.
ProbMatrix apply_common_leakage(const ProbMatrix &p, const LeakageParams &params);

/// Uniform assignment error: a 0 read as 1 with probability e0, a 1 read as 0
/// with probability e1. p'_kj = (1 - e1) p_kj + e0 (1 - p_kj), W' = (1 - e0 - e1)^4 W.
ProbMatrix apply_readout_error(const ProbMatrix &p, double e0, double e1);

enum class DriftMode {
    /// Every gate angle of every job is jittered; each job stays an exact qubit model.
    kAngleJitter,
    /// Each preparation and each effect of a job is convexly mixed toward a random
    /// pure target, with the weight pushed up until the entrywise deviation reaches
    /// epsilon. Mixing only the columns would leave the pooled witness at zero, so
    /// rows are mixed as well.
    kColumnMix,
};

std::string_view drift_mode_name(DriftMode mode);
/// Accepts "angle-jitter" and "column-mix"; throws std::invalid_argument otherwise.
DriftMode parse_drift_mode(std::string_view name);

struct DriftModel {
    double epsilon = 0.0;
    int n_jobs = 1;
    DriftMode mode = DriftMode::kAngleJitter;
};

/// Per-job probability matrices around predicted_prob_matrix(config). Each one has
/// W = 0 up to round-off and deviates from the reference by at most epsilon in
/// every entry. Deterministic in (config, model, seed); job n draws from
/// derive_seed(seed, n).
std::vector<ProbMatrix> generate_drift_ensemble(const ConfigSet &config, const DriftModel &model,
                                                std::uint64_t seed);

/// Cellwise mean of the matrices.
ProbMatrix pooled_mean(const std::vector<ProbMatrix> &matrices);

/// 80 sqrt(2) epsilon^2: the largest |W| the job-averaged matrix can reach when
/// every job is an exact qubit model within epsilon of a common reference.
double drift_bound(double epsilon);

struct CoherentLeakParams {
    double leak_angle = 0.0;
};

/// Qutrit embedding of S_gamma: L(gamma) (S_gamma (+) 1), where L(gamma) rotates
/// |1> into |2> by leak_angle with the drive phase gamma:
/// L = exp(-i a (e^{i gamma} |2><1| + e^{-i gamma} |1><2|)).
Eigen::Matrix3cd leaky_gate_unitary(GateAngle gamma, double leak_angle);

/// p_kj = |<0| U_theta U_phi U_beta U_alpha |0>|^2 with the qutrit gates above.
ProbMatrix coherent_leak_prob_matrix(const ConfigSet &config, const CoherentLeakParams &params);

/// The noise channels a simulated run combines. Per job: start from the drift
/// ensemble (or the predicted matrix, or the coherent-leak matrix), then apply
/// common leakage and readout error.
struct NoiseSpec {
    std::optional<LeakageParams> leakage;
    double readout_e0 = 0.0;
    double readout_e1 = 0.0;
    /// epsilon > 0 enables per-job drift; n_jobs is taken from the caller.
    std::optional<DriftModel> drift;
    std::optional<CoherentLeakParams> coherent;
};

/// Throws std::domain_error when drift and coherent leakage are both requested.
std::vector<ProbMatrix> per_job_truth(const ConfigSet &config, const NoiseSpec &noise, int n_jobs,
                                      std::uint64_t seed);

/// Round-off allowance when comparing a pooled witness with drift_bound.
inline constexpr double kWitnessZeroTolerance = 1e-10;

struct DriftAuditResult {
    DriftMode mode = DriftMode::kAngleJitter;
    double epsilon = 0.0;
    int trials = 0;
    double bound = 0.0;
    double max_pooled_W = 0.0;
    double mean_pooled_W = 0.0;
    /// Largest |W| of any single job matrix.
    double max_job_W = 0.0;
    int violations = 0;

    double bound_fraction() const {
        return bound > 0.0 ? max_pooled_W / bound : 0.0;
    }
    bool pass() const {
        return violations == 0;
    }
};

/// `trials` independent ensembles (trial t uses derive_seed(seed, t)); counts the
/// ensembles whose pooled |W| exceeds drift_bound(epsilon) + kWitnessZeroTolerance.
DriftAuditResult audit_drift(const ConfigSet &config, double epsilon, int n_jobs, int trials, DriftMode mode,
                             std::uint64_t seed);

}  // namespace qdw


#endif
