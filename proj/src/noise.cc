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

#include "qdw/noise.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "qdw/rng.h"

namespace qdw {

namespace {

double clamp_probability(double v, const char *what) {
    if (v < 0.0 && v >= -kBlochTolerance) {
        return 0.0;
    }
    if (v > 1.0 && v <= 1.0 + kBlochTolerance) {
        return 1.0;
    }
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error(std::string(what) + ": result outside [0, 1]");
    }
    return v;
}

double max_deviation(const ProbMatrix &a, const ProbMatrix &b) {
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

ProbMatrix matrix_from_vectors(const std::array<Eigen::Vector3d, kNumPreparations> &n,
                               const std::array<Eigen::Vector3d, kNumMeasurements> &m) {
    MeasurementRows rows;
    for (int k = 0; k < kNumMeasurements; k++) {
        for (int j = 0; j < kNumPreparations; j++) {
            rows(k, j) = prob(Effect::projective(m[k]), BlochVector(n[j]));
        }
    }
    return ProbMatrix::from_rows(rows);
}

// Effects keep m0 = 1 under mixing, so only the Bloch parts are needed.
ProbMatrix mixed_matrix(const std::array<Eigen::Vector3d, kNumPreparations> &n0,
                        const std::array<Eigen::Vector3d, kNumPreparations> &n1,
                        const std::array<Eigen::Vector3d, kNumMeasurements> &m0,
                        const std::array<Eigen::Vector3d, kNumMeasurements> &m1, double t) {
    MeasurementRows rows;
    for (int k = 0; k < kNumMeasurements; k++) {
        Effect e(1.0, (1 - t) * m0[k] + t * m1[k]);
        for (int j = 0; j < kNumPreparations; j++) {
            rows(k, j) = prob(e, BlochVector((1 - t) * n0[j] + t * n1[j]));
        }
    }
    return ProbMatrix::from_rows(rows);
}

Eigen::Vector3d random_unit(Rng &rng) {
    std::normal_distribution<double> g;
    Eigen::Vector3d v;
    do {
        v = Eigen::Vector3d(g(rng), g(rng), g(rng));
    } while (v.norm() < 1e-6);
    return v.normalized();
}

ProbMatrix angle_jitter_job(const ConfigSet &config, const ProbMatrix &reference, double epsilon, Rng &rng) {
    // |dp| <= (|dn| + |dm|)/2 and each angle moves a Bloch vector by at most 2 per radian.
    double scale = epsilon / 4;
    for (int attempt = 0; attempt < 64; attempt++) {
        std::uniform_real_distribution<double> u(-scale, scale);
        std::array<Eigen::Vector3d, kNumPreparations> n;
        std::array<Eigen::Vector3d, kNumMeasurements> m;
        for (int j = 0; j < kNumPreparations; j++) {
            const auto &a = config.preparations()[j];
            double da = u(rng);
            double db = u(rng);
            n[j] = prep_bloch(GateAngle(a.alpha.radians() + da), GateAngle(a.beta.radians() + db)).vec();
        }
        for (int k = 0; k < kNumMeasurements; k++) {
            const auto &a = config.measurements()[k];
            double dt = u(rng);
            double df = u(rng);
            m[k] = meas_bloch(GateAngle(a.theta.radians() + dt), GateAngle(a.phi.radians() + df)).vec();
        }
        ProbMatrix p = matrix_from_vectors(n, m);
        if (max_deviation(p, reference) <= epsilon) {
            return p;
        }
        scale /= 2;
    }
    return reference;
}

ProbMatrix column_mix_job(const ConfigSet &config, const ProbMatrix &reference, double epsilon, Rng &rng) {
    auto v = config_bloch_vectors(config);
    std::array<Eigen::Vector3d, kNumPreparations> n0, n1;
    std::array<Eigen::Vector3d, kNumMeasurements> m0, m1;
    for (int j = 0; j < kNumPreparations; j++) {
        n0[j] = v.preparations[j].vec();
        n1[j] = random_unit(rng);
    }
    for (int k = 0; k < kNumMeasurements; k++) {
        m0[k] = v.measurements[k].vec();
        m1[k] = random_unit(rng);
    }
    ProbMatrix full = mixed_matrix(n0, n1, m0, m1, 1.0);
    if (max_deviation(full, reference) <= epsilon) {
        return full;
    }
    // Largest weight found by bisection; `lo` always satisfies the bound.
    double lo = 0.0;
    double hi = 1.0;
    ProbMatrix best = reference;
    for (int it = 0; it < 52; it++) {
        double mid = 0.5 * (lo + hi);
        ProbMatrix p = mixed_matrix(n0, n1, m0, m1, mid);
        if (max_deviation(p, reference) <= epsilon) {
            lo = mid;
            best = p;
        } else {
            hi = mid;
        }
    }
    return best;
}

}  // namespace

ProbMatrix apply_common_leakage(const ProbMatrix &p, const LeakageParams &params) {
    double lambda = params.lambda_prep;
    double mu = params.mu_meas;
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw std::domain_error("apply_common_leakage: lambda must lie in [0, 1)");
    }
    if (!(mu >= 0.0 && mu <= 1.0)) {
        throw std::domain_error("apply_common_leakage: mu must lie in [0, 1]");
    }
    MeasurementRows rows = p.rows();
    for (int k = 0; k < kNumMeasurements; k++) {
        for (int j = 0; j < kNumPreparations; j++) {
            rows(k, j) = clamp_probability((1.0 - lambda) * rows(k, j) + lambda * mu, "apply_common_leakage");
        }
    }
    return ProbMatrix::from_rows(rows);
}

ProbMatrix apply_readout_error(const ProbMatrix &p, double e0, double e1) {
    if (!(e0 >= 0.0 && e0 < 1.0) || !(e1 >= 0.0 && e1 < 1.0)) {
        throw std::domain_error("apply_readout_error: e0 and e1 must lie in [0, 1)");
    }
    if (!(e0 + e1 < 1.0)) {
        throw std::domain_error("apply_readout_error: requires e0 + e1 < 1");
    }
    MeasurementRows rows = p.rows();
    for (int k = 0; k < kNumMeasurements; k++) {
        for (int j = 0; j < kNumPreparations; j++) {
            double v = rows(k, j);
            rows(k, j) = clamp_probability((1.0 - e1) * v + e0 * (1.0 - v), "apply_readout_error");
        }
    }
    return ProbMatrix::from_rows(rows);
}

std::string_view drift_mode_name(DriftMode mode) {
    return mode == DriftMode::kAngleJitter ? "angle-jitter" : "column-mix";
}

DriftMode parse_drift_mode(std::string_view name) {
    if (name == "angle-jitter") {
        return DriftMode::kAngleJitter;
    }
    if (name == "column-mix") {
        return DriftMode::kColumnMix;
    }
    throw std::invalid_argument("unknown drift mode '" + std::string(name) + "' (angle-jitter, column-mix)");
}

std::vector<ProbMatrix> generate_drift_ensemble(const ConfigSet &config, const DriftModel &model,
                                                std::uint64_t seed) {
    if (!(model.epsilon >= 0.0) || !std::isfinite(model.epsilon)) {
        throw std::domain_error("generate_drift_ensemble: epsilon must be finite and >= 0");
    }
    if (model.n_jobs < 1) {
        throw std::domain_error("generate_drift_ensemble: n_jobs must be >= 1");
    }
    ProbMatrix reference = predicted_prob_matrix(config);
    std::vector<ProbMatrix> out;
    out.reserve(model.n_jobs);
    for (int n = 0; n < model.n_jobs; n++) {
        if (model.epsilon == 0.0) {
            out.push_back(reference);
            continue;
        }
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
        if (model.mode == DriftMode::kAngleJitter) {
            out.push_back(angle_jitter_job(config, reference, model.epsilon, rng));
        } else {
            out.push_back(column_mix_job(config, reference, model.epsilon, rng));
        }
    }
    return out;
}

ProbMatrix pooled_mean(const std::vector<ProbMatrix> &matrices) {
    if (matrices.empty()) {
        throw std::domain_error("pooled_mean: no matrices");
    }
    MeasurementRows sum = MeasurementRows::Zero();
    for (const auto &p : matrices) {
        sum += p.rows();
    }
    sum /= static_cast<double>(matrices.size());
    for (int k = 0; k < kNumMeasurements; k++) {
        for (int j = 0; j < kNumPreparations; j++) {
            sum(k, j) = clamp_probability(sum(k, j), "pooled_mean");
        }
    }
    return ProbMatrix::from_rows(sum);
}

double drift_bound(double epsilon) {
    if (!(epsilon >= 0.0)) {
        throw std::domain_error("drift_bound: epsilon must be >= 0");
    }
    return 80.0 * std::sqrt(2.0) * epsilon * epsilon;
}

Eigen::Matrix3cd leaky_gate_unitary(GateAngle gamma, double leak_angle) {
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    Eigen::Matrix3cd embed = Eigen::Matrix3cd::Identity();
    embed.topLeftCorner<2, 2>() = s_gate_unitary(gamma);
    double g = gamma.radians();
    double c = std::cos(leak_angle);
    double s = std::sin(leak_angle);
    Eigen::Matrix3cd leak = Eigen::Matrix3cd::Identity();
    leak(1, 1) = c;
    leak(2, 2) = c;
    leak(1, 2) = -i * std::exp(-i * g) * s;
    leak(2, 1) = -i * std::exp(i * g) * s;
    return leak * embed;
}

ProbMatrix coherent_leak_prob_matrix(const ConfigSet &config, const CoherentLeakParams &params) {
    if (!std::isfinite(params.leak_angle)) {
        throw std::domain_error("coherent_leak_prob_matrix: leak angle must be finite");
    }
    const double a = params.leak_angle;
    std::array<Eigen::Vector3cd, kNumPreparations> psi;
    for (int j = 0; j < kNumPreparations; j++) {
        const auto &p = config.preparations()[j];
        psi[j] = leaky_gate_unitary(p.beta, a) * leaky_gate_unitary(p.alpha, a) * Eigen::Vector3cd::UnitX();
    }
    MeasurementRows rows;
    for (int k = 0; k < kNumMeasurements; k++) {
        const auto &m = config.measurements()[k];
        // <0| U_theta U_phi, as a row vector.
        Eigen::RowVector3cd bra =
            Eigen::RowVector3cd::UnitX() * leaky_gate_unitary(m.theta, a) * leaky_gate_unitary(m.phi, a);
        for (int j = 0; j < kNumPreparations; j++) {
            rows(k, j) = clamp_probability(std::norm((bra * psi[j]).value()), "coherent_leak_prob_matrix");
        }
    }
    return ProbMatrix::from_rows(rows);
}

std::vector<ProbMatrix> per_job_truth(const ConfigSet &config, const NoiseSpec &noise, int n_jobs,
                                      std::uint64_t seed) {
    if (n_jobs < 1) {
        throw std::domain_error("per_job_truth: n_jobs must be >= 1");
    }
    bool drifting = noise.drift.has_value() && noise.drift->epsilon > 0.0;
    if (drifting && noise.coherent.has_value()) {
        throw std::domain_error("per_job_truth: drift and coherent leakage cannot be combined");
    }
    std::vector<ProbMatrix> jobs;
    if (drifting) {
        DriftModel model = *noise.drift;
        model.n_jobs = n_jobs;
        jobs = generate_drift_ensemble(config, model, seed);
    } else {
        ProbMatrix base = noise.coherent ? coherent_leak_prob_matrix(config, *noise.coherent)
                                         : predicted_prob_matrix(config);
        jobs.assign(n_jobs, base);
    }
    for (auto &p : jobs) {
        if (noise.leakage) {
            p = apply_common_leakage(p, *noise.leakage);
        }
        if (noise.readout_e0 != 0.0 || noise.readout_e1 != 0.0) {
            p = apply_readout_error(p, noise.readout_e0, noise.readout_e1);
        }
    }
    return jobs;
}

DriftAuditResult audit_drift(const ConfigSet &config, double epsilon, int n_jobs, int trials, DriftMode mode,
                             std::uint64_t seed) {
    if (trials < 1) {
        throw std::domain_error("audit_drift: trials must be >= 1");
    }
    DriftAuditResult r;
    r.mode = mode;
    r.epsilon = epsilon;
    r.trials = trials;
    r.bound = drift_bound(epsilon);
    DriftModel model{epsilon, n_jobs, mode};
    double sum = 0.0;
    for (int t = 0; t < trials; t++) {
        auto jobs = generate_drift_ensemble(config, model, derive_seed(seed, static_cast<std::uint64_t>(t)));
        for (const auto &p : jobs) {
            r.max_job_W = std::max(r.max_job_W, std::abs(witness(p)));
        }
        double w = std::abs(witness(pooled_mean(jobs)));
        sum += w;
        r.max_pooled_W = std::max(r.max_pooled_W, w);
        if (w > r.bound + kWitnessZeroTolerance) {
            r.violations++;
        }
    }
    r.mean_pooled_W = sum / trials;
    return r;
}

}  // namespace qdw
