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

#include <gtest/gtest.h>

#include <random>

using namespace qdw;

namespace {

ProbMatrix random_prob(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    MeasurementRows rows;
    for (int k = 0; k < 4; k++) {
        for (int j = 0; j < 5; j++) {
            rows(k, j) = u(rng);
        }
    }
    return ProbMatrix::from_rows(rows);
}

}  // namespace

TEST(Leakage, ScalesWitness) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; t++) {
        ProbMatrix p = random_prob(rng);
        LeakageParams lp{u(rng), u(rng)};
        EXPECT_NEAR(witness(apply_common_leakage(p, lp)), std::pow(1 - lp.lambda_prep, 4) * witness(p), 1e-14);
    }
    EXPECT_THROW(apply_common_leakage(ProbMatrix(), {1.5, 0.0}), std::domain_error);
    EXPECT_THROW(apply_common_leakage(ProbMatrix(), {0.5, -0.1}), std::domain_error);
}

TEST(Leakage, FullLeakageRejected) {
    std::mt19937_64 rng(32);
    EXPECT_THROW(apply_common_leakage(random_prob(rng), {1.0, 0.3}), std::domain_error);
}

TEST(Readout, ScalesWitness) {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 100; t++) {
        ProbMatrix p = random_prob(rng);
        double e0 = 0.01 * (t % 7), e1 = 0.02 * (t % 5);
        EXPECT_NEAR(witness(apply_readout_error(p, e0, e1)), std::pow(1 - e0 - e1, 4) * witness(p), 1e-14);
    }
}

TEST(Drift, ModeNames) {
    EXPECT_EQ(parse_drift_mode("angle-jitter"), DriftMode::kAngleJitter);
    EXPECT_EQ(parse_drift_mode("column-mix"), DriftMode::kColumnMix);
    EXPECT_EQ(drift_mode_name(DriftMode::kColumnMix), "column-mix");
    EXPECT_THROW(parse_drift_mode("wobble"), std::invalid_argument);
}

TEST(Drift, EnsembleStaysNearReferenceWithZeroWitness) {
    ConfigSet cfg = builtin_config("II-2");
    ProbMatrix ref = predicted_prob_matrix(cfg);
    for (DriftMode mode : {DriftMode::kAngleJitter, DriftMode::kColumnMix}) {
        for (double eps : {0.005, 0.05}) {
            auto jobs = generate_drift_ensemble(cfg, {eps, 30, mode}, 7);
            ASSERT_EQ(jobs.size(), 30u);
            double max_dev = 0.0;
            for (const auto &p : jobs) {
                EXPECT_LT(std::abs(witness(p)), 1e-12);
                max_dev = std::max(max_dev, (p.matrix() - ref.matrix()).cwiseAbs().maxCoeff());
            }
            EXPECT_LE(max_dev, eps + 1e-12);
            EXPECT_GT(max_dev, eps / 10);
            if (mode == DriftMode::kColumnMix) {
                EXPECT_NEAR(max_dev, eps, 1e-9);
            }
            EXPECT_LE(std::abs(witness(pooled_mean(jobs))), drift_bound(eps));
        }
    }
}

TEST(Drift, EnsembleIsDeterministic) {
    ConfigSet cfg = builtin_config("I-prime");
    auto a = generate_drift_ensemble(cfg, {0.02, 5, DriftMode::kColumnMix}, 99);
    auto b = generate_drift_ensemble(cfg, {0.02, 5, DriftMode::kColumnMix}, 99);
    auto c = generate_drift_ensemble(cfg, {0.02, 5, DriftMode::kColumnMix}, 100);
    for (int n = 0; n < 5; n++) {
        EXPECT_EQ(a[n].matrix(), b[n].matrix());
    }
    EXPECT_NE(a[0].matrix(), c[0].matrix());
}

TEST(Drift, ZeroEpsilonIsReference) {
    ConfigSet cfg = builtin_config("II-1");
    for (const auto &p : generate_drift_ensemble(cfg, {0.0, 3, DriftMode::kColumnMix}, 1)) {
        EXPECT_EQ(p.matrix(), predicted_prob_matrix(cfg).matrix());
    }
}

TEST(Drift, Bound) {
    EXPECT_NEAR(drift_bound(0.01), 80 * std::sqrt(2.0) * 1e-4, 1e-16);
}

TEST(Drift, AuditSmall) {
    DriftAuditResult r = audit_drift(builtin_config("II-0"), 0.02, 10, 50, DriftMode::kColumnMix, 5);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.trials, 50);
    EXPECT_GT(r.max_pooled_W, 0.0);
    EXPECT_LT(r.bound_fraction(), 1.0);
}

TEST(CoherentLeak, UnitaryAndBlockStructure) {
    for (double g : {0.0, 1.0, 4.0}) {
        Eigen::Matrix3cd u = leaky_gate_unitary(GateAngle(g), 0.2);
        EXPECT_LT((u.adjoint() * u - Eigen::Matrix3cd::Identity()).norm(), 1e-14);
        Eigen::Matrix3cd u0 = leaky_gate_unitary(GateAngle(g), 0.0);
        EXPECT_LT((u0.topLeftCorner<2, 2>() - s_gate_unitary(GateAngle(g))).norm(), 1e-15);
        EXPECT_EQ(u0(2, 2), std::complex<double>(1.0));
    }
}

TEST(CoherentLeak, ZeroAngleIsQubitModel) {
    for (const auto &id : builtin_config_ids()) {
        ConfigSet cfg = builtin_config(id);
        EXPECT_LT((coherent_leak_prob_matrix(cfg, {0.0}).matrix() - predicted_prob_matrix(cfg).matrix()).norm(),
                  1e-14);
    }
}

// Values from an independent qutrit simulation (matrix exponentials of the
// drive Hamiltonian).
TEST(CoherentLeak, FrozenWitnessValues) {
    struct Case {
        int i;
        double a;
        double W;
    };
    for (Case c : {Case{0, 0.05, 0.00043454548993814766}, Case{0, 0.1, 0.001652194598270451},
                   Case{0, 0.3, 0.008569014468736856}, Case{2, 0.05, 0.0004345493133396206},
                   Case{2, 0.1, 0.001652425286827605}, Case{2, 0.3, 0.00865763647849425}}) {
        EXPECT_NEAR(witness(coherent_leak_prob_matrix(parametric_config(c.i), {c.a})), c.W, 1e-13)
            << c.i << " " << c.a;
    }
    ProbMatrix p = coherent_leak_prob_matrix(parametric_config(0), {0.1});
    EXPECT_NEAR(p(1, 4), 0.5045223918907474, 1e-13);
    EXPECT_NEAR(p(3, 2), 0.25283212782784537, 1e-13);
}

TEST(PerJobTruth, Composition) {
    ConfigSet cfg = builtin_config("II-0");
    NoiseSpec clean;
    auto t = per_job_truth(cfg, clean, 4, 0);
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t[3].matrix(), predicted_prob_matrix(cfg).matrix());

    NoiseSpec leaky;
    leaky.coherent = CoherentLeakParams{0.1};
    leaky.leakage = LeakageParams{0.5, 0.2};
    auto l = per_job_truth(cfg, leaky, 2, 0);
    EXPECT_NEAR(witness(l[0]), std::pow(0.5, 4) * 0.001652194598270451, 1e-13);

    NoiseSpec both = leaky;
    both.drift = DriftModel{0.01, 2, DriftMode::kAngleJitter};
    EXPECT_THROW(per_job_truth(cfg, both, 2, 0), std::domain_error);
}

TEST(Leakage, BuiltinsStayWitnessFree) {
    for (const auto &id : builtin_config_ids()) {
        ProbMatrix p = predicted_prob_matrix(builtin_config(id));
        EXPECT_EQ(apply_common_leakage(p, {0.0, 0.7}).matrix(), p.matrix());
        for (double l = 0.0; l <= 0.3; l += 0.05) {
            for (double m = 0.0; m <= 1.0; m += 0.25) {
                EXPECT_LT(std::abs(witness(apply_common_leakage(p, {l, m}))), 1e-10);
            }
        }
    }
}

TEST(Readout, Examples) {
    ProbMatrix p = predicted_prob_matrix(builtin_config("I-second"));
    EXPECT_EQ(apply_readout_error(p, 0.0, 0.0).matrix(), p.matrix());
    EXPECT_LT(std::abs(witness(apply_readout_error(p, 0.02, 0.05))), 1e-10);
    // A classical |W| = 3 pattern shrunk toward 1/2 until W = 0.1.
    MeasurementRows q;
    q << 0, 1, 1, 1, 0,  //
        1, 0, 0, 1, 0,   //
        1, 0, 1, 0, 0,   //
        1, 1, 0, 0, 0;
    if (witness(ProbMatrix::from_rows(q)) < 0) {
        q.row(0) = (1.0 - q.row(0).array()).matrix();
    }
    const double c = std::pow(0.1 / 3.0, 0.25);
    ProbMatrix w01 = ProbMatrix::from_rows((0.5 + c * (q.array() - 0.5)).matrix());
    ASSERT_NEAR(witness(w01), 0.1, 1e-14);
    EXPECT_NEAR(witness(apply_readout_error(w01, 0.1, 0.1)), 0.04096, 1e-14);
    EXPECT_THROW(apply_readout_error(p, 0.6, 0.5), std::domain_error);
}

TEST(Drift, BoundExamples) {
    EXPECT_EQ(drift_bound(0.0), 0.0);
    EXPECT_NEAR(drift_bound(0.01), 0.0113137084989848, 1e-15);
    EXPECT_NEAR(drift_bound(0.001), 1.13137084989848e-4, 1e-17);
    EXPECT_THROW(drift_bound(-0.1), std::domain_error);
}

// Regression values: column mixing reaches a larger share of the bound.
TEST(Drift, AuditFractionsFrozen) {
    ConfigSet cfg = builtin_config("II-0");
    DriftAuditResult jitter = audit_drift(cfg, 0.01, 20, 200, DriftMode::kAngleJitter, 3);
    DriftAuditResult mix = audit_drift(cfg, 0.01, 20, 200, DriftMode::kColumnMix, 3);
    EXPECT_NEAR(jitter.bound_fraction(), 9.0114459499947638e-05, 1e-6 * 9.0114459499947638e-05);
    EXPECT_NEAR(mix.bound_fraction(), 0.00066689759195122107, 1e-6 * 0.00066689759195122107);
    EXPECT_GT(mix.bound_fraction(), jitter.bound_fraction());
    DriftAuditResult zero = audit_drift(cfg, 0.0, 20, 5, DriftMode::kColumnMix, 3);
    EXPECT_LT(zero.max_pooled_W, 1e-10);
    EXPECT_TRUE(zero.pass());
}

TEST(CoherentLeak, DetectableOnEveryBuiltin) {
    for (const auto &id : builtin_config_ids()) {
        for (double a : {0.05, 0.1, 0.3}) {
            EXPECT_GT(std::abs(witness(coherent_leak_prob_matrix(builtin_config(id), {a}))), 1e-9) << id << " " << a;
        }
    }
    ConfigSet cfg = builtin_config("II-0");
    EXPECT_LT(std::abs(witness(coherent_leak_prob_matrix(cfg, {0.01}))),
              std::abs(witness(coherent_leak_prob_matrix(cfg, {0.1}))));
}
