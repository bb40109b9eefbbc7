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

#include "qdw/witness.h"

#include "qdw/bloch.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <random>

using namespace qdw;
using boost::multiprecision::cpp_rational;

namespace {

// Exact Leibniz expansion over rationals.
template <int N>
cpp_rational leibniz(const std::array<std::array<cpp_rational, N>, N> &a) {
    std::array<int, N> perm;
    std::iota(perm.begin(), perm.end(), 0);
    cpp_rational total = 0;
    do {
        int inversions = 0;
        for (int i = 0; i < N; i++) {
            for (int j = i + 1; j < N; j++) {
                inversions += perm[i] > perm[j];
            }
        }
        cpp_rational term = inversions % 2 ? -1 : 1;
        for (int i = 0; i < N; i++) {
            term *= a[i][perm[i]];
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

struct RationalCase {
    std::array<std::array<cpp_rational, 5>, 5> exact;
    Matrix5 approx;
};

RationalCase random_rational_matrix(std::mt19937_64 &rng, bool probability_rows) {
    std::uniform_int_distribution<int> num(0, 64);
    std::uniform_int_distribution<int> signed_num(-64, 64);
    RationalCase c;
    for (int i = 0; i < 5; i++) {
        for (int j = 0; j < 5; j++) {
            int n = probability_rows ? (i == 4 ? 64 : num(rng)) : signed_num(rng);
            c.exact[i][j] = cpp_rational(n, 64);
            c.approx(i, j) = n / 64.0;
        }
    }
    return c;
}

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

TEST(Determinant, MatchesExactLeibniz) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; t++) {
        RationalCase c = random_rational_matrix(rng, t % 2 == 0);
        double exact = static_cast<double>(leibniz<5>(c.exact));
        EXPECT_NEAR(determinant(c.approx), exact, 1e-13 * std::max(1.0, std::abs(exact)));
    }
}

TEST(Determinant, SingularMatrixGivesZero) {
    Matrix5 m = Matrix5::Ones();
    EXPECT_EQ(determinant(m), 0.0);
}

TEST(Adjugate, MatchesExactCofactors) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 20; t++) {
        RationalCase c = random_rational_matrix(rng, true);
        Matrix5 adj = adjugate(c.approx);
        for (int r = 0; r < 5; r++) {
            for (int s = 0; s < 5; s++) {
                std::array<std::array<cpp_rational, 4>, 4> minor;
                for (int i = 0, mi = 0; i < 5; i++) {
                    if (i == r) continue;
                    for (int j = 0, mj = 0; j < 5; j++) {
                        if (j == s) continue;
                        minor[mi][mj++] = c.exact[i][j];
                    }
                    mi++;
                }
                double cof = static_cast<double>(leibniz<4>(minor)) * ((r + s) % 2 ? -1 : 1);
                EXPECT_NEAR(adj(s, r), cof, 1e-13);
            }
        }
    }
}

TEST(Adjugate, ProductIsDeterminantTimesIdentity) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; t++) {
        ProbMatrix p = random_prob(rng);
        Matrix5 prod = p.matrix() * adjugate(p);
        EXPECT_LT((prod - witness(p) * Matrix5::Identity()).norm(), 1e-13);
    }
}

TEST(ProbMatrix, Validation) {
    Matrix5 m = Matrix5::Constant(0.5);
    EXPECT_THROW(ProbMatrix{m}, std::domain_error);
    m.row(4).setOnes();
    EXPECT_NO_THROW(ProbMatrix{m});
    m(2, 3) = 1.01;
    EXPECT_THROW(ProbMatrix{m}, std::domain_error);
    m(2, 3) = -0.01;
    EXPECT_THROW(ProbMatrix{m}, std::domain_error);
    EXPECT_EQ(ProbMatrix().matrix().row(4), Matrix5::Ones().row(4));
}

TEST(Witness, OutcomeRelabelingFlipsSign) {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 100; t++) {
        ProbMatrix p = random_prob(rng);
        MeasurementRows flipped = p.rows();
        int k = t % 4;
        flipped.row(k) = (1.0 - flipped.row(k).array()).matrix();
        EXPECT_NEAR(witness(ProbMatrix::from_rows(flipped)), -witness(p), 1e-14);
        EXPECT_NEAR(witness_variance(ProbMatrix::from_rows(flipped), 7), witness_variance(p, 7), 1e-15);
    }
}

TEST(Witness, VarianceMatchesFiniteDifferenceGradient) {
    std::mt19937_64 rng(15);
    ProbMatrix p = random_prob(rng);
    const double h = 1e-6;
    double expected = 0.0;
    for (int k = 0; k < 4; k++) {
        for (int j = 0; j < 5; j++) {
            Matrix5 up = p.matrix(), down = p.matrix();
            up(k, j) += h;
            down(k, j) -= h;
            double g = (determinant(up) - determinant(down)) / (2 * h);
            expected += p(k, j) * (1 - p(k, j)) * g * g;
        }
    }
    EXPECT_NEAR(witness_variance(p, 1000), expected / 1000, 1e-9 * expected);
    MeasurementRows counts = MeasurementRows::Constant(1000.0);
    EXPECT_NEAR(witness_variance(p, counts), witness_variance(p, 1000), 1e-18);
    EXPECT_THROW(witness_variance(p, 0), std::domain_error);
}

TEST(Witness, ZScore) {
    std::mt19937_64 rng(16);
    ProbMatrix p = random_prob(rng);
    WitnessResult r = z_score(p, 400);
    EXPECT_TRUE(r.z_defined);
    EXPECT_NEAR(r.sigma, std::sqrt(witness_variance(p, 400)), 1e-15);
    EXPECT_NEAR(r.z, r.W / r.sigma, 1e-12);
    WitnessResult zero = make_witness_result(0.1, 0.0, 10);
    EXPECT_FALSE(zero.z_defined);
}

TEST(Witness, ClassicalOptimumIsThree) {
    MeasurementRows rows;
    rows << 0, 1, 1, 1, 0,  //
        1, 0, 0, 1, 0,      //
        1, 0, 1, 0, 0,      //
        1, 1, 0, 0, 0;
    EXPECT_NEAR(std::abs(witness(ProbMatrix::from_rows(rows))), 3.0, 1e-14);
    EXPECT_EQ(witness_variance(ProbMatrix::from_rows(rows), 100), 0.0);
    EXPECT_FALSE(z_score(ProbMatrix::from_rows(rows), 100).z_defined);
}

TEST(Witness, SingleCellPerturbation) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    for (int t = 0; t < 20; t++) {
        MeasurementRows rows;
        // A rank-deficient qubit-like matrix: probabilities (1 + m.n)/2.
        std::array<Eigen::Vector3d, 5> n;
        for (auto &x : n) x = Eigen::Vector3d(std::cos(u(rng)), std::sin(u(rng)), std::cos(u(rng))).normalized();
        for (int k = 0; k < 4; k++) {
            Eigen::Vector3d m = Eigen::Vector3d(std::sin(u(rng)), std::cos(u(rng)), std::sin(u(rng))).normalized();
            for (int j = 0; j < 5; j++) rows(k, j) = (1 + m.dot(n[j])) / 2;
        }
        ProbMatrix p = ProbMatrix::from_rows(rows);
        ASSERT_LT(std::abs(witness(p)), 1e-14);
        int k = t % 4, j = t % 5;
        double delta = rows(k, j) > 0.5 ? -1e-3 : 1e-3;
        rows(k, j) += delta;
        EXPECT_NEAR(witness(ProbMatrix::from_rows(rows)), delta * adjugate(p)(j, k), 1e-10);
    }
}

TEST(Witness, MultilinearInRows) {
    std::mt19937_64 rng(18);
    for (int t = 0; t < 50; t++) {
        ProbMatrix p = random_prob(rng);
        MeasurementRows dr = random_prob(rng).rows() * 0.1;
        int k = t % 4;
        Matrix5 moved = p.matrix(), replaced = p.matrix();
        moved.row(k) += dr.row(k);
        replaced.row(k) = dr.row(k);
        EXPECT_NEAR(determinant(moved) - witness(p), determinant(replaced), 1e-12);
    }
}

TEST(Witness, AffineRowMapScalesByFourthPower) {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 100; t++) {
        ProbMatrix p = random_prob(rng);
        double c1 = 0.3 + 0.05 * (t % 10), c0 = 0.1;
        MeasurementRows rows = (c1 * p.rows().array() + c0).matrix();
        EXPECT_NEAR(witness(ProbMatrix::from_rows(rows)), std::pow(c1, 4) * witness(p), 1e-12);
    }
}

TEST(Adjugate, IdentityAndRankDeficient) {
    EXPECT_LT((adjugate(Matrix5(Matrix5::Identity())) - Matrix5::Identity()).norm(), 1e-15);
    Matrix5 m = Matrix5::Identity();
    m(4, 4) = 0.0;
    Matrix5 adj = adjugate(m);
    EXPECT_GT(adj.norm(), 0.5);
    EXPECT_LT((m * adj).norm(), 1e-15);
}

TEST(Adjugate, RandomIdentity) {
    std::mt19937_64 rng(20);
    for (int t = 0; t < 1000; t++) {
        ProbMatrix p = random_prob(rng);
        ASSERT_LT((p.matrix() * adjugate(p) - witness(p) * Matrix5::Identity()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Witness, VarianceScalesInverselyWithCount) {
    std::mt19937_64 rng(21);
    ProbMatrix p = random_prob(rng);
    EXPECT_NEAR(witness_variance(p, 4000000) * 4, witness_variance(p, 1000000), 1e-20);
}

TEST(Witness, ZScoreArithmetic) {
    WitnessResult r = make_witness_result(3e-4, 6e-5, 1000);
    EXPECT_TRUE(r.z_defined);
    EXPECT_NEAR(r.z, 5.0, 1e-12);
}
