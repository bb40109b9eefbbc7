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

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qdw {

namespace {

template <int N>
double det_elimination(Eigen::Matrix<double, N, N> a) {
    double det = 1.0;
    for (int col = 0; col < N; col++) {
        int pivot = col;
        for (int r = col + 1; r < N; r++) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (a(pivot, col) == 0.0) {
            return 0.0;
        }
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            det = -det;
        }
        det *= a(col, col);
        for (int r = col + 1; r < N; r++) {
            double f = a(r, col) / a(col, col);
            for (int c = col + 1; c < N; c++) {
                a(r, c) -= f * a(col, c);
            }
        }
    }
    return det;
}

Eigen::Matrix4d minor_of(const Matrix5 &m, int row, int col) {
    Eigen::Matrix4d out;
    for (int r = 0, rr = 0; r < 5; r++) {
        if (r == row) {
            continue;
        }
        for (int c = 0, cc = 0; c < 5; c++) {
            if (c == col) {
                continue;
            }
            out(rr, cc++) = m(r, c);
        }
        rr++;
    }
    return out;
}

void check_probability_entries(const Matrix5 &p) {
    for (int j = 0; j < 5; j++) {
        if (p(4, j) != 1.0) {
            throw std::domain_error("ProbMatrix: row 5 must be all ones");
        }
        for (int k = 0; k < 4; k++) {
            double v = p(k, j);
            if (!(v >= 0.0 && v <= 1.0)) {
                throw std::domain_error("ProbMatrix: entries must lie in [0, 1]");
            }
        }
    }
}

}  // namespace

ProbMatrix::ProbMatrix() : p_(Matrix5::Zero()) {
    p_.row(4).setOnes();
}

ProbMatrix::ProbMatrix(const Matrix5 &p) : p_(p) {
    check_probability_entries(p_);
}

ProbMatrix ProbMatrix::from_rows(const MeasurementRows &rows) {
    Matrix5 p;
    p.topRows<kNumMeasurements>() = rows;
    p.row(4).setOnes();
    return ProbMatrix(p);
}

double determinant(const Matrix5 &m) {
    return det_elimination<5>(m);
}

Matrix5 adjugate(const Matrix5 &m) {
    Matrix5 adj;
    for (int k = 0; k < 5; k++) {
        for (int j = 0; j < 5; j++) {
            double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
            adj(j, k) = sign * det_elimination<4>(minor_of(m, k, j));
        }
    }
    return adj;
}

double witness(const ProbMatrix &p) {
    return determinant(p.matrix());
}

Matrix5 adjugate(const ProbMatrix &p) {
    return adjugate(p.matrix());
}

double witness_variance(const ProbMatrix &p, std::int64_t total_count) {
    if (total_count < 1) {
        throw std::domain_error("witness_variance: total count must be >= 1");
    }
    Matrix5 adj = adjugate(p);
    // All 25 cells; the constant row contributes p(1-p) = 0.
    double sum = 0.0;
    for (int k = 0; k < 5; k++) {
        for (int j = 0; j < 5; j++) {
            double v = p(k, j);
            sum += v * (1.0 - v) * adj(j, k) * adj(j, k);
        }
    }
    return sum / static_cast<double>(total_count);
}

double witness_variance(const ProbMatrix &p, const MeasurementRows &cell_counts) {
    Matrix5 adj = adjugate(p);
    double sum = 0.0;
    for (int k = 0; k < kNumMeasurements; k++) {
        for (int j = 0; j < kNumPreparations; j++) {
            if (!(cell_counts(k, j) >= 1.0)) {
                throw std::domain_error("witness_variance: every cell count must be >= 1");
            }
            double v = p(k, j);
            sum += v * (1.0 - v) * adj(j, k) * adj(j, k) / cell_counts(k, j);
        }
    }
    return sum;
}

WitnessResult make_witness_result(double W, double sigma, std::int64_t total_count) {
    WitnessResult r;
    r.W = W;
    r.sigma = sigma;
    r.total_count = total_count;
    if (sigma > 0.0) {
        r.z = W / sigma;
        r.z_defined = true;
    }
    return r;
}

WitnessResult z_score(const ProbMatrix &p, std::int64_t total_count) {
    double var = witness_variance(p, total_count);
    return make_witness_result(witness(p), std::sqrt(var), total_count);
}

}  // namespace qdw
