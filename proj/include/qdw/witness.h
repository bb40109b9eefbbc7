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

#ifndef QDW_WITNESS_H
#define QDW_WITNESS_H

#include <cstdint>

#include <Eigen/Dense>

namespace qdw {

inline constexpr int kNumPreparations = 5;
inline constexpr int kNumMeasurements = 4;
inline constexpr int kNumCircuits = kNumPreparations * kNumMeasurements;

using Matrix5 = Eigen::Matrix<double, 5, 5>;
using MeasurementRows = Eigen::Matrix<double, kNumMeasurements, kNumPreparations>;

/// Outcome probabilities p_kj for measurement k (rows 0..3) and preparation j
/// (columns 0..4), with a constant row of ones appended as row 4.
class ProbMatrix {
   public:
    /// Measurement rows zero, constant row one.
    ProbMatrix();
    /// Throws std::domain_error unless row 4 is exactly one and all entries lie in [0, 1].
    explicit ProbMatrix(const Matrix5 &p);

    static ProbMatrix from_rows(const MeasurementRows &rows);

    double operator()(int k, int j) const {
        return p_(k, j);
    }
    const Matrix5 &matrix() const {
        return p_;
    }
    MeasurementRows rows() const {
        return p_.topRows<kNumMeasurements>();
    }

   private:
    Matrix5 p_;
};

/// Determinant by Gaussian elimination with partial pivoting.
double determinant(const Matrix5 &m);

/// Transposed cofactor matrix, (Adj m)_jk = (-1)^(j+k) minor(k, j). Each minor is
/// evaluated directly, so the result stays accurate for singular m.
Matrix5 adjugate(const Matrix5 &m);

/// W = det p.
double witness(const ProbMatrix &p);

Matrix5 adjugate(const ProbMatrix &p);

/// Shot-noise variance of W when every cell is estimated from `total_count`
/// Bernoulli trials: sum_kj p_kj (1 - p_kj) (Adj p)_jk^2 / T.
/// Throws std::domain_error when total_count < 1.
double witness_variance(const ProbMatrix &p, std::int64_t total_count);

/// As above with a separate trial count per measurement cell.
double witness_variance(const ProbMatrix &p, const MeasurementRows &cell_counts);

struct WitnessResult {
    double W = 0.0;
    double sigma = 0.0;
    /// W / sigma; meaningful only when z_defined.
    double z = 0.0;
    bool z_defined = false;
    std::int64_t total_count = 0;
};

WitnessResult z_score(const ProbMatrix &p, std::int64_t total_count);

/// Packages an externally computed (W, sigma) pair.
WitnessResult make_witness_result(double W, double sigma, std::int64_t total_count);

}  // namespace qdw

#endif
