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

#ifndef QDW_EXTREMAL_H
#define QDW_EXTREMAL_H

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qdw/witness.h"

namespace qdw {

enum class Field { kReal, kComplex };

enum class EffectClass {
    /// Rank-1 projectors |u><u|.
    kProjective,
    /// Any 0 <= M <= 1.
    kGeneral,
};

/// Local ascent used inside each restart.
enum class LocalMethod {
    /// Exact block-coordinate ascent. W is linear in every column and every row of p,
    /// so with everything else fixed the best preparation is a top eigenvector of
    /// sum_k C_kj M_k and the best effect is the projector onto the positive (or,
    /// rank-1, the top) eigenspace of sum_j C_kj |psi_j><psi_j|, C the cofactors.
    kSeesaw,
    /// Adaptive Nelder-Mead over unconstrained coordinates: normalized free vectors
    /// for states and rank-1 effects, QR of a free matrix plus sin^2 eigenvalues
    /// for general effects.
    kNelderMead,
};

struct ExtremalProblem {
    int dim = 3;
    Field field = Field::kReal;
    EffectClass effect_class = EffectClass::kProjective;
};

/// Rank-1 effects for d <= 3; general effects for d = 4, where the optimum needs
/// rank-2 projectors.
ExtremalProblem default_problem(int dim, Field field);

/// Throws std::domain_error unless dim is 2, 3 or 4.
void validate_problem(const ExtremalProblem &problem);

std::string_view field_name(Field field);
Field parse_field(std::string_view name);
std::string_view effect_class_name(EffectClass c);
EffectClass parse_effect_class(std::string_view name);

/// Pure preparations and effects in C^d. Real problems keep zero imaginary parts.
struct StrategyPoint {
    std::array<Eigen::VectorXcd, kNumPreparations> preparations;
    std::array<Eigen::MatrixXcd, kNumMeasurements> effects;
};

/// Unit norms within 1e-10, Hermitian effects with spectra in [-1e-10, 1 + 1e-10].
void validate_strategy(const StrategyPoint &point);

/// p_kj = <psi_j| M_k |psi_j>, row 4 ones. Throws std::domain_error on invalid points.
ProbMatrix strategy_prob_matrix(const StrategyPoint &point);

struct SearchOptions {
    LocalMethod method = LocalMethod::kSeesaw;
    /// Seesaw sweeps, or Nelder-Mead iterations per simplex, per restart.
    int max_iterations = 10000;
    /// Stop when one sweep (seesaw) or the simplex (Nelder-Mead) moves W by less.
    double step_tolerance = 1e-10;
};

struct SearchResult {
    ExtremalProblem problem;
    /// max |W| over restarts.
    double best_W = 0.0;
    StrategyPoint best_point;
    ProbMatrix best_matrix;
    int restarts = 0;
    /// Lowest restart index reaching best_W.
    int best_restart = 0;
    /// Whether the best restart met the step tolerance before the iteration cap.
    bool converged = false;
    int converged_restarts = 0;
    /// Final |W| of every restart, by index.
    std::vector<double> restart_W;
};

/// Random-restart local ascent of |W|. Restart r starts from derive_seed(seed, r);
/// the result does not depend on the order restarts run in.
SearchResult maximize_witness(const ExtremalProblem &problem, int restarts, std::uint64_t seed,
                              const SearchOptions &options = {});

/// 50 for d = 2, 200 for d = 3, 500 for d = 4.
int default_restarts(int dim);

/// Best |W| known for the problem: 0 (d = 2), 27 sqrt(2)/64 (d = 3 real),
/// 0.632 (d = 3 complex, three digits), 2^12/3^7 (d = 4).
std::optional<double> known_extremum(const ExtremalProblem &problem);

struct ClassicalCensus {
    int max_abs_det = 0;
    std::int64_t count_at_max = 0;
    std::int64_t assignments = 0;
};

/// Exhaustive pass over all 2^20 0/1 fillings of rows 0..3 (row 4 ones) with
/// exact integer determinants.
ClassicalCensus classical_census();

/// Largest |det| of a deterministic strategy: 3.
int classical_max();

/// Exact integer determinant (fraction-free elimination).
std::int64_t integer_determinant(const std::array<std::array<std::int64_t, 5>, 5> &m);

class SearchInconsistencyError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Runs maximize_witness with default_restarts(dim) and the default options, and
/// reports whether |best - claimed| <= tolerance. A best value above
/// claimed + tolerance throws SearchInconsistencyError.
bool certify_value(const ExtremalProblem &problem, double claimed, double tolerance, std::uint64_t seed = 1);

}  // namespace qdw

#endif
