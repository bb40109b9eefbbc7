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

#include "qdw/extremal.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <string>
#include <type_traits>

#include "qdw/rng.h"

namespace qdw {

namespace {

constexpr double kStrategyTolerance = 1e-10;

template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <typename S>
struct Point {
    std::array<Vec<S>, kNumPreparations> psi;
    std::array<Mat<S>, kNumMeasurements> effects;
};

template <typename S>
Matrix5 raw_prob_matrix(const Point<S> &pt) {
    Matrix5 p;
    for (int k = 0; k < kNumMeasurements; k++) {
        for (int j = 0; j < kNumPreparations; j++) {
            p(k, j) = std::real(pt.psi[j].dot(pt.effects[k] * pt.psi[j]));
        }
    }
    p.row(4).setOnes();
    return p;
}

template <typename S>
Vec<S> random_vector(int n, Rng &rng) {
    std::normal_distribution<double> g;
    Vec<S> v(n);
    for (int i = 0; i < n; i++) {
        if constexpr (std::is_same_v<S, double>) {
            v[i] = g(rng);
        } else {
            double re = g(rng);
            double im = g(rng);
            v[i] = S(re, im);
        }
    }
    return v;
}

template <typename S>
Vec<S> random_unit(int n, Rng &rng) {
    Vec<S> v;
    do {
        v = random_vector<S>(n, rng);
    } while (v.norm() < 1e-8);
    return v.normalized();
}

template <typename S>
Point<S> random_point(const ExtremalProblem &problem, Rng &rng) {
    const int d = problem.dim;
    Point<S> pt;
    for (auto &v : pt.psi) {
        v = random_unit<S>(d, rng);
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto &m : pt.effects) {
        if (problem.effect_class == EffectClass::kProjective) {
            Vec<S> v = random_unit<S>(d, rng);
            m = v * v.adjoint();
        } else {
            Mat<S> a(d, d);
            for (int c = 0; c < d; c++) {
                a.col(c) = random_vector<S>(d, rng);
            }
            Mat<S> q = Eigen::HouseholderQR<Mat<S>>(a).householderQ();
            Vec<S> lambda(d);
            for (int i = 0; i < d; i++) {
                lambda[i] = u(rng);
            }
            m = q * lambda.asDiagonal() * q.adjoint();
        }
    }
    return pt;
}

struct LocalRun {
    double W = 0.0;
    bool converged = false;
};

template <typename S>
LocalRun seesaw(Point<S> &pt, EffectClass effect_class, const SearchOptions &opt) {
    const int d = static_cast<int>(pt.psi[0].size());
    double w = determinant(raw_prob_matrix(pt));
    if (w < 0) {
        std::swap(pt.psi[0], pt.psi[1]);
        w = -w;
    }
    LocalRun run;
    for (int it = 0; it < opt.max_iterations; it++) {
        for (int j = 0; j < kNumPreparations; j++) {
            Matrix5 adj = adjugate(raw_prob_matrix(pt));
            Mat<S> a = Mat<S>::Zero(d, d);
            for (int k = 0; k < kNumMeasurements; k++) {
                a += adj(j, k) * pt.effects[k];
            }
            Eigen::SelfAdjointEigenSolver<Mat<S>> es(a);
            pt.psi[j] = es.eigenvectors().col(d - 1);
        }
        for (int k = 0; k < kNumMeasurements; k++) {
            Matrix5 adj = adjugate(raw_prob_matrix(pt));
            Mat<S> b = Mat<S>::Zero(d, d);
            for (int j = 0; j < kNumPreparations; j++) {
                b += adj(j, k) * (pt.psi[j] * pt.psi[j].adjoint());
            }
            Eigen::SelfAdjointEigenSolver<Mat<S>> es(b);
            if (effect_class == EffectClass::kProjective) {
                Vec<S> v = es.eigenvectors().col(d - 1);
                pt.effects[k] = v * v.adjoint();
            } else {
                Mat<S> m = Mat<S>::Zero(d, d);
                for (int i = 0; i < d; i++) {
                    if (es.eigenvalues()[i] > 0) {
                        Vec<S> v = es.eigenvectors().col(i);
                        m += v * v.adjoint();
                    }
                }
                pt.effects[k] = m;
            }
        }
        double next = determinant(raw_prob_matrix(pt));
        double step = next - w;
        w = std::max(w, next);
        if (step < opt.step_tolerance) {
            run.converged = true;
            break;
        }
    }
    run.W = std::abs(determinant(raw_prob_matrix(pt)));
    return run;
}

// Unconstrained coordinates for Nelder-Mead.
template <typename S>
class Chart {
   public:
    Chart(int d, EffectClass effect_class) : d_(d), effect_class_(effect_class) {
    }

    int vector_size() const {
        return kComplex ? 2 * d_ : d_;
    }
    int effect_size() const {
        if (effect_class_ == EffectClass::kProjective) {
            return vector_size();
        }
        return (kComplex ? 2 * d_ * d_ : d_ * d_) + d_;
    }
    int size() const {
        return kNumPreparations * vector_size() + kNumMeasurements * effect_size();
    }

    Eigen::VectorXd random(Rng &rng) const {
        std::normal_distribution<double> g;
        Eigen::VectorXd x(size());
        for (int i = 0; i < x.size(); i++) {
            x[i] = g(rng);
        }
        return x;
    }

    Point<S> decode(const Eigen::VectorXd &x) const {
        Point<S> pt;
        int at = 0;
        for (auto &v : pt.psi) {
            v = unit(x, at);
            at += vector_size();
        }
        for (auto &m : pt.effects) {
            if (effect_class_ == EffectClass::kProjective) {
                Vec<S> u = unit(x, at);
                m = u * u.adjoint();
                at += vector_size();
                continue;
            }
            Mat<S> a(d_, d_);
            for (int c = 0; c < d_; c++) {
                a.col(c) = entries(x, at + c * vector_size());
            }
            at += d_ * vector_size();
            Mat<S> q = Eigen::HouseholderQR<Mat<S>>(a).householderQ();
            Vec<S> lambda(d_);
            for (int i = 0; i < d_; i++) {
                double s = std::sin(x[at + i]);
                lambda[i] = s * s;
            }
            at += d_;
            m = q * lambda.asDiagonal() * q.adjoint();
        }
        return pt;
    }

   private:
    static constexpr bool kComplex = !std::is_same_v<S, double>;

    Vec<S> entries(const Eigen::VectorXd &x, int at) const {
        Vec<S> v(d_);
        for (int i = 0; i < d_; i++) {
            if constexpr (kComplex) {
                v[i] = S(x[at + 2 * i], x[at + 2 * i + 1]);
            } else {
                v[i] = x[at + i];
            }
        }
        return v;
    }

    Vec<S> unit(const Eigen::VectorXd &x, int at) const {
        Vec<S> v = entries(x, at);
        double n = v.norm();
        if (n < 1e-300) {
            v.setZero();
            v[0] = 1.0;
            return v;
        }
        return v / n;
    }

    int d_;
    EffectClass effect_class_;
};

struct SimplexResult {
    Eigen::VectorXd x;
    double f = 0.0;
    bool converged = false;
};

// Adaptive coefficients (Gao & Han) so the method stays usable in a few dozen dimensions.
SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd &)> &f, const Eigen::VectorXd &x0,
                          double initial_step, int max_iterations, double tolerance) {
    const int n = static_cast<int>(x0.size());
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / n;
    const double gamma = 0.75 - 1.0 / (2.0 * n);
    const double delta = 1.0 - 1.0 / n;

    std::vector<Eigen::VectorXd> x(n + 1, x0);
    std::vector<double> fx(n + 1);
    for (int i = 0; i < n; i++) {
        x[i + 1][i] += initial_step;
    }
    for (int i = 0; i <= n; i++) {
        fx[i] = f(x[i]);
    }
    std::vector<int> order(n + 1);
    SimplexResult result;
    for (int it = 0; it < max_iterations; it++) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return fx[a] < fx[b];
        });
        int best = order[0];
        int worst = order[n];
        int second = order[n - 1];
        if (fx[worst] - fx[best] < tolerance) {
            result.converged = true;
            break;
        }
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; i++) {
            centroid += x[order[i]];
        }
        centroid /= n;

        Eigen::VectorXd xr = centroid + alpha * (centroid - x[worst]);
        double fr = f(xr);
        if (fr < fx[best]) {
            Eigen::VectorXd xe = centroid + beta * (xr - centroid);
            double fe = f(xe);
            if (fe < fr) {
                x[worst] = xe;
                fx[worst] = fe;
            } else {
                x[worst] = xr;
                fx[worst] = fr;
            }
            continue;
        }
        if (fr < fx[second]) {
            x[worst] = xr;
            fx[worst] = fr;
            continue;
        }
        bool outside = fr < fx[worst];
        Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + gamma * (xr - centroid))
                                     : Eigen::VectorXd(centroid - gamma * (centroid - x[worst]));
        double fc = f(xc);
        if (fc < (outside ? fr : fx[worst])) {
            x[worst] = xc;
            fx[worst] = fc;
            continue;
        }
        for (int i = 0; i <= n; i++) {
            if (i == best) {
                continue;
            }
            x[i] = x[best] + delta * (x[i] - x[best]);
            fx[i] = f(x[i]);
        }
    }
    int best = static_cast<int>(std::min_element(fx.begin(), fx.end()) - fx.begin());
    result.x = x[best];
    result.f = fx[best];
    return result;
}

template <typename S>
LocalRun nelder_mead_run(const ExtremalProblem &problem, Point<S> &pt, Rng &rng, const SearchOptions &opt) {
    Chart<S> chart(problem.dim, problem.effect_class);
    auto objective = [&](const Eigen::VectorXd &x) {
        return -determinant(raw_prob_matrix(chart.decode(x)));
    };
    Eigen::VectorXd x = chart.random(rng);
    LocalRun run;
    double last = objective(x);
    // Restart the simplex around the incumbent until a restart stops paying off.
    for (int round = 0; round < 8; round++) {
        SimplexResult r = nelder_mead(objective, x, 0.5, opt.max_iterations, opt.step_tolerance * 1e-2);
        x = r.x;
        bool settled = last - r.f < opt.step_tolerance;
        last = r.f;
        if (settled && r.converged) {
            run.converged = true;
            break;
        }
    }
    pt = chart.decode(x);
    run.W = std::abs(determinant(raw_prob_matrix(pt)));
    return run;
}

template <typename S>
StrategyPoint to_strategy(const Point<S> &pt) {
    StrategyPoint out;
    for (int j = 0; j < kNumPreparations; j++) {
        out.preparations[j] = pt.psi[j].template cast<std::complex<double>>();
    }
    for (int k = 0; k < kNumMeasurements; k++) {
        out.effects[k] = pt.effects[k].template cast<std::complex<double>>();
    }
    return out;
}

template <typename S>
SearchResult search(const ExtremalProblem &problem, int restarts, std::uint64_t seed, const SearchOptions &opt) {
    SearchResult result;
    result.problem = problem;
    result.restarts = restarts;
    result.restart_W.resize(restarts);
    Point<S> best_point;
    bool best_converged = false;
    for (int r = 0; r < restarts; r++) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        Point<S> pt;
        LocalRun run;
        if (opt.method == LocalMethod::kSeesaw) {
            pt = random_point<S>(problem, rng);
            run = seesaw(pt, problem.effect_class, opt);
        } else {
            run = nelder_mead_run(problem, pt, rng, opt);
        }
        result.restart_W[r] = run.W;
        if (run.converged) {
            result.converged_restarts++;
        }
        if (r == 0 || run.W > result.best_W) {
            result.best_W = run.W;
            result.best_restart = r;
            best_point = pt;
            best_converged = run.converged;
        }
    }
    if (determinant(raw_prob_matrix(best_point)) < 0) {
        std::swap(best_point.psi[0], best_point.psi[1]);
    }
    result.converged = best_converged;
    result.best_point = to_strategy(best_point);
    result.best_matrix = strategy_prob_matrix(result.best_point);
    return result;
}

}  // namespace

ExtremalProblem default_problem(int dim, Field field) {
    ExtremalProblem p;
    p.dim = dim;
    p.field = field;
    p.effect_class = dim >= 4 ? EffectClass::kGeneral : EffectClass::kProjective;
    return p;
}

void validate_problem(const ExtremalProblem &problem) {
    if (problem.dim < 2 || problem.dim > 4) {
        throw std::domain_error("ExtremalProblem: dimension must be 2, 3 or 4");
    }
}

std::string_view field_name(Field field) {
    return field == Field::kReal ? "real" : "complex";
}

Field parse_field(std::string_view name) {
    if (name == "real") {
        return Field::kReal;
    }
    if (name == "complex") {
        return Field::kComplex;
    }
    throw std::invalid_argument("unknown field '" + std::string(name) + "' (real, complex)");
}

std::string_view effect_class_name(EffectClass c) {
    return c == EffectClass::kProjective ? "projective" : "general";
}

EffectClass parse_effect_class(std::string_view name) {
    if (name == "projective") {
        return EffectClass::kProjective;
    }
    if (name == "general") {
        return EffectClass::kGeneral;
    }
    throw std::invalid_argument("unknown effect class '" + std::string(name) + "' (projective, general)");
}

void validate_strategy(const StrategyPoint &point) {
    const auto d = point.preparations[0].size();
    for (const auto &v : point.preparations) {
        if (v.size() != d || std::abs(v.norm() - 1.0) > kStrategyTolerance) {
            throw std::domain_error("StrategyPoint: preparations must be unit vectors of equal dimension");
        }
    }
    for (const auto &m : point.effects) {
        if (m.rows() != d || m.cols() != d) {
            throw std::domain_error("StrategyPoint: effect dimension mismatch");
        }
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kStrategyTolerance) {
            throw std::domain_error("StrategyPoint: effects must be Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -kStrategyTolerance || es.eigenvalues().maxCoeff() > 1 + kStrategyTolerance) {
            throw std::domain_error("StrategyPoint: effect spectrum must lie in [0, 1]");
        }
    }
}

ProbMatrix strategy_prob_matrix(const StrategyPoint &point) {
    validate_strategy(point);
    Matrix5 p;
    for (int k = 0; k < kNumMeasurements; k++) {
        for (int j = 0; j < kNumPreparations; j++) {
            const auto &psi = point.preparations[j];
            p(k, j) = std::clamp(psi.dot(point.effects[k] * psi).real(), 0.0, 1.0);
        }
    }
    p.row(4).setOnes();
    return ProbMatrix(p);
}

SearchResult maximize_witness(const ExtremalProblem &problem, int restarts, std::uint64_t seed,
                              const SearchOptions &options) {
    validate_problem(problem);
    if (restarts < 1) {
        throw std::domain_error("maximize_witness: restarts must be >= 1");
    }
    if (problem.field == Field::kReal) {
        return search<double>(problem, restarts, seed, options);
    }
    return search<std::complex<double>>(problem, restarts, seed, options);
}

int default_restarts(int dim) {
    switch (dim) {
        case 2:
            return 50;
        case 3:
            return 200;
        default:
            return 500;
    }
}

std::optional<double> known_extremum(const ExtremalProblem &problem) {
    switch (problem.dim) {
        case 2:
            return 0.0;
        case 3:
            if (problem.field == Field::kReal) {
                return 27.0 * std::sqrt(2.0) / 64.0;
            }
            return 0.632;
        case 4:
            return 4096.0 / 2187.0;
        default:
            return std::nullopt;
    }
}

std::int64_t integer_determinant(const std::array<std::array<std::int64_t, 5>, 5> &input) {
    auto m = input;
    std::int64_t sign = 1;
    std::int64_t prev = 1;
    for (int k = 0; k < 4; k++) {
        if (m[k][k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < 5; i++) {
                if (m[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            }
            if (swap_row < 0) {
                return 0;
            }
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < 5; i++) {
            for (int j = k + 1; j < 5; j++) {
                // Exact division (Bareiss).
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    return sign * m[4][4];
}

ClassicalCensus classical_census() {
    ClassicalCensus census;
    std::array<std::array<std::int64_t, 5>, 5> m{};
    m[4].fill(1);
    for (std::uint32_t bits = 0; bits < (1u << 20); bits++) {
        for (int k = 0; k < 4; k++) {
            for (int j = 0; j < 5; j++) {
                m[k][j] = (bits >> (5 * k + j)) & 1u;
            }
        }
        int a = static_cast<int>(std::llabs(integer_determinant(m)));
        census.assignments++;
        if (a > census.max_abs_det) {
            census.max_abs_det = a;
            census.count_at_max = 1;
        } else if (a == census.max_abs_det) {
            census.count_at_max++;
        }
    }
    return census;
}

int classical_max() {
    return classical_census().max_abs_det;
}

bool certify_value(const ExtremalProblem &problem, double claimed, double tolerance, std::uint64_t seed) {
    if (!(tolerance > 0.0)) {
        throw std::domain_error("certify_value: tolerance must be > 0");
    }
    SearchResult r = maximize_witness(problem, default_restarts(problem.dim), seed);
    if (r.best_W > claimed + tolerance) {
        throw SearchInconsistencyError("certify_value: search found |W| = " + std::to_string(r.best_W) +
                                       " above the claimed " + std::to_string(claimed));
    }
    return std::abs(r.best_W - claimed) <= tolerance;
}

}  // namespace qdw
