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

#ifndef QDW_BLOCH_H
#define QDW_BLOCH_H

#include <Eigen/Dense>

namespace qdw {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Tolerance used for state/effect validity checks and probability clamping.
inline constexpr double kBlochTolerance = 1e-12;

/// A gate parameter in radians, reduced to [0, 2pi) on construction.
class GateAngle {
   public:
    GateAngle() = default;
    /// Throws std::domain_error for NaN or infinite input.
    explicit GateAngle(double radians);

    double radians() const {
        return value_;
    }

   private:
    double value_ = 0.0;
};

/// Qubit state N = (1 + n.sigma)/2. Mixed states (|n| < 1) are allowed.
class BlochVector {
   public:
    BlochVector() : n_(0.0, 0.0, 1.0) {
    }
    /// Throws std::domain_error when |n| > 1 + kBlochTolerance or n is not finite.
    explicit BlochVector(const Eigen::Vector3d &n);

    const Eigen::Vector3d &vec() const {
        return n_;
    }
    double norm() const {
        return n_.norm();
    }
    bool is_pure() const;

   private:
    Eigen::Vector3d n_;
};

/// Qubit effect M = (m0 + m.sigma)/2 with 0 <= M <= 1, i.e. |m| <= m0 <= 2 - |m|.
class Effect {
   public:
    Effect() : m0_(1.0), m_(0.0, 0.0, 1.0) {
    }
    /// Throws std::domain_error when the operator inequality is violated.
    Effect(double m0, const Eigen::Vector3d &m);

    static Effect projective(const Eigen::Vector3d &m) {
        return Effect(1.0, m);
    }

    double m0() const {
        return m0_;
    }
    const Eigen::Vector3d &vec() const {
        return m_;
    }
    bool is_projective() const;

   private:
    double m0_;
    Eigen::Vector3d m_;
};

/// Bloch-sphere action of S_gamma = Z_gamma^dag S Z_gamma, i.e. Z_gamma^T S Z_gamma
/// with S the quarter turn about x and Z_gamma the rotation about z.
Eigen::Matrix3d s_gate_bloch(GateAngle gamma);

/// The same gate as a 2x2 unitary in the |0>, |1> basis.
Eigen::Matrix2cd s_gate_unitary(GateAngle gamma);

/// Bloch rotation induced by conjugation V -> U V U^dag.
Eigen::Matrix3d bloch_rotation(const Eigen::Matrix2cd &u);

/// Bloch vector of a normalized pure state.
BlochVector bloch_of_state(const Eigen::Vector2cd &psi);

/// State S_beta S_alpha |0><0| S_alpha^dag S_beta^dag in closed form:
/// (sin(b-a) cos b, sin(a-b) sin b, -cos(b-a)).
///
/// For (alpha, beta) = (acos(1/3) - pi, 0) this is (2*sqrt(2)/3, 0, 1/3). The
/// unnormalized (2*sqrt(2), 0, 1/3) sometimes quoted for this preparation is a typo.
BlochVector prep_bloch(GateAngle alpha, GateAngle beta);

/// Projective effect S_phi^dag S_theta^dag |0><0| S_theta S_phi in closed form:
/// (sin(t-f) cos f, sin(f-t) sin f, -cos(t-f)).
Effect meas_bloch(GateAngle theta, GateAngle phi);

/// tr(M N) = (m0 + m.n)/2. Round-off excursions up to kBlochTolerance outside
/// [0, 1] are clamped.
double prob(const Effect &effect, const BlochVector &state);

}  // namespace qdw

#endif
