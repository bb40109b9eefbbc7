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

#include "qdw/bloch.h"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qdw {

GateAngle::GateAngle(double radians) {
    if (!std::isfinite(radians)) {
        throw std::domain_error("GateAngle: angle must be finite");
    }
    double r = std::fmod(radians, kTwoPi);
    if (r < 0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r = 0.0;
    }
    value_ = r;
}

BlochVector::BlochVector(const Eigen::Vector3d &n) : n_(n) {
    if (!n.allFinite()) {
        throw std::domain_error("BlochVector: components must be finite");
    }
    if (n.norm() > 1.0 + kBlochTolerance) {
        throw std::domain_error("BlochVector: |n| exceeds 1");
    }
}

bool BlochVector::is_pure() const {
    return std::abs(n_.norm() - 1.0) <= kBlochTolerance;
}

Effect::Effect(double m0, const Eigen::Vector3d &m) : m0_(m0), m_(m) {
    if (!std::isfinite(m0) || !m.allFinite()) {
        throw std::domain_error("Effect: components must be finite");
    }
    double r = m.norm();
    if (r > m0 + kBlochTolerance || m0 > 2.0 - r + kBlochTolerance) {
        throw std::domain_error("Effect: requires |m| <= m0 <= 2 - |m|");
    }
}

bool Effect::is_projective() const {
    return std::abs(m0_ - 1.0) <= kBlochTolerance && std::abs(m_.norm() - 1.0) <= kBlochTolerance;
}

Eigen::Matrix3d s_gate_bloch(GateAngle gamma) {
    double c = std::cos(gamma.radians());
    double s = std::sin(gamma.radians());
    Eigen::Matrix3d quarter_x;
    quarter_x << 1, 0, 0, 0, 0, -1, 0, 1, 0;
    Eigen::Matrix3d z;
    z << c, -s, 0, s, c, 0, 0, 0, 1;
    return z.transpose() * quarter_x * z;
}

Eigen::Matrix2cd s_gate_unitary(GateAngle gamma) {
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    double g = gamma.radians();
    Eigen::Matrix2cd s;
    s << C(1.0), -i, -i, C(1.0);
    s /= std::sqrt(2.0);
    Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
    z(0, 0) = std::exp(-i * (g / 2));
    z(1, 1) = std::exp(i * (g / 2));
    return z.adjoint() * s * z;
}

namespace {

Eigen::Matrix2cd pauli(int axis) {
    using C = std::complex<double>;
    Eigen::Matrix2cd p;
    switch (axis) {
        case 0:
            p << 0, 1, 1, 0;
            break;
        case 1:
            p << 0, C(0, -1), C(0, 1), 0;
            break;
        default:
            p << 1, 0, 0, -1;
            break;
    }
    return p;
}

}  // namespace

Eigen::Matrix3d bloch_rotation(const Eigen::Matrix2cd &u) {
    // R_ab = tr(sigma_a U sigma_b U^dag) / 2
    Eigen::Matrix3d r;
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            r(a, b) = 0.5 * (pauli(a) * u * pauli(b) * u.adjoint()).trace().real();
        }
    }
    return r;
}

BlochVector bloch_of_state(const Eigen::Vector2cd &psi) {
    Eigen::Matrix2cd rho = psi * psi.adjoint();
    Eigen::Vector3d n;
    for (int a = 0; a < 3; a++) {
        n[a] = (rho * pauli(a)).trace().real();
    }
    return BlochVector(n);
}

BlochVector prep_bloch(GateAngle alpha, GateAngle beta) {
    double a = alpha.radians();
    double b = beta.radians();
    return BlochVector(Eigen::Vector3d(std::sin(b - a) * std::cos(b), std::sin(a - b) * std::sin(b), -std::cos(b - a)));
}

Effect meas_bloch(GateAngle theta, GateAngle phi) {
    double t = theta.radians();
    double f = phi.radians();
    return Effect::projective(
        Eigen::Vector3d(std::sin(t - f) * std::cos(f), std::sin(f - t) * std::sin(f), -std::cos(t - f)));
}

double prob(const Effect &effect, const BlochVector &state) {
    double p = 0.5 * (effect.m0() + effect.vec().dot(state.vec()));
    if (p < 0.0 && p >= -kBlochTolerance) {
        return 0.0;
    }
    if (p > 1.0 && p <= 1.0 + kBlochTolerance) {
        return 1.0;
    }
    if (p < 0.0 || p > 1.0) {
        throw std::domain_error("prob: result outside [0, 1]");
    }
    return p;
}

}  // namespace qdw
