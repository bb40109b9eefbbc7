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

#include "qdw/configs.h"

#include <algorithm>
#include <sstream>
#include <utility>

namespace qdw {

namespace {

PrepAngles prep(double alpha, double beta) {
    return {GateAngle(alpha), GateAngle(beta)};
}

MeasAngles meas(double theta, double phi) {
    return {GateAngle(theta), GateAngle(phi)};
}

// Tetrahedral preparations and trine measurements shared by I-second and family II.
const std::array<MeasAngles, kNumMeasurements> &tetra_measurements() {
    static const std::array<MeasAngles, kNumMeasurements> m{
        meas(kPi, 0.0),
        meas(kPi / 2, kPi),
        meas(7 * kPi / 6, 5 * kPi / 3),
        meas(-kPi / 6, kPi / 3),
    };
    return m;
}

ConfigSet make_i_prime() {
    return ConfigSet(
        "I-prime",
        {prep(0.0, 0.0), prep(2 * kPi / 3, kPi / 6), prep(2 * kPi / 3, -kPi / 6), prep(4 * kPi / 3, kPi / 6),
         prep(4 * kPi / 3, -kPi / 6)},
        {meas(5 * kPi / 3, 7 * kPi / 6), meas(5 * kPi / 3, 5 * kPi / 6), meas(kPi / 3, 7 * kPi / 6),
         meas(kPi / 3, 5 * kPi / 6)});
}

ConfigSet make_i_second() {
    return ConfigSet(
        "I-second",
        {prep(0.0, 0.0), prep(0.0, kPi), prep(kEta - kPi, 0.0), prep(kEta + 5 * kPi / 3, 2 * kPi / 3),
         prep(kEta + kPi / 3, -2 * kPi / 3)},
        tetra_measurements());
}

}  // namespace

ConfigSet::ConfigSet(std::string id, const std::array<PrepAngles, kNumPreparations> &preparations,
                     const std::array<MeasAngles, kNumMeasurements> &measurements)
    : id_(std::move(id)), preparations_(preparations), measurements_(measurements) {
    std::array<Eigen::Vector3d, kNumPreparations> n;
    for (int j = 0; j < kNumPreparations; j++) {
        n[j] = prep_bloch(preparations_[j].alpha, preparations_[j].beta).vec();
        for (int i = 0; i < j; i++) {
            if ((n[i] - n[j]).norm() <= kDegeneratePrepTolerance) {
                std::ostringstream msg;
                msg << "ConfigSet '" << id_ << "': preparations " << i + 1 << " and " << j + 1
                    << " have the same Bloch vector";
                throw std::domain_error(msg.str());
            }
        }
    }
}

const std::vector<std::string> &builtin_config_ids() {
    static const std::vector<std::string> ids{"I-prime", "I-second", "II-0", "II-1", "II-2", "II-3", "II-4"};
    return ids;
}

ConfigSet builtin_config(std::string_view id) {
    if (id == "I-prime") {
        return make_i_prime();
    }
    if (id == "I-second") {
        return make_i_second();
    }
    if (id.size() == 4 && id.substr(0, 3) == "II-" && id[3] >= '0' && id[3] <= '4') {
        return parametric_config(id[3] - '0');
    }
    std::ostringstream msg;
    msg << "unknown config id '" << id << "'; valid ids:";
    for (const auto &v : builtin_config_ids()) {
        msg << ' ' << v;
    }
    throw ConfigLookupError(msg.str());
}

ConfigSet parametric_config(int i) {
    double alpha5 = kTwoPi * i / 5.0;
    return ConfigSet(
        "II-" + std::to_string(i),
        {prep(0.0, 0.0), prep(kEta - kPi, 0.0), prep(kEta + 5 * kPi / 3, 2 * kPi / 3),
         prep(kEta + kPi / 3, -2 * kPi / 3), prep(alpha5, alpha5 + kPi / 2)},
        tetra_measurements());
}

ConfigBlochVectors config_bloch_vectors(const ConfigSet &config) {
    ConfigBlochVectors out;
    for (int j = 0; j < kNumPreparations; j++) {
        const auto &a = config.preparations()[j];
        out.preparations[j] = prep_bloch(a.alpha, a.beta);
    }
    for (int k = 0; k < kNumMeasurements; k++) {
        const auto &a = config.measurements()[k];
        out.measurements[k] = meas_bloch(a.theta, a.phi);
    }
    return out;
}

ProbMatrix predicted_prob_matrix(const ConfigSet &config) {
    auto v = config_bloch_vectors(config);
    MeasurementRows rows;
    for (int k = 0; k < kNumMeasurements; k++) {
        for (int j = 0; j < kNumPreparations; j++) {
            rows(k, j) = prob(v.measurements[k], v.preparations[j]);
        }
    }
    return ProbMatrix::from_rows(rows);
}

std::array<int, kNumMeasurements> measurement_preparation_matches(const ConfigSet &config, double tolerance) {
    auto v = config_bloch_vectors(config);
    std::array<int, kNumMeasurements> out;
    out.fill(-1);
    for (int k = 0; k < kNumMeasurements; k++) {
        for (int j = 0; j < kNumPreparations; j++) {
            if ((v.measurements[k].vec() - v.preparations[j].vec()).norm() <= tolerance) {
                out[k] = j;
                break;
            }
        }
    }
    return out;
}

namespace {

// Both closed forms read (sin(d) cos(c), -sin(d) sin(c), -cos(d)) with d = second - first
// for preparations (c = beta) and d = theta - phi for measurements (c = phi).
std::pair<double, double> polar_and_azimuth(const Eigen::Vector3d &v) {
    Eigen::Vector3d n = v.normalized();
    double polar = std::acos(std::clamp(-n.z(), -1.0, 1.0));
    double azimuth = std::hypot(n.x(), n.y()) > 1e-15 ? std::atan2(-n.y(), n.x()) : 0.0;
    return {polar, azimuth};
}

}  // namespace

ConfigSet config_from_bloch(std::string id, const std::array<Eigen::Vector3d, kNumPreparations> &preparations,
                            const std::array<Eigen::Vector3d, kNumMeasurements> &measurements) {
    std::array<PrepAngles, kNumPreparations> p;
    for (int j = 0; j < kNumPreparations; j++) {
        auto [delta, beta] = polar_and_azimuth(preparations[j]);
        p[j] = prep(beta - delta, beta);
    }
    std::array<MeasAngles, kNumMeasurements> m;
    for (int k = 0; k < kNumMeasurements; k++) {
        auto [delta, phi] = polar_and_azimuth(measurements[k]);
        m[k] = meas(phi + delta, phi);
    }
    return ConfigSet(std::move(id), p, m);
}

}  // namespace qdw
