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

#ifndef QDW_CONFIGS_H
#define QDW_CONFIGS_H

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdw/bloch.h"
#include "qdw/witness.h"

namespace qdw {

/// acos(1/3), the polar offset used by the tetrahedral preparations.
inline const double kEta = std::acos(1.0 / 3.0);

struct PrepAngles {
    GateAngle alpha;
    GateAngle beta;
};

struct MeasAngles {
    GateAngle theta;
    GateAngle phi;
};

/// Minimum Bloch distance between any two preparations of a config.
inline constexpr double kDegeneratePrepTolerance = 1e-9;

/// Five preparations and four measurements defining one witness test.
class ConfigSet {
   public:
    /// Throws std::domain_error when two preparation Bloch vectors coincide.
    ConfigSet(std::string id, const std::array<PrepAngles, kNumPreparations> &preparations,
              const std::array<MeasAngles, kNumMeasurements> &measurements);

    const std::string &id() const {
        return id_;
    }
    const std::array<PrepAngles, kNumPreparations> &preparations() const {
        return preparations_;
    }
    const std::array<MeasAngles, kNumMeasurements> &measurements() const {
        return measurements_;
    }

   private:
    std::string id_;
    std::array<PrepAngles, kNumPreparations> preparations_;
    std::array<MeasAngles, kNumMeasurements> measurements_;
};

class ConfigLookupError : public std::out_of_range {
   public:
    using std::out_of_range::out_of_range;
};

/// "I-prime", "I-second", "II-0" .. "II-4".
const std::vector<std::string> &builtin_config_ids();

/// Throws ConfigLookupError (message lists the valid ids) for unknown ids.
ConfigSet builtin_config(std::string_view id);

/// Family II with the fifth preparation at alpha = 2 pi i / 5, beta = alpha + pi/2.
/// Any integer i is accepted; the id is "II-<i>".
ConfigSet parametric_config(int i);

ProbMatrix predicted_prob_matrix(const ConfigSet &config);

struct ConfigBlochVectors {
    std::array<BlochVector, kNumPreparations> preparations;
    std::array<Effect, kNumMeasurements> measurements;
};

ConfigBlochVectors config_bloch_vectors(const ConfigSet &config);

/// For each measurement, the index of the preparation with the same Bloch vector
/// (within `tolerance`), or -1 when none matches.
std::array<int, kNumMeasurements> measurement_preparation_matches(const ConfigSet &config,
                                                                  double tolerance = 1e-12);

/// Gate angles realizing the given pure preparation and projective measurement
/// Bloch vectors (inverse of prep_bloch / meas_bloch). Inputs are normalized.
ConfigSet config_from_bloch(std::string id, const std::array<Eigen::Vector3d, kNumPreparations> &preparations,
                            const std::array<Eigen::Vector3d, kNumMeasurements> &measurements);

}  // namespace qdw

#endif
