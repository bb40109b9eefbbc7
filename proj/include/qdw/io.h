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

#ifndef QDW_IO_H
#define QDW_IO_H

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qdw/configs.h"
#include "qdw/extremal.h"
#include "qdw/sampler.h"

namespace qdw {

/// A document that parses but does not match the expected layout. `field()` is a
/// path such as "jobs[2].counts[0][7]".
class SchemaError : public std::runtime_error {
   public:
    SchemaError(std::string field, const std::string &what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {
    }
    const std::string &field() const {
        return field_;
    }

   private:
    std::string field_;
};

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::filesystem::path &path);

/// Writes through a temporary sibling and renames it into place, so readers never
/// see a partial file.
void write_text_file_atomic(const std::filesystem::path &path, const std::string &contents);

/// {"id": ..., "preparations": [[alpha, beta] x5], "measurements": [[theta, phi] x4]}
nlohmann::json config_to_json(const ConfigSet &config);

/// Accepts a config object, or any object carrying one under "config" (as search
/// results for d = 2 do). Throws SchemaError on layout problems and
/// std::domain_error on degenerate preparations.
ConfigSet config_from_json(const nlohmann::json &j);

/// Canonical text form: two-space indent, trailing newline.
std::string config_to_string(const ConfigSet &config);

nlohmann::json record_to_json(const ExperimentRecord &record);
ExperimentRecord record_from_json(const nlohmann::json &j);
std::string record_to_string(const ExperimentRecord &record);

/// Parses text, mapping syntax errors to SchemaError at field "$".
nlohmann::json parse_json(const std::string &text);

/// For d = 2 strategies built from rank-1 effects, the equivalent gate-angle config.
std::optional<ConfigSet> strategy_to_config(const StrategyPoint &point, const std::string &id);

nlohmann::json search_result_to_json(const SearchResult &result);

}  // namespace qdw

#endif
