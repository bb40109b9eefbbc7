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

#include "qdw/io.h"

#include <gtest/gtest.h>

#include <filesystem>

using namespace qdw;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "qdw_io_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

ExperimentRecord small_record() {
    return simulate_record(predicted_prob_matrix(builtin_config("II-1")), {2, 50, 3, 9}, "II-1", "sim");
}

std::string schema_field(const json &j) {
    try {
        record_from_json(j);
    } catch (const SchemaError &e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST(ConfigJson, RoundTripAllBuiltins) {
    for (const auto &id : builtin_config_ids()) {
        ConfigSet c = builtin_config(id);
        ConfigSet back = config_from_json(parse_json(config_to_string(c)));
        EXPECT_EQ(back.id(), id);
        EXPECT_EQ(predicted_prob_matrix(back).matrix(), predicted_prob_matrix(c).matrix());
        EXPECT_EQ(config_to_string(back), config_to_string(c));
    }
}

TEST(ConfigJson, CanonicalAnglesReduced) {
    json j = config_to_json(builtin_config("II-0"));
    EXPECT_DOUBLE_EQ(j["preparations"][4][1].get<double>(), kPi / 2);
    for (const auto &pair : j["measurements"]) {
        for (const auto &x : pair) {
            EXPECT_GE(x.get<double>(), 0.0);
            EXPECT_LT(x.get<double>(), kTwoPi);
        }
    }
}

TEST(ConfigJson, SchemaErrorsNameTheField) {
    json j = config_to_json(builtin_config("I-prime"));
    j["preparations"][2][0] = "x";
    try {
        config_from_json(j);
        FAIL();
    } catch (const SchemaError &e) {
        EXPECT_EQ(e.field(), "preparations[2][0]");
    }
    j = config_to_json(builtin_config("I-prime"));
    j["measurements"].erase(3);
    EXPECT_THROW(config_from_json(j), SchemaError);
    j = config_to_json(builtin_config("I-prime"));
    j.erase("id");
    EXPECT_THROW(config_from_json(j), SchemaError);
}

TEST(ConfigJson, NestedConfigAccepted) {
    json outer{{"best_W", 0.0}, {"config", config_to_json(builtin_config("II-4"))}};
    EXPECT_EQ(config_from_json(outer).id(), "II-4");
}

TEST(RecordJson, RoundTrip) {
    ExperimentRecord r = small_record();
    r.timestamp = "2023-01-01T00:00:00Z";
    EXPECT_EQ(record_from_json(parse_json(record_to_string(r))), r);
    ExperimentRecord no_stamp = small_record();
    json j = record_to_json(no_stamp);
    EXPECT_FALSE(j.contains("timestamp"));
    EXPECT_EQ(record_from_json(j), no_stamp);
}

TEST(RecordJson, SchemaErrorsNameTheField) {
    json good = record_to_json(small_record());
    json j = good;
    j["jobs"][1]["counts"][2][7] = json::array({60, 50});
    EXPECT_EQ(schema_field(j), "jobs[1].counts[2][7]");
    j = good;
    j["jobs"][0]["counts"][0][3][1] = 2.5;
    EXPECT_EQ(schema_field(j), "jobs[0].counts[0][3][1]");
    j = good;
    j["jobs"][0].erase("shots");
    EXPECT_EQ(schema_field(j), "jobs[0].shots");
    j = good;
    j["jobs"] = json::array();
    EXPECT_EQ(schema_field(j), "jobs");
    j = good;
    j["jobs"][1]["counts"].erase(0);
    EXPECT_EQ(schema_field(j), "jobs[1].counts");
    j = good;
    j.erase("device");
    EXPECT_EQ(schema_field(j), "device");
    EXPECT_EQ(schema_field(json::array()), "$");
}

TEST(Json, MalformedText) {
    try {
        parse_json("{\"a\": ");
        FAIL();
    } catch (const SchemaError &e) {
        EXPECT_EQ(e.field(), "$");
    }
}

TEST(Files, AtomicWriteAndRead) {
    auto path = scratch("out.txt");
    write_text_file_atomic(path, "first\n");
    write_text_file_atomic(path, "second\n");
    EXPECT_EQ(read_text_file(path), "second\n");
    for (const auto &entry : std::filesystem::directory_iterator(path.parent_path())) {
        EXPECT_EQ(entry.path().filename().string().find(".tmp"), std::string::npos);
    }
    EXPECT_THROW(read_text_file(scratch("missing.json")), IoError);
    EXPECT_THROW(write_text_file_atomic("/nonexistent-dir/x.json", "x"), IoError);
}

TEST(SearchJson, QubitResultCarriesConfig) {
    SearchResult r = maximize_witness(default_problem(2, Field::kReal), 3, 1);
    json j = search_result_to_json(r);
    EXPECT_EQ(j["dim"], 2);
    EXPECT_EQ(j["restarts"], 3);
    ASSERT_TRUE(j.contains("config"));
    ConfigSet c = config_from_json(j);
    EXPECT_LT((predicted_prob_matrix(c).matrix() - r.best_matrix.matrix()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SearchJson, QutritLayout) {
    SearchResult r = maximize_witness(default_problem(3, Field::kReal), 3, 1);
    json j = search_result_to_json(r);
    EXPECT_FALSE(j.contains("config"));
    EXPECT_EQ(j["states"].size(), 5u);
    EXPECT_EQ(j["effects"].size(), 4u);
    EXPECT_EQ(j["prob_matrix"].size(), 5u);
    EXPECT_DOUBLE_EQ(j["best_W"].get<double>(), r.best_W);
    EXPECT_NEAR(j["target_W"].get<double>(), 27 * std::sqrt(2.0) / 64, 1e-15);
}
