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

#include <fstream>
#include <sstream>

namespace qdw {

using nlohmann::json;

namespace {

const json &require(const json &obj, const std::string &key, const std::string &path) {
    if (!obj.is_object()) {
        throw SchemaError(path.empty() ? "$" : path, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError(path.empty() ? key : path + "." + key, "missing field");
    }
    return *it;
}

std::string join(const std::string &path, const std::string &key) {
    return path.empty() ? key : path + "." + key;
}

double require_number(const json &v, const std::string &path) {
    if (!v.is_number()) {
        throw SchemaError(path, "expected a number");
    }
    double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw SchemaError(path, "expected a finite number");
    }
    return x;
}

std::int64_t require_integer(const json &v, const std::string &path) {
    if (!v.is_number_integer()) {
        throw SchemaError(path, "expected an integer");
    }
    return v.get<std::int64_t>();
}

std::string require_string(const json &v, const std::string &path) {
    if (!v.is_string()) {
        throw SchemaError(path, "expected a string");
    }
    return v.get<std::string>();
}

const json &require_array(const json &v, const std::string &path, std::size_t size) {
    if (!v.is_array()) {
        throw SchemaError(path, "expected an array");
    }
    if (size != 0 && v.size() != size) {
        throw SchemaError(path, "expected " + std::to_string(size) + " entries, found " + std::to_string(v.size()));
    }
    return v;
}

std::pair<double, double> angle_pair(const json &v, const std::string &path) {
    require_array(v, path, 2);
    return {require_number(v[0], path + "[0]"), require_number(v[1], path + "[1]")};
}

json complex_vector_json(const Eigen::VectorXcd &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); i++) {
        out.push_back({v[i].real(), v[i].imag()});
    }
    return out;
}

}  // namespace

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw IoError("error reading '" + path.string() + "'");
    }
    return ss.str();
}

void write_text_file_atomic(const std::filesystem::path &path, const std::string &contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        }
        out << contents;
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("error writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path.string() + "'");
    }
}

json config_to_json(const ConfigSet &config) {
    json preps = json::array();
    for (const auto &p : config.preparations()) {
        preps.push_back({p.alpha.radians(), p.beta.radians()});
    }
    json meas = json::array();
    for (const auto &m : config.measurements()) {
        meas.push_back({m.theta.radians(), m.phi.radians()});
    }
    json out = json::object();
    out["id"] = config.id();
    out["preparations"] = preps;
    out["measurements"] = meas;
    return out;
}

ConfigSet config_from_json(const json &input) {
    const json *j = &input;
    std::string path;
    if (input.is_object() && input.contains("config") && !input.contains("preparations")) {
        j = &input["config"];
        path = "config";
    }
    std::string id = require_string(require(*j, "id", path), join(path, "id"));
    const json &preps = require_array(require(*j, "preparations", path), join(path, "preparations"), kNumPreparations);
    const json &meas = require_array(require(*j, "measurements", path), join(path, "measurements"), kNumMeasurements);
    std::array<PrepAngles, kNumPreparations> p;
    for (int i = 0; i < kNumPreparations; i++) {
        auto [a, b] = angle_pair(preps[i], join(path, "preparations") + "[" + std::to_string(i) + "]");
        p[i] = {GateAngle(a), GateAngle(b)};
    }
    std::array<MeasAngles, kNumMeasurements> m;
    for (int i = 0; i < kNumMeasurements; i++) {
        auto [t, f] = angle_pair(meas[i], join(path, "measurements") + "[" + std::to_string(i) + "]");
        m[i] = {GateAngle(t), GateAngle(f)};
    }
    return ConfigSet(id, p, m);
}

std::string config_to_string(const ConfigSet &config) {
    return config_to_json(config).dump(2) + "\n";
}

json record_to_json(const ExperimentRecord &record) {
    json jobs = json::array();
    for (const auto &job : record.jobs) {
        json reps = json::array();
        for (const auto &rep : job.counts) {
            json cells = json::array();
            for (const auto &c : rep) {
                cells.push_back({c.ones, c.shots});
            }
            reps.push_back(std::move(cells));
        }
        json jj = json::object();
        jj["job_id"] = job.job_id;
        jj["shots"] = job.shots;
        jj["repetitions"] = job.repetitions;
        jj["counts"] = std::move(reps);
        jobs.push_back(std::move(jj));
    }
    json out = json::object();
    out["config_id"] = record.config_id;
    out["device"] = record.device;
    if (!record.timestamp.empty()) {
        out["timestamp"] = record.timestamp;
    }
    out["jobs"] = std::move(jobs);
    return out;
}

ExperimentRecord record_from_json(const json &j) {
    ExperimentRecord record;
    record.config_id = require_string(require(j, "config_id", ""), "config_id");
    record.device = require_string(require(j, "device", ""), "device");
    if (j.contains("timestamp")) {
        record.timestamp = require_string(j["timestamp"], "timestamp");
    }
    const json &jobs = require_array(require(j, "jobs", ""), "jobs", 0);
    if (jobs.empty()) {
        throw SchemaError("jobs", "at least one job is required");
    }
    for (std::size_t n = 0; n < jobs.size(); n++) {
        std::string jp = "jobs[" + std::to_string(n) + "]";
        const json &jj = jobs[n];
        JobRecord job;
        job.job_id = require_string(require(jj, "job_id", jp), jp + ".job_id");
        job.shots = require_integer(require(jj, "shots", jp), jp + ".shots");
        if (job.shots < 0) {
            throw SchemaError(jp + ".shots", "must be >= 0");
        }
        auto reps = require_integer(require(jj, "repetitions", jp), jp + ".repetitions");
        if (reps < 1) {
            throw SchemaError(jp + ".repetitions", "must be >= 1");
        }
        job.repetitions = static_cast<int>(reps);
        std::string cp = jp + ".counts";
        const json &counts = require_array(require(jj, "counts", jp), cp, static_cast<std::size_t>(reps));
        job.counts.resize(job.repetitions);
        for (int r = 0; r < job.repetitions; r++) {
            std::string rp = cp + "[" + std::to_string(r) + "]";
            const json &cells = require_array(counts[r], rp, kNumCircuits);
            for (int c = 0; c < kNumCircuits; c++) {
                std::string cellp = rp + "[" + std::to_string(c) + "]";
                const json &pair = require_array(cells[c], cellp, 2);
                CellCount cc{require_integer(pair[0], cellp + "[0]"), require_integer(pair[1], cellp + "[1]")};
                if (cc.shots < 0 || cc.ones < 0 || cc.ones > cc.shots) {
                    throw SchemaError(cellp, "requires 0 <= ones <= shots");
                }
                job.counts[r][c] = cc;
            }
        }
        record.jobs.push_back(std::move(job));
    }
    return record;
}

std::string record_to_string(const ExperimentRecord &record) {
    return record_to_json(record).dump() + "\n";
}

json parse_json(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw SchemaError("$", std::string("malformed JSON: ") + e.what());
    }
}

std::optional<ConfigSet> strategy_to_config(const StrategyPoint &point, const std::string &id) {
    if (point.preparations[0].size() != 2) {
        return std::nullopt;
    }
    std::array<Eigen::Vector3d, kNumPreparations> n;
    for (int j = 0; j < kNumPreparations; j++) {
        n[j] = bloch_of_state(point.preparations[j]).vec();
    }
    std::array<Eigen::Vector3d, kNumMeasurements> m;
    for (int k = 0; k < kNumMeasurements; k++) {
        const Eigen::MatrixXcd &e = point.effects[k];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
        auto ev = es.eigenvalues();
        if (std::abs(ev[0]) > 1e-9 || std::abs(ev[1] - 1.0) > 1e-9) {
            return std::nullopt;
        }
        m[k] = bloch_of_state(es.eigenvectors().col(1)).vec();
    }
    try {
        return config_from_bloch(id, n, m);
    } catch (const std::domain_error &) {
        return std::nullopt;
    }
}

json search_result_to_json(const SearchResult &result) {
    json out = json::object();
    out["dim"] = result.problem.dim;
    out["field"] = std::string(field_name(result.problem.field));
    out["effect_class"] = std::string(effect_class_name(result.problem.effect_class));
    out["best_W"] = result.best_W;
    if (auto target = known_extremum(result.problem)) {
        out["target_W"] = *target;
    }
    out["restarts"] = result.restarts;
    out["best_restart"] = result.best_restart;
    out["converged"] = result.converged;
    out["converged_restarts"] = result.converged_restarts;
    json p = json::array();
    for (int k = 0; k < 5; k++) {
        json row = json::array();
        for (int j = 0; j < 5; j++) {
            row.push_back(result.best_matrix(k, j));
        }
        p.push_back(row);
    }
    out["prob_matrix"] = p;
    json preps = json::array();
    for (const auto &v : result.best_point.preparations) {
        preps.push_back(complex_vector_json(v));
    }
    out["states"] = preps;
    json effects = json::array();
    for (const auto &m : result.best_point.effects) {
        json rows = json::array();
        for (Eigen::Index r = 0; r < m.rows(); r++) {
            rows.push_back(complex_vector_json(m.row(r).transpose()));
        }
        effects.push_back(rows);
    }
    out["effects"] = effects;
    if (auto cfg = strategy_to_config(result.best_point, "search-d2")) {
        out["config"] = config_to_json(*cfg);
    }
    return out;
}

}  // namespace qdw
