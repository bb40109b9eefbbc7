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

#include "qdw/cli.h"

#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qdw/configs.h"
#include "qdw/extremal.h"
#include "qdw/io.h"
#include "qdw/noise.h"
#include "qdw/report.h"
#include "qdw/rng.h"
#include "qdw/sampler.h"

namespace qdw {

namespace {

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// A built-in id, or a path to a config (or d = 2 search result) JSON file.
ConfigSet resolve_config(const std::string &arg) {
    for (const auto &id : builtin_config_ids()) {
        if (id == arg) {
            return builtin_config(id);
        }
    }
    if (!std::filesystem::exists(arg)) {
        // Rethrown with the list of valid ids.
        return builtin_config(arg);
    }
    return config_from_json(parse_json(read_text_file(arg)));
}

double tidy(double x) { return std::abs(x) < 5e-7 ? 0.0 : x; }

std::string vec3(const Eigen::Vector3d &v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(6) << "(" << tidy(v.x()) << ", " << tidy(v.y()) << ", " << tidy(v.z())
      << ")";
    return s.str();
}

struct GenConfigArgs {
    std::string config;
    std::string out;
};

int cmd_gen_config(const GenConfigArgs &a, std::ostream &out) {
    ConfigSet cfg = resolve_config(a.config);
    std::string text = config_to_string(cfg);
    auto v = config_bloch_vectors(cfg);
    auto matches = measurement_preparation_matches(cfg);
    std::ostream &info = a.out.empty() ? std::cerr : out;
    info << "config " << cfg.id() << "\n";
    for (int j = 0; j < kNumPreparations; j++) {
        info << "  preparation " << j + 1 << "  n = " << vec3(v.preparations[j].vec()) << "\n";
    }
    for (int k = 0; k < kNumMeasurements; k++) {
        info << "  measurement " << k + 1 << "  m = " << vec3(v.measurements[k].vec());
        if (matches[k] >= 0) {
            info << "  (= preparation " << matches[k] + 1 << ")";
        }
        info << "\n";
    }
    info << "  predicted W = " << witness(predicted_prob_matrix(cfg)) << "\n";
    if (a.out.empty()) {
        out << text;
    } else {
        write_text_file_atomic(a.out, text);
    }
    return kExitOk;
}

struct SimulateArgs {
    std::string config = "II-0";
    int jobs = 1;
    std::int64_t shots = 1000;
    int reps = 1;
    std::uint64_t seed = 0;
    double leak_lambda = 0.0;
    double leak_mu = 0.0;
    double readout_e0 = 0.0;
    double readout_e1 = 0.0;
    double drift_eps = 0.0;
    std::string drift_mode = "angle-jitter";
    std::optional<double> coherent_leak;
    std::string device = "simulator";
    std::string out;
};

int cmd_simulate(const SimulateArgs &a, std::ostream &out) {
    ConfigSet cfg = resolve_config(a.config);
    ExperimentPlan plan{a.jobs, a.shots, a.reps, a.seed};
    validate_plan(plan);
    NoiseSpec noise;
    if (a.leak_lambda != 0.0 || a.leak_mu != 0.0) {
        noise.leakage = LeakageParams{a.leak_lambda, a.leak_mu};
    }
    noise.readout_e0 = a.readout_e0;
    noise.readout_e1 = a.readout_e1;
    if (a.drift_eps != 0.0) {
        noise.drift = DriftModel{a.drift_eps, a.jobs, parse_drift_mode(a.drift_mode)};
    }
    if (a.coherent_leak) {
        noise.coherent = CoherentLeakParams{*a.coherent_leak};
    }
    // Truth matrices and sampling draw from separate streams of the one seed.
    auto truth = per_job_truth(cfg, noise, a.jobs, derive_seed(a.seed, 0xD1F7));
    plan.seed = derive_seed(a.seed, 0x5A3B);
    ExperimentRecord record = simulate_record(truth, plan, cfg.id(), a.device);
    write_text_file_atomic(a.out, record_to_string(record));

    ProbMatrix mean_truth = pooled_mean(truth);
    WitnessResult predicted = z_score(mean_truth, plan.total_count());
    out << "wrote " << a.out << ": " << a.jobs << " jobs x " << a.shots << " shots x " << a.reps
        << " repetitions, config " << cfg.id() << "\n";
    out << "T = " << plan.total_count() << " per circuit\n";
    out << "true W = " << std::setprecision(10) << predicted.W << ", predicted sigma = " << predicted.sigma << "\n";
    return kExitOk;
}

struct AnalyzeArgs {
    std::string record;
    std::string out;
    std::string summary;
    std::string svg;
};

int cmd_analyze(const AnalyzeArgs &a, std::ostream &out) {
    ExperimentRecord record = record_from_json(parse_json(read_text_file(a.record)));
    AnalysisReport report;
    try {
        report = analyze_record(record);
    } catch (const std::domain_error &e) {
        throw SchemaError("jobs", e.what());
    }
    out << format_report(report);
    if (!a.out.empty()) {
        write_text_file_atomic(a.out, scatter_csv(report));
    }
    if (!a.summary.empty()) {
        write_text_file_atomic(a.summary, summary_csv(report));
    }
    if (!a.svg.empty()) {
        write_text_file_atomic(a.svg, scatter_svg(report));
    }
    return kExitOk;
}

struct AuditArgs {
    std::string config = "II-0";
    double eps = 0.01;
    int jobs = 20;
    int trials = 10000;
    std::uint64_t seed = 0;
    std::string mode = "both";
    std::string out;
};

int cmd_audit_drift(const AuditArgs &a, std::ostream &out) {
    ConfigSet cfg = resolve_config(a.config);
    if (!(a.eps >= 0.0)) {
        throw UsageError("--drift-eps must be >= 0");
    }
    std::vector<DriftMode> modes;
    if (a.mode == "both") {
        modes = {DriftMode::kAngleJitter, DriftMode::kColumnMix};
    } else {
        modes = {parse_drift_mode(a.mode)};
    }
    std::ostringstream csv;
    csv << std::setprecision(10);
    csv << "mode,epsilon,trials,n_jobs,bound,max_pooled_W,mean_pooled_W,bound_fraction,violations\n";
    bool all_pass = true;
    out << "drift audit, config " << cfg.id() << ", epsilon = " << a.eps << ", " << a.jobs << " jobs x "
        << a.trials << " trials\n";
    out << "bound 80 sqrt(2) eps^2 = " << std::setprecision(10) << drift_bound(a.eps) << "\n";
    for (DriftMode m : modes) {
        DriftAuditResult r = audit_drift(cfg, a.eps, a.jobs, a.trials, m, a.seed);
        all_pass = all_pass && r.pass();
        out << "  " << std::left << std::setw(13) << drift_mode_name(m) << " max |W| = " << r.max_pooled_W
            << "  (" << r.bound_fraction() << " of bound)  violations = " << r.violations << "  "
            << (r.pass() ? "PASS" : "FAIL") << "\n";
        csv << drift_mode_name(m) << ',' << r.epsilon << ',' << r.trials << ',' << a.jobs << ',' << r.bound << ','
            << r.max_pooled_W << ',' << r.mean_pooled_W << ',' << r.bound_fraction() << ',' << r.violations << '\n';
    }
    out << (all_pass ? "PASS" : "FAIL") << "\n";
    if (!a.out.empty()) {
        write_text_file_atomic(a.out, csv.str());
    }
    return kExitOk;
}

struct OptimizeArgs {
    int dim = 3;
    std::string field = "real";
    std::optional<int> restarts;
    std::uint64_t seed = 0;
    std::string effects;
    std::string method = "seesaw";
    std::string out;
};

int cmd_optimize(const OptimizeArgs &a, std::ostream &out) {
    ExtremalProblem problem = default_problem(a.dim, parse_field(a.field));
    if (!a.effects.empty()) {
        problem.effect_class = parse_effect_class(a.effects);
    }
    validate_problem(problem);
    SearchOptions options;
    if (a.method == "seesaw") {
        options.method = LocalMethod::kSeesaw;
    } else if (a.method == "nelder-mead") {
        options.method = LocalMethod::kNelderMead;
    } else {
        throw UsageError("unknown --method '" + a.method + "' (seesaw, nelder-mead)");
    }
    int restarts = a.restarts.value_or(default_restarts(a.dim));
    SearchResult r = maximize_witness(problem, restarts, a.seed, options);
    out << "d = " << a.dim << ", " << field_name(problem.field) << ", " << effect_class_name(problem.effect_class)
        << " effects, " << restarts << " restarts\n";
    out << std::setprecision(12) << "best |W| = " << r.best_W << " (restart " << r.best_restart << ")\n";
    if (auto target = known_extremum(problem)) {
        out << "target    = " << *target << "  (difference " << r.best_W - *target << ")\n";
    }
    out << "converged restarts: " << r.converged_restarts << " of " << restarts
        << (r.converged ? ", best converged" : ", best hit the iteration cap") << "\n";
    if (!a.out.empty()) {
        write_text_file_atomic(a.out, search_result_to_json(r).dump(2) + "\n");
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Determinant dimension witness toolkit for qubits"};
    app.require_subcommand(1);

    GenConfigArgs gen;
    auto *gen_cmd = app.add_subcommand("gen-config", "Write a canonical config file and show its Bloch vectors");
    gen_cmd->add_option("--config", gen.config, "Built-in id or config file")->required();
    gen_cmd->add_option("--out", gen.out, "Output file (stdout when omitted)");

    SimulateArgs sim;
    auto *sim_cmd = app.add_subcommand("simulate", "Sample an experiment record");
    sim_cmd->add_option("--config", sim.config, "Built-in id or config file")->capture_default_str();
    sim_cmd->add_option("--jobs", sim.jobs)->capture_default_str();
    sim_cmd->add_option("--shots", sim.shots)->capture_default_str();
    sim_cmd->add_option("--reps", sim.reps)->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed)->capture_default_str();
    sim_cmd->add_option("--leak-lambda", sim.leak_lambda, "Common leakage weight")->capture_default_str();
    sim_cmd->add_option("--leak-mu", sim.leak_mu, "Effect response on the leaked state")->capture_default_str();
    sim_cmd->add_option("--readout-e0", sim.readout_e0, "P(read 1 | 0)")->capture_default_str();
    sim_cmd->add_option("--readout-e1", sim.readout_e1, "P(read 0 | 1)")->capture_default_str();
    sim_cmd->add_option("--drift-eps", sim.drift_eps, "Per-job calibration drift bound")->capture_default_str();
    sim_cmd->add_option("--drift-mode", sim.drift_mode, "angle-jitter or column-mix")->capture_default_str();
    sim_cmd->add_option("--coherent-leak", sim.coherent_leak, "Qutrit leak angle per gate (radians)");
    sim_cmd->add_option("--device", sim.device)->capture_default_str();
    sim_cmd->add_option("--out", sim.out, "Record file")->required();

    AnalyzeArgs ana;
    auto *ana_cmd = app.add_subcommand("analyze", "Witness, errors and z-scores of a record");
    ana_cmd->add_option("record", ana.record, "Record file")->required();
    ana_cmd->add_option("--out", ana.out, "Per-job scatter CSV");
    ana_cmd->add_option("--summary", ana.summary, "Estimator summary CSV");
    ana_cmd->add_option("--svg", ana.svg, "Per-job scatter plot");

    AuditArgs aud;
    auto *aud_cmd = app.add_subcommand("audit-drift", "Check pooled W of drifting jobs against 80 sqrt(2) eps^2");
    aud_cmd->add_option("--config", aud.config)->capture_default_str();
    aud_cmd->add_option("--drift-eps", aud.eps)->capture_default_str();
    aud_cmd->add_option("--jobs", aud.jobs)->capture_default_str();
    aud_cmd->add_option("--trials", aud.trials)->capture_default_str();
    aud_cmd->add_option("--seed", aud.seed)->capture_default_str();
    aud_cmd->add_option("--drift-mode", aud.mode, "angle-jitter, column-mix or both")->capture_default_str();
    aud_cmd->add_option("--out", aud.out, "CSV report");

    OptimizeArgs opt;
    auto *opt_cmd = app.add_subcommand("optimize", "Maximize |W| over d-dimensional strategies");
    opt_cmd->add_option("--dim", opt.dim)->capture_default_str();
    opt_cmd->add_option("--field", opt.field, "real or complex")->capture_default_str();
    opt_cmd->add_option("--restarts", opt.restarts, "Default 50/200/500 for d = 2/3/4");
    opt_cmd->add_option("--seed", opt.seed)->capture_default_str();
    opt_cmd->add_option("--effects", opt.effects, "projective or general (default by dimension)");
    opt_cmd->add_option("--method", opt.method, "seesaw or nelder-mead")->capture_default_str();
    opt_cmd->add_option("--out", opt.out, "Search result JSON");

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (gen_cmd->parsed()) {
            try {
                return cmd_gen_config(gen, out);
            } catch (const SchemaError &e) {
                // A malformed config is a usage problem for this command.
                err << "error: " << e.what() << "\n";
                return kExitUsage;
            }
        }
        if (sim_cmd->parsed()) {
            return cmd_simulate(sim, out);
        }
        if (ana_cmd->parsed()) {
            return cmd_analyze(ana, out);
        }
        if (aud_cmd->parsed()) {
            return cmd_audit_drift(aud, out);
        }
        if (opt_cmd->parsed()) {
            return cmd_optimize(opt, out);
        }
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SchemaError &e) {
        err << "error: schema violation at " << e.what() << "\n";
        return kExitSchema;
    } catch (const ConfigLookupError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qdw
