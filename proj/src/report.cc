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

#include "qdw/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qdw/configs.h"

namespace qdw {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10e", v);
    return buf;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::optional<ProbMatrix> builtin_prediction(const std::string &id) {
    for (const auto &known : builtin_config_ids()) {
        if (known == id) {
            return predicted_prob_matrix(builtin_config(id));
        }
    }
    return std::nullopt;
}

}  // namespace

bool AnalysisReport::pass() const {
    if (z_defined.first && std::abs(z_scores.first) >= kFailZ) {
        return false;
    }
    if (z_defined.second && std::abs(z_scores.second) >= kFailZ) {
        return false;
    }
    return true;
}

AnalysisReport analyze_record(const ExperimentRecord &record) {
    AnalysisReport r;
    r.config_id = record.config_id;
    r.device = record.device;
    r.method_i = estimate_per_job(record);
    r.method_ii = estimate_pooled(record);
    r.sigma_formula = r.method_ii.W_stderr;
    r.sigma_formula_per_job = per_job_formula_sigma(record);
    if (r.method_i.stderr_defined && r.method_i.W_stderr > 0.0) {
        r.z_scores.first = r.method_i.W_mean / r.method_i.W_stderr;
        r.z_defined.first = true;
    }
    if (r.sigma_formula > 0.0) {
        r.z_scores.second = r.method_ii.W_mean / r.sigma_formula;
        r.z_defined.second = true;
    }
    for (std::size_t i = 0; i < r.method_i.per_job_W.size(); i++) {
        int n = r.method_i.job_indices[i];
        const JobRecord &job = record.jobs[n];
        ScatterPoint s;
        s.job_index = n;
        s.job_id = job.job_id;
        s.W = r.method_i.per_job_W[i];
        s.sigma = std::sqrt(witness_variance(empirical_prob_matrix(job), cell_shot_totals(job)));
        r.per_job_scatter.push_back(s);
    }
    r.ideal = builtin_prediction(record.config_id);
    r.warnings = r.method_i.warnings;
    return r;
}

std::string format_report(const AnalysisReport &r) {
    std::ostringstream out;
    out << "config " << (r.config_id.empty() ? "(unnamed)" : r.config_id) << " on " << r.device << ", "
        << r.per_job_scatter.size() << " jobs, T = " << r.method_ii.total_count << " per circuit\n";
    out << "  (i)  per-job mean  W = " << num(r.method_i.W_mean) << "  stderr = "
        << (r.method_i.stderr_defined ? num(r.method_i.W_stderr) : std::string("undefined"))
        << "  z = " << (r.z_defined.first ? fixed(r.z_scores.first, 2) : std::string("undefined")) << "\n";
    out << "  (ii) pooled        W = " << num(r.method_ii.W_mean) << "  sigma = " << num(r.sigma_formula)
        << "  z = " << (r.z_defined.second ? fixed(r.z_scores.second, 2) : std::string("undefined")) << "\n";
    out << "  variance formula per job, propagated to the mean: " << num(r.sigma_formula_per_job) << "\n";
    out << "  pooled probabilities p_kj (rows: measurements, columns: preparations)";
    out << (r.ideal ? ", ideal in brackets\n" : "\n");
    for (int k = 0; k < kNumMeasurements; k++) {
        out << "   ";
        for (int j = 0; j < kNumPreparations; j++) {
            out << ' ' << fixed(r.method_ii.p_hat(k, j), 5);
            if (r.ideal) {
                out << " [" << fixed((*r.ideal)(k, j), 5) << "]";
            }
        }
        out << "\n";
    }
    for (const auto &w : r.warnings) {
        out << "  warning: " << w << "\n";
    }
    out << (r.pass() ? "PASS" : "FAIL") << ": |z| " << (r.pass() ? "<" : ">=") << " " << kFailZ << "\n";
    return out.str();
}

std::string scatter_csv(const AnalysisReport &r) {
    std::ostringstream out;
    out << "job_index,job_id,W,sigma_formula\n";
    for (const auto &s : r.per_job_scatter) {
        out << s.job_index << ',' << s.job_id << ',' << num(s.W) << ',' << num(s.sigma) << '\n';
    }
    return out.str();
}

std::string summary_csv(const AnalysisReport &r) {
    std::ostringstream out;
    out << "method,W,stderr,sigma_formula,z,n_jobs\n";
    out << "per-job," << num(r.method_i.W_mean) << ','
        << (r.method_i.stderr_defined ? num(r.method_i.W_stderr) : std::string("nan")) << ','
        << num(r.sigma_formula_per_job) << ',' << (r.z_defined.first ? num(r.z_scores.first) : std::string("nan"))
        << ',' << r.method_i.per_job_W.size() << '\n';
    out << "pooled," << num(r.method_ii.W_mean) << ',' << num(r.sigma_formula) << ',' << num(r.sigma_formula) << ','
        << (r.z_defined.second ? num(r.z_scores.second) : std::string("nan")) << ','
        << r.method_ii.job_indices.size() << '\n';
    return out.str();
}

std::string scatter_svg(const AnalysisReport &r) {
    const double width = 640;
    const double height = 400;
    const double margin = 60;
    double lo = std::min(r.method_i.W_mean, r.method_ii.W_mean);
    double hi = std::max(r.method_i.W_mean, r.method_ii.W_mean);
    int max_index = 1;
    for (const auto &s : r.per_job_scatter) {
        lo = std::min(lo, s.W - s.sigma);
        hi = std::max(hi, s.W + s.sigma);
        max_index = std::max(max_index, s.job_index);
    }
    if (hi - lo <= 0.0) {
        hi += 1e-6;
        lo -= 1e-6;
    }
    auto sx = [&](double i) {
        return margin + (width - 2 * margin) * i / max_index;
    };
    auto sy = [&](double w) {
        return height - margin - (height - 2 * margin) * (w - lo) / (hi - lo);
    };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 20 << "\" text-anchor=\"middle\">job</text>\n";
    out << "<text x=\"15\" y=\"" << height / 2 << "\" transform=\"rotate(-90 15 " << height / 2
        << ")\" text-anchor=\"middle\">W</text>\n";
    out << "<text x=\"" << margin << "\" y=\"" << margin - 10 << "\">" << num(hi) << "</text>\n";
    out << "<text x=\"" << margin << "\" y=\"" << height - margin + 20 << "\">" << num(lo) << "</text>\n";
    if (lo < 0.0 && hi > 0.0) {
        out << "<line x1=\"" << margin << "\" y1=\"" << sy(0) << "\" x2=\"" << width - margin << "\" y2=\"" << sy(0)
            << "\" stroke=\"gray\" stroke-dasharray=\"4\"/>\n";
    }
    for (const auto &s : r.per_job_scatter) {
        double x = sx(s.job_index);
        out << "<line x1=\"" << x << "\" y1=\"" << sy(s.W - s.sigma) << "\" x2=\"" << x << "\" y2=\""
            << sy(s.W + s.sigma) << "\" stroke=\"black\"/>\n";
        out << "<circle cx=\"" << x << "\" cy=\"" << sy(s.W) << "\" r=\"3\" fill=\"black\"/>\n";
    }
    out << "<line x1=\"" << margin << "\" y1=\"" << sy(r.method_i.W_mean) << "\" x2=\"" << width - margin
        << "\" y2=\"" << sy(r.method_i.W_mean) << "\" stroke=\"red\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << sy(r.method_ii.W_mean) << "\" x2=\"" << width - margin
        << "\" y2=\"" << sy(r.method_ii.W_mean) << "\" stroke=\"blue\"/>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace qdw
