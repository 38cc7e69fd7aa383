// Copyright 2026 The qpe Authors
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

#include "qpe/cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "qpe/oracle.h"

namespace qpe::cli {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::optional<double> RunRecord::abs_error() const {
    if (!p_exact) {
        return std::nullopt;
    }
    return std::abs(p_hat - *p_exact);
}

std::string RunRecord::csv_row() const {
    std::ostringstream s;
    s << circuit << ',' << direction_name(direction) << ',' << fmt_double(m_forward) << ','
      << fmt_double(m_reverse) << ',' << fmt_double(epsilon) << ',' << fmt_double(delta) << ',' << samples << ','
      << baseline_samples << ',' << fmt_double(p_hat) << ',';
    if (p_exact) {
        s << fmt_double(*p_exact);
    }
    s << ',';
    if (auto err = abs_error()) {
        s << fmt_double(*err);
    }
    char wall[32];
    std::snprintf(wall, sizeof(wall), "%.3f", wall_time_ms);
    s << ',' << seed << ',' << wall;
    return s.str();
}

unsigned threads_from_env() {
    const char *env = std::getenv("QPE_THREADS");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    char *end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096) {
        throw std::invalid_argument("QPE_THREADS must be a positive integer");
    }
    return static_cast<unsigned>(v);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open '" + path + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Circuit load_circuit(const std::string &path) {
    std::string text = read_file(path);
    try {
        return parse_circuit(text);
    } catch (const ParseError &e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

nlohmann::json inspect_json(const CircuitRep &rep) {
    using nlohmann::json;
    json j;
    j["dim"] = rep.frame->dim();
    j["qudits"] = rep.num_qudits;
    j["gates"] = rep.num_gates();

    json state = json::array();
    for (size_t q = 0; q < rep.num_qudits; q++) {
        state.push_back({{"qudit", q},
                         {"negativity", l1_norm(rep.state.per_qudit[q])},
                         {"max_abs", max_abs(rep.state.per_qudit[q])}});
    }
    j["state"] = state;
    j["M_state"] = rep.m_state;
    j["state_max_abs"] = rep.max_state;

    json effect = json::array();
    for (size_t q = 0; q < rep.num_qudits; q++) {
        effect.push_back({{"qudit", q},
                          {"negativity", l1_norm(rep.effect.per_qudit[q])},
                          {"max_abs", rep.effect.max_abs_per_qudit[q]}});
    }
    j["effect"] = effect;
    j["M_effect"] = rep.m_effect;
    j["effect_max_abs"] = rep.max_effect;

    json gates = json::array();
    for (size_t l = 0; l < rep.num_gates(); l++) {
        gates.push_back({{"index", l},
                         {"name", rep.gate_labels[l]},
                         {"support", rep.gates[l].support},
                         {"negativity", rep.gates[l].max_negativity},
                         {"adjoint_negativity", rep.adjoint_gates[l].max_negativity}});
    }
    j["gate_negativities"] = gates;

    j["M_forward"] = rep.m_forward;
    j["M_reverse"] = rep.m_reverse;
    j["reverse_over_forward"] = rep.m_forward > 0 ? json(rep.m_reverse / rep.m_forward) : json(nullptr);
    return j;
}

void cmd_inspect(const std::string &circuit_path, std::ostream &out) {
    CircuitRep rep = represent(load_circuit(circuit_path));
    out << inspect_json(rep).dump(2) << "\n";
}

void append_csv(const std::string &path, const std::vector<RunRecord> &rows) {
    bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream f(path, std::ios::app);
    if (!f) {
        throw std::invalid_argument("cannot open '" + path + "' for writing");
    }
    if (fresh) {
        f << kCsvHeader << "\n";
    }
    for (const auto &r : rows) {
        f << r.csv_row() << "\n";
    }
}

RunRecord cmd_estimate(const EstimateOptions &options, std::ostream &out) {
    Circuit circuit = load_circuit(options.circuit_path);
    CircuitRep rep = represent(circuit);

    Direction dir = options.direction;
    if (dir == Direction::Reverse && rep.m_effect == 0) {
        throw std::invalid_argument("the reverse direction is undefined for a zero effect");
    }
    double bound = dir == Direction::Reverse ? rep.m_reverse : rep.m_forward;
    SamplingPlan plan = plan_samples(options.epsilon, options.delta, bound);
    EstimatorResult result = run(rep, plan, options.seed, dir, options.threads);

    RunRecord rec;
    rec.circuit = options.circuit_path;
    rec.direction = result.direction;
    rec.m_forward = result.m_forward;
    rec.m_reverse = result.m_reverse;
    rec.epsilon = options.epsilon;
    rec.delta = options.delta;
    rec.samples = result.samples_used;
    rec.baseline_samples = plan_direct(options.epsilon, options.delta);
    rec.p_hat = result.p_hat;
    if (options.exact) {
        rec.p_exact = born_exact(circuit);
    }
    rec.seed = options.seed;
    rec.wall_time_ms = result.elapsed_ms;

    if (options.out_path.empty()) {
        out << kCsvHeader << "\n" << rec.csv_row() << "\n";
    } else {
        append_csv(options.out_path, {rec});
        out << "p_hat=" << fmt_double(rec.p_hat) << " samples=" << rec.samples
            << " baseline_samples=" << rec.baseline_samples << " direction=" << direction_name(rec.direction)
            << "\n";
    }
    return rec;
}

nlohmann::json oracle_json(const Circuit &circuit) {
    double p = born_exact(circuit);
    CircuitRep rep = represent(circuit);
    VarianceReport report = variance_report(rep);
    nlohmann::json j;
    j["P"] = p;
    j["trajectory_sum"] = report.born;
    j["M_c"] = report.m_c;
    j["v_min"] = report.v_min;
    j["v_markov"] = report.v_markov;
    j["mean_markov"] = report.mean_markov;
    if (rep.m_effect > 0) {
        j["mean_markov_reverse"] = markov_moments(reverse_rep(rep)).mean;
    }
    j["M_forward"] = rep.m_forward;
    j["M_reverse"] = rep.m_reverse;
    return j;
}

void cmd_oracle(const std::string &circuit_path, std::ostream &out) {
    out << oracle_json(load_circuit(circuit_path)).dump(2) << "\n";
}

std::vector<RunRecord> cmd_fig1(const Fig1Options &o, std::ostream &out) {
    if (o.kmax > o.qudits) {
        throw std::invalid_argument("kmax must not exceed the qudit count");
    }
    if (ipow(3, o.qudits) > kMaxDenseDim || o.qudits > 32) {
        throw CapExceeded("fig1 with " + std::to_string(o.qudits) + " qudits exceeds oracle cap");
    }
    uint64_t baseline = plan_direct(o.epsilon, o.delta);
    std::vector<RunRecord> rows;
    for (size_t k = 0; k <= o.kmax; k++) {
        for (size_t trial = 1; trial <= o.trials; trial++) {
            uint64_t circuit_seed = derive_seed(o.seed, k, trial);
            uint64_t run_seed = derive_seed(circuit_seed, 0x657374ull);
            Circuit c = random_clifford_circuit(o.qudits, o.depth, k, circuit_seed);
            CircuitRep rep = represent(c);
            SamplingPlan plan = plan_samples(o.epsilon, o.delta, rep.m_forward);
            EstimatorResult res = run(rep, plan, run_seed, Direction::Forward, o.threads);

            RunRecord rec;
            rec.circuit = "fig1-N" + std::to_string(o.qudits) + "-D" + std::to_string(o.depth) + "-k" +
                          std::to_string(k) + "-t" + std::to_string(trial);
            rec.direction = Direction::Forward;
            rec.m_forward = rep.m_forward;
            rec.m_reverse = rep.m_reverse;
            rec.epsilon = o.epsilon;
            rec.delta = o.delta;
            rec.samples = res.samples_used;
            rec.baseline_samples = baseline;
            rec.p_hat = res.p_hat;
            rec.p_exact = born_exact(c);
            rec.seed = run_seed;
            rec.wall_time_ms = res.elapsed_ms;
            rows.push_back(rec);
        }
    }
    if (o.out_path.empty()) {
        out << kCsvHeader << "\n";
        for (const auto &r : rows) {
            out << r.csv_row() << "\n";
        }
    } else {
        append_csv(o.out_path, rows);
        out << "wrote " << rows.size() << " rows to " << o.out_path << "\n";
    }
    return rows;
}

}  // namespace qpe::cli
