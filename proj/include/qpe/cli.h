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

#ifndef QPE_CLI_H
#define QPE_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpe/circuit_rep.h"
#include "qpe/estimator.h"

namespace qpe::cli {

inline constexpr const char *kCsvHeader =
    "circuit,direction,M_forward,M_reverse,epsilon,delta,samples,baseline_samples,p_hat,p_exact,abs_error,seed,"
    "wall_time_ms";

struct RunRecord {
    std::string circuit;
    Direction direction = Direction::Forward;
    double m_forward = 0;
    double m_reverse = 0;
    double epsilon = 0;
    double delta = 0;
    uint64_t samples = 0;
    uint64_t baseline_samples = 0;
    double p_hat = 0;
    std::optional<double> p_exact;
    uint64_t seed = 0;
    double wall_time_ms = 0;

    std::optional<double> abs_error() const;
    /// One CSV line without the trailing newline.
    std::string csv_row() const;
};

/// Worker count from QPE_THREADS, or 0 (hardware concurrency) when unset.
unsigned threads_from_env();

std::string read_file(const std::string &path);
Circuit load_circuit(const std::string &path);

/// Negativity diagnostics of a representation.
nlohmann::json inspect_json(const CircuitRep &rep);
void cmd_inspect(const std::string &circuit_path, std::ostream &out);

struct EstimateOptions {
    std::string circuit_path;
    double epsilon = 0.01;
    double delta = 0.05;
    Direction direction = Direction::Auto;
    uint64_t seed = 1;
    /// Empty writes the header and row to `out` instead of appending.
    std::string out_path;
    /// Also compute the exact probability with the dense oracle.
    bool exact = false;
    unsigned threads = 0;
};
RunRecord cmd_estimate(const EstimateOptions &options, std::ostream &out);

nlohmann::json oracle_json(const Circuit &circuit);
void cmd_oracle(const std::string &circuit_path, std::ostream &out);

struct Fig1Options {
    size_t qudits = 8;
    size_t depth = 100;
    size_t kmax = 3;
    double epsilon = 0.01;
    double delta = 0.05;
    size_t trials = 20;
    uint64_t seed = 1;
    std::string out_path;
    unsigned threads = 0;
};
std::vector<RunRecord> cmd_fig1(const Fig1Options &options, std::ostream &out);

/// Appends rows to a CSV file, writing the header first if the file is new
/// or empty.
void append_csv(const std::string &path, const std::vector<RunRecord> &rows);

}  // namespace qpe::cli

#endif
