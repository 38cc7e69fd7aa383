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

#include <CLI11.hpp>
#include <iostream>

#include "qpe/cli.h"
#include "qpe/oracle.h"

namespace {

constexpr int kUsageError = 1;
constexpr int kDomainError = 2;

}  // namespace

int main(int argc, char **argv) {
    using namespace qpe;

    CLI::App app{"Quasiprobability Monte Carlo estimation of qudit circuit outcome probabilities"};
    app.require_subcommand(1);

    std::string path;
    auto *inspect = app.add_subcommand("inspect", "Print negativities of a circuit as JSON");
    inspect->add_option("circuit", path, "Circuit file")->required();

    double plan_eps = 0.01, plan_delta = 0.05, plan_bound = 1.0;
    std::string plan_circuit;
    auto *plan = app.add_subcommand("plan", "Print Hoeffding sample counts");
    plan->add_option("--epsilon", plan_eps, "Additive error")->check(CLI::Range(0.0, 1.0));
    plan->add_option("--delta", plan_delta, "Failure probability")->check(CLI::Range(0.0, 1.0));
    auto *bound_opt = plan->add_option("--bound", plan_bound, "Negativity bound of the estimator");
    plan->add_option("--circuit", plan_circuit, "Take the forward and reverse bounds from a circuit file")
        ->excludes(bound_opt);

    cli::EstimateOptions est;
    std::string direction = "auto";
    auto *estimate = app.add_subcommand("estimate", "Estimate the outcome probability and append a CSV row");
    estimate->add_option("circuit", est.circuit_path, "Circuit file")->required();
    estimate->add_option("--epsilon", est.epsilon, "Additive error")->check(CLI::Range(0.0, 1.0));
    estimate->add_option("--delta", est.delta, "Failure probability")->check(CLI::Range(0.0, 1.0));
    estimate->add_option("--direction", direction, "forward, reverse or auto")
        ->check(CLI::IsMember({"forward", "reverse", "auto"}));
    estimate->add_option("--seed", est.seed, "Random seed");
    estimate->add_option("--out", est.out_path, "CSV file to append to");
    estimate->add_flag("--exact", est.exact, "Also compute the exact probability");

    auto *oracle = app.add_subcommand("oracle", "Exact probability, circuit negativity and variances as JSON");
    oracle->add_option("circuit", path, "Circuit file")->required();

    cli::Fig1Options fig;
    auto *fig1 = app.add_subcommand("fig1", "Random Clifford circuits with k magic states, one CSV row per run");
    fig1->add_option("--qudits", fig.qudits, "Qudit count");
    fig1->add_option("--depth", fig.depth, "Gates per circuit");
    fig1->add_option("--kmax", fig.kmax, "Largest number of magic states");
    fig1->add_option("--epsilon", fig.epsilon, "Additive error")->check(CLI::Range(0.0, 1.0));
    fig1->add_option("--delta", fig.delta, "Failure probability")->check(CLI::Range(0.0, 1.0));
    fig1->add_option("--trials", fig.trials, "Circuits per k");
    fig1->add_option("--seed", fig.seed, "Random seed");
    fig1->add_option("--out", fig.out_path, "CSV file to append to");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        unsigned threads = cli::threads_from_env();
        if (*inspect) {
            cli::cmd_inspect(path, std::cout);
        } else if (*plan) {
            if (!plan_circuit.empty()) {
                CircuitRep rep = represent(cli::load_circuit(plan_circuit));
                std::cout << "forward_samples=" << plan_samples(plan_eps, plan_delta, rep.m_forward).samples
                          << " reverse_samples=" << plan_samples(plan_eps, plan_delta, rep.m_reverse).samples;
            } else {
                std::cout << "samples=" << plan_samples(plan_eps, plan_delta, plan_bound).samples;
            }
            std::cout << " baseline_samples=" << plan_direct(plan_eps, plan_delta) << "\n";
        } else if (*estimate) {
            est.direction = parse_direction(direction);
            est.threads = threads;
            cli::cmd_estimate(est, std::cout);
        } else if (*oracle) {
            cli::cmd_oracle(path, std::cout);
        } else if (*fig1) {
            fig.threads = threads;
            cli::cmd_fig1(fig, std::cout);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomainError;
    }
    return 0;
}
