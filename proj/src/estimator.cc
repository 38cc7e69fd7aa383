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

#include "qpe/estimator.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

namespace qpe {

namespace {

void check_accuracy(double epsilon, double delta) {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    if (!(delta > 0 && delta < 1)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
}

// Neumaier compensated sum.
struct CompensatedSum {
    double sum = 0;
    double carry = 0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

}  // namespace

SamplingPlan plan_samples(double epsilon, double delta, double bound) {
    check_accuracy(epsilon, delta);
    if (!(bound >= 0) || !std::isfinite(bound)) {
        throw std::invalid_argument("negativity bound must be a finite nonnegative number");
    }
    double raw = 2.0 * bound * bound * std::log(2.0 / delta) / (epsilon * epsilon);
    if (raw > 9.0e18) {
        throw std::invalid_argument("required sample count overflows");
    }
    uint64_t samples = std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(raw)));
    return SamplingPlan{epsilon, delta, bound, samples};
}

uint64_t plan_direct(double epsilon, double delta) {
    check_accuracy(epsilon, delta);
    return static_cast<uint64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

namespace {

inline size_t local_column(const GateQuasi &g, std::span<const uint32_t> point, size_t points_per_qudit) {
    size_t col = point[g.support[0]];
    if (g.support.size() == 2) {
        col = col * points_per_qudit + point[g.support[1]];
    }
    return col;
}

inline void store_local(const GateQuasi &g, std::span<uint32_t> point, size_t row, size_t points_per_qudit) {
    if (g.support.size() == 2) {
        point[g.support[0]] = static_cast<uint32_t>(row / points_per_qudit);
        point[g.support[1]] = static_cast<uint32_t>(row % points_per_qudit);
    } else {
        point[g.support[0]] = static_cast<uint32_t>(row);
    }
}

inline size_t draw(const SamplingTable &t, size_t col, CounterRng &rng) {
    // Deterministic columns consume no randomness.
    if (t.column_size(col) == 1) {
        return t.col_begin[col];
    }
    return t.pick(col, rng.uniform());
}

}  // namespace

Trajectory sample_trajectory(const CircuitRep &rep, CounterRng &rng) {
    size_t n = rep.num_qudits;
    size_t ppq = rep.points_per_qudit();
    Trajectory t;
    t.num_qudits = n;
    t.points.resize(n * (rep.num_gates() + 1));
    std::span<uint32_t> cur(t.points.data(), n);
    for (size_t q = 0; q < n; q++) {
        const auto &table = rep.initial_tables[q];
        cur[q] = table.rows[draw(table, 0, rng)];
    }
    for (size_t l = 0; l < rep.num_gates(); l++) {
        std::span<uint32_t> next(t.points.data() + (l + 1) * n, n);
        std::copy(cur.begin(), cur.end(), next.begin());
        const auto &g = rep.gates[l];
        const auto &table = rep.gate_tables[l];
        size_t e = draw(table, local_column(g, next, ppq), rng);
        store_local(g, next, table.rows[e], ppq);
        cur = next;
    }
    return t;
}

double sample_estimate(const CircuitRep &rep, CounterRng &rng, std::vector<uint32_t> &scratch) {
    size_t n = rep.num_qudits;
    size_t ppq = rep.points_per_qudit();
    scratch.resize(n);
    std::span<uint32_t> cur(scratch);
    double value = 1;
    for (size_t q = 0; q < n; q++) {
        const auto &table = rep.initial_tables[q];
        size_t e = draw(table, 0, rng);
        cur[q] = table.rows[e];
        value *= table.factor[e];
    }
    for (size_t l = 0; l < rep.num_gates(); l++) {
        const auto &g = rep.gates[l];
        const auto &table = rep.gate_tables[l];
        size_t e = draw(table, local_column(g, cur, ppq), rng);
        store_local(g, cur, table.rows[e], ppq);
        value *= table.factor[e];
    }
    for (size_t q = 0; q < n; q++) {
        value *= rep.effect.per_qudit[q][cur[q]];
    }
    return value;
}

double estimate_single(const CircuitRep &rep, const Trajectory &t) {
    size_t n = rep.num_qudits;
    size_t ppq = rep.points_per_qudit();
    if (t.num_qudits != n || t.points.size() != n * (rep.num_gates() + 1)) {
        throw std::invalid_argument("trajectory does not match the circuit representation");
    }
    for (uint32_t p : t.points) {
        if (p >= ppq) {
            throw std::invalid_argument("trajectory point index out of range");
        }
    }
    auto sign = [](double w) {
        if (w == 0) {
            throw std::invalid_argument("trajectory visits a zero-weight transition");
        }
        return w > 0 ? 1.0 : -1.0;
    };

    auto start = t.point(0);
    double value = rep.m_state * sign(rep.state.value(start));
    for (size_t l = 0; l < rep.num_gates(); l++) {
        const auto &g = rep.gates[l];
        auto before = t.point(l);
        auto after = t.point(l + 1);
        for (size_t q = 0; q < n; q++) {
            bool in_support = std::find(g.support.begin(), g.support.end(), q) != g.support.end();
            if (!in_support && before[q] != after[q]) {
                throw std::invalid_argument("trajectory moves a qudit outside the gate support");
            }
        }
        size_t in = local_column(g, before, ppq);
        size_t out = local_column(g, after, ppq);
        value *= g.point_negativity[in] * sign(g(out, in));
    }
    return value * rep.effect.value(t.point(rep.num_gates()));
}

std::string_view direction_name(Direction d) {
    switch (d) {
        case Direction::Forward:
            return "forward";
        case Direction::Reverse:
            return "reverse";
        case Direction::Auto:
            return "auto";
    }
    return "?";
}

Direction parse_direction(std::string_view name) {
    if (name == "forward") {
        return Direction::Forward;
    }
    if (name == "reverse") {
        return Direction::Reverse;
    }
    if (name == "auto") {
        return Direction::Auto;
    }
    throw std::invalid_argument("unknown direction '" + std::string(name) + "'");
}

EstimatorResult run(const CircuitRep &rep, const SamplingPlan &plan, uint64_t seed, Direction direction,
                    unsigned threads) {
    auto started = std::chrono::steady_clock::now();
    check_accuracy(plan.epsilon, plan.delta);
    if (plan.samples == 0) {
        throw std::invalid_argument("sampling plan has zero samples");
    }

    EstimatorResult result;
    result.plan = plan;
    result.seed = seed;
    result.m_forward = rep.m_forward;
    result.m_reverse = rep.m_reverse;
    if (direction == Direction::Auto) {
        direction = rep.m_reverse < rep.m_forward ? Direction::Reverse : Direction::Forward;
        double bound = direction == Direction::Reverse ? rep.m_reverse : rep.m_forward;
        result.plan = plan_samples(plan.epsilon, plan.delta, bound);
    }
    result.direction = direction;

    std::optional<CircuitRep> reversed;
    if (direction == Direction::Reverse) {
        reversed = reverse_rep(rep);
    }
    const CircuitRep &target = reversed ? *reversed : rep;

    uint64_t samples = result.plan.samples;
    uint64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
    std::vector<CompensatedSum> chunk_sum(chunks), chunk_sq(chunks);

    auto work = [&](std::atomic<uint64_t> &next) {
        std::vector<uint32_t> scratch;
        for (uint64_t c = next++; c < chunks; c = next++) {
            uint64_t lo = c * kChunkSize;
            uint64_t hi = std::min(samples, lo + kChunkSize);
            CompensatedSum s, sq;
            for (uint64_t i = lo; i < hi; i++) {
                CounterRng rng(seed, i);
                double v = sample_estimate(target, rng, scratch);
                s.add(v);
                sq.add(v * v);
            }
            chunk_sum[c] = s;
            chunk_sq[c] = sq;
        }
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<uint64_t>(workers, chunks));
    std::atomic<uint64_t> next{0};
    if (workers <= 1) {
        work(next);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back(work, std::ref(next));
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    CompensatedSum total, total_sq;
    for (uint64_t c = 0; c < chunks; c++) {
        total.add(chunk_sum[c].sum);
        total.add(chunk_sum[c].carry);
        total_sq.add(chunk_sq[c].sum);
        total_sq.add(chunk_sq[c].carry);
    }
    result.sum = total.value();
    result.sum_sq = total_sq.value();
    result.samples_used = samples;
    result.p_hat = result.sum / static_cast<double>(samples);
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return result;
}

}  // namespace qpe
