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

#include "qpe/oracle.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace qpe {

double born_exact(const Circuit &circuit) {
    validate_circuit(circuit);
    size_t d = circuit.dim;
    size_t n = circuit.num_qudits;
    if (n > 32 || ipow(d, n) > kMaxDenseDim) {
        throw CapExceeded("circuit of " + std::to_string(n) + " qudits at d = " + std::to_string(d) +
                          " exceeds oracle cap (dense dimension " + std::to_string(kMaxDenseDim) + ")");
    }
    size_t dim = ipow(d, n);

    // Product input state.
    std::vector<cplx> psi(1, 1.0);
    for (const auto &spec : circuit.inputs) {
        PureState s = input_state(spec, circuit.dim);
        std::vector<cplx> next(psi.size() * d);
        for (size_t i = 0; i < psi.size(); i++) {
            for (size_t j = 0; j < d; j++) {
                next[i * d + j] = psi[i] * s[j];
            }
        }
        psi = std::move(next);
    }
    for (const auto &g : circuit.gates) {
        apply_local_inplace(gate_matrix(g, circuit.dim), g.support, psi, n, d);
    }
    std::vector<cplx> e_psi = psi;
    for (size_t q = 0; q < n; q++) {
        if (circuit.effects[q].kind == EffectSpec::Kind::Identity) {
            continue;
        }
        size_t support[] = {q};
        apply_local_inplace(effect_matrix(circuit.effects[q], circuit.dim), support, e_psi, n, d);
    }
    cplx p = 0;
    for (size_t i = 0; i < dim; i++) {
        p += std::conj(psi[i]) * e_psi[i];
    }
    return p.real();
}

namespace {

size_t phase_space_size(const CircuitRep &rep) {
    size_t total = 1;
    for (size_t q = 0; q < rep.num_qudits; q++) {
        total *= rep.points_per_qudit();
        if (total > kMaxPhaseSpace) {
            throw CapExceeded("phase space of " + std::to_string(rep.num_qudits) +
                              " qudits exceeds oracle cap (" + std::to_string(kMaxPhaseSpace) + " points)");
        }
    }
    return total;
}

std::vector<size_t> strides_of(const CircuitRep &rep) {
    std::vector<size_t> s(rep.num_qudits);
    size_t acc = 1;
    for (size_t q = rep.num_qudits; q-- > 0;) {
        s[q] = acc;
        acc *= rep.points_per_qudit();
    }
    return s;
}

std::vector<double> product_vector(const std::vector<std::vector<double>> &factors) {
    std::vector<double> v(1, 1.0);
    for (const auto &f : factors) {
        std::vector<double> next(v.size() * f.size());
        for (size_t i = 0; i < v.size(); i++) {
            for (size_t j = 0; j < f.size(); j++) {
                next[i * f.size() + j] = v[i] * f[j];
            }
        }
        v = std::move(next);
    }
    return v;
}

// Applies a local kernel K (entry (out, in) at K[out * m + in]) on the gate's
// support: v'(.., out, ..) = sum_in K(out, in) v(.., in, ..). With
// `transpose`, K(in, out) is used instead.
void apply_kernel(std::vector<double> &v, const std::vector<size_t> &strides, size_t ppq,
                  const std::vector<size_t> &support, std::span<const double> kernel, bool transpose) {
    size_t m = support.size() == 2 ? ppq * ppq : ppq;
    std::vector<size_t> offsets(m);
    for (size_t r = 0; r < m; r++) {
        offsets[r] = support.size() == 2 ? (r / ppq) * strides[support[0]] + (r % ppq) * strides[support[1]]
                                         : r * strides[support[0]];
    }
    std::vector<double> in(m), out(m);
    for (size_t base = 0; base < v.size(); base++) {
        bool is_base = true;
        for (size_t q : support) {
            if ((base / strides[q]) % ppq != 0) {
                is_base = false;
                break;
            }
        }
        if (!is_base) {
            continue;
        }
        for (size_t i = 0; i < m; i++) {
            in[i] = v[base + offsets[i]];
        }
        for (size_t r = 0; r < m; r++) {
            double acc = 0;
            for (size_t c = 0; c < m; c++) {
                acc += (transpose ? kernel[c * m + r] : kernel[r * m + c]) * in[c];
            }
            out[r] = acc;
        }
        for (size_t i = 0; i < m; i++) {
            v[base + offsets[i]] = out[i];
        }
    }
}

double dot_with_product(const std::vector<double> &v, const std::vector<std::vector<double>> &factors,
                        const std::vector<size_t> &strides, size_t ppq) {
    double total = 0;
    for (size_t i = 0; i < v.size(); i++) {
        if (v[i] == 0) {
            continue;
        }
        double w = 1;
        for (size_t q = 0; q < factors.size(); q++) {
            w *= factors[q][(i / strides[q]) % ppq];
        }
        total += v[i] * w;
    }
    return total;
}

std::vector<std::vector<double>> absolute(const std::vector<std::vector<double>> &in) {
    auto out = in;
    for (auto &v : out) {
        for (auto &x : v) {
            x = std::abs(x);
        }
    }
    return out;
}

std::vector<double> absolute(const std::vector<double> &in) {
    auto out = in;
    for (auto &x : out) {
        x = std::abs(x);
    }
    return out;
}

double chain_sum(const CircuitRep &rep, bool take_abs) {
    phase_space_size(rep);
    auto strides = strides_of(rep);
    size_t ppq = rep.points_per_qudit();
    auto init = take_abs ? absolute(rep.state.per_qudit) : rep.state.per_qudit;
    auto v = product_vector(init);
    for (const auto &g : rep.gates) {
        if (take_abs) {
            apply_kernel(v, strides, ppq, g.support, absolute(g.matrix), false);
        } else {
            apply_kernel(v, strides, ppq, g.support, g.matrix, false);
        }
    }
    auto term = take_abs ? absolute(rep.effect.per_qudit) : rep.effect.per_qudit;
    return dot_with_product(v, term, strides, ppq);
}

// Dense kernel over the table's columns: entry (row, col) = prob * factor^power.
std::vector<double> table_kernel(const SamplingTable &t, size_t rows, int power) {
    std::vector<double> k(rows * t.columns, 0.0);
    for (size_t c = 0; c < t.columns; c++) {
        double prev = 0;
        for (size_t e = t.col_begin[c]; e < t.col_begin[c + 1]; e++) {
            double prob = t.cumulative[e] - prev;
            prev = t.cumulative[e];
            k[t.rows[e] * t.columns + c] = prob * (power == 1 ? t.factor[e] : t.factor[e] * t.factor[e]);
        }
    }
    return k;
}

}  // namespace

double trajectory_sum(const CircuitRep &rep) {
    return chain_sum(rep, false);
}

double circuit_negativity(const CircuitRep &rep) {
    return chain_sum(rep, true);
}

MarkovMoments markov_moments(const CircuitRep &rep) {
    phase_space_size(rep);
    auto strides = strides_of(rep);
    size_t ppq = rep.points_per_qudit();
    MarkovMoments out;
    for (int power = 1; power <= 2; power++) {
        std::vector<std::vector<double>> init;
        for (const auto &t : rep.initial_tables) {
            init.push_back(table_kernel(t, ppq, power));
        }
        auto v = product_vector(init);
        for (size_t l = 0; l < rep.num_gates(); l++) {
            const auto &g = rep.gates[l];
            apply_kernel(v, strides, ppq, g.support, table_kernel(rep.gate_tables[l], g.points, power), false);
        }
        auto term = rep.effect.per_qudit;
        if (power == 2) {
            for (auto &f : term) {
                for (auto &x : f) {
                    x *= x;
                }
            }
        }
        double value = dot_with_product(v, term, strides, ppq);
        (power == 1 ? out.mean : out.second_moment) = value;
    }
    return out;
}

OptimalSampler::OptimalSampler(const CircuitRep &rep) : rep_(&rep) {
    total_ = phase_space_size(rep);
    if (total_ * (rep.num_gates() + 1) > kMaxSuffixEntries) {
        throw CapExceeded("optimal sampler storage exceeds oracle cap");
    }
    strides_ = strides_of(rep);
    size_t ppq = rep.points_per_qudit();

    // suffix_[l](lambda) = sum over continuations from step l of |W|.
    suffix_.resize(rep.num_gates() + 1);
    suffix_[rep.num_gates()] = product_vector(absolute(rep.effect.per_qudit));
    for (size_t l = rep.num_gates(); l-- > 0;) {
        suffix_[l] = suffix_[l + 1];
        const auto &g = rep.gates[l];
        apply_kernel(suffix_[l], strides_, ppq, g.support, absolute(g.matrix), true);
    }
    auto init = product_vector(absolute(rep.state.per_qudit));
    initial_weight_.resize(total_);
    double m = 0;
    for (size_t i = 0; i < total_; i++) {
        initial_weight_[i] = init[i] * suffix_[0][i];
        m += initial_weight_[i];
    }
    if (m == 0) {
        throw std::invalid_argument("circuit negativity is zero; the optimal sampler is undefined");
    }
    m_c_ = m;
}

std::pair<Trajectory, double> OptimalSampler::sample(CounterRng &rng) const {
    const CircuitRep &rep = *rep_;
    size_t n = rep.num_qudits;
    size_t ppq = rep.points_per_qudit();
    auto pick = [&](const std::vector<double> &weights) {
        double total = 0;
        for (double w : weights) {
            total += w;
        }
        double u = rng.uniform() * total;
        double running = 0;
        size_t last_nonzero = 0;
        for (size_t i = 0; i < weights.size(); i++) {
            if (weights[i] == 0) {
                continue;
            }
            last_nonzero = i;
            running += weights[i];
            if (running > u) {
                return i;
            }
        }
        return last_nonzero;
    };

    Trajectory t;
    t.num_qudits = n;
    t.points.resize(n * (rep.num_gates() + 1));
    size_t full = pick(initial_weight_);
    for (size_t q = 0; q < n; q++) {
        t.points[q] = static_cast<uint32_t>((full / strides_[q]) % ppq);
    }
    double sign = rep.state.value(t.point(0)) > 0 ? 1.0 : -1.0;

    std::vector<double> weights;
    for (size_t l = 0; l < rep.num_gates(); l++) {
        const auto &g = rep.gates[l];
        std::copy_n(t.points.begin() + l * n, n, t.points.begin() + (l + 1) * n);
        std::span<uint32_t> cur(t.points.data() + (l + 1) * n, n);
        size_t in = g.support.size() == 2 ? cur[g.support[0]] * ppq + cur[g.support[1]] : cur[g.support[0]];
        // Full index with the support digits cleared.
        size_t base = full;
        for (size_t q : g.support) {
            base -= cur[q] * strides_[q];
        }
        weights.assign(g.points, 0.0);
        for (size_t out = 0; out < g.points; out++) {
            double w = g(out, in);
            if (w == 0) {
                continue;
            }
            size_t idx = g.support.size() == 2
                             ? base + (out / ppq) * strides_[g.support[0]] + (out % ppq) * strides_[g.support[1]]
                             : base + out * strides_[g.support[0]];
            weights[out] = std::abs(w) * suffix_[l + 1][idx];
        }
        size_t out = pick(weights);
        sign *= g(out, in) > 0 ? 1.0 : -1.0;
        if (g.support.size() == 2) {
            cur[g.support[0]] = static_cast<uint32_t>(out / ppq);
            cur[g.support[1]] = static_cast<uint32_t>(out % ppq);
            full = base + (out / ppq) * strides_[g.support[0]] + (out % ppq) * strides_[g.support[1]];
        } else {
            cur[g.support[0]] = static_cast<uint32_t>(out);
            full = base + out * strides_[g.support[0]];
        }
    }
    sign *= rep.effect.value(t.point(rep.num_gates())) > 0 ? 1.0 : -1.0;
    return {std::move(t), m_c_ * sign};
}

std::pair<Trajectory, double> optimal_sample(const CircuitRep &rep, CounterRng &rng) {
    return OptimalSampler(rep).sample(rng);
}

VarianceReport variance_report(const CircuitRep &rep) {
    VarianceReport r;
    r.born = trajectory_sum(rep);
    r.m_c = circuit_negativity(rep);
    r.v_min = r.m_c * r.m_c - r.born * r.born;
    MarkovMoments m = markov_moments(rep);
    r.mean_markov = m.mean;
    r.v_markov = m.second_moment - m.mean * m.mean;
    return r;
}

}  // namespace qpe
