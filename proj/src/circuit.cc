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

#include "qpe/circuit.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "qpe/rng.h"

namespace qpe {

ParseError::ParseError(size_t line, size_t column, const std::string &message)
    : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {
}

namespace {

bool parse_double(std::string_view s, double &out) {
    if (s.empty()) {
        return false;
    }
    std::string buf(s);
    char *end = nullptr;
    errno = 0;
    out = std::strtod(buf.c_str(), &end);
    return errno == 0 && end == buf.c_str() + buf.size() && std::isfinite(out);
}

}  // namespace

cplx parse_complex(std::string_view token) {
    auto fail = [&]() -> cplx {
        throw std::invalid_argument("malformed complex number '" + std::string(token) + "'");
    };
    if (token.empty()) {
        return fail();
    }
    if (token.back() != 'i') {
        double re;
        if (!parse_double(token, re)) {
            return fail();
        }
        return {re, 0.0};
    }
    std::string_view body = token.substr(0, token.size() - 1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    size_t split = std::string_view::npos;
    for (size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    double re = 0;
    std::string_view im_part = body;
    if (split != std::string_view::npos) {
        if (!parse_double(body.substr(0, split), re)) {
            return fail();
        }
        im_part = body.substr(split);
    }
    double im;
    if (im_part.empty() || im_part == "+") {
        im = 1;
    } else if (im_part == "-") {
        im = -1;
    } else if (!parse_double(im_part, im)) {
        return fail();
    }
    return {re, im};
}

std::string format_complex(cplx v) {
    char buf[64];
    if (v.imag() == 0) {
        std::snprintf(buf, sizeof(buf), "%.17g", v.real());
    } else {
        std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", v.real(), v.imag());
    }
    return buf;
}

namespace {

struct Token {
    std::string_view text;
    size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') {
            break;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            i++;
            continue;
        }
        if (c == ';') {
            out.push_back({line.substr(i, 1), i + 1});
            i++;
            continue;
        }
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#' &&
               line[i] != ';') {
            i++;
        }
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

class LineParser {
   public:
    LineParser(size_t line_no, std::vector<Token> tokens) : line_(line_no), tokens_(std::move(tokens)) {
    }

    [[noreturn]] void fail(size_t token_index, const std::string &message) const {
        size_t col = token_index < tokens_.size() ? tokens_[token_index].column
                                                  : (tokens_.empty() ? 1 : tokens_.back().column +
                                                                               tokens_.back().text.size());
        throw ParseError(line_, col, message);
    }

    size_t size() const { return tokens_.size(); }
    std::string_view text(size_t i) const { return tokens_[i].text; }

    size_t integer(size_t i, const char *what) const {
        if (i >= tokens_.size()) {
            fail(i, std::string("missing ") + what);
        }
        auto t = tokens_[i].text;
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
            t.size() > 9) {
            fail(i, std::string("expected a nonnegative integer for ") + what + ", got '" + std::string(t) + "'");
        }
        return std::stoul(std::string(t));
    }

    cplx complex(size_t i) const {
        try {
            return parse_complex(tokens_[i].text);
        } catch (const std::invalid_argument &e) {
            fail(i, e.what());
        }
    }

    /// Complex entries from position i on, skipping ';' row separators.
    std::vector<cplx> complex_list(size_t i) const {
        std::vector<cplx> out;
        for (; i < tokens_.size(); i++) {
            if (tokens_[i].text == ";") {
                continue;
            }
            out.push_back(complex(i));
        }
        return out;
    }

    size_t count_entries(size_t from) const {
        size_t n = 0;
        for (size_t i = from; i < tokens_.size(); i++) {
            n += tokens_[i].text != ";";
        }
        return n;
    }

    void expect_end(size_t i) const {
        if (i < tokens_.size()) {
            fail(i, "unexpected trailing token '" + std::string(tokens_[i].text) + "'");
        }
    }

   private:
    size_t line_;
    std::vector<Token> tokens_;
};

size_t arity_of(std::string_view name) {
    return name == "SUM" ? 2 : 1;
}

bool is_named_gate(std::string_view name) {
    return name == "X" || name == "Z" || name == "F" || name == "P" || name == "SUM" || name == "M9";
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    Circuit circuit;
    std::optional<int> dim;
    std::optional<size_t> qudits;
    std::vector<bool> has_state, has_effect;

    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        line_no++;

        LineParser lp(line_no, tokenize(raw));
        if (lp.size() == 0) {
            continue;
        }
        std::string_view directive = lp.text(0);

        if (directive == "dim") {
            if (dim) {
                lp.fail(0, "duplicate 'dim' directive");
            }
            size_t d = lp.integer(1, "dimension");
            if (!is_odd_prime(static_cast<int>(d))) {
                lp.fail(1, "dim must be an odd prime");
            }
            lp.expect_end(2);
            dim = static_cast<int>(d);
            continue;
        }
        if (directive == "qudits") {
            if (qudits) {
                lp.fail(0, "duplicate 'qudits' directive");
            }
            size_t n = lp.integer(1, "qudit count");
            if (n == 0) {
                lp.fail(1, "qudit count must be positive");
            }
            lp.expect_end(2);
            qudits = n;
            has_state.assign(n, false);
            has_effect.assign(n, false);
            circuit.inputs.assign(n, StateSpec{});
            circuit.effects.assign(n, EffectSpec{});
            continue;
        }
        if (directive != "state" && directive != "gate" && directive != "measure") {
            lp.fail(0, "unknown directive '" + std::string(directive) + "'");
        }
        if (!dim || !qudits) {
            lp.fail(0, "'dim' and 'qudits' must precede '" + std::string(directive) + "'");
        }
        int d = *dim;
        size_t n = *qudits;
        auto qudit_at = [&](size_t i) {
            size_t q = lp.integer(i, "qudit index");
            if (q >= n) {
                lp.fail(i, "qudit index out of range");
            }
            return q;
        };

        if (directive == "state") {
            size_t q = qudit_at(1);
            if (has_state[q]) {
                lp.fail(0, "duplicate state for qudit " + std::to_string(q));
            }
            if (lp.size() < 3) {
                lp.fail(2, "missing state kind");
            }
            StateSpec spec;
            auto kind = lp.text(2);
            if (kind == "ket") {
                size_t j = lp.integer(3, "basis index");
                if (j >= static_cast<size_t>(d)) {
                    lp.fail(3, "basis index out of range");
                }
                lp.expect_end(4);
                spec.kind = StateSpec::Kind::Ket;
                spec.index = static_cast<int>(j);
            } else if (kind == "magic") {
                if (d != 3) {
                    lp.fail(2, "magic is only defined for d = 3");
                }
                lp.expect_end(3);
                spec.kind = StateSpec::Kind::Magic;
            } else if (kind == "vec") {
                if (lp.count_entries(3) != static_cast<size_t>(d)) {
                    lp.fail(3, "expected " + std::to_string(d) + " amplitudes");
                }
                spec.kind = StateSpec::Kind::Vector;
                spec.amplitudes = lp.complex_list(3);
                double norm = 0;
                for (auto a : spec.amplitudes) {
                    norm += std::norm(a);
                }
                if (std::abs(std::sqrt(norm) - 1) > 1e-8) {
                    lp.fail(3, "state vector is not normalized");
                }
            } else {
                lp.fail(2, "unknown state kind '" + std::string(kind) + "'");
            }
            circuit.inputs[q] = spec;
            has_state[q] = true;
            continue;
        }

        if (directive == "gate") {
            if (lp.size() < 2) {
                lp.fail(1, "missing gate name");
            }
            GateSpec gate;
            gate.name = std::string(lp.text(1));
            size_t arity;
            size_t next;
            if (gate.name == "U") {
                // The entry count disambiguates one- from two-qudit gates.
                size_t d2 = static_cast<size_t>(d) * d;
                size_t remaining = lp.count_entries(2);
                if (remaining == 1 + d2) {
                    arity = 1;
                } else if (remaining == 2 + d2 * d2) {
                    arity = 2;
                } else {
                    lp.fail(2, "explicit gate needs qudit indices followed by " + std::to_string(d2) + " or " +
                                   std::to_string(d2 * d2) + " complex entries");
                }
                for (size_t i = 0; i < arity; i++) {
                    gate.support.push_back(qudit_at(2 + i));
                }
                next = 2 + arity;
                size_t m = ipow(d, arity);
                gate.matrix = ComplexMatrix(m, m, lp.complex_list(next));
                if (!gate.matrix.is_unitary(1e-8)) {
                    lp.fail(next, "explicit gate matrix is not unitary");
                }
            } else {
                if (!is_named_gate(gate.name)) {
                    lp.fail(1, "unknown gate '" + gate.name + "'");
                }
                if (gate.name == "M9" && d != 3) {
                    lp.fail(1, "M9 is only defined for d = 3");
                }
                arity = arity_of(gate.name);
                for (size_t i = 0; i < arity; i++) {
                    gate.support.push_back(qudit_at(2 + i));
                }
                lp.expect_end(2 + arity);
            }
            if (arity == 2 && gate.support[0] == gate.support[1]) {
                lp.fail(3, "gate support repeats qudit " + std::to_string(gate.support[0]));
            }
            circuit.gates.push_back(std::move(gate));
            continue;
        }

        // measure
        size_t q = qudit_at(1);
        if (has_effect[q]) {
            lp.fail(0, "duplicate measure for qudit " + std::to_string(q));
        }
        if (lp.size() < 3) {
            lp.fail(2, "missing effect kind");
        }
        EffectSpec spec;
        auto kind = lp.text(2);
        if (kind == "ket") {
            size_t j = lp.integer(3, "outcome");
            if (j >= static_cast<size_t>(d)) {
                lp.fail(3, "outcome out of range");
            }
            lp.expect_end(4);
            spec.kind = EffectSpec::Kind::Ket;
            spec.index = static_cast<int>(j);
        } else if (kind == "id") {
            lp.expect_end(3);
            spec.kind = EffectSpec::Kind::Identity;
        } else if (kind == "mat") {
            if (lp.count_entries(3) != static_cast<size_t>(d) * d) {
                lp.fail(3, "expected " + std::to_string(d * d) + " effect entries");
            }
            spec.kind = EffectSpec::Kind::Matrix;
            spec.matrix = ComplexMatrix(d, d, lp.complex_list(3));
            if (!spec.matrix.is_hermitian(1e-10)) {
                lp.fail(3, "effect matrix is not Hermitian");
            }
            auto [lo, hi] = hermitian_eigen_range(spec.matrix);
            if (lo < -1e-10 || hi > 1 + 1e-10) {
                lp.fail(3, "effect matrix has eigenvalues outside [0, 1]");
            }
        } else {
            lp.fail(2, "unknown effect kind '" + std::string(kind) + "'");
        }
        circuit.effects[q] = spec;
        has_effect[q] = true;
    }

    if (!dim || !qudits) {
        throw ParseError(line_no, 1, "circuit must declare 'dim' and 'qudits'");
    }
    circuit.dim = *dim;
    circuit.num_qudits = *qudits;
    return circuit;
}

std::string serialize_circuit(const Circuit &circuit) {
    std::ostringstream out;
    out << "dim " << circuit.dim << "\n";
    out << "qudits " << circuit.num_qudits << "\n";
    for (size_t q = 0; q < circuit.inputs.size(); q++) {
        const auto &s = circuit.inputs[q];
        out << "state " << q;
        switch (s.kind) {
            case StateSpec::Kind::Ket:
                out << " ket " << s.index;
                break;
            case StateSpec::Kind::Magic:
                out << " magic";
                break;
            case StateSpec::Kind::Vector:
                out << " vec";
                for (auto a : s.amplitudes) {
                    out << " " << format_complex(a);
                }
                break;
        }
        out << "\n";
    }
    for (const auto &g : circuit.gates) {
        out << "gate " << g.name;
        for (auto q : g.support) {
            out << " " << q;
        }
        if (g.name == "U") {
            for (size_t r = 0; r < g.matrix.rows(); r++) {
                if (r > 0) {
                    out << " ;";
                }
                for (size_t c = 0; c < g.matrix.cols(); c++) {
                    out << " " << format_complex(g.matrix(r, c));
                }
            }
        }
        out << "\n";
    }
    for (size_t q = 0; q < circuit.effects.size(); q++) {
        const auto &e = circuit.effects[q];
        out << "measure " << q;
        switch (e.kind) {
            case EffectSpec::Kind::Ket:
                out << " ket " << e.index;
                break;
            case EffectSpec::Kind::Identity:
                out << " id";
                break;
            case EffectSpec::Kind::Matrix:
                out << " mat";
                for (auto v : e.matrix.data()) {
                    out << " " << format_complex(v);
                }
                break;
        }
        out << "\n";
    }
    return out.str();
}

void validate_circuit(const Circuit &c) {
    if (!is_odd_prime(c.dim)) {
        throw std::invalid_argument("dim must be an odd prime");
    }
    if (c.num_qudits == 0) {
        throw std::invalid_argument("circuit has no qudits");
    }
    if (c.inputs.size() != c.num_qudits || c.effects.size() != c.num_qudits) {
        throw std::invalid_argument("every qudit needs exactly one input and one effect");
    }
    for (const auto &g : c.gates) {
        if (g.support.empty() || g.support.size() > 2) {
            throw std::invalid_argument("gates must act on one or two qudits");
        }
        for (size_t i = 0; i < g.support.size(); i++) {
            if (g.support[i] >= c.num_qudits) {
                throw std::invalid_argument("qudit index out of range");
            }
            for (size_t j = 0; j < i; j++) {
                if (g.support[i] == g.support[j]) {
                    throw std::invalid_argument("repeated support index");
                }
            }
        }
    }
}

ComplexMatrix gate_matrix(const GateSpec &gate, int d) {
    if (gate.name == "U") {
        if (gate.matrix.rows() != ipow(d, gate.support.size())) {
            throw std::invalid_argument("explicit gate matrix dimension does not match its support");
        }
        return gate.matrix;
    }
    auto element = standard_element(gate.name, d);
    auto m = std::get<ComplexMatrix>(element);
    if (m.rows() != ipow(d, gate.support.size())) {
        throw std::invalid_argument("gate " + gate.name + " applied to the wrong number of qudits");
    }
    return m;
}

PureState input_state(const StateSpec &spec, int d) {
    switch (spec.kind) {
        case StateSpec::Kind::Ket:
            return ket(spec.index, d);
        case StateSpec::Kind::Magic:
            if (d != 3) {
                throw std::invalid_argument("magic is only defined for d = 3");
            }
            return magic_state();
        case StateSpec::Kind::Vector:
            if (spec.amplitudes.size() != static_cast<size_t>(d)) {
                throw std::invalid_argument("state vector has the wrong dimension");
            }
            return PureState(spec.amplitudes, true);
    }
    throw std::logic_error("unreachable state kind");
}

ComplexMatrix effect_matrix(const EffectSpec &spec, int d) {
    switch (spec.kind) {
        case EffectSpec::Kind::Ket:
            return ket(spec.index, d).density_matrix();
        case EffectSpec::Kind::Identity:
            return ComplexMatrix::identity(d);
        case EffectSpec::Kind::Matrix:
            return spec.matrix;
    }
    throw std::logic_error("unreachable effect kind");
}

Grouping Grouping::singletons(size_t num_gates) {
    return Grouping{std::vector<size_t>(num_gates, 1)};
}

namespace {

// Matrix of `gate` acting on the ordered qudit list `target`.
ComplexMatrix embed(const ComplexMatrix &gate, std::span<const size_t> gate_support, std::span<const size_t> target,
                    int d) {
    std::vector<size_t> local;
    for (size_t q : gate_support) {
        local.push_back(std::find(target.begin(), target.end(), q) - target.begin());
    }
    size_t dim = ipow(d, target.size());
    ComplexMatrix out(dim, dim);
    std::vector<cplx> column(dim);
    for (size_t c = 0; c < dim; c++) {
        std::fill(column.begin(), column.end(), cplx{});
        column[c] = 1.0;
        apply_local_inplace(gate, local, column, target.size(), d);
        for (size_t r = 0; r < dim; r++) {
            out(r, c) = column[r];
        }
    }
    return out;
}

}  // namespace

Circuit regroup(const Circuit &circuit, const Grouping &grouping) {
    validate_circuit(circuit);
    size_t total = 0;
    for (size_t b : grouping.block_sizes) {
        if (b == 0) {
            throw std::invalid_argument("grouping blocks must be nonempty");
        }
        total += b;
    }
    if (total != circuit.gates.size()) {
        throw std::invalid_argument("grouping does not cover the gate list");
    }

    Circuit out = circuit;
    out.gates.clear();
    size_t start = 0;
    for (size_t size : grouping.block_sizes) {
        if (size == 1) {
            out.gates.push_back(circuit.gates[start]);
            start++;
            continue;
        }
        std::vector<size_t> support;
        for (size_t i = start; i < start + size; i++) {
            for (size_t q : circuit.gates[i].support) {
                if (std::find(support.begin(), support.end(), q) == support.end()) {
                    support.push_back(q);
                }
            }
        }
        if (support.size() > 2) {
            throw std::invalid_argument("grouped block acts on " + std::to_string(support.size()) +
                                        " qudits; at most 2 are supported");
        }
        size_t dim = ipow(circuit.dim, support.size());
        ComplexMatrix product = ComplexMatrix::identity(dim);
        for (size_t i = start; i < start + size; i++) {
            const auto &g = circuit.gates[i];
            product = embed(gate_matrix(g, circuit.dim), g.support, support, circuit.dim) * product;
        }
        out.gates.push_back(GateSpec{"U", support, product});
        start += size;
    }
    return out;
}

Circuit random_clifford_circuit(size_t num_qudits, size_t depth, size_t num_magic, uint64_t seed) {
    if (num_qudits == 0) {
        throw std::invalid_argument("circuit needs at least one qudit");
    }
    if (num_magic > num_qudits) {
        throw std::invalid_argument("more magic states than qudits");
    }
    Circuit c;
    c.dim = 3;
    c.num_qudits = num_qudits;
    c.inputs.assign(num_qudits, StateSpec{});
    for (size_t q = 0; q < num_magic; q++) {
        c.inputs[q].kind = StateSpec::Kind::Magic;
    }
    c.effects.assign(num_qudits, EffectSpec{});
    c.effects[0] = EffectSpec{EffectSpec::Kind::Ket, 0, {}};

    static const char *const kNames[] = {"F", "P", "SUM"};
    CounterRng rng(seed, 0x636c6966ull);
    uint64_t choices = num_qudits >= 2 ? 3 : 2;
    for (size_t i = 0; i < depth; i++) {
        GateSpec g;
        g.name = kNames[rng.below(choices)];
        size_t a = rng.below(num_qudits);
        g.support.push_back(a);
        if (g.name == "SUM") {
            size_t b = rng.below(num_qudits - 1);
            g.support.push_back(b >= a ? b + 1 : b);
        }
        c.gates.push_back(std::move(g));
    }
    return c;
}

}  // namespace qpe
