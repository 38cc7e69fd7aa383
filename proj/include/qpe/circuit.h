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

#ifndef QPE_CIRCUIT_H
#define QPE_CIRCUIT_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpe/algebra.h"

namespace qpe {

struct StateSpec {
    enum class Kind { Ket, Magic, Vector };
    Kind kind = Kind::Ket;
    int index = 0;
    std::vector<cplx> amplitudes;

    bool operator==(const StateSpec &) const = default;
};

struct GateSpec {
    /// One of X, Z, F, P, SUM, M9, or U for an explicit matrix.
    std::string name;
    std::vector<size_t> support;
    ComplexMatrix matrix;

    bool operator==(const GateSpec &) const = default;
};

struct EffectSpec {
    enum class Kind { Ket, Identity, Matrix };
    Kind kind = Kind::Identity;
    int index = 0;
    ComplexMatrix matrix;

    bool operator==(const EffectSpec &) const = default;
};

/// Product-state input, ordered local gates, product effect on the output.
struct Circuit {
    int dim = 3;
    size_t num_qudits = 0;
    std::vector<StateSpec> inputs;
    std::vector<GateSpec> gates;
    std::vector<EffectSpec> effects;

    bool operator==(const Circuit &) const = default;
};

/// Parse failure with a 1-based source location.
class ParseError : public std::invalid_argument {
   public:
    ParseError(size_t line, size_t column, const std::string &message);
    size_t line() const { return line_; }
    size_t column() const { return column_; }

   private:
    size_t line_;
    size_t column_;
};

/// Circuit text format, one directive per line, '#' starts a comment:
///
///   dim <odd prime>
///   qudits <N>
///   state <i> ket <j> | state <i> magic | state <i> vec <a0> ... <a(d-1)>
///   gate <NAME> <i> [<j>]        NAME in X Z F P SUM M9
///   gate U <i> [<j>] <entries>   d^k rows of d^k complex entries, row-major;
///                                ';' may separate rows
///   measure <i> ket <j> | measure <i> id | measure <i> mat <d*d entries>
///
/// Complex entries are written as `a`, `bi`, `a+bi` or `a-bi`. `dim` and
/// `qudits` must precede every other directive. Qudits without a `state`
/// start in |0>; qudits without a `measure` get the identity effect.
Circuit parse_circuit(std::string_view text);
/// Writes a circuit that parses back to an identical value.
std::string serialize_circuit(const Circuit &circuit);

/// Parses one complex literal; throws std::invalid_argument.
cplx parse_complex(std::string_view token);
std::string format_complex(cplx v);

/// Checks index ranges, per-gate support, dimensions and list lengths.
void validate_circuit(const Circuit &circuit);

ComplexMatrix gate_matrix(const GateSpec &gate, int d);
PureState input_state(const StateSpec &spec, int d);
ComplexMatrix effect_matrix(const EffectSpec &spec, int d);

/// Consecutive blocks of gate indices; sizes must add up to the gate count.
struct Grouping {
    std::vector<size_t> block_sizes;

    static Grouping singletons(size_t num_gates);
};

/// Replaces each block by the product of its gates (later gates on the left),
/// acting on the union of the block's supports in first-appearance order.
/// Singleton blocks keep their original gate.
Circuit regroup(const Circuit &circuit, const Grouping &grouping);

/// Qutrit circuit with the first k qudits in the magic state and the rest
/// in |0>, `depth` gates drawn uniformly from {F, P, SUM} on uniformly
/// chosen distinct qudits, and |0><0| measured on qudit 0. A pure function
/// of its arguments.
Circuit random_clifford_circuit(size_t num_qudits, size_t depth, size_t num_magic, uint64_t seed);

}  // namespace qpe

#endif
