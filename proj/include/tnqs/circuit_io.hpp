// Copyright 2026 The tnqs Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "tnqs/circuit.hpp"

namespace tnqs {

/**
 * Circuit files are JSON documents with four sections:
 *
 *   {
 *     "qubits": 2,
 *     "inputs":  [{"line": 1, "state": "+"}, {"line": 2, "state": "0"}],
 *     "gates":   [{"gate": "U", "lines": [1, 2], "timestep": 1,
 *                  "matrix": [[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]]}],
 *     "outputs": [{"line": 1, "effect": "0"}, {"line": 2, "effect": null}]
 *   }
 *
 * Gate names: H, X, Y, Z, R(k), CPHASE(theta), U (with "matrix"), CHANNEL
 * (with "superoperator"), KRAUS (with "operators"). Complex entries are
 * numbers or [re, im] pairs. States and effects are "0", "1", "+", "-",
 * "mixed" (state only) or 2x2 matrices; a null effect leaves the output
 * unspecified. Missing inputs default to |0>, missing outputs to unspecified.
 */
[[nodiscard]] CircuitGraph parse_circuit(const std::string &text);
[[nodiscard]] std::string serialize_circuit(const CircuitGraph &g);

[[nodiscard]] CircuitGraph load_circuit(const std::string &path);
void save_circuit(const CircuitGraph &g, const std::string &path);

} // namespace tnqs
