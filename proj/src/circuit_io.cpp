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

#include "tnqs/circuit_io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "tnqs/errors.hpp"

namespace tnqs {

using nlohmann::json;

namespace {

Complex parse_complex(const json &j, const std::string &where) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ParseError(where + ": expected a number or [re, im] pair, got " + j.dump());
}

json dump_complex(Complex c) {
    if (c.imag() == 0.0) {
        return c.real();
    }
    return json::array({c.real(), c.imag()});
}

Matrix parse_matrix(const json &j, const std::string &where) {
    if (!j.is_array() || j.empty()) {
        throw DimensionError(where + ": matrix must be a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = -1;
    for (std::size_t r = 0; r < j.size(); ++r) {
        const std::string row_where = where + " row " + std::to_string(r);
        if (!j[r].is_array()) {
            throw DimensionError(row_where + ": row must be an array");
        }
        if (cols < 0) {
            cols = static_cast<Eigen::Index>(j[r].size());
        } else if (static_cast<Eigen::Index>(j[r].size()) != cols) {
            throw DimensionError(row_where + ": has " + std::to_string(j[r].size()) +
                                 " entries, expected " + std::to_string(cols));
        }
    }
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = parse_complex(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                                    where + " row " + std::to_string(r));
        }
    }
    return m;
}

json dump_matrix(const Matrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(dump_complex(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix2 parse_single(const json &j, const std::string &where, bool allow_mixed) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "0") {
            return ket0_projector();
        }
        if (s == "1") {
            return ket1_projector();
        }
        if (s == "+") {
            return plus_projector();
        }
        if (s == "-") {
            return minus_projector();
        }
        if (s == "mixed" && allow_mixed) {
            return maximally_mixed();
        }
        throw ParseError(where + ": unknown named operator '" + s + "'");
    }
    const Matrix m = parse_matrix(j, where);
    if (m.rows() != 2 || m.cols() != 2) {
        throw DimensionError(where + ": expected a 2x2 matrix");
    }
    return m;
}

json dump_single(const Matrix2 &m, bool allow_mixed) {
    if (m == ket0_projector()) {
        return "0";
    }
    if (m == ket1_projector()) {
        return "1";
    }
    if (m == plus_projector()) {
        return "+";
    }
    if (m == minus_projector()) {
        return "-";
    }
    if (allow_mixed && m == maximally_mixed()) {
        return "mixed";
    }
    return dump_matrix(m);
}

int qubits_of_dim(Eigen::Index dim, Eigen::Index base, const std::string &where) {
    int k = 0;
    Eigen::Index d = 1;
    while (d < dim) {
        d *= base;
        ++k;
    }
    if (d != dim) {
        throw DimensionError(where + ": dimension " + std::to_string(dim) +
                             " is not a power of " + std::to_string(base));
    }
    return k;
}

ChannelSpec parse_gate(const json &g, const std::string &where) {
    if (!g.contains("gate") || !g["gate"].is_string()) {
        throw ParseError(where + ": missing gate name");
    }
    const auto name = g["gate"].get<std::string>();
    const bool force = g.value("force", false);
    static const std::regex r_re(R"(R\((\d+)\))");
    static const std::regex cphase_re(R"(CPHASE\(([^)]+)\))");
    std::smatch match;
    if (name == "H") {
        return hadamard();
    }
    if (name == "X") {
        return pauli_x();
    }
    if (name == "Y") {
        return pauli_y();
    }
    if (name == "Z") {
        return pauli_z();
    }
    if (std::regex_match(name, match, r_re)) {
        return controlled_phase(std::stoi(match[1]));
    }
    if (std::regex_match(name, match, cphase_re)) {
        try {
            return cphase(std::stod(match[1]));
        } catch (const std::logic_error &) {
            throw ParseError(where + ": bad CPHASE angle '" + match[1].str() + "'");
        }
    }
    if (name == "U") {
        if (!g.contains("matrix")) {
            throw ParseError(where + ": U gate needs a \"matrix\"");
        }
        Matrix m = parse_matrix(g["matrix"], where + " matrix");
        if (m.rows() != m.cols()) {
            throw DimensionError(where + " matrix: unitary must be square");
        }
        qubits_of_dim(m.rows(), 2, where + " matrix");
        return ChannelSpec::from_unitary(m, force);
    }
    if (name == "KRAUS") {
        if (!g.contains("operators") || !g["operators"].is_array() || g["operators"].empty()) {
            throw ParseError(where + ": KRAUS gate needs a non-empty \"operators\" list");
        }
        std::vector<Matrix> ops;
        for (std::size_t i = 0; i < g["operators"].size(); ++i) {
            ops.push_back(parse_matrix(g["operators"][i],
                                       where + " operator " + std::to_string(i)));
            if (ops.back().rows() != ops.front().rows() || ops.back().cols() != ops.front().cols()) {
                throw DimensionError(where + " operator " + std::to_string(i) +
                                     ": shape differs from operator 0");
            }
        }
        qubits_of_dim(ops.front().rows(), 2, where + " operators");
        qubits_of_dim(ops.front().cols(), 2, where + " operators");
        return ChannelSpec::from_kraus(std::move(ops), force);
    }
    if (name == "CHANNEL") {
        if (!g.contains("superoperator")) {
            throw ParseError(where + ": CHANNEL gate needs a \"superoperator\"");
        }
        Matrix m = parse_matrix(g["superoperator"], where + " superoperator");
        const int k_out = qubits_of_dim(m.rows(), 4, where + " superoperator");
        const int k_in = qubits_of_dim(m.cols(), 4, where + " superoperator");
        return ChannelSpec::from_superoperator(std::move(m), k_in, k_out, force);
    }
    throw UnknownGateName(name);
}

json dump_gate(const Vertex &v) {
    const auto &ch = v.channel();
    json g;
    const std::string &name = ch.name();
    const bool library = name == "H" || name == "X" || name == "Y" || name == "Z" ||
                         name.rfind("R(", 0) == 0 || name.rfind("CPHASE(", 0) == 0;
    if (library) {
        g["gate"] = name;
    } else if (ch.source() == ChannelSource::Unitary) {
        g["gate"] = "U";
        g["matrix"] = dump_matrix(ch.kraus().front());
    } else if (ch.source() == ChannelSource::Kraus) {
        g["gate"] = "KRAUS";
        json ops = json::array();
        for (const auto &k : ch.kraus()) {
            ops.push_back(dump_matrix(k));
        }
        g["operators"] = std::move(ops);
    } else {
        g["gate"] = "CHANNEL";
        g["superoperator"] = dump_matrix(ch.matrix());
    }
    if (!ch.physicality_checked()) {
        g["force"] = true;
    }
    g["lines"] = v.lines;
    g["timestep"] = v.timestep;
    if (v.ladder != 0) {
        g["ladder"] = v.ladder;
    }
    return g;
}

int get_line(const json &j, const std::string &where) {
    if (!j.contains("line") || !j["line"].is_number_integer()) {
        throw ParseError(where + ": missing integer \"line\"");
    }
    return j["line"].get<int>();
}

} // namespace

CircuitGraph parse_circuit(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        // Convert the byte offset into a line/column pair.
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(e.what(), line, col);
    }
    if (!doc.is_object() || !doc.contains("qubits") || !doc["qubits"].is_number_integer()) {
        throw ParseError("document needs an integer \"qubits\" field");
    }
    const int n = doc["qubits"].get<int>();
    if (n < 1) {
        throw ParseError("\"qubits\" must be positive");
    }
    try {
        CircuitBuilder b(n);
        for (std::size_t i = 0; doc.contains("inputs") && i < doc["inputs"].size(); ++i) {
            const auto &in = doc["inputs"][i];
            const std::string where = "inputs[" + std::to_string(i) + "]";
            b.input(get_line(in, where),
                    parse_single(in.value("state", json("0")), where + " state", true));
        }
        for (std::size_t i = 0; doc.contains("gates") && i < doc["gates"].size(); ++i) {
            const auto &g = doc["gates"][i];
            const std::string where = "gates[" + std::to_string(i) + "]";
            if (!g.contains("lines") || !g["lines"].is_array()) {
                throw ParseError(where + ": missing \"lines\" array");
            }
            auto channel = parse_gate(g, where);
            auto lines = g["lines"].get<std::vector<int>>();
            const int ladder = g.value("ladder", 0);
            if (g.contains("timestep")) {
                b.gate_at(std::move(channel), std::move(lines), g["timestep"].get<int>(), ladder);
            } else {
                b.gate(std::move(channel), std::move(lines), ladder);
            }
        }
        for (std::size_t i = 0; doc.contains("outputs") && i < doc["outputs"].size(); ++i) {
            const auto &out = doc["outputs"][i];
            const std::string where = "outputs[" + std::to_string(i) + "]";
            std::optional<Matrix2> effect;
            if (out.contains("effect") && !out["effect"].is_null()) {
                effect = parse_single(out["effect"], where + " effect", false);
            }
            b.output(get_line(out, where), effect, out.value("logical", 0));
        }
        return b.build();
    } catch (const ParseError &) {
        throw;
    } catch (const json::exception &e) {
        throw ParseError(e.what());
    } catch (const Error &e) {
        throw ParseError(e.what());
    }
}

std::string serialize_circuit(const CircuitGraph &g) {
    json doc;
    doc["qubits"] = g.n_qubits();
    json inputs = json::array();
    for (VertexId id : g.inputs()) {
        const auto &v = g.vertex(id);
        inputs.push_back({{"line", v.lines.front()},
                          {"state", dump_single(std::get<InputVertex>(v.kind).state, true)}});
    }
    json gates = json::array();
    for (const auto &v : g.vertices()) {
        if (v.is_gate()) {
            gates.push_back(dump_gate(v));
        }
    }
    json outputs = json::array();
    for (VertexId id : g.outputs()) {
        const auto &v = g.vertex(id);
        const auto &effect = std::get<OutputVertex>(v.kind).effect;
        json o = {{"line", v.lines.front()},
                  {"effect", effect ? dump_single(*effect, false) : json(nullptr)}};
        if (v.logical_index != 0) {
            o["logical"] = v.logical_index;
        }
        outputs.push_back(std::move(o));
    }
    doc["inputs"] = std::move(inputs);
    doc["gates"] = std::move(gates);
    doc["outputs"] = std::move(outputs);
    return doc.dump(1) + "\n";
}

CircuitGraph load_circuit(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open circuit file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_circuit(ss.str());
}

void save_circuit(const CircuitGraph &g, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write circuit file '" + path + "'");
    }
    out << serialize_circuit(g);
}

} // namespace tnqs
