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

#include "tnqs/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "tnqs/errors.hpp"

namespace tnqs {

namespace {

int qubits_for_dim(Eigen::Index dim, const char *what) {
    int q = 0;
    while ((Eigen::Index{1} << q) < dim) {
        ++q;
    }
    if ((Eigen::Index{1} << q) != dim) {
        throw ArityMismatch(std::string(what) + " dimension " + std::to_string(dim) +
                            " is not a power of two");
    }
    return q;
}

void check_arity(int arity_in, int arity_out) {
    if (arity_in < 0 || arity_out < 0 || arity_in > kMaxChannelArity ||
        arity_out > kMaxChannelArity) {
        throw ArityMismatch("channel arity " + std::to_string(arity_in) + "->" +
                            std::to_string(arity_out) + " outside supported range 0.." +
                            std::to_string(kMaxChannelArity));
    }
}

Eigen::Index pow4(int k) { return Eigen::Index{1} << (2 * k); }

} // namespace

Matrix kraus_superoperator(const std::vector<Matrix> &ops) {
    if (ops.empty()) {
        throw ArityMismatch("empty Kraus set");
    }
    const Eigen::Index rows = ops.front().rows();
    const Eigen::Index cols = ops.front().cols();
    const int k_out = qubits_for_dim(rows, "Kraus output");
    const int k_in = qubits_for_dim(cols, "Kraus input");
    Matrix m = Matrix::Zero(pow4(k_out), pow4(k_in));
    // e_I = |a><b| with a, b interleaved per qubit: I = sum_t (2 a_t + b_t) 4^(k-1-t).
    auto split = [](Eigen::Index idx, int k, Eigen::Index &a, Eigen::Index &b) {
        a = 0;
        b = 0;
        for (int t = 0; t < k; ++t) {
            const Eigen::Index digit = (idx >> (2 * (k - 1 - t))) & 3;
            a = (a << 1) | (digit >> 1);
            b = (b << 1) | (digit & 1);
        }
    };
    for (const auto &op : ops) {
        if (op.rows() != rows || op.cols() != cols) {
            throw ArityMismatch("Kraus operators have inconsistent shapes");
        }
        for (Eigen::Index out = 0; out < m.rows(); ++out) {
            Eigen::Index ao, bo;
            split(out, k_out, ao, bo);
            for (Eigen::Index in = 0; in < m.cols(); ++in) {
                Eigen::Index ai, bi;
                split(in, k_in, ai, bi);
                m(out, in) += op(ao, ai) * std::conj(op(bo, bi));
            }
        }
    }
    return m;
}

bool is_cptp(const Matrix &superop, int arity_in, int arity_out, double tol) {
    const Eigen::Index din = Eigen::Index{1} << arity_in;
    const Eigen::Index dout = Eigen::Index{1} << arity_out;
    if (superop.rows() != pow4(arity_out) || superop.cols() != pow4(arity_in)) {
        return false;
    }
    auto index = [](Eigen::Index a, Eigen::Index b, int k) {
        Eigen::Index idx = 0;
        for (int t = 0; t < k; ++t) {
            const int shift = k - 1 - t;
            idx = (idx << 2) | (((a >> shift) & 1) << 1) | ((b >> shift) & 1);
        }
        return idx;
    };
    // Trace preservation: tr G[|a><b|] = delta_ab.
    for (Eigen::Index ai = 0; ai < din; ++ai) {
        for (Eigen::Index bi = 0; bi < din; ++bi) {
            Complex tr = 0.0;
            for (Eigen::Index a = 0; a < dout; ++a) {
                tr += superop(index(a, a, arity_out), index(ai, bi, arity_in));
            }
            if (std::abs(tr - (ai == bi ? 1.0 : 0.0)) > tol) {
                return false;
            }
        }
    }
    // Complete positivity via the Choi matrix sum_ab G[|a><b|] (x) |a><b|.
    Matrix choi(dout * din, dout * din);
    for (Eigen::Index ao = 0; ao < dout; ++ao) {
        for (Eigen::Index ai = 0; ai < din; ++ai) {
            for (Eigen::Index bo = 0; bo < dout; ++bo) {
                for (Eigen::Index bi = 0; bi < din; ++bi) {
                    choi(ao * din + ai, bo * din + bi) =
                        superop(index(ao, bo, arity_out), index(ai, bi, arity_in));
                }
            }
        }
    }
    if ((choi - choi.adjoint()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(choi, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
}

ChannelSpec ChannelSpec::from_unitary(const Matrix &u, bool force) {
    if (u.rows() != u.cols()) {
        throw ArityMismatch("unitary must be square");
    }
    const int k = qubits_for_dim(u.rows(), "unitary");
    check_arity(k, k);
    ChannelSpec c;
    c.arity_in_ = k;
    c.arity_out_ = k;
    c.source_ = ChannelSource::Unitary;
    c.kraus_ = {u};
    c.matrix_ = kraus_superoperator(c.kraus_);
    const double dev =
        (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    c.checked_ = dev <= kPhysicalTol;
    if (!c.checked_ && !force) {
        throw NonPhysicalChannel("matrix is not unitary (max deviation " + std::to_string(dev) +
                                 ")");
    }
    c.name_ = "U";
    return c;
}

ChannelSpec ChannelSpec::from_kraus(std::vector<Matrix> ops, bool force) {
    ChannelSpec c;
    c.matrix_ = kraus_superoperator(ops);
    c.arity_out_ = qubits_for_dim(ops.front().rows(), "Kraus output");
    c.arity_in_ = qubits_for_dim(ops.front().cols(), "Kraus input");
    check_arity(c.arity_in_, c.arity_out_);
    Matrix sum = Matrix::Zero(ops.front().cols(), ops.front().cols());
    for (const auto &op : ops) {
        sum += op.adjoint() * op;
    }
    const double dev = (sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
    c.checked_ = dev <= kPhysicalTol;
    if (!c.checked_ && !force) {
        throw NonPhysicalChannel("Kraus operators do not sum to identity (max deviation " +
                                 std::to_string(dev) + ")");
    }
    c.source_ = ChannelSource::Kraus;
    c.kraus_ = std::move(ops);
    c.name_ = "KRAUS";
    return c;
}

ChannelSpec ChannelSpec::from_superoperator(Matrix m, int arity_in, int arity_out, bool force) {
    check_arity(arity_in, arity_out);
    if (m.rows() != pow4(arity_out) || m.cols() != pow4(arity_in)) {
        throw ArityMismatch("superoperator is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " +
                            std::to_string(pow4(arity_out)) + "x" +
                            std::to_string(pow4(arity_in)));
    }
    ChannelSpec c;
    c.arity_in_ = arity_in;
    c.arity_out_ = arity_out;
    c.checked_ = is_cptp(m, arity_in, arity_out);
    if (!c.checked_ && !force) {
        throw NonPhysicalChannel("superoperator is not completely positive and trace preserving");
    }
    c.matrix_ = std::move(m);
    c.source_ = ChannelSource::Superoperator;
    c.name_ = "CHANNEL";
    return c;
}

ChannelSpec ChannelSpec::named(std::string name) const {
    ChannelSpec c = *this;
    c.name_ = std::move(name);
    return c;
}

bool is_density_matrix(const Matrix2 &rho, double tol) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    if (std::abs(rho.trace() - 1.0) > tol) {
        return false;
    }
    // Hermitian 2x2: PSD iff both diagonal entries and the determinant are >= 0.
    return rho(0, 0).real() >= -tol && rho(1, 1).real() >= -tol &&
           rho.determinant().real() >= -tol;
}

bool is_povm_element(const Matrix2 &e, double tol) {
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    auto psd = [tol](const Matrix2 &m) {
        return m(0, 0).real() >= -tol && m(1, 1).real() >= -tol &&
               m.determinant().real() >= -tol;
    };
    return psd(e) && psd(Matrix2::Identity() - e);
}

double controlled_phase_angle(int k, PhaseConvention conv) {
    const double base = conv == PhaseConvention::Literal ? std::numbers::pi : 2.0 * std::numbers::pi;
    return base / std::ldexp(1.0, k);
}

Matrix hadamard_matrix() {
    Matrix h(2, 2);
    const double s = 1.0 / std::numbers::sqrt2;
    h << s, s, s, -s;
    return h;
}

Matrix pauli_x_matrix() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y_matrix() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix pauli_z_matrix() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix cphase_matrix(double theta) {
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = std::polar(1.0, theta);
    return m;
}

Matrix cnot_matrix() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

ChannelSpec hadamard() { return ChannelSpec::from_unitary(hadamard_matrix()).named("H"); }
ChannelSpec pauli_x() { return ChannelSpec::from_unitary(pauli_x_matrix()).named("X"); }
ChannelSpec pauli_y() { return ChannelSpec::from_unitary(pauli_y_matrix()).named("Y"); }
ChannelSpec pauli_z() { return ChannelSpec::from_unitary(pauli_z_matrix()).named("Z"); }
ChannelSpec cnot() { return ChannelSpec::from_unitary(cnot_matrix()); }

ChannelSpec cphase(double theta) {
    std::ostringstream os;
    os.precision(17);
    os << "CPHASE(" << theta << ")";
    return ChannelSpec::from_unitary(cphase_matrix(theta)).named(os.str());
}

ChannelSpec controlled_phase(int k, PhaseConvention conv) {
    if (k < 1) {
        throw ArityMismatch("controlled phase distance must be >= 1");
    }
    auto c = ChannelSpec::from_unitary(cphase_matrix(controlled_phase_angle(k, conv)));
    if (conv == PhaseConvention::Literal) {
        return c.named("R(" + std::to_string(k) + ")");
    }
    return cphase(controlled_phase_angle(k, conv));
}

ChannelSpec identity_channel(int qubits) {
    return ChannelSpec::from_unitary(Matrix::Identity(Eigen::Index{1} << qubits,
                                                      Eigen::Index{1} << qubits));
}

ChannelSpec amplitude_damping(double gamma) {
    Matrix k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
    k1 << 0, std::sqrt(gamma), 0, 0;
    return ChannelSpec::from_kraus({k0, k1});
}

ChannelSpec depolarizing(double p) {
    const double a = std::sqrt(1.0 - 3.0 * p / 4.0);
    const double b = std::sqrt(p / 4.0);
    return ChannelSpec::from_kraus({a * Matrix::Identity(2, 2), b * pauli_x_matrix(),
                                    b * pauli_y_matrix(), b * pauli_z_matrix()});
}

Matrix2 ket0_projector() {
    Matrix2 m;
    m << 1, 0, 0, 0;
    return m;
}

Matrix2 ket1_projector() {
    Matrix2 m;
    m << 0, 0, 0, 1;
    return m;
}

Matrix2 plus_projector() {
    Matrix2 m;
    m << 0.5, 0.5, 0.5, 0.5;
    return m;
}

Matrix2 minus_projector() {
    Matrix2 m;
    m << 0.5, -0.5, -0.5, 0.5;
    return m;
}

Matrix2 maximally_mixed() { return 0.5 * Matrix2::Identity(); }

} // namespace tnqs
