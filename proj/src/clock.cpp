#include "qinvert/clock.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "qinvert/linalg.hpp"

namespace qinvert {

namespace {

constexpr double kUnitaryTolerance = 1e-10;

ComplexMatrix two_by_two(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

void ClockCircuit::validate() const {
    if (qubits < 1) throw DomainError("circuit needs at least one qubit");
    if (gates.empty()) throw DomainError("circuit needs at least one gate");
    for (const auto& gate : gates) {
        if (gate.wires.empty() || gate.wires.size() > 2) {
            throw DomainError("gates act on one or two wires");
        }
        const Index d = Index(1) << gate.wires.size();
        if (gate.matrix.rows() != d || gate.matrix.cols() != d) {
            throw DomainError("gate matrix does not match its wire count");
        }
        for (int w : gate.wires) {
            if (w < 0 || w >= qubits) throw DomainError("gate wire out of range");
        }
        if (gate.wires.size() == 2 && gate.wires[0] == gate.wires[1]) {
            throw DomainError("gate wires must be distinct");
        }
        const ComplexMatrix gram = gate.matrix.adjoint() * gate.matrix;
        if ((gram - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kUnitaryTolerance) {
            throw DomainError("gate '" + gate.name + "' is not unitary");
        }
    }
}

Gate make_named_gate(const std::string& name, const std::vector<int>& wires) {
    const Complex i(0.0, 1.0);
    const double r = 1.0 / std::sqrt(2.0);
    Gate g;
    g.wires = wires;
    g.name = name;
    if (name == "H") {
        g.matrix = two_by_two(r, r, r, -r);
    } else if (name == "X") {
        g.matrix = two_by_two(0, 1, 1, 0);
    } else if (name == "Y") {
        g.matrix = two_by_two(0, -i, i, 0);
    } else if (name == "Z") {
        g.matrix = two_by_two(1, 0, 0, -1);
    } else if (name == "S") {
        g.matrix = two_by_two(1, 0, 0, i);
    } else if (name == "T") {
        g.matrix = two_by_two(1, 0, 0, std::polar(1.0, M_PI / 4.0));
    } else if (name == "CNOT" || name == "CZ" || name == "SWAP") {
        ComplexMatrix m = ComplexMatrix::Identity(4, 4);
        if (name == "CNOT") {
            m(2, 2) = 0; m(3, 3) = 0; m(2, 3) = 1; m(3, 2) = 1;
        } else if (name == "CZ") {
            m(3, 3) = -1;
        } else {
            m(1, 1) = 0; m(2, 2) = 0; m(1, 2) = 1; m(2, 1) = 1;
        }
        g.matrix = m;
    } else {
        throw DomainError("unknown gate name '" + name + "'");
    }
    const std::size_t need = (name == "CNOT" || name == "CZ" || name == "SWAP") ? 2 : 1;
    if (wires.size() != need) {
        throw DomainError("gate '" + name + "' expects " + std::to_string(need) + " wire(s)");
    }
    return g;
}

ComplexMatrix promote_gate(const Gate& gate, int qubits) {
    const Index dim = Index(1) << qubits;
    const int w = static_cast<int>(gate.wires.size());
    const Index g = Index(1) << w;
    std::vector<Index> bit(gate.wires.size());
    for (std::size_t k = 0; k < gate.wires.size(); ++k) {
        bit[k] = Index(1) << (qubits - 1 - gate.wires[k]);
    }
    Index mask = 0;
    for (Index b : bit) mask |= b;

    ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
    for (Index rest = 0; rest < dim; ++rest) {
        if ((rest & mask) != 0) continue;
        for (Index col = 0; col < g; ++col) {
            Index col_idx = rest;
            for (int k = 0; k < w; ++k) {
                if ((col >> (w - 1 - k)) & 1) col_idx |= bit[k];
            }
            for (Index row = 0; row < g; ++row) {
                Index row_idx = rest;
                for (int k = 0; k < w; ++k) {
                    if ((row >> (w - 1 - k)) & 1) row_idx |= bit[k];
                }
                full(row_idx, col_idx) = gate.matrix(row, col);
            }
        }
    }
    return full;
}

ComplexVector run_circuit_direct(const ClockCircuit& circuit) {
    circuit.validate();
    ComplexVector psi = ComplexVector::Zero(circuit.system_dim());
    psi[0] = 1.0;
    for (const auto& gate : circuit.gates) {
        psi = promote_gate(gate, circuit.qubits) * psi;
    }
    return psi;
}

ComplexMatrix build_clock_unitary(const ClockCircuit& circuit) {
    circuit.validate();
    const Index t_count = circuit.gate_count();
    const Index sys = circuit.system_dim();
    const Index clock = 3 * t_count;
    const Index dim = clock * sys;
    ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
    for (Index c = 0; c < clock; ++c) {
        const Index target = (c + 1) % clock;
        ComplexMatrix block;
        if (c < t_count) {
            block = promote_gate(circuit.gates[static_cast<std::size_t>(c)], circuit.qubits);
        } else if (c < 2 * t_count) {
            block = ComplexMatrix::Identity(sys, sys);
        } else {
            // unapply phase: source clock value c+1 in [2T+1, 3T] removes gate 3T-c
            const Index gate_idx = 3 * t_count - c;  // 1-based
            block = promote_gate(circuit.gates[static_cast<std::size_t>(gate_idx - 1)],
                                 circuit.qubits)
                        .adjoint();
        }
        u.block(target * sys, c * sys, sys, sys) = block;
    }
    return u;
}

ClockMatrices build_inversion_matrix(const ClockCircuit& circuit) {
    ClockMatrices out;
    out.clock_unitary = build_clock_unitary(circuit);
    const Index dim = out.clock_unitary.rows();
    const double decay = std::exp(-1.0 / static_cast<double>(circuit.gate_count()));
    out.inversion = ComplexMatrix::Identity(dim, dim) - decay * out.clock_unitary;
    out.hermitian = ComplexMatrix::Zero(2 * dim, 2 * dim);
    out.hermitian.block(0, dim, dim, dim) = out.inversion;
    out.hermitian.block(dim, 0, dim, dim) = out.inversion.adjoint();
    out.kappa = condition_number(out.inversion);
    return out;
}

namespace {

/// Accepting basis states of the clock-inversion solution: clock value in
/// [T+1, 2T] and system qubit 0 (the MSB) equal to 1.
bool m0_accepts(Index x_index, Index t_count, Index sys) {
    const Index c = x_index / sys;
    const Index z = x_index % sys;
    const bool in_window = (c >= t_count) && (c < 2 * t_count);
    return in_window && ((z & (sys >> 1)) != 0);
}

}  // namespace

FirstQubitEmbedding build_first_qubit_embedding(const ClockCircuit& circuit) {
    const ClockMatrices base = build_inversion_matrix(circuit);
    const Index d = base.inversion.rows();  // 3T 2^n
    const Index bdim = 3 * d;               // 9T 2^n
    const Index sys = circuit.system_dim();
    const Index t_count = circuit.gate_count();

    ComplexMatrix b = ComplexMatrix::Identity(bdim, bdim);
    b.block(2 * d, 2 * d, d, d) = base.inversion;

    // slot permutation: accepted solution components first, then padding up to
    // the half mark, then the rejected components, then the rest of the pad
    FirstQubitEmbedding emb;
    emb.slot_of.assign(static_cast<std::size_t>(bdim), -1);
    const Index half = bdim / 2;
    Index next_top = 0;
    Index next_bottom = half;
    for (Index j = 0; j < d; ++j) {
        if (m0_accepts(j, t_count, sys)) {
            emb.slot_of[static_cast<std::size_t>(2 * d + j)] = next_top++;
            ++emb.accept_count;
        } else {
            emb.slot_of[static_cast<std::size_t>(2 * d + j)] = next_bottom++;
        }
    }
    for (Index j = 0; j < 2 * d; ++j) {
        emb.slot_of[static_cast<std::size_t>(j)] = (next_top < half) ? next_top++ : next_bottom++;
    }

    ComplexMatrix perm = ComplexMatrix::Zero(bdim, bdim);
    for (Index j = 0; j < bdim; ++j) perm(emb.slot_of[static_cast<std::size_t>(j)], j) = 1.0;
    emb.b_permuted = perm * b * perm.transpose();
    emb.rhs_slot = emb.slot_of[static_cast<std::size_t>(2 * d)];

    emb.c_hermitian = ComplexMatrix::Zero(2 * bdim, 2 * bdim);
    emb.c_hermitian.block(0, bdim, bdim, bdim) = emb.b_permuted;
    emb.c_hermitian.block(bdim, 0, bdim, bdim) = emb.b_permuted.adjoint();
    emb.kappa = condition_number(emb.b_permuted);
    return emb;
}

ClockSimulationStats simulate_via_inversion(const ClockCircuit& circuit, long shots, Rng& rng,
                                            bool with_embedding) {
    const ClockMatrices mats = build_inversion_matrix(circuit);
    const Index d = mats.inversion.rows();
    const Index sys = circuit.system_dim();
    const Index t_count = circuit.gate_count();

    ComplexVector rhs = ComplexVector::Zero(d);
    rhs[0] = 1.0;  // clock value 1, system |0...0>
    ComplexVector x = mats.inversion.partialPivLu().solve(rhs);
    const double total = x.squaredNorm();

    ClockSimulationStats stats;
    stats.shots = shots;

    const ComplexVector final_state = run_circuit_direct(circuit);
    for (Index z = 0; z < sys; ++z) {
        if ((z & (sys >> 1)) != 0) stats.first_qubit_one_direct += std::norm(final_state[z]);
    }

    double window = 0.0;
    double window_fidelity = 0.0;
    double accept = 0.0;
    for (Index c = t_count; c < 2 * t_count; ++c) {
        const ComplexVector slice = x.segment(c * sys, sys);
        const double w = slice.squaredNorm();
        window += w;
        window_fidelity += std::norm(final_state.dot(slice));
        for (Index z = 0; z < sys; ++z) {
            if ((z & (sys >> 1)) != 0) accept += std::norm(slice[z]);
        }
    }
    stats.p_window_exact = window / total;
    stats.conditional_fidelity = (window > 0.0) ? window_fidelity / window : 0.0;
    stats.first_qubit_one_exact = (window > 0.0) ? accept / window : 0.0;

    std::vector<double> probs(static_cast<std::size_t>(d));
    for (Index idx = 0; idx < d; ++idx) probs[static_cast<std::size_t>(idx)] = std::norm(x[idx]);
    long accept_hits = 0;
    for (long s = 0; s < shots; ++s) {
        const Index idx = static_cast<Index>(rng.sample_discrete(probs));
        const Index c = idx / sys;
        if (c >= t_count && c < 2 * t_count) {
            ++stats.window_hits;
            if ((idx % sys) & (sys >> 1)) ++accept_hits;
        }
    }
    stats.m0_rate_sampled =
        (stats.window_hits > 0) ? static_cast<double>(accept_hits) / stats.window_hits : 0.0;

    if (with_embedding) {
        const FirstQubitEmbedding emb = build_first_qubit_embedding(circuit);
        ComplexVector rhs_tilde = ComplexVector::Zero(emb.b_permuted.rows());
        rhs_tilde[emb.rhs_slot] = 1.0;
        const ComplexVector y = emb.b_permuted.partialPivLu().solve(rhs_tilde);
        const Index half = emb.b_permuted.rows() / 2;
        stats.embedding_accept_exact = y.head(half).squaredNorm() / y.squaredNorm();
    }
    return stats;
}

int iterated_log2(double x) {
    if (x <= 1.0) return 0;
    int count = 0;
    while (x > 1.0) {
        x = std::log2(x);
        ++count;
    }
    return count;
}

double hamiltonian_sim_cost(double n_dim, double sparsity, double t0, double eps_h) {
    if (!(n_dim >= 2.0) || !(sparsity > 0.0) || !(t0 > 0.0) || !(eps_h > 0.0)) {
        throw DomainError("cost model arguments must be positive (N >= 2)");
    }
    const double ratio = sparsity * sparsity * t0 / eps_h;
    if (ratio <= 1.0) {
        throw DomainError("cost model requires eps_h < s^2 t0");
    }
    const double ls = static_cast<double>(iterated_log2(n_dim));
    return std::log2(n_dim) * ls * ls * sparsity * sparsity * t0 *
           std::pow(9.0, std::sqrt(std::log2(ratio)));
}

}  // namespace qinvert
