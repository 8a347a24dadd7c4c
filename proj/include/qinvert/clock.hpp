#pragma once

#include <string>
#include <vector>

#include "qinvert/common.hpp"
#include "qinvert/rng.hpp"

namespace qinvert {

/// One- or two-wire gate; wire 0 is the most significant bit of the system
/// register index.
struct Gate {
    std::vector<int> wires;
    ComplexMatrix matrix;  // 2^w x 2^w, unitary to 1e-10
    std::string name;      // shorthand or "matrix"
};

struct ClockCircuit {
    int qubits = 0;
    std::vector<Gate> gates;

    Index gate_count() const { return static_cast<Index>(gates.size()); }
    Index system_dim() const { return Index(1) << qubits; }
    void validate() const;
};

/// Named gate constructors for circuit files and tests.
Gate make_named_gate(const std::string& name, const std::vector<int>& wires);

/// Embed a gate into the full 2^n-dimensional system space.
ComplexMatrix promote_gate(const Gate& gate, int qubits);

/// Plain statevector run of the circuit on |0...0>.
ComplexVector run_circuit_direct(const ClockCircuit& circuit);

/// The 3T-block clock unitary: clock values 1..T apply the gates, T+1..2T
/// idle, 2T+1..3T unapply them in reverse, wrapping 3T back to 1. Clock value
/// t is stored at index t-1. U^{3T} = I.
ComplexMatrix build_clock_unitary(const ClockCircuit& circuit);

struct ClockMatrices {
    ComplexMatrix clock_unitary;  // U, dim 3T 2^n
    ComplexMatrix inversion;      // A = I - U e^{-1/T}
    ComplexMatrix hermitian;      // [[0, A], [A^dagger, 0]], dim 6T 2^n
    double kappa = 0.0;           // condition number of the Hermitian wrapper
};

ClockMatrices build_inversion_matrix(const ClockCircuit& circuit);

/// The first-qubit-measurement variant: B = diag(I, I, A) on 9T 2^n
/// dimensions, conjugated by the permutation that gathers the accepting basis
/// states (clock in T+1..2T with system qubit 0 equal to 1) into the top half,
/// then wrapped Hermitian as C = [[0, B~], [B~^dagger, 0]] with dim 18T 2^n.
struct FirstQubitEmbedding {
    ComplexMatrix b_permuted;     // B~
    ComplexMatrix c_hermitian;    // C
    std::vector<Index> slot_of;   // permutation old index -> slot
    Index rhs_slot = 0;           // slot carrying the clock-inversion input e_0
    Index accept_count = 0;
    double kappa = 0.0;           // condition number of C
};

FirstQubitEmbedding build_first_qubit_embedding(const ClockCircuit& circuit);

struct ClockSimulationStats {
    double p_window_exact = 0.0;        // P(clock value in T+1..2T), from amplitudes
    double conditional_fidelity = 0.0;  // with U_T ... U_1 |0...0>, within the window
    double first_qubit_one_direct = 0.0;   // oracle: direct circuit statevector
    double first_qubit_one_exact = 0.0;    // exact conditional rate from the solution
    double m0_rate_sampled = 0.0;          // sampled conditional rate
    long window_hits = 0;
    long shots = 0;
    /// exact stats of the first-qubit embedding (probability of qubit 0 = 0
    /// on the C-solve output), for cross-checking against M0 on the A-solve
    double embedding_accept_exact = 0.0;
};

/// Solve A x = |1>|0...0>, measure the time register, and compare the
/// conditional window statistics with a direct simulation of the circuit.
ClockSimulationStats simulate_via_inversion(const ClockCircuit& circuit, long shots, Rng& rng,
                                            bool with_embedding = false);

/// Analytic sparse-simulation cost model
/// log2(N) log2*(N)^2 s^2 t0 9^sqrt(log2(s^2 t0 / eps_h)), dimensionless.
double hamiltonian_sim_cost(double n_dim, double sparsity, double t0, double eps_h);

/// Base-2 iterated logarithm.
int iterated_log2(double x);

}  // namespace qinvert
