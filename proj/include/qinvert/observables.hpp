#pragma once

#include <functional>

#include "qinvert/common.hpp"
#include "qinvert/pipeline.hpp"
#include "qinvert/rng.hpp"
#include "qinvert/state.hpp"

namespace qinvert {

struct ObservableEstimate {
    double exact = 0.0;     // <x|M|x> from amplitudes
    double estimate = 0.0;  // eigenbasis sampling mean
    double stderr_est = 0.0;
    long shots = 0;
};

/// |0><0| (x) I on the most significant bit.
ComplexMatrix first_qubit_projector(Index dim);

/// Unbiased estimate of <x|M|x> by sampling in the eigenbasis of M; the exact
/// amplitude-level value is always reported alongside.
ObservableEstimate estimate_observable(const ComplexVector& x, const ComplexMatrix& m,
                                       long shots, Rng& rng);
/// Same on one register of a multi-register state (the register's reduced
/// statistics are what the measurement sees).
ObservableEstimate estimate_observable(const QuantumState& state, const std::string& reg,
                                       const ComplexMatrix& m, long shots, Rng& rng);

struct SwapTestResult {
    double overlap_sq_exact = 0.0;
    double accept_prob_exact = 0.0;  // (1 + |<a|b>|^2) / 2
    double accept_frequency = 0.0;
    double overlap_sq_estimate = 0.0;  // 2 * accept_frequency - 1
    long shots = 0;
};

/// SWAP test between two states of equal dimension. Accept means the ancilla
/// measured 0.
SwapTestResult swap_test(const ComplexVector& a, const ComplexVector& b, long shots, Rng& rng);
SwapTestResult swap_test(const QuantumState& a, const QuantumState& b, long shots, Rng& rng);

/// Stable state of x_t = A x_{t-1} + b, i.e. the state proportional to
/// (I - A)^{-1} b. Requires spectral radius < 1 (power-iteration check).
QuantumState stable_state(const ComplexMatrix& a_proc, const ComplexVector& b);

/// Power-iteration estimate of the spectral radius (tolerance 1e-6).
double spectral_radius(const ComplexMatrix& a);

/// Degree-2k polynomial estimator: expectation of big_m on |x>^{(x) k}.
ObservableEstimate estimate_poly2k(const ComplexVector& x, int k, const ComplexMatrix& big_m,
                                   long shots, Rng& rng);

struct MatrixFunctionResult {
    QuantumState state;            // pipeline route, post-selected on well
    ComplexVector exact_system;    // sum_j f(lambda_j) beta_j |u_j>, normalized
    double distance = 0.0;         // between the two routes
    double p_tilde = 0.0;
};

/// Apply a spectral function f(A)|b> by substituting f (rescaled to keep the
/// rotation amplitudes at most 1 over the eigenvalue grid) for the inversion
/// filter inside the pipeline; the exact eigenbasis route rides along as the
/// oracle.
MatrixFunctionResult apply_matrix_function(const SparseHermitianMatrix& a,
                                           const ComplexVector& b,
                                           const std::function<double(double)>& f,
                                           const SolveConfig& cfg);

}  // namespace qinvert
