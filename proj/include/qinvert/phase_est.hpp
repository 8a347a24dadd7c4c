#pragma once

#include "qinvert/common.hpp"
#include "qinvert/linalg.hpp"
#include "qinvert/state.hpp"

namespace qinvert {

inline constexpr const char* kClockRegister = "clock";
inline constexpr const char* kSystemRegister = "system";
inline constexpr const char* kFlagRegister = "flag";

/// Clock dimension and total evolution time for phase estimation.
/// T must be a power of two >= 2 and satisfy T >= 16 t0 so that the
/// concentration analysis of the coefficient kernel applies to |lambda| <= 1.
struct PhaseEstConfig {
    Index clock_dim;   // T
    double total_time; // t0

    PhaseEstConfig(Index T, double t0);
    /// Smallest valid power-of-two clock for a given evolution time.
    static PhaseEstConfig for_time(double t0);

    /// Grid eigenvalue of Fourier bin k. Bins above T/2 wrap to negative
    /// values, 2 pi (k - T) / t0, extending the positive-spectrum relabeling
    /// to spectra in [-1, -1/kappa] U [1/kappa, 1].
    double grid_eigenvalue(Index k) const;
};

/// Clock state with amplitudes sqrt(2/T) sin(pi (tau + 1/2) / T).
/// Rejected for T < 2: sum_tau sin^2(pi (tau + 1/2)/T) = T/2 only holds there.
QuantumState prepare_psi0(Index clock_dim);
ComplexVector psi0_amplitudes(Index clock_dim);

/// Phase-estimation coefficient for detuning delta = lambda t0 - 2 pi k,
/// evaluated in closed form:
///   -sqrt(2) e^{i delta (1 - 1/T) / 2} cos(delta/2) cos(delta/2T) sin(pi/2T)
///     / (T sin((delta+pi)/2T) sin((delta-pi)/2T)),
/// falling back to the defining series near the removable singularities
/// delta = +-pi + 2 pi m T.
Complex alpha_kernel(double delta, Index clock_dim);
/// Direct summation (sqrt(2)/T) sum_tau e^{i tau delta / T} sin(pi (tau+1/2)/T).
Complex alpha_kernel_series(double delta, Index clock_dim);

/// Conditional Hamiltonian evolution sum_tau |tau><tau| (x) e^{i A tau t0 / T}
/// applied to a state holding a clock register and a system register.
QuantumState conditional_evolution(const QuantumState& state, const EigenDecomposition& eig,
                                   const PhaseEstConfig& cfg, bool adjoint = false,
                                   const std::string& clock = kClockRegister,
                                   const std::string& system = kSystemRegister);
QuantumState conditional_evolution(const QuantumState& state, const SparseHermitianMatrix& a,
                                   const PhaseEstConfig& cfg, bool adjoint = false);

/// Full phase-estimation subroutine on a system-register state: prepare the
/// clock in psi0, run the conditional evolution, and read the clock out in the
/// Fourier basis. In the (k, u_j) basis the resulting amplitudes are
/// beta_j * alpha_kernel(lambda_j t0 - 2 pi k, T).
QuantumState phase_estimate(const QuantumState& b_state, const EigenDecomposition& eig,
                            const PhaseEstConfig& cfg);
QuantumState phase_estimate(const QuantumState& b_state, const SparseHermitianMatrix& a,
                            const PhaseEstConfig& cfg);

}  // namespace qinvert
