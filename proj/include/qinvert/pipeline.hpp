#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qinvert/filters.hpp"
#include "qinvert/linalg.hpp"
#include "qinvert/phase_est.hpp"
#include "qinvert/rng.hpp"
#include "qinvert/state.hpp"

namespace qinvert {

/// Everything the solve driver needs: the rotation family, the clock, the
/// error target and its t0 = t0_const * kappa / epsilon derivation, seeds and
/// shot counts for the sampling front ends.
struct SolveConfig {
    FilterSpec filter;
    PhaseEstConfig pe;
    double epsilon;
    double t0_const;
    std::uint64_t seed = 0;
    long shots = 0;
    bool run_amplification = false;

    /// t0 = t0_const * kappa / epsilon, clock = smallest valid power of two.
    static SolveConfig make(double kappa, double epsilon, double t0_const = 10.0,
                            FilterMode mode = FilterMode::kFiltered);
    /// Explicit evolution time; epsilon is back-derived for reporting.
    static SolveConfig with_time(double kappa, double t0, double t0_const = 10.0,
                                 FilterMode mode = FilterMode::kFiltered);
    /// Explicit evolution time and clock dimension.
    static SolveConfig with_clock(double kappa, double t0, Index clock_dim,
                                  double t0_const = 10.0,
                                  FilterMode mode = FilterMode::kFiltered);
};

/// [clock, system, flag] layout used by the inversion pipeline.
RegisterLayout pipeline_layout(Index clock_dim, Index system_dim);

/// |0>_clock (x) |b> (x) |nothing>.
QuantumState embed_input(const ComplexVector& b, Index clock_dim);

/// The key subroutine: prepare psi0 on the clock, conditional evolution,
/// Fourier read-out, conditional flag rotation, then exact uncompute of the
/// first three steps. The composite is Q^dagger R Q with R a Hermitian
/// involution, hence itself a Hermitian involution: it is its own adjoint
/// and inverse.
QuantumState apply_u_invert(const QuantumState& state, const EigenDecomposition& eig,
                            const PhaseEstConfig& pe, const FlagMap& map);

/// Convenience entry point on a bare system vector.
QuantumState u_invert(const ComplexVector& b, const SparseHermitianMatrix& a,
                      const SolveConfig& cfg);
QuantumState u_invert(const ComplexVector& b, const EigenDecomposition& eig,
                      const SolveConfig& cfg);

/// Ideal counterpart with perfect phase estimation: sum_j beta_j |0> |u_j> |h(lambda_j)>.
/// Requires eig.coefficients.
QuantumState ideal_u_invert_state(const EigenDecomposition& eig, Index clock_dim,
                                  const FlagMap& map);

std::pair<QuantumState, double> postselect_well(const QuantumState& state);
std::pair<QuantumState, double> postselect_well_ill(const QuantumState& state);

struct AmplifyResult {
    QuantumState state;
    long repetitions = 0;
    bool success = false;
    double p_well = 0.0;  // exact well probability of U_invert B |initial>
};

/// Amplitude amplification with the geometrically increasing schedule
/// m = 1, 2, 4, ... : each stage applies m rounds of
/// U_invert B R_init B^dagger U_invert^dagger R_succ to a fresh start state
/// and then measures the flag. Stops at the first 'well' outcome, after the
/// stage with m >= kappa, or when the cumulative round count would exceed
/// 4 kappa.
AmplifyResult amplitude_amplify(const EigenDecomposition& eig, const ComplexVector& b,
                                const SolveConfig& cfg, Rng& rng);

struct IllProfile {
    double nothing_weight = 0.0;  // exact spectral weights
    double well_weight = 0.0;
    double ill_weight = 0.0;
    double nothing_simulated = 0.0;  // flag marginal of the simulated state
    double well_simulated = 0.0;
    double ill_simulated = 0.0;
    QuantumState state;  // non-post-selected U_invert |b>
};

/// Non-post-selected run reporting the weight of b on the well-, ill- and
/// un-flagged parts of the spectrum. kappa here is the user's cutoff choice,
/// not necessarily the true condition number.
IllProfile ill_conditioned_profile(const SparseHermitianMatrix& a, const ComplexVector& b,
                                   const SolveConfig& cfg);

struct SolveReport {
    QuantumState x_tilde;          // well-post-selected pipeline state
    QuantumState x_exact;          // ideal comparand on the same layout
    ComplexVector x_exact_system;  // exact filtered solution on the system space
    double distance = 0.0;               // || x_tilde - x_exact ||, well branch
    double distance_well_ill = 0.0;      // post-selected on span{well, ill}
    double distance_no_postselect = 0.0; // || (U~ - U) |b> ||
    double p_tilde = 0.0;          // well probability, simulated (from amplitudes)
    double p_exact = 0.0;          // well probability, exact spectral value
    double p_tilde_well_ill = 0.0;
    double p_exact_well_ill = 0.0;
    double ill_weight_raw = 0.0;       // exact E[g^2]
    double ill_weight_estimate = 0.0;  // E[g^2] / g_plateau^2; the recoverable estimate
    long repetitions = 0;
    bool amplified = false;
    bool amplify_success = false;
    double wall_time_s = 0.0;
    Index clock_dim = 0;
    double t0 = 0.0;
    double kappa = 0.0;
    std::string mode;
};

/// Full inversion run against the exact-filter oracle (the same filters
/// applied to the exact eigenvalues, which isolates phase-estimation error).
SolveReport solve(const SparseHermitianMatrix& a, const ComplexVector& b,
                  const SolveConfig& cfg);

struct GeneralSolveOptions {
    std::optional<double> kappa;  // default: cover every nonzero singular value
    FilterMode mode = FilterMode::kFiltered;
};

/// Rectangular / non-Hermitian solve through the block embedding, evaluated
/// on the exact spectral route. Underconstrained systems yield the
/// minimum-norm solution; inconsistent overconstrained systems flag the
/// residual weight as ill-conditioned.
SolveReport solve_general(const ComplexMatrix& a, const ComplexVector& b,
                          const GeneralSolveOptions& options = {});

}  // namespace qinvert
