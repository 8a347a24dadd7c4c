#include "qinvert/phase_est.hpp"

#include <cmath>

namespace qinvert {

namespace {

bool is_power_of_two(Index n) { return n >= 1 && (n & (n - 1)) == 0; }

Index next_power_of_two(double x) {
    Index t = 2;
    while (static_cast<double>(t) < x) t <<= 1;
    return t;
}

}  // namespace

PhaseEstConfig::PhaseEstConfig(Index T, double t0) : clock_dim(T), total_time(t0) {
    if (T < 2) {
        throw DomainError("clock dimension must be at least 2 (psi0 is unnormalized at T = 1)");
    }
    if (!is_power_of_two(T)) {
        throw DomainError("clock dimension must be a power of two");
    }
    if (!(t0 >= 0.0) || !std::isfinite(t0)) {
        throw DomainError("evolution time must be finite and non-negative");
    }
    if (static_cast<double>(T) < 16.0 * t0) {
        throw DomainError("clock dimension must satisfy T >= 16 t0");
    }
}

PhaseEstConfig PhaseEstConfig::for_time(double t0) {
    return PhaseEstConfig(next_power_of_two(16.0 * t0), t0);
}

double PhaseEstConfig::grid_eigenvalue(Index k) const {
    if (total_time <= 0.0) {
        throw DomainError("grid eigenvalues require a positive evolution time");
    }
    if (k < 0 || k >= clock_dim) throw DomainError("Fourier bin out of range");
    const double kk = (k <= clock_dim / 2) ? static_cast<double>(k)
                                           : static_cast<double>(k - clock_dim);
    return 2.0 * M_PI * kk / total_time;
}

ComplexVector psi0_amplitudes(Index clock_dim) {
    if (clock_dim < 2) {
        throw DomainError("clock dimension must be at least 2 (psi0 is unnormalized at T = 1)");
    }
    const double T = static_cast<double>(clock_dim);
    ComplexVector amps(clock_dim);
    for (Index tau = 0; tau < clock_dim; ++tau) {
        amps[tau] = std::sqrt(2.0 / T) * std::sin(M_PI * (static_cast<double>(tau) + 0.5) / T);
    }
    return amps;
}

QuantumState prepare_psi0(Index clock_dim) {
    return QuantumState(RegisterLayout({{kClockRegister, clock_dim}}),
                        psi0_amplitudes(clock_dim));
}

Complex alpha_kernel_series(double delta, Index clock_dim) {
    const double T = static_cast<double>(clock_dim);
    Complex acc(0.0, 0.0);
    for (Index tau = 0; tau < clock_dim; ++tau) {
        const double t = static_cast<double>(tau);
        acc += std::polar(1.0, t * delta / T) * std::sin(M_PI * (t + 0.5) / T);
    }
    return std::sqrt(2.0) / T * acc;
}

Complex alpha_kernel(double delta, Index clock_dim) {
    if (clock_dim < 2) throw DomainError("clock dimension must be at least 2");
    const double T = static_cast<double>(clock_dim);
    const double sp = std::sin((delta + M_PI) / (2.0 * T));
    const double sm = std::sin((delta - M_PI) / (2.0 * T));
    // removable singularities at delta = -+pi + 2 pi m T
    if (std::abs(sp) < 1e-8 || std::abs(sm) < 1e-8) {
        return alpha_kernel_series(delta, clock_dim);
    }
    const Complex phase = std::polar(1.0, 0.5 * delta * (1.0 - 1.0 / T));
    const double magnitude = std::sqrt(2.0) * std::cos(0.5 * delta) *
                             std::cos(delta / (2.0 * T)) * std::sin(M_PI / (2.0 * T)) /
                             (T * sp * sm);
    return -phase * magnitude;
}

QuantumState conditional_evolution(const QuantumState& state, const EigenDecomposition& eig,
                                   const PhaseEstConfig& cfg, bool adjoint,
                                   const std::string& clock, const std::string& system) {
    const auto& layout = state.layout();
    const std::size_t clock_idx = layout.index_of(clock);
    const std::size_t system_idx = layout.index_of(system);
    if (layout.reg(clock_idx).dim != cfg.clock_dim) {
        throw DomainError("clock register dimension does not match the configuration");
    }
    if (layout.reg(system_idx).dim != eig.dim()) {
        throw DomainError("system register dimension does not match the matrix");
    }
    // rotate the system register to the eigenbasis, apply per-(tau, j) phases,
    // rotate back; this is exactly sum_tau |tau><tau| (x) e^{i A tau t0 / T}
    QuantumState rotated = apply_to_register(state, system, eig.eigenvectors.adjoint());
    const Index clock_stride = layout.stride(clock_idx);
    const Index system_stride = layout.stride(system_idx);
    const Index clock_d = layout.reg(clock_idx).dim;
    const Index system_d = layout.reg(system_idx).dim;
    const double sign = adjoint ? -1.0 : 1.0;
    const double step = cfg.total_time / static_cast<double>(cfg.clock_dim);

    ComplexVector& amps = rotated.mutable_amplitudes();
    // phase table, clock_d x system_d
    ComplexMatrix phases(clock_d, system_d);
    for (Index j = 0; j < system_d; ++j) {
        const Complex unit = std::polar(1.0, sign * eig.eigenvalues[j] * step);
        Complex acc(1.0, 0.0);
        for (Index tau = 0; tau < clock_d; ++tau) {
            phases(tau, j) = acc;
            acc *= unit;
        }
    }
    for (Index idx = 0; idx < amps.size(); ++idx) {
        const Index tau = (idx / clock_stride) % clock_d;
        const Index j = (idx / system_stride) % system_d;
        amps[idx] *= phases(tau, j);
    }
    return apply_to_register(rotated, system, eig.eigenvectors);
}

QuantumState conditional_evolution(const QuantumState& state, const SparseHermitianMatrix& a,
                                   const PhaseEstConfig& cfg, bool adjoint) {
    return conditional_evolution(state, eig_hermitian(a), cfg, adjoint);
}

QuantumState phase_estimate(const QuantumState& b_state, const EigenDecomposition& eig,
                            const PhaseEstConfig& cfg) {
    if (b_state.layout().size() != 1) {
        throw DomainError("phase_estimate expects a single-register input state");
    }
    if (b_state.layout().reg(0).dim != eig.dim()) {
        throw DomainError("system register dimension does not match the matrix");
    }
    QuantumState sys(RegisterLayout({{kSystemRegister, eig.dim()}}), b_state.amplitudes(),
                     b_state.is_normalized());
    QuantumState joint = tensor_product(prepare_psi0(cfg.clock_dim), sys);
    joint = conditional_evolution(joint, eig, cfg);
    // read the clock out in the Fourier basis (adjoint of the qft map), so
    // that bin k carries alpha at delta = lambda t0 - 2 pi k
    return inverse_qft(joint, kClockRegister);
}

QuantumState phase_estimate(const QuantumState& b_state, const SparseHermitianMatrix& a,
                            const PhaseEstConfig& cfg) {
    return phase_estimate(b_state, eig_hermitian(a), cfg);
}

}  // namespace qinvert
