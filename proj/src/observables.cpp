#include "qinvert/observables.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qinvert {

namespace {

void check_hermitian(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("observable must be square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw DomainError("observable must be Hermitian");
    }
}

ObservableEstimate sample_in_eigenbasis(const RealVector& values,
                                        const std::vector<double>& probs, long shots,
                                        Rng& rng) {
    ObservableEstimate out;
    out.shots = shots;
    for (std::size_t i = 0; i < probs.size(); ++i) out.exact += probs[i] * values[static_cast<Index>(i)];
    if (shots <= 0) {
        out.estimate = out.exact;
        return out;
    }
    double sum = 0.0, sum_sq = 0.0;
    for (long s = 0; s < shots; ++s) {
        const double v = values[static_cast<Index>(rng.sample_discrete(probs))];
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(shots);
    out.estimate = mean;
    if (shots > 1) {
        const double var =
            std::max(0.0, (sum_sq - static_cast<double>(shots) * mean * mean) /
                              static_cast<double>(shots - 1));
        out.stderr_est = std::sqrt(var / static_cast<double>(shots));
    }
    return out;
}

}  // namespace

ComplexMatrix first_qubit_projector(Index dim) {
    if (dim < 2 || dim % 2 != 0) throw DomainError("projector dimension must be even");
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (Index i = 0; i < dim / 2; ++i) p(i, i) = 1.0;
    return p;
}

ObservableEstimate estimate_observable(const ComplexVector& x, const ComplexMatrix& m,
                                       long shots, Rng& rng) {
    check_hermitian(m);
    if (m.rows() != x.size()) throw DomainError("observable does not match the state dimension");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    const ComplexVector coeffs = solver.eigenvectors().adjoint() * x;
    std::vector<double> probs(static_cast<std::size_t>(coeffs.size()));
    for (Index i = 0; i < coeffs.size(); ++i) probs[static_cast<std::size_t>(i)] = std::norm(coeffs[i]);
    return sample_in_eigenbasis(solver.eigenvalues(), probs, shots, rng);
}

ObservableEstimate estimate_observable(const QuantumState& state, const std::string& reg,
                                       const ComplexMatrix& m, long shots, Rng& rng) {
    check_hermitian(m);
    if (m.rows() != state.layout().dim(reg)) {
        throw DomainError("observable does not match register '" + reg + "'");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    const QuantumState rotated =
        apply_to_register(state, reg, solver.eigenvectors().adjoint().eval());
    return sample_in_eigenbasis(solver.eigenvalues(), marginal_probabilities(rotated, reg),
                                shots, rng);
}

SwapTestResult swap_test(const ComplexVector& a, const ComplexVector& b, long shots, Rng& rng) {
    if (a.size() != b.size()) throw DomainError("swap test requires equal dimensions");
    SwapTestResult out;
    out.shots = shots;
    out.overlap_sq_exact = std::norm(a.dot(b) / (a.norm() * b.norm()));
    out.accept_prob_exact = 0.5 * (1.0 + out.overlap_sq_exact);
    long accepts = 0;
    for (long s = 0; s < shots; ++s) {
        if (rng.uniform() < out.accept_prob_exact) ++accepts;
    }
    out.accept_frequency = (shots > 0) ? static_cast<double>(accepts) / shots : 0.0;
    out.overlap_sq_estimate = 2.0 * out.accept_frequency - 1.0;
    return out;
}

SwapTestResult swap_test(const QuantumState& a, const QuantumState& b, long shots, Rng& rng) {
    return swap_test(a.amplitudes(), b.amplitudes(), shots, rng);
}

double spectral_radius(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw DomainError("spectral radius needs a square matrix");
    const Index n = a.rows();
    ComplexVector v = ComplexVector::Constant(n, Complex(1.0, 0.0));
    // deterministic perturbation breaks symmetric starting points
    for (Index i = 0; i < n; ++i) v[i] += Complex(1e-3 * static_cast<double>(i + 1) / n, 1e-4);
    v.normalize();
    double radius = 0.0;
    for (int it = 0; it < 5000; ++it) {
        ComplexVector w = a * v;
        const double r = w.norm();
        if (r == 0.0) return 0.0;
        w /= r;
        if (std::abs(r - radius) < 1e-6 * std::max(1.0, r) && it > 10) return r;
        radius = r;
        v = std::move(w);
    }
    return radius;
}

QuantumState stable_state(const ComplexMatrix& a_proc, const ComplexVector& b) {
    if (a_proc.rows() != a_proc.cols()) throw DomainError("process matrix must be square");
    if (b.size() != a_proc.rows()) throw DomainError("vector does not match the process matrix");
    const double radius = spectral_radius(a_proc);
    if (radius >= 1.0) {
        throw DomainError("process has spectral radius " + std::to_string(radius) +
                          " >= 1; no stable state");
    }
    const Index n = a_proc.rows();
    const ComplexMatrix m = ComplexMatrix::Identity(n, n) - a_proc;
    const SolveReport report = solve_general(m, b);
    return QuantumState(RegisterLayout({{kSystemRegister, n}}), report.x_exact_system);
}

ObservableEstimate estimate_poly2k(const ComplexVector& x, int k, const ComplexMatrix& big_m,
                                   long shots, Rng& rng) {
    if (k < 1) throw DomainError("copy count must be at least 1");
    ComplexVector copies = x;
    for (int c = 1; c < k; ++c) {
        ComplexVector next(copies.size() * x.size());
        for (Index i = 0; i < copies.size(); ++i) {
            next.segment(i * x.size(), x.size()) = copies[i] * x;
        }
        copies = std::move(next);
    }
    if (big_m.rows() != copies.size()) {
        throw DomainError("observable does not match the k-fold tensor space");
    }
    return estimate_observable(copies, big_m, shots, rng);
}

MatrixFunctionResult apply_matrix_function(const SparseHermitianMatrix& a,
                                           const ComplexVector& b,
                                           const std::function<double(double)>& f,
                                           const SolveConfig& cfg) {
    const ComplexVector bn = prepare_amplitudes(b).amplitudes();
    const EigenDecomposition eig = eig_hermitian(a, &bn);

    // rescale so the rotation amplitude stays at most 1 on the whole grid
    double scale = 0.0;
    for (Index k = 0; k < cfg.pe.clock_dim; ++k) {
        scale = std::max(scale, std::abs(f(cfg.pe.grid_eigenvalue(k))));
    }
    for (Index j = 0; j < eig.dim(); ++j) {
        scale = std::max(scale, std::abs(f(eig.eigenvalues[j])));
    }
    if (scale <= 0.0) throw DomainError("function vanishes on the eigenvalue grid");

    const FlagMap map = [&f, scale](double lam) {
        return std::pair<double, double>(f(lam) / scale, 0.0);
    };

    // exact spectral route
    ComplexVector x = ComplexVector::Zero(eig.dim());
    const ComplexVector& beta = *eig.coefficients;
    for (Index j = 0; j < eig.dim(); ++j) {
        x += beta[j] * f(eig.eigenvalues[j]) * eig.eigenvectors.col(j);
    }
    const double norm = x.norm();
    if (norm < 1e-14) {
        throw DomainError("function vanishes on the spectral weight of the input");
    }

    const QuantumState pipeline =
        apply_u_invert(embed_input(bn, cfg.pe.clock_dim), eig, cfg.pe, map);
    auto [selected, p_tilde] = postselect_well(pipeline);
    auto [ideal_well, p_ideal] =
        postselect_well(ideal_u_invert_state(eig, cfg.pe.clock_dim, map));

    MatrixFunctionResult out{std::move(selected), x / norm,
                             0.0, p_tilde};
    out.distance = state_distance(out.state, ideal_well);
    return out;
}

}  // namespace qinvert
