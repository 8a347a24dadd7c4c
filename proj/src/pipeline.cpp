#include "qinvert/pipeline.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/SVD>

namespace qinvert {

namespace {

constexpr double kWeightTolerance = 1e-9;

FilterSpec spec_for(double kappa, FilterMode mode) {
    return mode == FilterMode::kFiltered ? FilterSpec::filtered(kappa)
                                         : FilterSpec::simple(kappa);
}

const char* mode_name(FilterMode mode) {
    return mode == FilterMode::kFiltered ? "filtered" : "simple";
}

}  // namespace

SolveConfig SolveConfig::make(double kappa, double epsilon, double t0_const, FilterMode mode) {
    if (epsilon <= 0.0) throw DomainError("epsilon must be positive");
    if (t0_const < 1.0) throw DomainError("t0 derivation constant must be at least 1");
    const double t0 = t0_const * kappa / epsilon;
    return SolveConfig{spec_for(kappa, mode), PhaseEstConfig::for_time(t0), epsilon, t0_const};
}

SolveConfig SolveConfig::with_time(double kappa, double t0, double t0_const, FilterMode mode) {
    if (t0 <= 0.0) throw DomainError("t0 must be positive");
    return SolveConfig{spec_for(kappa, mode), PhaseEstConfig::for_time(t0),
                       t0_const * kappa / t0, t0_const};
}

SolveConfig SolveConfig::with_clock(double kappa, double t0, Index clock_dim, double t0_const,
                                    FilterMode mode) {
    if (t0 <= 0.0) throw DomainError("t0 must be positive");
    return SolveConfig{spec_for(kappa, mode), PhaseEstConfig(clock_dim, t0),
                       t0_const * kappa / t0, t0_const};
}

RegisterLayout pipeline_layout(Index clock_dim, Index system_dim) {
    return RegisterLayout(
        {{kClockRegister, clock_dim}, {kSystemRegister, system_dim}, {kFlagRegister, kFlagDim}});
}

QuantumState embed_input(const ComplexVector& b, Index clock_dim) {
    QuantumState sys = prepare_amplitudes(b, kSystemRegister);
    RegisterLayout clock_layout({{kClockRegister, clock_dim}});
    RegisterLayout flag_layout({{kFlagRegister, kFlagDim}});
    QuantumState joint = tensor_product(basis_state(clock_layout, {0}), sys);
    return tensor_product(joint, basis_state(flag_layout, {kFlagNothing}));
}

QuantumState apply_u_invert(const QuantumState& state, const EigenDecomposition& eig,
                            const PhaseEstConfig& pe, const FlagMap& map) {
    const ComplexVector psi0 = psi0_amplitudes(pe.clock_dim);
    QuantumState s = apply_prep_unitary(state, kClockRegister, psi0);
    s = conditional_evolution(s, eig, pe);
    s = inverse_qft(s, kClockRegister);
    s = rotate_flag(s, pe, map);
    s = qft(s, kClockRegister);
    s = conditional_evolution(s, eig, pe, /*adjoint=*/true);
    return apply_prep_unitary(s, kClockRegister, psi0, /*adjoint=*/true);
}

QuantumState u_invert(const ComplexVector& b, const EigenDecomposition& eig,
                      const SolveConfig& cfg) {
    return apply_u_invert(embed_input(b, cfg.pe.clock_dim), eig, cfg.pe,
                          flag_map_of(cfg.filter));
}

QuantumState u_invert(const ComplexVector& b, const SparseHermitianMatrix& a,
                      const SolveConfig& cfg) {
    return u_invert(b, eig_hermitian(a), cfg);
}

QuantumState ideal_u_invert_state(const EigenDecomposition& eig, Index clock_dim,
                                  const FlagMap& map) {
    if (!eig.coefficients) {
        throw DomainError("ideal state requires expansion coefficients");
    }
    const Index n = eig.dim();
    RegisterLayout layout = pipeline_layout(clock_dim, n);
    ComplexVector amps = ComplexVector::Zero(layout.total_dim());
    const ComplexVector& beta = *eig.coefficients;
    for (Index j = 0; j < n; ++j) {
        const auto [f, g] = map(eig.eigenvalues[j]);
        const FlagVector h = FlagVector::from_well_ill(f, g);
        for (Index i = 0; i < n; ++i) {
            const Complex w = beta[j] * eig.eigenvectors(i, j);
            for (Index s = 0; s < kFlagDim; ++s) {
                amps[i * kFlagDim + s] += w * h.amplitudes[s];
            }
        }
    }
    return QuantumState(std::move(layout), std::move(amps));
}

std::pair<QuantumState, double> postselect_well(const QuantumState& state) {
    return postselect(state, kFlagRegister, kFlagWell);
}

std::pair<QuantumState, double> postselect_well_ill(const QuantumState& state) {
    return postselect_subspace(state, kFlagRegister, {kFlagWell, kFlagIll});
}

AmplifyResult amplitude_amplify(const EigenDecomposition& eig, const ComplexVector& b,
                                const SolveConfig& cfg, Rng& rng) {
    const FlagMap map = flag_map_of(cfg.filter);
    const QuantumState start = embed_input(b, cfg.pe.clock_dim);
    const ComplexVector start_amps = start.amplitudes();
    const QuantumState first = apply_u_invert(start, eig, cfg.pe, map);
    const double p_well = marginal_probabilities(first, kFlagRegister)[kFlagWell];
    if (p_well <= 0.0) throw ZeroProbabilityError(p_well);

    // R_succ = I - 2 |well><well| on the flag register
    ComplexMatrix r_succ = ComplexMatrix::Identity(kFlagDim, kFlagDim);
    r_succ(kFlagWell, kFlagWell) = -1.0;

    const long cap = static_cast<long>(std::floor(4.0 * cfg.filter.kappa));
    long cumulative = 0;
    for (long m = 1;; m *= 2) {
        if (cumulative + m > cap) break;
        QuantumState s = first;
        for (long i = 0; i < m; ++i) {
            s = apply_to_register(s, kFlagRegister, r_succ);
            s = apply_u_invert(s, eig, cfg.pe, map);  // self-adjoint
            s = reflect_about(s, start_amps);         // B R_init B^dagger
            s = apply_u_invert(s, eig, cfg.pe, map);
        }
        cumulative += m;
        const Index outcome = sample_measure(s, kFlagRegister, rng);
        if (outcome == kFlagWell) {
            return AmplifyResult{postselect_well(s).first, cumulative, true, p_well};
        }
        if (static_cast<double>(m) >= cfg.filter.kappa) break;
    }
    return AmplifyResult{first, cumulative, false, p_well};
}

IllProfile ill_conditioned_profile(const SparseHermitianMatrix& a, const ComplexVector& b,
                                   const SolveConfig& cfg) {
    const ComplexVector bn = prepare_amplitudes(b).amplitudes();
    const EigenDecomposition eig = eig_hermitian(a, &bn);
    const FlagMap map = flag_map_of(cfg.filter);
    QuantumState state = apply_u_invert(embed_input(bn, cfg.pe.clock_dim), eig, cfg.pe, map);
    const std::vector<double> sim = marginal_probabilities(state, kFlagRegister);

    IllProfile profile{0.0, 0.0, 0.0, sim[kFlagNothing], sim[kFlagWell], sim[kFlagIll],
                       std::move(state)};
    const ComplexVector& beta = *eig.coefficients;
    for (Index j = 0; j < eig.dim(); ++j) {
        const auto [f, g] = map(eig.eigenvalues[j]);
        const double w = std::norm(beta[j]);
        profile.well_weight += w * f * f;
        profile.ill_weight += w * g * g;
        profile.nothing_weight += w * (1.0 - f * f - g * g);
    }
    return profile;
}

namespace {

/// Exact filtered solution sum_j f(lambda_j) beta_j |u_j>, unnormalized.
ComplexVector exact_well_vector(const EigenDecomposition& eig, const FlagMap& map) {
    ComplexVector x = ComplexVector::Zero(eig.dim());
    const ComplexVector& beta = *eig.coefficients;
    for (Index j = 0; j < eig.dim(); ++j) {
        const auto [f, g] = map(eig.eigenvalues[j]);
        x += beta[j] * f * eig.eigenvectors.col(j);
    }
    return x;
}

double ill_estimate_from_raw(double raw, const FilterSpec& spec) {
    if (spec.mode != FilterMode::kFiltered) return 0.0;
    const double plateau = filter_g(0.0, spec);  // 1/2
    return raw / (plateau * plateau);
}

}  // namespace

SolveReport solve(const SparseHermitianMatrix& a, const ComplexVector& b,
                  const SolveConfig& cfg) {
    const auto start_time = std::chrono::steady_clock::now();
    const ComplexVector bn = prepare_amplitudes(b).amplitudes();
    const EigenDecomposition eig = eig_hermitian(a, &bn);
    const ComplexVector& beta = *eig.coefficients;

    if (cfg.filter.mode == FilterMode::kSimple) {
        // the plain rotation has no ill flag; refuse inputs it would mangle
        for (Index j = 0; j < eig.dim(); ++j) {
            if (std::abs(eig.eigenvalues[j]) < cfg.filter.c_simple &&
                std::abs(beta[j]) > kWeightTolerance) {
                throw DomainError(
                    "input has weight on eigenvalues below c_simple; "
                    "simple mode performs no ill-conditioned handling");
            }
        }
    }

    const FlagMap map = flag_map_of(cfg.filter);
    const QuantumState actual =
        apply_u_invert(embed_input(bn, cfg.pe.clock_dim), eig, cfg.pe, map);
    const QuantumState ideal = ideal_u_invert_state(eig, cfg.pe.clock_dim, map);

    const double dist_no_ps = state_distance(actual, ideal);
    auto [actual_wi, p_tilde_wi] = postselect_well_ill(actual);
    auto [ideal_wi, p_wi] = postselect_well_ill(ideal);
    auto [actual_w, p_tilde_w] = postselect_well(actual);
    auto [ideal_w, p_w] = postselect_well(ideal);

    double ill_raw = 0.0;
    for (Index j = 0; j < eig.dim(); ++j) {
        const auto [f, g] = map(eig.eigenvalues[j]);
        ill_raw += std::norm(beta[j]) * g * g;
    }

    SolveReport report{
        std::move(actual_w),
        std::move(ideal_w),
        exact_well_vector(eig, map).normalized(),
        0.0,
        0.0,
        dist_no_ps,
        p_tilde_w,
        p_w,
        p_tilde_wi,
        p_wi,
        ill_raw,
        ill_estimate_from_raw(ill_raw, cfg.filter),
        0,
        false,
        false,
        0.0,
        cfg.pe.clock_dim,
        cfg.pe.total_time,
        cfg.filter.kappa,
        mode_name(cfg.filter.mode)};
    report.distance = state_distance(report.x_tilde, report.x_exact);
    report.distance_well_ill = state_distance(actual_wi, ideal_wi);

    if (cfg.run_amplification) {
        Rng rng(cfg.seed);
        const AmplifyResult aa = amplitude_amplify(eig, bn, cfg, rng);
        report.repetitions = aa.repetitions;
        report.amplified = true;
        report.amplify_success = aa.success;
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return report;
}

SolveReport solve_general(const ComplexMatrix& a, const ComplexVector& b,
                          const GeneralSolveOptions& options) {
    const auto start_time = std::chrono::steady_clock::now();
    const Index m = a.rows();
    const Index n = a.cols();
    if (b.size() != m) throw DomainError("right-hand side does not match the matrix rows");
    const ComplexVector bn = prepare_amplitudes(b).amplitudes();

    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const double sigma_max = svd.singularValues().maxCoeff();
    if (sigma_max <= 0.0) throw SingularMatrixError(0.0);
    double sigma_min_pos = -1.0;
    for (Index i = 0; i < svd.singularValues().size(); ++i) {
        const double s = svd.singularValues()[i];
        if (s > sigma_max * 1e-12) sigma_min_pos = (sigma_min_pos < 0) ? s : std::min(sigma_min_pos, s);
    }
    const double scale = std::max(sigma_max, 1.0);

    double kappa;
    if (options.kappa) {
        kappa = *options.kappa;
    } else {
        // cover every nonzero singular value of the scaled matrix with margin
        kappa = std::max(1.0 + 1e-9, 1.02 * scale / sigma_min_pos);
    }
    const FilterSpec spec = spec_for(kappa, options.mode);
    const FlagMap map = flag_map_of(spec);

    const SparseHermitianMatrix h = hermitian_embed(a / scale);
    ComplexVector input = ComplexVector::Zero(m + n);
    input.head(m) = bn;
    const EigenDecomposition eig = eig_hermitian(h, &input);
    const ComplexVector& beta = *eig.coefficients;

    ComplexVector x_embedded = exact_well_vector(eig, map);
    const double x_norm = x_embedded.norm();
    if (x_norm < 1e-14) {
        throw DomainError("input lies entirely in the ill-conditioned subspace");
    }
    x_embedded /= x_norm;

    double p_well = 0.0, p_ill = 0.0;
    for (Index j = 0; j < eig.dim(); ++j) {
        const auto [f, g] = map(eig.eigenvalues[j]);
        p_well += std::norm(beta[j]) * f * f;
        p_ill += std::norm(beta[j]) * g * g;
    }

    ComplexVector x_system = x_embedded.tail(n);
    x_system.normalize();

    RegisterLayout layout({{kSystemRegister, m + n}});
    QuantumState x_state(layout, x_embedded);
    SolveReport report{x_state,
                       x_state,
                       std::move(x_system),
                       0.0,
                       0.0,
                       0.0,
                       p_well,
                       p_well,
                       p_well + p_ill,
                       p_well + p_ill,
                       p_ill,
                       ill_estimate_from_raw(p_ill, spec),
                       0,
                       false,
                       false,
                       0.0,
                       0,
                       0.0,
                       kappa,
                       mode_name(options.mode)};
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return report;
}

}  // namespace qinvert
