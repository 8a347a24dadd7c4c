#include "qinvert/filters.hpp"

#include <cmath>

namespace qinvert {

namespace {

/// f on the non-negative half line, filtered mode.
double filtered_f_abs(double lam, double kappa) {
    const double lo = 1.0 / (2.0 * kappa);  // 1/kappa'
    const double hi = 1.0 / kappa;
    if (lam >= hi) return 1.0 / (2.0 * kappa * lam);
    if (lam >= lo) return 0.5 * std::sin(M_PI_2 * (lam - lo) / (hi - lo));
    return 0.0;
}

double filtered_g_abs(double lam, double kappa) {
    const double lo = 1.0 / (2.0 * kappa);
    const double hi = 1.0 / kappa;
    if (lam >= hi) return 0.0;
    if (lam >= lo) return 0.5 * std::cos(M_PI_2 * (lam - lo) / (hi - lo));
    return 0.5;
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

FilterSpec FilterSpec::filtered(double kappa) {
    if (kappa < 1.0) throw DomainError("kappa must be at least 1");
    return FilterSpec{kappa, FilterMode::kFiltered, 1.0 / (2.0 * kappa)};
}

FilterSpec FilterSpec::simple(double kappa) { return simple(kappa, 1.0 / (2.0 * kappa)); }

FilterSpec FilterSpec::simple(double kappa, double c_simple) {
    if (kappa < 1.0) throw DomainError("kappa must be at least 1");
    if (c_simple <= 0.0 || c_simple > 1.0 / kappa) {
        throw DomainError("c_simple must lie in (0, 1/kappa]");
    }
    return FilterSpec{kappa, FilterMode::kSimple, c_simple};
}

double filter_f(double lambda, const FilterSpec& spec) {
    const double a = std::abs(lambda);
    if (spec.mode == FilterMode::kSimple) {
        // clamped to a full rotation below c_simple, where c/lambda exceeds 1
        const double amp = (a <= spec.c_simple) ? 1.0 : spec.c_simple / a;
        return sign_of(lambda) * amp;
    }
    return sign_of(lambda) * filtered_f_abs(a, spec.kappa);
}

double filter_g(double lambda, const FilterSpec& spec) {
    if (spec.mode == FilterMode::kSimple) return 0.0;
    return filtered_g_abs(std::abs(lambda), spec.kappa);
}

FlagVector FlagVector::from_well_ill(double f, double g) {
    const double ss = f * f + g * g;
    if (ss > 1.0 + 1e-12) {
        throw DomainError("flag amplitudes violate f^2 + g^2 <= 1");
    }
    FlagVector v;
    v.amplitudes = Eigen::Vector3d(std::sqrt(std::max(0.0, 1.0 - ss)), f, g);
    return v;
}

FlagVector flag_state(double lambda, const FilterSpec& spec) {
    return FlagVector::from_well_ill(filter_f(lambda, spec), filter_g(lambda, spec));
}

double lipschitz_margin(double lambda1, double lambda2, const FilterSpec& spec) {
    const FlagVector h1 = flag_state(lambda1, spec);
    const FlagVector h2 = flag_state(lambda2, spec);
    const double dist = (h1.amplitudes - h2.amplitudes).norm();
    return M_PI_2 * spec.kappa * std::abs(lambda1 - lambda2) - dist;
}

FlagMap flag_map_of(const FilterSpec& spec) {
    return [spec](double lambda) {
        return std::pair<double, double>(filter_f(lambda, spec), filter_g(lambda, spec));
    };
}

QuantumState rotate_flag(const QuantumState& state, const PhaseEstConfig& cfg,
                         const FlagMap& map, const std::string& clock,
                         const std::string& flag) {
    const auto& layout = state.layout();
    const std::size_t clock_idx = layout.index_of(clock);
    const std::size_t flag_idx = layout.index_of(flag);
    const Index clock_d = layout.reg(clock_idx).dim;
    if (clock_d != cfg.clock_dim) {
        throw DomainError("clock register dimension does not match the configuration");
    }
    if (layout.reg(flag_idx).dim != kFlagDim) {
        throw DomainError("flag register must be three-dimensional");
    }

    // one 3x3 Householder block per Fourier bin, mapping |nothing> to h(lambda_k)
    std::vector<Eigen::Matrix3d> blocks(static_cast<std::size_t>(clock_d));
    for (Index k = 0; k < clock_d; ++k) {
        const auto [f, g] = map(cfg.grid_eigenvalue(k));
        const FlagVector h = FlagVector::from_well_ill(f, g);
        Eigen::Vector3d w = Eigen::Vector3d::UnitX() - h.amplitudes;
        const double wn2 = w.squaredNorm();
        if (wn2 < 1e-30) {
            blocks[static_cast<std::size_t>(k)].setIdentity();
        } else {
            blocks[static_cast<std::size_t>(k)] =
                Eigen::Matrix3d::Identity() - (2.0 / wn2) * (w * w.transpose());
        }
    }

    const Index clock_stride = layout.stride(clock_idx);
    const Index flag_stride = layout.stride(flag_idx);
    ComplexVector amps = state.amplitudes();
    Eigen::Vector3cd slice;
    for (Index idx = 0; idx < amps.size(); ++idx) {
        if ((idx / flag_stride) % kFlagDim != 0) continue;
        const Index k = (idx / clock_stride) % clock_d;
        for (Index s = 0; s < kFlagDim; ++s) slice[s] = amps[idx + s * flag_stride];
        slice = blocks[static_cast<std::size_t>(k)] * slice;
        for (Index s = 0; s < kFlagDim; ++s) amps[idx + s * flag_stride] = slice[s];
    }
    return QuantumState(layout, std::move(amps), state.is_normalized());
}

QuantumState rotate_flag(const QuantumState& state, const PhaseEstConfig& cfg,
                         const FilterSpec& spec) {
    return rotate_flag(state, cfg, flag_map_of(spec));
}

}  // namespace qinvert
