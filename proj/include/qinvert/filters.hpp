#pragma once

#include <functional>
#include <string>

#include "qinvert/common.hpp"
#include "qinvert/phase_est.hpp"
#include "qinvert/state.hpp"

namespace qinvert {

enum class FilterMode { kFiltered, kSimple };

/// Flag register basis: nothing = inversion did not take place, well =
/// inverted, ill = weight in the ill-conditioned subspace.
enum FlagOutcome : Index { kFlagNothing = 0, kFlagWell = 1, kFlagIll = 2 };
inline constexpr Index kFlagDim = 3;

/// Condition-number cutoff and choice of rotation family. In filtered mode the
/// ill-conditioned cutoff is kappa' = 2 kappa and the piecewise filter pair
/// (f, g) interpolates with a half sine between the cutoffs. Simple mode is
/// the plain c/lambda rotation with no ill flag; c_simple <= 1/kappa keeps the
/// rotation amplitudes at most 1 on the well-conditioned range. The default
/// c_simple = 1/(2 kappa) makes the two modes agree on [1/kappa, 1].
struct FilterSpec {
    double kappa;
    FilterMode mode;
    double c_simple;

    static FilterSpec filtered(double kappa);
    static FilterSpec simple(double kappa);
    static FilterSpec simple(double kappa, double c_simple);
    double kappa_prime() const { return 2.0 * kappa; }
};

/// Filter pair of the conditional rotation. Negative eigenvalues use |lambda|
/// with the inversion sign carried on f, i.e. f(lambda) = sign(lambda) f(|lambda|),
/// g(lambda) = g(|lambda|); this keeps f^2 + g^2 bounds intact.
double filter_f(double lambda, const FilterSpec& spec);
double filter_g(double lambda, const FilterSpec& spec);

/// Unit vector on the flag register: (sqrt(1 - f^2 - g^2), f, g).
struct FlagVector {
    Eigen::Vector3d amplitudes;  // (nothing, well, ill)

    static FlagVector from_well_ill(double f, double g);
    double nothing() const { return amplitudes[0]; }
    double well() const { return amplitudes[1]; }
    double ill() const { return amplitudes[2]; }
};

FlagVector flag_state(double lambda, const FilterSpec& spec);

/// (pi/2) kappa |l1 - l2| - || h(l1) - h(l2) ||; non-negative wherever the
/// Lipschitz property of the flag map holds at the pair.
double lipschitz_margin(double lambda1, double lambda2, const FilterSpec& spec);

/// Well/ill rotation amplitudes as a function of the grid eigenvalue.
using FlagMap = std::function<std::pair<double, double>(double)>;
FlagMap flag_map_of(const FilterSpec& spec);

/// Conditional flag rotation: for every Fourier bin k of the clock register,
/// rotate the flag register from |nothing> into the flag state of the grid
/// eigenvalue of k. Unitary (block Householder); each block is a real
/// symmetric involution, so the map is its own adjoint.
QuantumState rotate_flag(const QuantumState& state, const PhaseEstConfig& cfg,
                         const FlagMap& map, const std::string& clock = kClockRegister,
                         const std::string& flag = kFlagRegister);
QuantumState rotate_flag(const QuantumState& state, const PhaseEstConfig& cfg,
                         const FilterSpec& spec);

}  // namespace qinvert
