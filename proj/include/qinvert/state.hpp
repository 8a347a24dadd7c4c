#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qinvert/common.hpp"
#include "qinvert/rng.hpp"

namespace qinvert {

struct Register {
    std::string name;
    Index dim;
};

/// Ordered list of named registers. Amplitudes are stored flat with the first
/// register varying slowest, i.e. flat index ((i1*d2 + i2)*d3 + i3)...
/// This ordering is part of the state dump format contract.
class RegisterLayout {
public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Register> regs);

    Index total_dim() const { return total_; }
    std::size_t size() const { return regs_.size(); }
    const Register& reg(std::size_t i) const { return regs_[i]; }
    std::size_t index_of(const std::string& name) const;  // throws on unknown name
    Index dim(const std::string& name) const;
    /// Product of the dimensions after register i (the register's stride).
    Index stride(std::size_t i) const;
    bool operator==(const RegisterLayout& other) const;

    std::string header() const;  // "name:dim,name:dim,..."
    static RegisterLayout parse_header(const std::string& header);

private:
    std::vector<Register> regs_;
    Index total_ = 1;
};

/// Complex amplitude vector over a register layout. States are normalized
/// unless explicitly marked otherwise (sub-normalized projection branches).
class QuantumState {
public:
    QuantumState(RegisterLayout layout, ComplexVector amplitudes, bool normalized = true);

    const RegisterLayout& layout() const { return layout_; }
    const ComplexVector& amplitudes() const { return amps_; }
    ComplexVector& mutable_amplitudes() { return amps_; }
    bool is_normalized() const { return normalized_; }
    double norm() const { return amps_.norm(); }

private:
    RegisterLayout layout_;
    ComplexVector amps_;
    bool normalized_;
};

/// Load a vector as a normalized single-register state.
QuantumState prepare_amplitudes(const ComplexVector& v, const std::string& name = "system");

/// |digits> basis state on the given layout.
QuantumState basis_state(const RegisterLayout& layout, const std::vector<Index>& digits);

QuantumState tensor_product(const QuantumState& a, const QuantumState& b);

/// Apply a dense unitary to one register (identity on the others).
QuantumState apply_to_register(const QuantumState& state, const std::string& name,
                               const ComplexMatrix& op);

/// Apply a 2^w-dimensional gate to wires of a power-of-two register.
/// Wire 0 is the most significant bit of the register index.
QuantumState apply_gate(const QuantumState& state, const std::string& name,
                        const std::vector<int>& wires, const ComplexMatrix& gate);

/// Apply the deterministic unitary P with P|0> = target to one register
/// (a Householder reflection times a phase; pass adjoint=true for P^dagger).
/// target must be a unit vector of the register's dimension.
QuantumState apply_prep_unitary(const QuantumState& state, const std::string& name,
                                const ComplexVector& target, bool adjoint = false);

/// Reflect through a vector of the full space: x -> x - 2 <v|x> v.
QuantumState reflect_about(const QuantumState& state, const ComplexVector& v);

/// Fourier transform on one register: a_k <- T^{-1/2} sum_tau e^{+2 pi i k tau / T} a_tau.
QuantumState qft(const QuantumState& state, const std::string& name);
/// Adjoint map (e^{-2 pi i k tau / T}); reading amplitudes in the Fourier basis.
QuantumState inverse_qft(const QuantumState& state, const std::string& name);

/// Renormalized projection onto one outcome of a register, plus its probability.
std::pair<QuantumState, double> postselect(const QuantumState& state, const std::string& name,
                                           Index outcome);
/// Projection onto a set of outcomes of a register.
std::pair<QuantumState, double> postselect_subspace(const QuantumState& state,
                                                    const std::string& name,
                                                    const std::vector<Index>& outcomes);

std::vector<double> marginal_probabilities(const QuantumState& state, const std::string& name);

/// Sample a measurement outcome on one register.
Index sample_measure(const QuantumState& state, const std::string& name, Rng& rng);

/// sqrt(2 (1 - Re<a|b>)); requires identical layouts.
double state_distance(const QuantumState& a, const QuantumState& b);

Complex overlap(const QuantumState& a, const QuantumState& b);

/// If the register factorizes out of the state (the reduced density matrix is
/// rank one within tol), return the pure factor with canonical phase.
std::optional<QuantumState> extract_register_factor(const QuantumState& state,
                                                    const std::string& name, double tol = 1e-9);

void dump_state(const QuantumState& state, std::ostream& out);
QuantumState load_state(std::istream& in);

}  // namespace qinvert
