#include "qinvert/state.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <Eigen/SVD>

namespace qinvert {

namespace {

constexpr double kNormTolerance = 1e-9;

bool is_power_of_two(Index n) { return n >= 1 && (n & (n - 1)) == 0; }

/// In-place radix-2 FFT with sign convention a_k <- sum_tau e^{sign * 2 pi i k tau / n} a_tau.
void fft_pow2(ComplexVector& a, int sign) {
    const Index n = a.size();
    for (Index i = 1, j = 0; i < n; ++i) {
        Index bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (Index len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * M_PI / static_cast<double>(len);
        const Complex wl = std::polar(1.0, angle);
        for (Index i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (Index k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

/// Dense DFT fallback for registers whose dimension is not a power of two.
void dft_direct(ComplexVector& a, int sign) {
    const Index n = a.size();
    ComplexVector out = ComplexVector::Zero(n);
    for (Index k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (Index t = 0; t < n; ++t) {
            acc += a[t] * std::polar(1.0, sign * 2.0 * M_PI * static_cast<double>(k) *
                                              static_cast<double>(t) / static_cast<double>(n));
        }
        out[k] = acc;
    }
    a = out;
}

QuantumState fourier_impl(const QuantumState& state, const std::string& name, int sign) {
    const auto& layout = state.layout();
    const std::size_t r = layout.index_of(name);
    const Index d = layout.reg(r).dim;
    const Index stride = layout.stride(r);
    const Index blocks = layout.total_dim() / (d * stride);
    ComplexVector amps = state.amplitudes();
    ComplexVector slice(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index b = 0; b < blocks; ++b) {
        for (Index i = 0; i < stride; ++i) {
            const Index base = b * d * stride + i;
            for (Index x = 0; x < d; ++x) slice[x] = amps[base + x * stride];
            if (is_power_of_two(d)) {
                fft_pow2(slice, sign);
            } else {
                dft_direct(slice, sign);
            }
            for (Index x = 0; x < d; ++x) amps[base + x * stride] = slice[x] * scale;
        }
    }
    return QuantumState(layout, std::move(amps), state.is_normalized());
}

}  // namespace

RegisterLayout::RegisterLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
    total_ = 1;
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        if (regs_[i].dim < 2) {
            throw DomainError("register '" + regs_[i].name + "' must have dimension >= 2");
        }
        if (regs_[i].name.empty()) throw DomainError("register name must not be empty");
        for (std::size_t j = 0; j < i; ++j) {
            if (regs_[j].name == regs_[i].name) {
                throw DomainError("duplicate register name '" + regs_[i].name + "'");
            }
        }
        total_ *= regs_[i].dim;
    }
    if (regs_.empty()) throw DomainError("layout must contain at least one register");
}

std::size_t RegisterLayout::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        if (regs_[i].name == name) return i;
    }
    throw DomainError("unknown register '" + name + "'");
}

Index RegisterLayout::dim(const std::string& name) const { return regs_[index_of(name)].dim; }

Index RegisterLayout::stride(std::size_t i) const {
    Index s = 1;
    for (std::size_t j = i + 1; j < regs_.size(); ++j) s *= regs_[j].dim;
    return s;
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
    if (regs_.size() != other.regs_.size()) return false;
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        if (regs_[i].name != other.regs_[i].name || regs_[i].dim != other.regs_[i].dim) {
            return false;
        }
    }
    return true;
}

std::string RegisterLayout::header() const {
    std::string h;
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        if (i) h += ',';
        h += regs_[i].name + ':' + std::to_string(regs_[i].dim);
    }
    return h;
}

RegisterLayout RegisterLayout::parse_header(const std::string& header) {
    std::vector<Register> regs;
    std::stringstream ss(header);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw ParseError("expected 'name:dim' in layout header", 1);
        }
        Register r;
        r.name = item.substr(0, colon);
        try {
            r.dim = std::stoll(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw ParseError("bad register dimension in layout header", 1);
        }
        regs.push_back(std::move(r));
    }
    return RegisterLayout(std::move(regs));
}

QuantumState::QuantumState(RegisterLayout layout, ComplexVector amplitudes, bool normalized)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)), normalized_(normalized) {
    if (amps_.size() != layout_.total_dim()) {
        throw DomainError("amplitude vector does not match layout dimension");
    }
    if (normalized_ && std::abs(amps_.norm() - 1.0) > kNormTolerance) {
        throw DomainError("state marked normalized has norm " + std::to_string(amps_.norm()));
    }
}

QuantumState prepare_amplitudes(const ComplexVector& v, const std::string& name) {
    const double n = v.norm();
    if (n == 0.0) throw DomainError("cannot prepare a state from the zero vector");
    RegisterLayout layout({{name, v.size()}});
    return QuantumState(std::move(layout), v / n);
}

QuantumState basis_state(const RegisterLayout& layout, const std::vector<Index>& digits) {
    if (static_cast<std::size_t>(layout.size()) != digits.size()) {
        throw DomainError("digit count does not match layout");
    }
    Index flat = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < 0 || digits[i] >= layout.reg(i).dim) {
            throw DomainError("basis digit out of range");
        }
        flat = flat * layout.reg(i).dim + digits[i];
    }
    ComplexVector amps = ComplexVector::Zero(layout.total_dim());
    amps[flat] = Complex(1.0, 0.0);
    return QuantumState(layout, std::move(amps));
}

QuantumState tensor_product(const QuantumState& a, const QuantumState& b) {
    std::vector<Register> regs;
    for (std::size_t i = 0; i < a.layout().size(); ++i) regs.push_back(a.layout().reg(i));
    for (std::size_t i = 0; i < b.layout().size(); ++i) regs.push_back(b.layout().reg(i));
    RegisterLayout layout(std::move(regs));
    ComplexVector amps(layout.total_dim());
    const Index nb = b.amplitudes().size();
    for (Index i = 0; i < a.amplitudes().size(); ++i) {
        amps.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
    }
    return QuantumState(std::move(layout), std::move(amps),
                        a.is_normalized() && b.is_normalized());
}

QuantumState apply_to_register(const QuantumState& state, const std::string& name,
                               const ComplexMatrix& op) {
    const auto& layout = state.layout();
    const std::size_t r = layout.index_of(name);
    const Index d = layout.reg(r).dim;
    if (op.rows() != d || op.cols() != d) {
        throw DomainError("operator dimension does not match register '" + name + "'");
    }
    const Index stride = layout.stride(r);
    const Index blocks = layout.total_dim() / (d * stride);
    ComplexVector amps = state.amplitudes();
    ComplexVector slice(d), mixed(d);
    for (Index b = 0; b < blocks; ++b) {
        for (Index i = 0; i < stride; ++i) {
            const Index base = b * d * stride + i;
            for (Index x = 0; x < d; ++x) slice[x] = amps[base + x * stride];
            mixed.noalias() = op * slice;
            for (Index x = 0; x < d; ++x) amps[base + x * stride] = mixed[x];
        }
    }
    return QuantumState(layout, std::move(amps), state.is_normalized());
}

QuantumState apply_gate(const QuantumState& state, const std::string& name,
                        const std::vector<int>& wires, const ComplexMatrix& gate) {
    const auto& layout = state.layout();
    const std::size_t r = layout.index_of(name);
    const Index d = layout.reg(r).dim;
    if (!is_power_of_two(d)) {
        throw DomainError("register '" + name + "' is not a qubit register");
    }
    int qubits = 0;
    for (Index x = d; x > 1; x >>= 1) ++qubits;
    const int w = static_cast<int>(wires.size());
    const Index g = Index(1) << w;
    if (gate.rows() != g || gate.cols() != g) {
        throw DomainError("gate dimension does not match wire count");
    }
    for (int wire : wires) {
        if (wire < 0 || wire >= qubits) throw DomainError("gate wire out of range");
    }
    for (std::size_t i = 0; i < wires.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (wires[i] == wires[j]) throw DomainError("duplicate gate wire");
        }
    }

    // wire 0 is the most significant bit of the register value
    std::vector<Index> bit_of_wire(wires.size());
    for (std::size_t i = 0; i < wires.size(); ++i) {
        bit_of_wire[i] = Index(1) << (qubits - 1 - wires[i]);
    }
    Index wire_mask = 0;
    for (Index b : bit_of_wire) wire_mask |= b;

    const Index stride = layout.stride(r);
    const Index blocks = layout.total_dim() / (d * stride);
    ComplexVector amps = state.amplitudes();
    ComplexVector slice(g), mixed(g);
    for (Index b = 0; b < blocks; ++b) {
        for (Index i = 0; i < stride; ++i) {
            const Index base = b * d * stride + i;
            for (Index rest = 0; rest < d; ++rest) {
                if ((rest & wire_mask) != 0) continue;
                for (Index v = 0; v < g; ++v) {
                    Index x = rest;
                    for (int bit = 0; bit < w; ++bit) {
                        if ((v >> (w - 1 - bit)) & 1) x |= bit_of_wire[bit];
                    }
                    slice[v] = amps[base + x * stride];
                }
                mixed.noalias() = gate * slice;
                for (Index v = 0; v < g; ++v) {
                    Index x = rest;
                    for (int bit = 0; bit < w; ++bit) {
                        if ((v >> (w - 1 - bit)) & 1) x |= bit_of_wire[bit];
                    }
                    amps[base + x * stride] = mixed[v];
                }
            }
        }
    }
    return QuantumState(layout, std::move(amps), state.is_normalized());
}

QuantumState apply_prep_unitary(const QuantumState& state, const std::string& name,
                                const ComplexVector& target, bool adjoint) {
    const auto& layout = state.layout();
    const std::size_t r = layout.index_of(name);
    const Index d = layout.reg(r).dim;
    if (target.size() != d) {
        throw DomainError("target vector does not match register '" + name + "'");
    }
    if (std::abs(target.norm() - 1.0) > 1e-9) {
        throw DomainError("prep target must be a unit vector");
    }
    // P = e^{i phi} H with H the Householder reflection exchanging e0 and
    // e^{-i phi} target, phi chosen so the reflected vector has a real
    // non-negative first component.
    const Complex first = target[0];
    const Complex phase =
        (std::abs(first) > 0.0) ? first / std::abs(first) : Complex(1.0, 0.0);
    ComplexVector w = -target / phase;
    w[0] += 1.0;
    const double wn2 = w.squaredNorm();

    const Index stride = layout.stride(r);
    const Index blocks = layout.total_dim() / (d * stride);
    ComplexVector amps = state.amplitudes();
    ComplexVector slice(d);
    const Complex outer_phase = adjoint ? std::conj(phase) : phase;
    for (Index b = 0; b < blocks; ++b) {
        for (Index i = 0; i < stride; ++i) {
            const Index base = b * d * stride + i;
            for (Index x = 0; x < d; ++x) slice[x] = amps[base + x * stride];
            if (wn2 > 1e-30) {
                const Complex proj = w.dot(slice);  // conjugates w
                slice -= (2.0 / wn2) * proj * w;
            }
            for (Index x = 0; x < d; ++x) amps[base + x * stride] = slice[x] * outer_phase;
        }
    }
    return QuantumState(layout, std::move(amps), state.is_normalized());
}

QuantumState reflect_about(const QuantumState& state, const ComplexVector& v) {
    if (v.size() != state.amplitudes().size()) {
        throw DomainError("reflection vector does not match the state dimension");
    }
    ComplexVector amps = state.amplitudes();
    const Complex proj = v.dot(amps);
    amps -= 2.0 * proj * v;
    return QuantumState(state.layout(), std::move(amps), state.is_normalized());
}

QuantumState qft(const QuantumState& state, const std::string& name) {
    return fourier_impl(state, name, +1);
}

QuantumState inverse_qft(const QuantumState& state, const std::string& name) {
    return fourier_impl(state, name, -1);
}

std::pair<QuantumState, double> postselect_subspace(const QuantumState& state,
                                                    const std::string& name,
                                                    const std::vector<Index>& outcomes) {
    const auto& layout = state.layout();
    const std::size_t r = layout.index_of(name);
    const Index d = layout.reg(r).dim;
    std::vector<bool> keep(static_cast<std::size_t>(d), false);
    for (Index o : outcomes) {
        if (o < 0 || o >= d) throw DomainError("post-selection outcome out of range");
        keep[static_cast<std::size_t>(o)] = true;
    }
    const Index stride = layout.stride(r);
    ComplexVector amps = state.amplitudes();
    double prob = 0.0;
    for (Index idx = 0; idx < amps.size(); ++idx) {
        const Index x = (idx / stride) % d;
        if (keep[static_cast<std::size_t>(x)]) {
            prob += std::norm(amps[idx]);
        } else {
            amps[idx] = Complex(0.0, 0.0);
        }
    }
    if (prob <= 0.0) throw ZeroProbabilityError(prob);
    amps /= std::sqrt(prob);
    return {QuantumState(layout, std::move(amps)), prob};
}

std::pair<QuantumState, double> postselect(const QuantumState& state, const std::string& name,
                                           Index outcome) {
    return postselect_subspace(state, name, {outcome});
}

std::vector<double> marginal_probabilities(const QuantumState& state, const std::string& name) {
    const auto& layout = state.layout();
    const std::size_t r = layout.index_of(name);
    const Index d = layout.reg(r).dim;
    const Index stride = layout.stride(r);
    std::vector<double> probs(static_cast<std::size_t>(d), 0.0);
    const auto& amps = state.amplitudes();
    for (Index idx = 0; idx < amps.size(); ++idx) {
        probs[static_cast<std::size_t>((idx / stride) % d)] += std::norm(amps[idx]);
    }
    return probs;
}

Index sample_measure(const QuantumState& state, const std::string& name, Rng& rng) {
    return static_cast<Index>(rng.sample_discrete(marginal_probabilities(state, name)));
}

double state_distance(const QuantumState& a, const QuantumState& b) {
    if (!(a.layout() == b.layout())) {
        throw DomainError("states have different register layouts");
    }
    const double re = (a.amplitudes().adjoint() * b.amplitudes())(0, 0).real();
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - re)));
}

Complex overlap(const QuantumState& a, const QuantumState& b) {
    if (!(a.layout() == b.layout())) {
        throw DomainError("states have different register layouts");
    }
    return (a.amplitudes().adjoint() * b.amplitudes())(0, 0);
}

std::optional<QuantumState> extract_register_factor(const QuantumState& state,
                                                    const std::string& name, double tol) {
    const auto& layout = state.layout();
    const std::size_t r = layout.index_of(name);
    const Index d = layout.reg(r).dim;
    const Index stride = layout.stride(r);
    const Index blocks = layout.total_dim() / (d * stride);
    // reshape to (register value) x (everything else)
    ComplexMatrix m(d, blocks * stride);
    const auto& amps = state.amplitudes();
    for (Index b = 0; b < blocks; ++b) {
        for (Index x = 0; x < d; ++x) {
            for (Index i = 0; i < stride; ++i) {
                m(x, b * stride + i) = amps[(b * d + x) * stride + i];
            }
        }
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
    if (svd.singularValues()[0] < 1.0 - tol) return std::nullopt;
    ComplexVector factor = svd.matrixU().col(0);
    Index pivot = 0;
    factor.cwiseAbs().maxCoeff(&pivot);
    factor *= std::conj(factor[pivot]) / std::abs(factor[pivot]);
    RegisterLayout single({{layout.reg(r).name, d}});
    return QuantumState(std::move(single), std::move(factor));
}

void dump_state(const QuantumState& state, std::ostream& out) {
    out << state.layout().header() << '\n';
    char buf[64];
    for (Index i = 0; i < state.amplitudes().size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", state.amplitudes()[i].real(),
                      state.amplitudes()[i].imag());
        out << buf;
    }
}

QuantumState load_state(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("missing layout header", 1);
    RegisterLayout layout = RegisterLayout::parse_header(header);
    ComplexVector amps(layout.total_dim());
    std::string line;
    for (Index i = 0; i < layout.total_dim(); ++i) {
        if (!std::getline(in, line)) {
            throw ParseError("unexpected end of state dump", 2 + i);
        }
        std::istringstream ls(line);
        double re = 0.0, im = 0.0;
        if (!(ls >> re >> im)) {
            throw ParseError("expected 're im' amplitude pair", 2 + i);
        }
        amps[i] = Complex(re, im);
    }
    return QuantumState(std::move(layout), std::move(amps));
}

}  // namespace qinvert
