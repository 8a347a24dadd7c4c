#include "qinvert/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qinvert {

namespace {

/// Reads lines, skipping blanks and '#' comments, tracking line numbers.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::istringstream& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            out = std::istringstream(line);
            return true;
        }
        return false;
    }

    long line_no() const { return line_no_; }

private:
    std::istream& in_;
    long line_no_ = 0;
};

void write_float_pair(std::ostream& out, Complex v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g %.17g", v.real(), v.imag());
    out << buf;
}

template <typename T>
T read_token(std::istringstream& ls, const char* what, long line) {
    T value;
    if (!(ls >> value)) throw ParseError(std::string("expected ") + what, line);
    return value;
}

}  // namespace

SparseHermitianMatrix read_sparse_matrix(std::istream& in) {
    LineReader reader(in);
    std::istringstream ls;
    if (!reader.next(ls)) throw ParseError("missing 'N s' header", 1);
    const auto dim = read_token<Index>(ls, "matrix dimension N", reader.line_no());
    const auto sparsity = read_token<Index>(ls, "sparsity s", reader.line_no());
    std::vector<SparseEntry> entries;
    while (reader.next(ls)) {
        SparseEntry e;
        e.row = read_token<Index>(ls, "row index", reader.line_no());
        e.col = read_token<Index>(ls, "column index", reader.line_no());
        const double re = read_token<double>(ls, "real part", reader.line_no());
        const double im = read_token<double>(ls, "imaginary part", reader.line_no());
        e.value = Complex(re, im);
        if (e.row > e.col) {
            throw ParseError("entry in the lower triangle (the format stores i <= j only)",
                             reader.line_no());
        }
        entries.push_back(e);
    }
    try {
        return SparseHermitianMatrix::from_upper_triangle(dim, sparsity, entries);
    } catch (const DomainError& err) {
        throw ParseError(err.what(), reader.line_no());
    }
}

void write_sparse_matrix(const SparseHermitianMatrix& m, std::ostream& out) {
    out << m.dim() << ' ' << m.sparsity() << '\n';
    for (Index i = 0; i < m.dim(); ++i) {
        for (const auto& [col, value] : m.rows()[static_cast<std::size_t>(i)]) {
            if (col < i) continue;
            out << i << ' ' << col << ' ';
            write_float_pair(out, value);
            out << '\n';
        }
    }
}

ComplexVector read_vector(std::istream& in) {
    LineReader reader(in);
    std::istringstream ls;
    if (!reader.next(ls)) throw ParseError("missing vector length header", 1);
    const auto n = read_token<Index>(ls, "vector length N", reader.line_no());
    if (n < 1) throw ParseError("vector length must be positive", reader.line_no());
    ComplexVector v(n);
    for (Index i = 0; i < n; ++i) {
        if (!reader.next(ls)) throw ParseError("unexpected end of vector", reader.line_no() + 1);
        const double re = read_token<double>(ls, "real part", reader.line_no());
        const double im = read_token<double>(ls, "imaginary part", reader.line_no());
        v[i] = Complex(re, im);
    }
    return v;
}

void write_vector(const ComplexVector& v, std::ostream& out) {
    out << v.size() << '\n';
    for (Index i = 0; i < v.size(); ++i) {
        write_float_pair(out, v[i]);
        out << '\n';
    }
}

ComplexMatrix read_dense_matrix(std::istream& in) {
    LineReader reader(in);
    std::istringstream ls;
    if (!reader.next(ls)) throw ParseError("missing 'rows cols' header", 1);
    const auto rows = read_token<Index>(ls, "row count", reader.line_no());
    const auto cols = read_token<Index>(ls, "column count", reader.line_no());
    if (rows < 1 || cols < 1) throw ParseError("matrix dimensions must be positive", reader.line_no());
    ComplexMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            if (!reader.next(ls)) {
                throw ParseError("unexpected end of matrix", reader.line_no() + 1);
            }
            const double re = read_token<double>(ls, "real part", reader.line_no());
            const double im = read_token<double>(ls, "imaginary part", reader.line_no());
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

void write_dense_matrix(const ComplexMatrix& m, std::ostream& out) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            write_float_pair(out, m(i, j));
            out << '\n';
        }
    }
}

ClockCircuit read_circuit(std::istream& in) {
    LineReader reader(in);
    std::istringstream ls;
    if (!reader.next(ls)) throw ParseError("missing 'n T' header", 1);
    ClockCircuit circuit;
    circuit.qubits = read_token<int>(ls, "qubit count n", reader.line_no());
    const auto t_count = read_token<Index>(ls, "gate count T", reader.line_no());
    for (Index t = 0; t < t_count; ++t) {
        if (!reader.next(ls)) throw ParseError("unexpected end of circuit", reader.line_no() + 1);
        const auto wire_count = read_token<int>(ls, "wire count", reader.line_no());
        if (wire_count < 1 || wire_count > 2) {
            throw ParseError("wire count must be 1 or 2", reader.line_no());
        }
        std::vector<int> wires;
        for (int w = 0; w < wire_count; ++w) {
            wires.push_back(read_token<int>(ls, "wire index", reader.line_no()));
        }
        const auto name = read_token<std::string>(ls, "gate name or 'matrix'", reader.line_no());
        if (name == "matrix") {
            const Index d = Index(1) << wire_count;
            ComplexMatrix m(d, d);
            for (Index i = 0; i < d; ++i) {
                for (Index j = 0; j < d; ++j) {
                    const double re = read_token<double>(ls, "matrix entry", reader.line_no());
                    const double im = read_token<double>(ls, "matrix entry", reader.line_no());
                    m(i, j) = Complex(re, im);
                }
            }
            circuit.gates.push_back(Gate{wires, m, "matrix"});
        } else {
            try {
                circuit.gates.push_back(make_named_gate(name, wires));
            } catch (const DomainError& err) {
                throw ParseError(err.what(), reader.line_no());
            }
        }
    }
    try {
        circuit.validate();
    } catch (const DomainError& err) {
        throw ParseError(err.what(), reader.line_no());
    }
    return circuit;
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    return in;
}

}  // namespace

SparseHermitianMatrix load_sparse_matrix(const std::string& path) {
    auto in = open_or_throw(path);
    return read_sparse_matrix(in);
}

ComplexVector load_vector(const std::string& path) {
    auto in = open_or_throw(path);
    return read_vector(in);
}

ComplexMatrix load_dense_matrix(const std::string& path) {
    auto in = open_or_throw(path);
    return read_dense_matrix(in);
}

ClockCircuit load_circuit(const std::string& path) {
    auto in = open_or_throw(path);
    return read_circuit(in);
}

}  // namespace qinvert
