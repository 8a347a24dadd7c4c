#pragma once

#include <iosfwd>
#include <string>

#include "qinvert/clock.hpp"
#include "qinvert/common.hpp"
#include "qinvert/linalg.hpp"

namespace qinvert {

/// Sparse Hermitian matrix text format: header "N s", then one entry per line
/// "i j re im" with 0-based indices in the upper triangle (i <= j); the lower
/// triangle is implied by Hermiticity.
SparseHermitianMatrix read_sparse_matrix(std::istream& in);
void write_sparse_matrix(const SparseHermitianMatrix& m, std::ostream& out);

/// Dense vector format: "N" then one "re im" pair per line.
ComplexVector read_vector(std::istream& in);
void write_vector(const ComplexVector& v, std::ostream& out);

/// Dense matrix format: "rows cols" then rows*cols "re im" pairs, row major.
ComplexMatrix read_dense_matrix(std::istream& in);
void write_dense_matrix(const ComplexMatrix& m, std::ostream& out);

/// Circuit format: header "n T", then one gate per line:
///   w q1 [q2] NAME            named gate on w wires
///   w q1 [q2] matrix <2*4^w floats>   numeric unitary, re im pairs row major
ClockCircuit read_circuit(std::istream& in);

SparseHermitianMatrix load_sparse_matrix(const std::string& path);
ComplexVector load_vector(const std::string& path);
ComplexMatrix load_dense_matrix(const std::string& path);
ClockCircuit load_circuit(const std::string& path);

}  // namespace qinvert
