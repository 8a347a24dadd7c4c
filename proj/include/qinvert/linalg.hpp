#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qinvert/common.hpp"

namespace qinvert {

/// Eigenpairs of a Hermitian matrix, eigenvalues sorted ascending.
/// Eigenvector phases are fixed so that each vector's largest-magnitude
/// component is real positive, which makes results reproducible across runs.
struct EigenDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;  // column j pairs with eigenvalues[j]
    std::optional<ComplexVector> coefficients;  // expansion of a supplied vector

    Index dim() const { return eigenvalues.size(); }
    /// Sum_j lambda_j |u_j><u_j|.
    ComplexMatrix reconstruct() const;
};

struct SparseEntry {
    Index row;
    Index col;
    Complex value;
};

/// Hermitian matrix stored as per-row lists of (column, value) with a declared
/// row sparsity bound s and spectral norm at most 1 (tolerance 1e-9). The
/// sparsity is metadata for the cost model; numerics are dense.
class SparseHermitianMatrix {
public:
    /// Build from the upper triangle (entries with row <= col); the lower
    /// triangle is implied by Hermiticity. Diagonal entries must be real.
    static SparseHermitianMatrix from_upper_triangle(Index dim, Index sparsity,
                                                     const std::vector<SparseEntry>& entries);
    /// Build from a dense matrix; rejects non-Hermitian input.
    static SparseHermitianMatrix from_dense(const ComplexMatrix& dense);

    Index dim() const { return dim_; }
    Index sparsity() const { return sparsity_; }
    const std::vector<std::vector<std::pair<Index, Complex>>>& rows() const { return rows_; }

    Complex entry(Index i, Index j) const;
    ComplexMatrix to_dense() const;

private:
    SparseHermitianMatrix() = default;
    void check_spectral_norm() const;

    Index dim_ = 0;
    Index sparsity_ = 0;
    std::vector<std::vector<std::pair<Index, Complex>>> rows_;
};

/// Dense Hermitian eigendecomposition. If b is supplied the expansion
/// coefficients beta_j = <u_j|b> are stored in the result.
EigenDecomposition eig_hermitian(const SparseHermitianMatrix& a,
                                 const ComplexVector* b = nullptr);
/// Same, for a dense Hermitian matrix; non-Hermitian input is rejected with a
/// hint that the block embedding is required.
EigenDecomposition eig_hermitian(const ComplexMatrix& a, const ComplexVector* b = nullptr);

/// Ratio of largest to smallest singular value.
double condition_number(const SparseHermitianMatrix& a);
double condition_number(const ComplexMatrix& a);

/// exp(i A t) = Sum_j exp(i lambda_j t) |u_j><u_j|, exactly unitary.
ComplexMatrix mat_exp_unitary(const SparseHermitianMatrix& a, double t);
ComplexMatrix mat_exp_unitary(const EigenDecomposition& eig, double t);

/// Block embedding [[0, A], [A^dagger, 0]] of an arbitrary M x N matrix.
/// The spectrum is {+-sigma_j} plus |N - M| zeros.
SparseHermitianMatrix hermitian_embed(const ComplexMatrix& a);

/// Largest singular value (spectral norm).
double spectral_norm(const ComplexMatrix& a);

}  // namespace qinvert
