#include "qinvert/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qinvert {

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kHermitianTolerance = 1e-12;

/// Rotate each column so its largest-magnitude component is real positive.
/// Ties on magnitude (within 1e-12) break toward the smaller index.
void canonicalize_phases(ComplexMatrix& vectors) {
    for (Index j = 0; j < vectors.cols(); ++j) {
        Index pivot = 0;
        double best = -1.0;
        for (Index i = 0; i < vectors.rows(); ++i) {
            const double mag = std::abs(vectors(i, j));
            if (mag > best + 1e-12) {
                best = mag;
                pivot = i;
            }
        }
        const Complex p = vectors(pivot, j);
        if (std::abs(p) > 0.0) {
            vectors.col(j) *= std::conj(p) / std::abs(p);
        }
    }
}

EigenDecomposition eig_of_dense_hermitian(const ComplexMatrix& dense, const ComplexVector* b) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(dense);
    if (solver.info() != Eigen::Success) {
        throw DomainError("Hermitian eigendecomposition failed to converge");
    }
    EigenDecomposition out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    canonicalize_phases(out.eigenvectors);
    if (b != nullptr) {
        if (b->size() != dense.rows()) {
            throw DomainError("vector dimension does not match matrix dimension");
        }
        out.coefficients = out.eigenvectors.adjoint() * (*b);
    }
    return out;
}

}  // namespace

ComplexMatrix EigenDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
           eigenvectors.adjoint();
}

SparseHermitianMatrix SparseHermitianMatrix::from_upper_triangle(
    Index dim, Index sparsity, const std::vector<SparseEntry>& entries) {
    if (dim < 1) throw DomainError("matrix dimension must be at least 1");
    if (sparsity < 1) throw DomainError("row sparsity must be at least 1");
    SparseHermitianMatrix m;
    m.dim_ = dim;
    m.sparsity_ = sparsity;
    m.rows_.resize(static_cast<std::size_t>(dim));
    for (const auto& e : entries) {
        if (e.row < 0 || e.col < 0 || e.row >= dim || e.col >= dim) {
            throw DomainError("sparse entry index out of range");
        }
        if (e.row > e.col) {
            throw DomainError("sparse entries must lie in the upper triangle (row <= col)");
        }
        if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
            throw DomainError("sparse entry is not finite");
        }
        if (e.row == e.col && std::abs(e.value.imag()) > 0.0) {
            throw DomainError("diagonal entries of a Hermitian matrix must be real");
        }
        m.rows_[static_cast<std::size_t>(e.row)].emplace_back(e.col, e.value);
        if (e.row != e.col) {
            m.rows_[static_cast<std::size_t>(e.col)].emplace_back(e.row, std::conj(e.value));
        }
    }
    for (auto& row : m.rows_) {
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < row.size(); ++i) {
            if (row[i].first == row[i - 1].first) {
                throw DomainError("duplicate sparse entry");
            }
        }
        if (static_cast<Index>(row.size()) > sparsity) {
            throw DomainError("row exceeds the declared sparsity bound");
        }
    }
    m.check_spectral_norm();
    return m;
}

SparseHermitianMatrix SparseHermitianMatrix::from_dense(const ComplexMatrix& dense) {
    if (dense.rows() != dense.cols()) {
        throw DomainError(
            "matrix is not Hermitian (not square); apply the block embedding first");
    }
    const double scale = std::max(1.0, dense.cwiseAbs().maxCoeff());
    for (Index i = 0; i < dense.rows(); ++i) {
        for (Index j = i; j < dense.cols(); ++j) {
            if (std::abs(dense(i, j) - std::conj(dense(j, i))) > kHermitianTolerance * scale) {
                throw DomainError(
                    "matrix is not Hermitian; apply the block embedding first");
            }
        }
    }
    std::vector<SparseEntry> entries;
    Index max_row_count = 1;
    for (Index i = 0; i < dense.rows(); ++i) {
        Index count = 0;
        for (Index j = 0; j < dense.cols(); ++j) {
            if (dense(i, j) != Complex(0.0, 0.0)) ++count;
            if (j >= i && dense(i, j) != Complex(0.0, 0.0)) {
                Complex v = dense(i, j);
                if (i == j) v = Complex(v.real(), 0.0);
                entries.push_back({i, j, v});
            }
        }
        max_row_count = std::max(max_row_count, count);
    }
    return from_upper_triangle(dense.rows(), max_row_count, entries);
}

void SparseHermitianMatrix::check_spectral_norm() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(to_dense(), Eigen::EigenvaluesOnly);
    const double norm =
        std::max(std::abs(solver.eigenvalues().minCoeff()), std::abs(solver.eigenvalues().maxCoeff()));
    if (norm > 1.0 + kNormTolerance) {
        throw DomainError("spectral norm " + std::to_string(norm) +
                          " exceeds 1; rescale the matrix");
    }
}

Complex SparseHermitianMatrix::entry(Index i, Index j) const {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_) {
        throw DomainError("matrix index out of range");
    }
    for (const auto& [col, value] : rows_[static_cast<std::size_t>(i)]) {
        if (col == j) return value;
    }
    return Complex(0.0, 0.0);
}

ComplexMatrix SparseHermitianMatrix::to_dense() const {
    ComplexMatrix dense = ComplexMatrix::Zero(dim_, dim_);
    for (Index i = 0; i < dim_; ++i) {
        for (const auto& [col, value] : rows_[static_cast<std::size_t>(i)]) {
            dense(i, col) = value;
        }
    }
    return dense;
}

EigenDecomposition eig_hermitian(const SparseHermitianMatrix& a, const ComplexVector* b) {
    return eig_of_dense_hermitian(a.to_dense(), b);
}

EigenDecomposition eig_hermitian(const ComplexMatrix& a, const ComplexVector* b) {
    if (a.rows() != a.cols()) {
        throw DomainError(
            "matrix is not Hermitian (not square); apply the block embedding first");
    }
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw DomainError("matrix is not Hermitian; apply the block embedding first");
    }
    return eig_of_dense_hermitian((a + a.adjoint()) / 2.0, b);
}

double condition_number(const SparseHermitianMatrix& a) {
    const EigenDecomposition eig = eig_hermitian(a);
    const double sigma_max = eig.eigenvalues.cwiseAbs().maxCoeff();
    const double sigma_min = eig.eigenvalues.cwiseAbs().minCoeff();
    if (sigma_min <= sigma_max * 1e-14) {
        throw SingularMatrixError(sigma_min);
    }
    return sigma_max / sigma_min;
}

double condition_number(const ComplexMatrix& a) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const double sigma_max = svd.singularValues().maxCoeff();
    const double sigma_min = svd.singularValues().minCoeff();
    if (sigma_min <= sigma_max * 1e-14) {
        throw SingularMatrixError(sigma_min);
    }
    return sigma_max / sigma_min;
}

ComplexMatrix mat_exp_unitary(const EigenDecomposition& eig, double t) {
    const Index n = eig.dim();
    ComplexVector phases(n);
    for (Index j = 0; j < n; ++j) {
        phases[j] = std::polar(1.0, eig.eigenvalues[j] * t);
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix mat_exp_unitary(const SparseHermitianMatrix& a, double t) {
    return mat_exp_unitary(eig_hermitian(a), t);
}

SparseHermitianMatrix hermitian_embed(const ComplexMatrix& a) {
    const Index m = a.rows();
    const Index n = a.cols();
    ComplexMatrix h = ComplexMatrix::Zero(m + n, m + n);
    h.block(0, m, m, n) = a;
    h.block(m, 0, n, m) = a.adjoint();
    return SparseHermitianMatrix::from_dense(h);
}

double spectral_norm(const ComplexMatrix& a) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues().maxCoeff();
}

}  // namespace qinvert
