#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "qinvert/io.hpp"
#include "qinvert/linalg.hpp"
#include "qinvert/rng.hpp"

using namespace qinvert;

namespace {

ComplexMatrix random_hermitian(Index n, Rng& rng, double norm_target = 1.0) {
    ComplexMatrix m(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) m(i, j) = rng.normal_complex();
    }
    ComplexMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    const double norm = solver.eigenvalues().cwiseAbs().maxCoeff();
    return h * (norm_target / norm);
}

SparseHermitianMatrix diag_matrix(const std::vector<double>& values) {
    std::vector<SparseEntry> entries;
    for (std::size_t i = 0; i < values.size(); ++i) {
        entries.push_back({static_cast<Index>(i), static_cast<Index>(i), values[i]});
    }
    return SparseHermitianMatrix::from_upper_triangle(static_cast<Index>(values.size()), 1,
                                                      entries);
}

}  // namespace

TEST_CASE("eig_hermitian identity has unit spectrum") {
    const auto m = SparseHermitianMatrix::from_dense(ComplexMatrix::Identity(4, 4));
    const auto eig = eig_hermitian(m);
    for (Index j = 0; j < 4; ++j) CHECK(eig.eigenvalues[j] == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian diagonal sorts ascending") {
    const auto eig = eig_hermitian(diag_matrix({1.0, 0.5}));
    CHECK(eig.eigenvalues[0] == doctest::Approx(0.5));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian reconstructs a random matrix") {
    Rng rng(7);
    const ComplexMatrix h = random_hermitian(8, rng);
    const auto eig = eig_hermitian(SparseHermitianMatrix::from_dense(h));
    CHECK((eig.reconstruct() - h).cwiseAbs().maxCoeff() < 1e-9);
    const ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
    CHECK((gram - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("eigenvector phase convention is deterministic") {
    Rng rng(11);
    const ComplexMatrix h = random_hermitian(6, rng);
    const auto a = eig_hermitian(SparseHermitianMatrix::from_dense(h));
    const auto b = eig_hermitian(SparseHermitianMatrix::from_dense(h));
    CHECK((a.eigenvectors - b.eigenvectors).cwiseAbs().maxCoeff() == 0.0);
    for (Index j = 0; j < 6; ++j) {
        Index pivot = 0;
        a.eigenvectors.col(j).cwiseAbs().maxCoeff(&pivot);
        CHECK(a.eigenvectors(pivot, j).imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(a.eigenvectors(pivot, j).real() > 0.0);
    }
}

TEST_CASE("non-Hermitian dense input is rejected with an embedding hint") {
    ComplexMatrix m(2, 2);
    m << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
    CHECK_THROWS_WITH_AS(SparseHermitianMatrix::from_dense(m),
                         doctest::Contains("embedding"), DomainError);
}

TEST_CASE("condition_number basics") {
    CHECK(condition_number(SparseHermitianMatrix::from_dense(ComplexMatrix::Identity(3, 3))) ==
          doctest::Approx(1.0));
    CHECK(condition_number(diag_matrix({1.0, 0.25})) == doctest::Approx(4.0));
}

TEST_CASE("condition_number of a singular matrix carries sigma_min") {
    try {
        condition_number(diag_matrix({1.0, 0.0}));
        FAIL("expected SingularMatrixError");
    } catch (const SingularMatrixError& e) {
        CHECK(e.sigma_min() == doctest::Approx(0.0));
    }
}

TEST_CASE("mat_exp_unitary at t = 0 is the identity") {
    Rng rng(3);
    const auto m = SparseHermitianMatrix::from_dense(random_hermitian(5, rng));
    CHECK((mat_exp_unitary(m, 0.0) - ComplexMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("mat_exp_unitary diagonal phases") {
    const auto u = mat_exp_unitary(diag_matrix({1.0, 0.5}), M_PI);
    CHECK(std::abs(u(0, 0) - std::polar(1.0, M_PI)) < 1e-12);        // eigenvalue 1
    CHECK(std::abs(u(1, 1) - std::polar(1.0, M_PI / 2.0)) < 1e-12);  // eigenvalue 1/2
}

TEST_CASE("mat_exp_unitary is unitary and a one-parameter group") {
    Rng rng(21);
    const auto eig = eig_hermitian(SparseHermitianMatrix::from_dense(random_hermitian(6, rng)));
    const ComplexMatrix u = mat_exp_unitary(eig, 1.7);
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);
    for (int trial = 0; trial < 5; ++trial) {
        const double s = rng.uniform(-3.0, 3.0);
        const double t = rng.uniform(-3.0, 3.0);
        const ComplexMatrix lhs = mat_exp_unitary(eig, s) * mat_exp_unitary(eig, t);
        CHECK((lhs - mat_exp_unitary(eig, s + t)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("hermitian_embed of a scalar") {
    ComplexMatrix a(1, 1);
    a << 0.5;
    const auto eig = eig_hermitian(hermitian_embed(a));
    CHECK(eig.eigenvalues[0] == doctest::Approx(-0.5));
    CHECK(eig.eigenvalues[1] == doctest::Approx(0.5));
}

TEST_CASE("hermitian_embed spectrum is plus-minus the singular values") {
    // build a 2x2 matrix with singular values {1, 1/3}
    ComplexMatrix a(2, 2);
    a << 1.0, 0.0, 0.0, 1.0 / 3.0;
    const auto eig = eig_hermitian(hermitian_embed(a));
    CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(-1.0 / 3.0));
    CHECK(eig.eigenvalues[2] == doctest::Approx(1.0 / 3.0));
    CHECK(eig.eigenvalues[3] == doctest::Approx(1.0));
}

TEST_CASE("hermitian_embed of a 2x3 matrix has exactly one zero eigenvalue") {
    Rng rng(5);
    ComplexMatrix a(2, 3);
    for (Index i = 0; i < 2; ++i) {
        for (Index j = 0; j < 3; ++j) a(i, j) = rng.normal_complex();
    }
    a /= (2.0 * spectral_norm(a));
    const auto eig = eig_hermitian(hermitian_embed(a));
    int zeros = 0;
    for (Index j = 0; j < eig.dim(); ++j) {
        if (std::abs(eig.eigenvalues[j]) < 1e-12) ++zeros;
    }
    CHECK(zeros == 1);
}

TEST_CASE("hermitian_embed of a square matrix pairs +-sigma") {
    Rng rng(17);
    ComplexMatrix a(3, 3);
    for (Index i = 0; i < 3; ++i) {
        for (Index j = 0; j < 3; ++j) a(i, j) = rng.normal_complex();
    }
    a /= (1.5 * spectral_norm(a));
    const auto eig = eig_hermitian(hermitian_embed(a));
    for (Index j = 0; j < 3; ++j) {
        CHECK(eig.eigenvalues[j] == doctest::Approx(-eig.eigenvalues[5 - j]).epsilon(1e-9));
    }
}

TEST_CASE("sparse round trip preserves entries exactly") {
    Rng rng(29);
    const ComplexMatrix h = random_hermitian(6, rng, 0.9);
    const auto m = SparseHermitianMatrix::from_dense(h);
    const ComplexMatrix back = m.to_dense();
    CHECK((back - back.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    for (Index i = 0; i < 6; ++i) {
        for (Index j = 0; j < 6; ++j) {
            CHECK(m.entry(i, j) == back(i, j));
        }
    }
}

TEST_CASE("sparsity bound is enforced") {
    std::vector<SparseEntry> entries = {{0, 0, 0.5}, {0, 1, 0.25}, {1, 1, 0.5}};
    CHECK_NOTHROW(SparseHermitianMatrix::from_upper_triangle(2, 2, entries));
    CHECK_THROWS_AS(SparseHermitianMatrix::from_upper_triangle(2, 1, entries), DomainError);
}

TEST_CASE("spectral norm above 1 + 1e-9 is rejected") {
    CHECK_THROWS_WITH_AS(SparseHermitianMatrix::from_dense(2.0 * ComplexMatrix::Identity(2, 2)),
                         doctest::Contains("spectral norm"), DomainError);
    // within tolerance is accepted
    CHECK_NOTHROW(
        SparseHermitianMatrix::from_dense((1.0 + 5e-10) * ComplexMatrix::Identity(2, 2)));
}

TEST_CASE("sparse matrix file format round trip") {
    Rng rng(31);
    const auto m = SparseHermitianMatrix::from_dense(random_hermitian(4, rng, 0.8));
    std::stringstream ss;
    write_sparse_matrix(m, ss);
    const auto loaded = read_sparse_matrix(ss);
    CHECK((loaded.to_dense() - m.to_dense()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sparse matrix parse errors carry line numbers") {
    std::stringstream lower("2 2\n1 0 0.5 0\n");
    try {
        read_sparse_matrix(lower);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    std::stringstream bad("2 2\n0 1 not-a-number 0\n");
    CHECK_THROWS_AS(read_sparse_matrix(bad), ParseError);
    std::stringstream imag_diag("2 2\n0 0 0.5 0.25\n");
    CHECK_THROWS_AS(read_sparse_matrix(imag_diag), ParseError);
}

TEST_CASE("vector file format round trip") {
    ComplexVector v(3);
    v << Complex(0.1, -0.2), Complex(0.0, 0.3), Complex(-0.4, 0.0);
    std::stringstream ss;
    write_vector(v, ss);
    const ComplexVector back = read_vector(ss);
    CHECK((back - v).cwiseAbs().maxCoeff() == 0.0);
}
