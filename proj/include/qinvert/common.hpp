#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qinvert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Violation of a mathematical precondition (exit code 1 territory).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& what, long line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

/// Matrix has a (numerically) vanishing smallest singular value.
class SingularMatrixError : public DomainError {
public:
    explicit SingularMatrixError(double sigma_min)
        : DomainError("matrix is singular to working precision (sigma_min = " +
                      std::to_string(sigma_min) + ")"),
          sigma_min_(sigma_min) {}
    double sigma_min() const { return sigma_min_; }

private:
    double sigma_min_;
};

/// Post-selection on an outcome of probability zero.
class ZeroProbabilityError : public DomainError {
public:
    explicit ZeroProbabilityError(double probability)
        : DomainError("cannot post-select on an outcome of probability " +
                      std::to_string(probability)),
          probability_(probability) {}
    double probability() const { return probability_; }

private:
    double probability_;
};

}  // namespace qinvert
