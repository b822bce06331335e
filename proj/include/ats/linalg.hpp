#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "ats/dense_matrix.hpp"

namespace ats {

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full SVD A = U diag(s) V^T with U m-by-m, V^T d-by-d, singular values
/// nonincreasing.
struct SvdResult {
    DenseMatrix u;
    std::vector<double> singular_values;
    DenseMatrix vt;
};

SvdResult svd(const DenseMatrix& a);

/// #{sigma_i > tau} with tau = max(m,d) * eps * sigma_1 (LAPACK-style).
std::size_t numerical_rank(const std::vector<double>& singular_values, std::size_t m,
                           std::size_t d);
std::size_t numerical_rank(const DenseMatrix& a);
double rank_tolerance(const std::vector<double>& singular_values, std::size_t m, std::size_t d);

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b);

struct LeastSquaresResult {
    std::vector<double> solution;   // minimum-norm
    double residual_norm = 0.0;     // ||A x - b||_2
};

/// Minimum-norm least squares via the SVD pseudoinverse; singular values
/// below the numerical-rank threshold are treated as zero. Inconsistent
/// systems are signaled by residual_norm, never by failure.
LeastSquaresResult least_squares(const DenseMatrix& a, const std::vector<double>& b);

/// Symmetric eigendecomposition helper for PSD checks and compact roots.
/// Eigenvalues are returned in nonincreasing order with matching
/// eigenvector rows in `vectors` (row i is the eigenvector of value i).
struct SymmetricEigenResult {
    std::vector<double> values;
    DenseMatrix vectors;
};

SymmetricEigenResult symmetric_eigen(const DenseMatrix& a);

}  // namespace ats
