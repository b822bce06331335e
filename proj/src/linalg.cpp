#include "ats/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace ats {

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                          Eigen::RowMajor>>(m.data().data(),
                                                            static_cast<Eigen::Index>(m.rows()),
                                                            static_cast<Eigen::Index>(m.cols()));
}

DenseMatrix from_eigen(const Eigen::MatrixXd& m) {
    DenseMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return out;
}

}  // namespace

SvdResult svd(const DenseMatrix& a) {
    if (a.empty()) throw std::invalid_argument("svd: empty matrix");
    Eigen::JacobiSVD<Eigen::MatrixXd> dec(to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (dec.info() != Eigen::Success) {
        throw DecompositionError("svd failed to converge on " + a.shape_string() + " matrix");
    }
    SvdResult out;
    out.u = from_eigen(dec.matrixU());
    out.vt = from_eigen(dec.matrixV().transpose());
    const auto& s = dec.singularValues();
    out.singular_values.assign(s.data(), s.data() + s.size());
    return out;
}

double rank_tolerance(const std::vector<double>& singular_values, std::size_t m, std::size_t d) {
    const double sigma_max = singular_values.empty() ? 0.0 : singular_values.front();
    return static_cast<double>(std::max(m, d)) * std::numeric_limits<double>::epsilon() *
           sigma_max;
}

std::size_t numerical_rank(const std::vector<double>& singular_values, std::size_t m,
                           std::size_t d) {
    const double tau = rank_tolerance(singular_values, m, d);
    std::size_t r = 0;
    for (double s : singular_values) {
        if (s > tau) ++r;
    }
    return r;
}

std::size_t numerical_rank(const DenseMatrix& a) {
    return numerical_rank(svd(a).singular_values, a.rows(), a.cols());
}

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("kronecker: empty factor");
    constexpr std::size_t kMaxEntries = std::size_t{1} << 28;
    if (a.rows() > kMaxEntries / b.rows() || a.cols() > kMaxEntries / b.cols() ||
        (a.rows() * b.rows()) > kMaxEntries / (a.cols() * b.cols())) {
        throw std::invalid_argument("kronecker: product shape " + a.shape_string() + " x " +
                                    b.shape_string() + " too large");
    }
    DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    }
    return out;
}

LeastSquaresResult least_squares(const DenseMatrix& a, const std::vector<double>& b) {
    if (b.size() != a.rows()) {
        throw std::invalid_argument("least_squares: rhs length " + std::to_string(b.size()) +
                                    " does not match " + a.shape_string() + " matrix");
    }
    const SvdResult dec = svd(a);
    const double tau = rank_tolerance(dec.singular_values, a.rows(), a.cols());

    // x = V diag(1/sigma_i) U^T b over singular values above tau
    std::vector<double> utb(dec.singular_values.size(), 0.0);
    for (std::size_t k = 0; k < utb.size(); ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) acc += dec.u(i, k) * b[i];
        utb[k] = acc;
    }
    LeastSquaresResult out;
    out.solution.assign(a.cols(), 0.0);
    for (std::size_t k = 0; k < utb.size(); ++k) {
        const double s = dec.singular_values[k];
        if (s <= tau) continue;
        const double c = utb[k] / s;
        const double* vrow = dec.vt.row_ptr(k);
        for (std::size_t j = 0; j < a.cols(); ++j) out.solution[j] += c * vrow[j];
    }
    std::vector<double> r = a * out.solution;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    out.residual_norm = norm2(r);
    return out;
}

SymmetricEigenResult symmetric_eigen(const DenseMatrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("symmetric_eigen: matrix " + a.shape_string() +
                                    " is not square");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dec(to_eigen(a));
    if (dec.info() != Eigen::Success) {
        throw DecompositionError("symmetric eigendecomposition failed on " + a.shape_string() +
                                 " matrix");
    }
    const std::size_t n = a.rows();
    SymmetricEigenResult out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    // Eigen returns ascending order; flip to nonincreasing.
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Index src = static_cast<Eigen::Index>(n - 1 - i);
        out.values[i] = dec.eigenvalues()(src);
        for (std::size_t j = 0; j < n; ++j)
            out.vectors(i, j) = dec.eigenvectors()(static_cast<Eigen::Index>(j), src);
    }
    return out;
}

}  // namespace ats
