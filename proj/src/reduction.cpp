#include "ats/reduction.hpp"

#include <cmath>
#include <limits>

#include "ats/linalg.hpp"

namespace ats {

namespace {

// First entry of each row with magnitude above 1e-12 is made positive.
void fix_row_signs(DenseMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            if (std::fabs(v) > 1e-12) {
                if (v < 0.0)
                    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = -m(i, k);
                break;
            }
        }
    }
}

DenseMatrix root_from_eigenpairs(const SymmetricEigenResult& eig, std::size_t d,
                                 double keep_above) {
    std::size_t r = 0;
    while (r < eig.values.size() && eig.values[r] > keep_above) ++r;
    DenseMatrix l(r, d);
    for (std::size_t i = 0; i < r; ++i) {
        const double s = std::sqrt(eig.values[i]);
        for (std::size_t j = 0; j < d; ++j) l(i, j) = s * eig.vectors(i, j);
    }
    fix_row_signs(l);
    return l;
}

double snap_to_grid(double x) {
    // 2^-30 grid; coarse enough to absorb the floating-point noise between
    // projectors computed from different matrices with the same row space.
    constexpr double scale = 1073741824.0;  // 2^30
    return std::nearbyint(x * scale) / scale;
}

}  // namespace

Hypothesis::Hypothesis(DenseMatrix h_, std::vector<double> y_)
    : h(std::move(h_)), y(std::move(y_)) {
    if (h.rows() == 0 || h.cols() == 0) {
        throw std::invalid_argument("Hypothesis: H must be nonempty");
    }
    if (y.size() != h.rows()) {
        throw std::invalid_argument("Hypothesis: y length " + std::to_string(y.size()) +
                                    " does not match H " + h.shape_string());
    }
    for (double v : y) {
        if (!std::isfinite(v)) throw std::invalid_argument("Hypothesis: non-finite entry in y");
    }
}

bool Hypothesis::is_consistent() const {
    DenseMatrix aug(h.rows(), h.cols() + 1);
    for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = 0; j < h.cols(); ++j) aug(i, j) = h(i, j);
        aug(i, h.cols()) = y[i];
    }
    return numerical_rank(aug) == numerical_rank(h);
}

DenseMatrix compact_root(const DenseMatrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("compact_root: matrix " + a.shape_string() + " is not square");
    }
    const double sym_err = (a - a.transposed()).frobenius_norm();
    if (sym_err > 1e-10 * (1.0 + a.frobenius_norm())) {
        throw std::invalid_argument("compact_root: matrix is not symmetric (asymmetry " +
                                    std::to_string(sym_err) + ")");
    }
    const auto eig = symmetric_eigen(a);
    const double lambda_max = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
    const double lambda_min = eig.values.empty() ? 0.0 : eig.values.back();
    if (lambda_min < -1e-10 * lambda_max) {
        throw std::invalid_argument("compact_root: matrix is indefinite (eigenvalue " +
                                    std::to_string(lambda_min) + ")");
    }
    const double tau = static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon() *
                       lambda_max;
    return root_from_eigenpairs(eig, a.cols(), tau);
}

DenseMatrix compact_root_of_hypothesis_matrix(const DenseMatrix& h) {
    if (h.empty()) throw std::invalid_argument("compact_root_of_hypothesis_matrix: empty matrix");
    const SvdResult dec = svd(h);
    const std::size_t r = numerical_rank(dec.singular_values, h.rows(), h.cols());
    DenseMatrix l(r, h.cols());
    for (std::size_t i = 0; i < r; ++i) {
        const double s = dec.singular_values[i];
        for (std::size_t j = 0; j < h.cols(); ++j) l(i, j) = s * dec.vt(i, j);
    }
    fix_row_signs(l);
    return l;
}

DenseMatrix reduce_homogeneous(const DenseMatrix& h) {
    return compact_root_of_hypothesis_matrix(h);
}

ReducedHypothesis reduce(const Hypothesis& h) {
    ReducedHypothesis out;
    out.l_unscaled = compact_root_of_hypothesis_matrix(h.h);
    const std::vector<double> hty = h.h.transpose_times(h.y);
    // L^T y0 = H^T y is always solvable: Im(H^T) = Im(L^T). The solution is
    // unique since L has full row rank.
    out.y_tilde_unscaled = least_squares(out.l_unscaled.transposed(), hty).solution;

    const double y_norm = norm2(h.y);
    const double y0_norm = norm2(out.y_tilde_unscaled);
    out.shift_delta = y0_norm * y0_norm - y_norm * y_norm;

    if (y_norm > 0.0 && y0_norm == 0.0) {
        throw EmptySolutionSetError("empty solution set: y is orthogonal to Im(H)");
    }

    double sqrt_a = 1.0;
    if (y_norm > 0.0 && y0_norm > 0.0) sqrt_a = y_norm / y0_norm;
    out.l = sqrt_a * out.l_unscaled;
    out.y_tilde = out.y_tilde_unscaled;
    for (double& v : out.y_tilde) v *= sqrt_a;
    // Witness for a * L^T L = H^T H with the scaled L.
    out.scale_a = 1.0 / (sqrt_a * sqrt_a);
    return out;
}

DenseMatrix canonical_projection(const DenseMatrix& h) {
    if (h.empty()) throw std::invalid_argument("canonical_projection: empty matrix");
    const SvdResult dec = svd(h);
    const std::size_t r = numerical_rank(dec.singular_values, h.rows(), h.cols());
    const std::size_t d = h.cols();
    DenseMatrix p(d, d);
    // P = V_r V_r^T, the projector onto Im(H^T); symmetric by construction.
    for (std::size_t k = 0; k < r; ++k) {
        const double* vrow = dec.vt.row_ptr(k);
        for (std::size_t i = 0; i < d; ++i) {
            const double vi = vrow[i];
            for (std::size_t j = 0; j <= i; ++j) {
                p(i, j) += vi * vrow[j];
            }
        }
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j) p(j, i) = p(i, j);
    return p;
}

DenseMatrix canonical_reduce(const DenseMatrix& h) {
    DenseMatrix p = canonical_projection(h);
    for (double& v : p.data()) v = snap_to_grid(v);
    const auto eig = symmetric_eigen(p);
    // Eigenvalues of a (snapped) projector cluster at 0 and 1.
    return root_from_eigenpairs(eig, p.cols(), 0.5);
}

DenseMatrix kronecker_reduce(const DenseMatrix& h_w, const DenseMatrix& h_s) {
    const DenseMatrix lw = reduce_homogeneous(h_w);
    const DenseMatrix ls = reduce_homogeneous(h_s);
    if (lw.rows() == 0 || ls.rows() == 0) {
        return DenseMatrix(0, h_w.cols() * h_s.cols());
    }
    return kronecker(lw, ls);
}

EquivalenceReport check_equivalence(const Hypothesis& h1, const Hypothesis& h2) {
    if (h1.d() != h2.d()) {
        throw std::invalid_argument("check_equivalence: dimension mismatch, H is " +
                                    h1.h.shape_string() + " but L is " + h2.h.shape_string());
    }
    EquivalenceReport rep;
    const DenseMatrix gh = h1.h.gram();
    const DenseMatrix gl = h2.h.gram();
    const double tr_h = gh.trace();
    const double tr_l = gl.trace();

    double a_hat = 1.0;
    if (tr_l > 0.0) {
        a_hat = tr_h / tr_l;
    } else if (tr_h > 0.0) {
        a_hat = 0.0;  // zero L cannot reproduce a nonzero Gram
    }
    rep.witness_a = a_hat;

    rep.gram_residual = (a_hat * gl - gh).frobenius_norm();
    rep.same_gram = rep.gram_residual <= 1e-9 * (1.0 + gh.frobenius_norm());

    const std::vector<double> hty = h1.h.transpose_times(h1.y);
    std::vector<double> lty = h2.h.transpose_times(h2.y);
    for (double& v : lty) v *= a_hat;
    double cross = 0.0;
    for (std::size_t j = 0; j < hty.size(); ++j) {
        const double dlt = lty[j] - hty[j];
        cross += dlt * dlt;
    }
    rep.cross_residual = std::sqrt(cross);
    rep.same_cross = rep.cross_residual <= 1e-9 * (1.0 + norm2(hty));

    const double y_norm = norm2(h1.y);
    const double yt_norm = norm2(h2.y);
    rep.norm_residual = std::fabs(y_norm - std::sqrt(std::max(a_hat, 0.0)) * yt_norm);
    rep.same_norm = rep.norm_residual <= 1e-9 * (1.0 + y_norm);

    rep.shift_delta = yt_norm * yt_norm - y_norm * y_norm;

    // Matching Gram and cross terms imply equal solution sets, but the
    // converse fails (same hypothesis, different statistics), so fall back
    // to the explicit solution-set comparison when both sides are solvable.
    rep.same_hypothesis = rep.same_gram && rep.same_cross;
    if (!rep.same_hypothesis && h1.is_consistent() && h2.is_consistent()) {
        rep.same_hypothesis = same_solution_set(h1, h2);
    }
    rep.ats_s_equal = rep.same_gram && rep.same_cross && rep.same_norm;
    rep.ats_f_equal = rep.ats_s_equal;
    const bool a_is_one = std::fabs(a_hat - 1.0) <= 1e-9;
    rep.ats_shifted_equal = a_is_one && rep.same_gram && rep.same_cross;
    rep.ats_equal = rep.ats_shifted_equal && rep.same_norm;
    return rep;
}

bool same_solution_set(const Hypothesis& h1, const Hypothesis& h2) {
    if (h1.d() != h2.d()) {
        throw std::invalid_argument("same_solution_set: dimension mismatch, " +
                                    h1.h.shape_string() + " vs " + h2.h.shape_string());
    }
    if (!h1.is_consistent() || !h2.is_consistent()) {
        throw EmptySolutionSetError("empty solution set");
    }
    const auto theta1 = least_squares(h1.h, h1.y).solution;
    const auto theta2 = least_squares(h2.h, h2.y).solution;

    auto satisfies = [](const Hypothesis& h, const std::vector<double>& theta) {
        std::vector<double> r = h.h * theta;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= h.y[i];
        return norm2(r) <= 1e-8 * (1.0 + norm2(h.y));
    };
    if (!satisfies(h2, theta1) || !satisfies(h1, theta2)) return false;

    // Equal affine directions: row spaces must match.
    const std::size_t r1 = numerical_rank(h1.h);
    const std::size_t r2 = numerical_rank(h2.h);
    if (r1 != r2) return false;
    DenseMatrix stacked(h1.m() + h2.m(), h1.d());
    for (std::size_t i = 0; i < h1.m(); ++i)
        for (std::size_t j = 0; j < h1.d(); ++j) stacked(i, j) = h1.h(i, j);
    for (std::size_t i = 0; i < h2.m(); ++i)
        for (std::size_t j = 0; j < h2.d(); ++j) stacked(h1.m() + i, j) = h2.h(i, j);
    return numerical_rank(stacked) == r1;
}

}  // namespace ats
