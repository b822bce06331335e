#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ats/dense_matrix.hpp"

namespace ats {

struct EmptySolutionSetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// H0: H theta = y.
struct Hypothesis {
    DenseMatrix h;          // m x d
    std::vector<double> y;  // length m

    Hypothesis(DenseMatrix h_, std::vector<double> y_);

    std::size_t m() const { return h.rows(); }
    std::size_t d() const { return h.cols(); }

    /// y in Im(H), i.e. rank([H | y]) == rank(H).
    bool is_consistent() const;
};

/// Output of reduce(): the scaled pair (L, y_tilde) with provenance.
///
/// scale_a is the Theorem-style witness: scale_a * L^T L = H^T H and
/// scale_a * L^T y_tilde = H^T y against the source hypothesis.
/// shift_delta = ||y0||^2 - ||y||^2 for the unscaled pair (l_unscaled, y0);
/// it is the constant offset of the plain ATS between source and reduction.
struct ReducedHypothesis {
    DenseMatrix l;                 // ell x d, ell = rank(H)
    std::vector<double> y_tilde;   // length ell
    double scale_a = 1.0;
    double shift_delta = 0.0;

    DenseMatrix l_unscaled;              // compact root before norm rescaling
    std::vector<double> y_tilde_unscaled;

    std::size_t ell() const { return l.rows(); }
};

/// Outcome of comparing two hypothesis formulations (h1 plays H, h2 plays L).
struct EquivalenceReport {
    bool same_gram = false;       // a * L^T L == H^T H for the trace-ratio a
    std::optional<double> witness_a;
    bool same_cross = false;      // a * L^T y_tilde == H^T y
    bool same_norm = false;       // ||y|| == sqrt(a) * ||y_tilde||
    bool same_hypothesis = false; // solution sets coincide

    bool ats_equal = false;
    bool ats_s_equal = false;
    bool ats_f_equal = false;
    bool ats_shifted_equal = false;
    double shift_delta = 0.0;     // ||y_tilde||^2 - ||y||^2

    double gram_residual = 0.0;
    double cross_residual = 0.0;
    double norm_residual = 0.0;
};

/// Compact root of a symmetric PSD matrix A: the r-row L with L^T L = A,
/// rows sqrt(lambda_i) * v_i^T over the retained eigenpairs, in
/// nonincreasing eigenvalue order with a fixed row-sign convention.
DenseMatrix compact_root(const DenseMatrix& a);

/// Compact root of H^T H computed from the SVD of H itself (no Gram
/// squaring): L = diag(sigma_1..sigma_r) * V_r^T, same sign convention.
DenseMatrix compact_root_of_hypothesis_matrix(const DenseMatrix& h);

/// Rank-many-row reduction of (H, y). The returned pair carries the norm
/// rescaling folded in, so ||y_tilde|| = ||y|| whenever both are nonzero;
/// for a consistent hypothesis all standardized statistics coincide with
/// the source, and the plain ATS of the unscaled pair differs from the
/// source by the constant shift_delta.
ReducedHypothesis reduce(const Hypothesis& h);

/// Compact root of H^T H; the y = 0 reduction, where all three ATS
/// variants are preserved exactly.
DenseMatrix reduce_homogeneous(const DenseMatrix& h);

/// Unique orthogonal projector onto the row space of H (d x d, symmetric,
/// idempotent); equal for any two H with the same row space.
DenseMatrix canonical_projection(const DenseMatrix& h);

/// Matrix-independent reduction: a compact root of the row-space projector.
/// The projector is snapped to a fixed binary grid before decomposition so
/// that any two H with equal row spaces produce byte-identical output.
DenseMatrix canonical_reduce(const DenseMatrix& h);

/// Kronecker-factored reduction: reduce the factors, then take their
/// Kronecker product. Gram matrix equals that of H_W (x) H_S.
DenseMatrix kronecker_reduce(const DenseMatrix& h_w, const DenseMatrix& h_s);

EquivalenceReport check_equivalence(const Hypothesis& h1, const Hypothesis& h2);

/// True iff the affine solution sets of the two hypotheses coincide.
bool same_solution_set(const Hypothesis& h1, const Hypothesis& h2);

}  // namespace ats
