#include "ats/ats_forms.hpp"

#include <cmath>

#include "ats/linalg.hpp"

namespace ats {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::ats: return "ats";
        case Variant::ats_s: return "ats_s";
        case Variant::ats_f: return "ats_f";
    }
    return "?";
}

Variant parse_variant(const std::string& name) {
    if (name == "ats") return Variant::ats;
    if (name == "ats_s") return Variant::ats_s;
    if (name == "ats_f") return Variant::ats_f;
    throw std::invalid_argument("unknown variant '" + name + "' (expected ats|ats_s|ats_f)");
}

double ats_value(const std::vector<double>& x, const DenseMatrix& h,
                 const std::vector<double>& y) {
    if (x.size() != h.cols() || y.size() != h.rows()) {
        throw std::invalid_argument("ats: H is " + h.shape_string() + " but x has length " +
                                    std::to_string(x.size()) + " and y has length " +
                                    std::to_string(y.size()));
    }
    // Hx then squared norm; H^T H is never formed.
    double acc = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        const double* row = h.row_ptr(i);
        double hx = 0.0;
        for (std::size_t j = 0; j < h.cols(); ++j) hx += row[j] * x[j];
        const double r = hx - y[i];
        acc += r * r;
    }
    return acc;
}

AtsContext::AtsContext(DenseMatrix h, std::vector<double> y)
    : h_(std::move(h)), y_(std::move(y)) {
    if (y_.size() != h_.rows()) {
        throw std::invalid_argument("AtsContext: y length " + std::to_string(y_.size()) +
                                    " does not match H " + h_.shape_string());
    }
}

AtsContext::AtsContext(DenseMatrix h, std::vector<double> y, DenseMatrix sigma)
    : AtsContext(std::move(h), std::move(y)) {
    if (sigma.rows() != h_.cols() || sigma.cols() != h_.cols()) {
        throw std::invalid_argument("AtsContext: Sigma " + sigma.shape_string() +
                                    " does not match H " + h_.shape_string());
    }
    const double sym_err = (sigma - sigma.transposed()).frobenius_norm();
    if (sym_err > 1e-10 * (1.0 + sigma.frobenius_norm())) {
        throw std::invalid_argument("AtsContext: Sigma is not symmetric (asymmetry " +
                                    std::to_string(sym_err) + ")");
    }
    if (!sigma.empty()) {
        const auto eig = symmetric_eigen(sigma);
        const double lambda_max = eig.values.front();
        const double lambda_min = eig.values.back();
        if (lambda_min < -1e-10 * std::max(lambda_max, 0.0)) {
            throw std::invalid_argument("AtsContext: Sigma is not PSD (eigenvalue " +
                                        std::to_string(lambda_min) + ")");
        }
    }
    sigma_ = std::move(sigma);

    // M = H Sigma H^T; tr(M^2) = ||M||_F^2 since M is symmetric.
    const DenseMatrix hs = h_ * *sigma_;
    const DenseMatrix m = hs * h_.transposed();
    trace_m_ = m.trace();
    trace_m2_ = 0.0;
    for (double v : m.data()) trace_m2_ += v * v;

    double max_row_norm = 0.0;
    for (std::size_t i = 0; i < h_.rows(); ++i) {
        double s = 0.0;
        const double* row = h_.row_ptr(i);
        for (std::size_t j = 0; j < h_.cols(); ++j) s += row[j] * row[j];
        max_row_norm = std::max(max_row_norm, std::sqrt(s));
    }
    trace_floor_ = 1e-12 * static_cast<double>(h_.cols()) * sigma_->max_abs() *
                   max_row_norm * max_row_norm;
}

const DenseMatrix& AtsContext::sigma() const {
    if (!sigma_) throw std::logic_error("AtsContext: Sigma was not provided");
    return *sigma_;
}

double AtsContext::trace_m() const {
    require_traces();
    return trace_m_;
}

double AtsContext::trace_m2() const {
    require_traces();
    return trace_m2_;
}

void AtsContext::require_traces() const {
    if (!sigma_) {
        throw DegenerateStandardizationError("standardized variant requires Sigma");
    }
    if (trace_m_ <= trace_floor_ || trace_m2_ <= trace_floor_ * trace_floor_) {
        throw DegenerateStandardizationError(
            "degenerate standardization: tr(H Sigma H^T) = " + std::to_string(trace_m_));
    }
}

double AtsContext::ats(const std::vector<double>& x) const { return ats_value(x, h_, y_); }

double AtsContext::ats_s(const std::vector<double>& x) const {
    require_traces();
    return ats(x) / trace_m_;
}

double AtsContext::ats_f(const std::vector<double>& x) const {
    require_traces();
    return ats(x) / trace_m_ * (trace_m_ * trace_m_ / trace_m2_);
}

double AtsContext::eval(const std::vector<double>& x, Variant v) const {
    switch (v) {
        case Variant::ats: return ats(x);
        case Variant::ats_s: return ats_s(x);
        case Variant::ats_f: return ats_f(x);
    }
    throw std::logic_error("unreachable");
}

std::vector<double> AtsContext::batch_eval(const std::vector<std::vector<double>>& xs,
                                           Variant v) const {
    if (v != Variant::ats) require_traces();
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(eval(x, v));
    return out;
}

}  // namespace ats
