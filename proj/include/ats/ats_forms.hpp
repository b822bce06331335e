#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ats/dense_matrix.hpp"

namespace ats {

struct DegenerateStandardizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Variant { ats, ats_s, ats_f };

const char* variant_name(Variant v);
Variant parse_variant(const std::string& name);

/// ||Hx - y||^2.
double ats_value(const std::vector<double>& x, const DenseMatrix& h,
                 const std::vector<double>& y);

/// Evaluation context binding H, y and (optionally) the covariance Sigma.
/// Builds M = H Sigma H^T once and caches tr(M) and tr(M^2); Sigma is
/// required for the standardized variants. Immutable after construction.
class AtsContext {
public:
    AtsContext(DenseMatrix h, std::vector<double> y);
    AtsContext(DenseMatrix h, std::vector<double> y, DenseMatrix sigma);

    const DenseMatrix& h() const { return h_; }
    const std::vector<double>& y() const { return y_; }
    bool has_sigma() const { return sigma_.has_value(); }
    const DenseMatrix& sigma() const;

    double trace_m() const;    // tr(H Sigma H^T)
    double trace_m2() const;   // tr((H Sigma H^T)^2)

    double ats(const std::vector<double>& x) const;
    double ats_s(const std::vector<double>& x) const;
    double ats_f(const std::vector<double>& x) const;
    double eval(const std::vector<double>& x, Variant v) const;

    std::vector<double> batch_eval(const std::vector<std::vector<double>>& xs, Variant v) const;

private:
    DenseMatrix h_;
    std::vector<double> y_;
    std::optional<DenseMatrix> sigma_;
    double trace_m_ = 0.0;
    double trace_m2_ = 0.0;
    double trace_floor_ = 0.0;

    void require_traces() const;
};

}  // namespace ats
