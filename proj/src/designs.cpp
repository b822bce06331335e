#include "ats/designs.hpp"

#include <random>
#include <stdexcept>

#include "ats/linalg.hpp"

namespace ats {
namespace designs {

Setting parse_setting(const std::string& label) {
    if (label == "A") return Setting::A;
    if (label == "B") return Setting::B;
    if (label == "C") return Setting::C;
    throw std::invalid_argument("unknown setting '" + label + "' (expected A|B|C)");
}

const char* setting_name(Setting s) {
    switch (s) {
        case Setting::A: return "A";
        case Setting::B: return "B";
        case Setting::C: return "C";
    }
    return "?";
}

std::size_t SettingSpec::d() const {
    switch (label) {
        case Setting::A: return 2 * size;
        case Setting::B: return 3 * size;
        case Setting::C: return size * (size + 1) / 2;
    }
    return 0;
}

DenseMatrix centering(std::size_t d) {
    if (d == 0) throw std::invalid_argument("centering: d must be >= 1");
    DenseMatrix p(d, d);
    const double off = -1.0 / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) p(i, j) = (i == j ? 1.0 + off : off);
    return p;
}

std::vector<double> diagonal_selector(std::size_t p) {
    std::vector<double> h(p * (p + 1) / 2, 0.0);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < p; ++i) {
        h[pos] = 1.0;        // position of v_ii in row-wise upper-triangle order
        pos += p - i;
    }
    return h;
}

Hypothesis setting_hypothesis(const SettingSpec& spec) {
    if (spec.label == Setting::C) {
        if (spec.size < 2) throw std::invalid_argument("setting C requires p >= 2");
        const std::size_t d = spec.d();
        const std::vector<double> hp = diagonal_selector(spec.size);
        DenseMatrix h(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) h(i, j) = hp[i] * hp[j];
        return Hypothesis(std::move(h), std::vector<double>(d, spec.gamma));
    }
    if (spec.size < 2) throw std::invalid_argument("settings A/B require q >= 2");
    const std::size_t q = spec.size;
    DenseMatrix h = (spec.label == Setting::A)
                        ? kronecker(centering(2), DenseMatrix::ones(q, q))
                        : kronecker(centering(3), DenseMatrix::identity(q));
    const std::size_t m = h.rows();
    return Hypothesis(std::move(h), std::vector<double>(m, 0.0));
}

std::vector<double> vech(const DenseMatrix& v) {
    if (v.rows() != v.cols()) {
        throw std::invalid_argument("vech: matrix " + v.shape_string() + " is not square");
    }
    const double asym = (v - v.transposed()).frobenius_norm();
    if (asym > 1e-10 * (1.0 + v.frobenius_norm())) {
        throw std::invalid_argument("vech: matrix is not symmetric (asymmetry " +
                                    std::to_string(asym) + ")");
    }
    const std::size_t p = v.rows();
    std::vector<double> out;
    out.reserve(p * (p + 1) / 2);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) out.push_back(v(i, j));
    return out;
}

DenseMatrix sample_compound_symmetry(std::size_t d, std::size_t n,
                                     const std::vector<double>& mean, std::uint64_t seed) {
    if (d == 0 || n == 0) throw std::invalid_argument("sample_compound_symmetry: d, n >= 1");
    if (!mean.empty() && mean.size() != d) {
        throw std::invalid_argument("sample_compound_symmetry: mean length " +
                                    std::to_string(mean.size()) + " != d " + std::to_string(d));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    DenseMatrix x(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const double shared = normal(rng);
        for (std::size_t j = 0; j < d; ++j) {
            x(i, j) = (mean.empty() ? 0.0 : mean[j]) + shared + normal(rng);
        }
    }
    return x;
}

DenseMatrix sample_covariance(const DenseMatrix& x) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (n < 2) throw std::invalid_argument("sample_covariance: need n >= 2 rows");
    std::vector<double> mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = x.row_ptr(i);
        for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
    }
    for (double& v : mean) v /= static_cast<double>(n);
    DenseMatrix cov(d, d);
    std::vector<double> c(d);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = x.row_ptr(i);
        for (std::size_t j = 0; j < d; ++j) c[j] = row[j] - mean[j];
        for (std::size_t j = 0; j < d; ++j) {
            const double cj = c[j];
            for (std::size_t k = j; k < d; ++k) cov(j, k) += cj * c[k];
        }
    }
    const double scale = 1.0 / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = j; k < d; ++k) {
            cov(j, k) *= scale;
            cov(k, j) = cov(j, k);
        }
    return cov;
}

}  // namespace designs
}  // namespace ats
