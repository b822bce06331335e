#pragma once

#include <cstdint>
#include <vector>

#include "ats/dense_matrix.hpp"
#include "ats/reduction.hpp"

namespace ats {
namespace designs {

enum class Setting { A, B, C };

Setting parse_setting(const std::string& label);
const char* setting_name(Setting s);

/// One simulation cell. Settings A/B take the per-group dimension q
/// (d = 2q resp. 3q); Setting C takes p (d = p(p+1)/2) and the trace
/// offset gamma.
struct SettingSpec {
    Setting label = Setting::A;
    std::size_t size = 2;   // q for A/B, p for C
    double gamma = 0.0;     // Setting C only

    std::size_t d() const;
};

/// P_d = I_d - J_d / d.
DenseMatrix centering(std::size_t d);

/// Diagonal-selector vector for the vech ordering: ones at the positions
/// of the diagonal entries, so h_p^T vech(V) = tr(V).
std::vector<double> diagonal_selector(std::size_t p);

/// A: (P_2 (x) J_q, 0); B: (P_3 (x) I_q, 0); C: (h_p h_p^T, gamma * 1_d).
Hypothesis setting_hypothesis(const SettingSpec& spec);

/// Upper-triangular row-wise half-vectorization:
/// (v_11,...,v_1p, v_22,...,v_2p, ..., v_pp).
std::vector<double> vech(const DenseMatrix& v);

/// n draws from N(mean, I_d + 1_d 1_d^T): each row is mean + z0 * 1_d + z
/// with z0 and z standard normal. Deterministic for a fixed seed
/// (mt19937_64 + std::normal_distribution; reproducible per platform).
DenseMatrix sample_compound_symmetry(std::size_t d, std::size_t n,
                                     const std::vector<double>& mean, std::uint64_t seed);

/// Unbiased sample covariance (divisor n - 1).
DenseMatrix sample_covariance(const DenseMatrix& x);

}  // namespace designs
}  // namespace ats
