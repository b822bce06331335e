#include <doctest.h>

#include <cmath>
#include <random>

#include "ats/designs.hpp"
#include "ats/linalg.hpp"
#include "test_support.hpp"

using namespace ats;
using namespace ats::designs;

TEST_CASE("centering matrix") {
    const DenseMatrix p2 = centering(2);
    CHECK((p2 - DenseMatrix{{0.5, -0.5}, {-0.5, 0.5}}).frobenius_norm() < 1e-15);

    const DenseMatrix p5 = centering(5);
    CHECK((p5 - p5.transposed()).frobenius_norm() == 0.0);
    CHECK((p5 * p5 - p5).frobenius_norm() < 1e-14);
    CHECK(numerical_rank(p5) == 4);
    CHECK(norm2(p5 * std::vector<double>(5, 1.0)) < 1e-14);

    CHECK(centering(1)(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("setting hypothesis shapes") {
    const Hypothesis a = setting_hypothesis({Setting::A, 5, 0.0});
    CHECK(a.m() == 10);
    CHECK(a.d() == 10);
    CHECK(norm2(a.y) == 0.0);

    const Hypothesis b = setting_hypothesis({Setting::B, 5, 0.0});
    CHECK(b.m() == 15);
    CHECK(b.d() == 15);

    const Hypothesis c = setting_hypothesis({Setting::C, 5, 1.0});
    CHECK(c.m() == 15);
    CHECK(c.d() == 15);
    for (double v : c.y) CHECK(v == 1.0);

    CHECK_THROWS_AS(setting_hypothesis({Setting::A, 1, 0.0}), std::invalid_argument);
}

TEST_CASE("diagonal selector positions") {
    // p = 5: ones at vech positions 1, 6, 10, 13, 15 (1-based)
    const auto h5 = diagonal_selector(5);
    REQUIRE(h5.size() == 15);
    for (std::size_t i = 0; i < 15; ++i) {
        const bool diag = (i == 0 || i == 5 || i == 9 || i == 12 || i == 14);
        CHECK(h5[i] == (diag ? 1.0 : 0.0));
    }
}

TEST_CASE("setting ranks drive the reduced row counts") {
    for (std::size_t q : {2, 5, 10}) {
        CHECK(numerical_rank(setting_hypothesis({Setting::A, q, 0.0}).h) == 1);
        CHECK(numerical_rank(setting_hypothesis({Setting::B, q, 0.0}).h) == 2 * q);
    }
    for (std::size_t p : {2, 5, 8}) {
        CHECK(numerical_rank(setting_hypothesis({Setting::C, p, 1.0}).h) == 1);
    }
}

TEST_CASE("vech ordering") {
    const auto vi = vech(DenseMatrix::identity(2));
    CHECK(vi == std::vector<double>{1, 0, 1});
    CHECK(vech(DenseMatrix{{1, 2}, {2, 3}}) == std::vector<double>{1, 2, 3});
    CHECK_THROWS_AS(vech(DenseMatrix{{1, 2}, {0, 3}}), std::invalid_argument);
}

TEST_CASE("h_p^T vech(V) = tr(V) and the Setting C identity") {
    std::mt19937_64 rng(31);
    for (std::size_t p : {2, 3, 5}) {
        DenseMatrix v = test_support::random_matrix(rng, p, p);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < i; ++j) v(j, i) = v(i, j);
        const auto w = vech(v);
        const auto hp = diagonal_selector(p);
        double dot = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) dot += hp[i] * w[i];
        CHECK(dot == doctest::Approx(v.trace()).epsilon(1e-12));

        // H vech(V) = tr(V) * h_p for the outer-product hypothesis matrix
        const Hypothesis c = setting_hypothesis({Setting::C, p, 0.0});
        const auto hv = c.h * w;
        for (std::size_t i = 0; i < hv.size(); ++i)
            CHECK(hv[i] == doctest::Approx(v.trace() * hp[i]).epsilon(1e-12));
    }
}

TEST_CASE("compound symmetry sampler moments") {
    const std::size_t n = 10000;
    const std::size_t d = 5;
    const DenseMatrix x = sample_compound_symmetry(d, n, {}, 99);
    const DenseMatrix cov = sample_covariance(x);
    // Cov = I + 11^T: diagonal 2, off-diagonal 1. SE of a covariance entry
    // is about sqrt((c_ii c_jj + c_ij^2)/n) <= sqrt(8/n).
    const double se = std::sqrt(8.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double want = (i == j) ? 2.0 : 1.0;
            CHECK(std::fabs(cov(i, j) - want) < 5.0 * se);
        }
}

TEST_CASE("sampler mean shift and determinism") {
    const std::vector<double> mean(4, 1.0);
    const DenseMatrix a = sample_compound_symmetry(4, 5000, mean, 7);
    double avg = 0.0;
    for (double v : a.data()) avg += v;
    avg /= static_cast<double>(a.size());
    CHECK(std::fabs(avg - 1.0) < 0.1);

    CHECK(a == sample_compound_symmetry(4, 5000, mean, 7));
    CHECK(a != sample_compound_symmetry(4, 5000, mean, 8));
}

TEST_CASE("sample covariance basics") {
    const DenseMatrix same(2, 3, {1, 2, 3, 1, 2, 3});
    CHECK(sample_covariance(same).frobenius_norm() == doctest::Approx(0.0));

    const DenseMatrix two(2, 2, {0, 0, 2, 0});
    const DenseMatrix cov = sample_covariance(two);
    CHECK(cov(0, 0) == doctest::Approx(2.0));
    CHECK(cov(0, 1) == doctest::Approx(0.0));
    CHECK(cov(1, 1) == doctest::Approx(0.0));

    CHECK_THROWS_AS(sample_covariance(DenseMatrix(1, 3)), std::invalid_argument);
}
