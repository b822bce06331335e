#include <doctest.h>

#include <cmath>
#include <random>

#include "ats/ats_forms.hpp"
#include "test_support.hpp"

using namespace ats;
using test_support::random_vector;

namespace {
const DenseMatrix kH1{{1, -1, 0}, {0, 1, -1}, {1, 0, -1}};
const DenseMatrix kH2{{1, -1, 0}, {0, 1, -1}};
const std::vector<double> kX{1.0, 2.0, 3.0};
}  // namespace

TEST_CASE("plain ats worked examples") {
    CHECK(ats_value(kX, kH2, {0, 0}) == doctest::Approx(2.0));
    // H1 gives a different value for the same hypothesis
    CHECK(ats_value(kX, kH1, {0, 0, 0}) == doctest::Approx(6.0));
    // equal components satisfy the null exactly
    CHECK(ats_value({4, 4, 4}, kH1, {0, 0, 0}) == doctest::Approx(0.0));
}

TEST_CASE("ats dimension mismatch names both shapes") {
    CHECK_THROWS_AS(ats_value({1.0, 2.0}, kH2, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(AtsContext(kH2, {0.0}), std::invalid_argument);
}

TEST_CASE("standardized variants with identity covariance") {
    const AtsContext c2(kH2, {0, 0}, DenseMatrix::identity(3));
    CHECK(c2.ats_s(kX) == doctest::Approx(0.5));         // 2 / tr[[2,-1],[-1,2]]
    CHECK(c2.ats_f(kX) == doctest::Approx(0.8));         // 0.5 * 16 / 10
    const AtsContext c1(kH1, {0, 0, 0}, DenseMatrix::identity(3));
    CHECK(c1.ats_s(kX) == doctest::Approx(1.0));         // 6 / 6
}

TEST_CASE("ats_f equals ats_s for a rank-1 hypothesis matrix") {
    const DenseMatrix h{{1, 1, 0}, {2, 2, 0}};  // rank 1
    std::mt19937_64 rng(3);
    const AtsContext ctx(h, {0, 0}, test_support::random_spd(rng, 3));
    const auto x = random_vector(rng, 3);
    CHECK(ctx.ats_f(x) == doctest::Approx(ctx.ats_s(x)).epsilon(1e-12));
}

TEST_CASE("zero covariance is rejected") {
    CHECK_THROWS_AS(AtsContext(kH2, {0, 0}, DenseMatrix(3, 3)).ats_s(kX),
                    DegenerateStandardizationError);
}

TEST_CASE("Sigma validation") {
    DenseMatrix asym = DenseMatrix::identity(3);
    asym(0, 1) = 0.5;
    CHECK_THROWS_AS(AtsContext(kH2, {0, 0}, asym), std::invalid_argument);

    DenseMatrix indef = DenseMatrix::identity(3);
    indef(2, 2) = -1.0;
    CHECK_THROWS_AS(AtsContext(kH2, {0, 0}, indef), std::invalid_argument);
}

TEST_CASE("nonnegativity and zero-iff-on-hypothesis") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 50; ++it) {
        const std::size_t m = 1 + rng() % 6;
        const std::size_t d = 1 + rng() % 6;
        const DenseMatrix h = test_support::random_matrix(rng, m, d);
        const auto x = random_vector(rng, d);
        const auto y = random_vector(rng, m);
        const double v = ats_value(x, h, y);
        CHECK(v >= 0.0);
        // on-hypothesis input: y = Hx exactly
        CHECK(ats_value(x, h, h * x) <= 1e-10 * (1.0 + norm2(h * x)));
    }
}

TEST_CASE("unit-change robustness of the standardized variants") {
    std::mt19937_64 rng(9);
    for (double c : {2.0, -3.5, 1e-3, 400.0}) {
        const DenseMatrix h = test_support::random_matrix(rng, 4, 5);
        const auto y = random_vector(rng, 4);
        const auto x = random_vector(rng, 5);
        const DenseMatrix sigma = test_support::random_spd(rng, 5);
        const AtsContext base(h, y, sigma);

        DenseMatrix ch = c * h;
        std::vector<double> cy = y;
        for (double& v : cy) v *= c;
        const AtsContext scaled(ch, cy, sigma);

        CHECK(test_support::rel_err(scaled.ats_s(x), base.ats_s(x)) < 1e-12);
        CHECK(test_support::rel_err(scaled.ats_f(x), base.ats_f(x)) < 1e-12);
    }
}

TEST_CASE("batch_eval matches single evaluation bitwise") {
    std::mt19937_64 rng(21);
    const DenseMatrix sigma = test_support::random_spd(rng, 3);
    const AtsContext ctx(kH2, {0.5, -0.25}, sigma);

    std::vector<std::vector<double>> xs;
    for (int i = 0; i < 7; ++i) xs.push_back(random_vector(rng, 3));
    for (Variant v : {Variant::ats, Variant::ats_s, Variant::ats_f}) {
        const auto batch = ctx.batch_eval(xs, v);
        REQUIRE(batch.size() == xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) CHECK(batch[i] == ctx.eval(xs[i], v));
    }

    CHECK(ctx.batch_eval({}, Variant::ats).empty());
    const auto same = ctx.batch_eval({xs[0], xs[0], xs[0]}, Variant::ats_s);
    CHECK(same[0] == same[1]);
    CHECK(same[1] == same[2]);
}

TEST_CASE("Monte-Carlo mean of ats_s under the standard normal") {
    // E ATS_s = E ||H2 x||^2 / tr(H2 H2^T) = 1 for x ~ N(0, I3);
    // Var(x^T G x) = 2 tr(G^2) = 20, so SE = sqrt(20/16/n).
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> normal(0.0, 1.0);
    const AtsContext ctx(kH2, {0, 0}, DenseMatrix::identity(3));
    const std::size_t n = 5000;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x(3);
        for (double& v : x) v = normal(rng);
        sum += ctx.ats_s(x);
    }
    const double mean = sum / static_cast<double>(n);
    const double se = std::sqrt(1.25 / static_cast<double>(n));
    CHECK(std::fabs(mean - 1.0) < 3.0 * se);
}
