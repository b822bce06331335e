#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ats/dense_matrix.hpp"
#include "ats/linalg.hpp"
#include "test_support.hpp"

using namespace ats;
using test_support::random_matrix;
using test_support::random_vector;

namespace {

const DenseMatrix kH1{{1, -1, 0}, {0, 1, -1}, {1, 0, -1}};
const DenseMatrix kH2{{1, -1, 0}, {0, 1, -1}};

DenseMatrix reconstruct(const SvdResult& dec, std::size_t m, std::size_t d) {
    DenseMatrix out(m, d);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dec.singular_values.size(); ++k)
                acc += dec.u(i, k) * dec.singular_values[k] * dec.vt(k, j);
            out(i, j) = acc;
        }
    return out;
}

}  // namespace

TEST_CASE("DenseMatrix constructors reject bad input") {
    CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(DenseMatrix(1, 1, {INFINITY}), std::invalid_argument);
}

TEST_CASE("svd of identity and diagonal matrices") {
    const auto id = svd(DenseMatrix::identity(3));
    REQUIRE(id.singular_values.size() == 3);
    for (double s : id.singular_values) CHECK(s == doctest::Approx(1.0));

    const auto dg = svd(DenseMatrix{{3, 0}, {0, 0}});
    CHECK(dg.singular_values[0] == doctest::Approx(3.0));
    CHECK(dg.singular_values[1] == doctest::Approx(0.0));
}

TEST_CASE("svd of the pairwise-difference matrix") {
    // eigenvalues of H2 H2^T = [[2,-1],[-1,2]] are 3 and 1
    const auto dec = svd(kH2);
    CHECK(dec.singular_values[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(dec.singular_values[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("svd reconstruction and orthogonality on random matrices") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 40; ++it) {
        const std::size_t m = 1 + rng() % 20;
        const std::size_t d = 1 + rng() % 20;
        const DenseMatrix a = random_matrix(rng, m, d);
        const auto dec = svd(a);
        CHECK((reconstruct(dec, m, d) - a).frobenius_norm() <=
              1e-10 * (1.0 + a.frobenius_norm()));
        const DenseMatrix utu = dec.u.gram();
        CHECK((utu - DenseMatrix::identity(m)).frobenius_norm() < 1e-10 * (1.0 + std::sqrt(m)));
        const DenseMatrix vvt = dec.vt.transposed().gram();
        CHECK((vvt - DenseMatrix::identity(d)).frobenius_norm() < 1e-10 * (1.0 + std::sqrt(d)));
        for (std::size_t k = 1; k < dec.singular_values.size(); ++k)
            CHECK(dec.singular_values[k] <= dec.singular_values[k - 1]);
    }
}

TEST_CASE("numerical_rank") {
    CHECK(numerical_rank({3.0, 1.0}, 2, 3) == 2);
    CHECK(numerical_rank({1.0, 1.0, 0.0}, 3, 3) == 2);  // diag(1,1,0)
    CHECK(numerical_rank({0.0, 0.0}, 5, 2) == 0);
    CHECK(numerical_rank(DenseMatrix(4, 4)) == 0);
    CHECK(numerical_rank(kH1) == 2);
}

TEST_CASE("numerical_rank agrees between A and its Gram matrix") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 25; ++it) {
        const std::size_t m = 2 + rng() % 10;
        const std::size_t d = 2 + rng() % 10;
        const DenseMatrix a = random_matrix(rng, m, d);
        CHECK(numerical_rank(a) == numerical_rank(a.gram()));
    }
}

TEST_CASE("kronecker product") {
    CHECK(kronecker(DenseMatrix::identity(2), DenseMatrix::identity(3)) ==
          DenseMatrix::identity(6));

    const DenseMatrix p2{{0.5, -0.5}, {-0.5, 0.5}};
    const DenseMatrix j2 = DenseMatrix::ones(2, 2);
    const DenseMatrix k = kronecker(p2, j2);
    REQUIRE(k.rows() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(k(i, j) == doctest::Approx((i / 2 == j / 2 ? 0.5 : -0.5)));

    const DenseMatrix b{{1, 2}, {3, 4}};
    CHECK(kronecker(DenseMatrix{{2}}, b) == 2.0 * b);
}

TEST_CASE("kronecker mixed-product identity") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 10; ++it) {
        const DenseMatrix a = random_matrix(rng, 3, 2);
        const DenseMatrix b = random_matrix(rng, 2, 4);
        const DenseMatrix c = random_matrix(rng, 2, 3);
        const DenseMatrix d = random_matrix(rng, 4, 2);
        const DenseMatrix lhs = kronecker(a, b) * kronecker(c, d);
        const DenseMatrix rhs = kronecker(a * c, b * d);
        CHECK((lhs - rhs).frobenius_norm() < 1e-10 * (1.0 + rhs.frobenius_norm()));
    }
}

TEST_CASE("least_squares basics") {
    const auto id = least_squares(DenseMatrix::identity(2), {1.0, 2.0});
    CHECK(id.solution[0] == doctest::Approx(1.0));
    CHECK(id.solution[1] == doctest::Approx(2.0));
    CHECK(id.residual_norm == doctest::Approx(0.0));

    const auto proj = least_squares(DenseMatrix{{1}, {1}}, {1.0, 0.0});
    CHECK(proj.solution[0] == doctest::Approx(0.5));
    CHECK(proj.residual_norm == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("least_squares on a consistent system in the row space") {
    // b = H1^T y lies in Im(H1^T) = Im(L^T), so the system is consistent.
    const std::vector<double> y{1.0, 0.0, -1.0};
    const std::vector<double> b = kH1.transpose_times(y);
    CHECK(b[0] == doctest::Approx(0.0));
    CHECK(b[1] == doctest::Approx(-1.0));
    CHECK(b[2] == doctest::Approx(1.0));

    const SvdResult dec = svd(kH1);
    DenseMatrix lt(3, 2);  // L^T for the rank-2 compact root of H1
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t j = 0; j < 3; ++j) lt(j, k) = dec.singular_values[k] * dec.vt(k, j);
    const auto sol = least_squares(lt, b);
    CHECK(sol.residual_norm < 1e-10);
}

TEST_CASE("least_squares consistent-system residual property") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 25; ++it) {
        const std::size_t m = 2 + rng() % 8;
        const std::size_t d = 2 + rng() % 8;
        const DenseMatrix a = random_matrix(rng, m, d);
        const std::vector<double> x = random_vector(rng, d);
        const std::vector<double> b = a * x;  // consistent by construction
        const auto sol = least_squares(a, b);
        CHECK(sol.residual_norm < 1e-9 * (1.0 + norm2(b)));
    }
}

TEST_CASE("csv matrix round trip and errors") {
    std::stringstream good("1,2,3\n4,5.5,-6e-1\n");
    const DenseMatrix m = read_csv_matrix(good, "good");
    CHECK(m.rows() == 2);
    CHECK(m(1, 2) == doctest::Approx(-0.6));

    std::stringstream out;
    write_csv_matrix(out, m);
    std::stringstream back(out.str());
    CHECK(read_csv_matrix(back) == m);

    std::stringstream ragged("1,2\n3\n");
    CHECK_THROWS_WITH_AS(read_csv_matrix(ragged, "r"), doctest::Contains("ragged"),
                         std::runtime_error);
    std::stringstream junk("1,zebra\n");
    CHECK_THROWS_AS(read_csv_matrix(junk, "j"), std::runtime_error);
    std::stringstream empty("");
    CHECK_THROWS_AS(read_csv_matrix(empty, "e"), std::runtime_error);
}
