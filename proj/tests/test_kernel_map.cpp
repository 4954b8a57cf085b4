#include <doctest.h>

#include <cmath>

#include "tsne/kernel_map.hpp"
#include "tsne/rng.hpp"

using namespace tsne;

namespace {

Matrix random_matrix(std::size_t n, std::size_t d, std::uint64_t seed) {
    Pcg32 rng(seed);
    Matrix m(n, d);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.next_gaussian();
    return m;
}

} // namespace

TEST_CASE("widths are gamma times the nearest-neighbor distance") {
    // Points 0, 1, 3 on a line: nearest distances 1, 1, 2.
    Matrix x{{0.0}, {1.0}, {3.0}};
    std::vector<double> w = kernel_widths(x, 0.5);
    REQUIRE(w.size() == 3);
    CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("coincident training points are named in the error") {
    Matrix x{{1.0, 2.0}, {0.0, 0.0}, {1.0, 2.0}};
    CHECK_THROWS_WITH_AS((void)kernel_widths(x, 0.5), doctest::Contains("0"), DataError);
    CHECK_THROWS_WITH_AS((void)kernel_widths(x, 0.5), doctest::Contains("2"), DataError);
    CHECK_THROWS_AS((void)kernel_widths(x, 0.0), DataError); // gamma must be positive
}

TEST_CASE("kernel rows are normalized and stable under extreme widths") {
    Matrix train = random_matrix(6, 3, 3);
    Matrix queries = random_matrix(4, 3, 5);
    for (double gamma : {1e-6, 0.5, 1e6}) {
        std::vector<double> w = kernel_widths(train, gamma);
        Matrix k = build_kernel_rows(queries, train, w);
        REQUIRE(k.rows() == 4);
        REQUIRE(k.cols() == 6);
        for (std::size_t i = 0; i < k.rows(); ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < k.cols(); ++j) {
                CHECK(std::isfinite(k(i, j)));
                CHECK(k(i, j) >= 0.0);
                sum += k(i, j);
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("a single training point maps every query to its embedding") {
    Matrix train{{2.0, 3.0}};
    Matrix emb{{7.0, -1.0}};
    KernelMap map = fit(train, emb);
    REQUIRE(map.widths.size() == 1);
    CHECK(map.widths[0] == 1.0);
    Matrix out = transform(map, Matrix{{100.0, -4.0}, {2.0, 3.0}});
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(out(i, 0) == doctest::Approx(7.0).epsilon(1e-15));
        CHECK(out(i, 1) == doctest::Approx(-1.0).epsilon(1e-15));
    }
}

TEST_CASE("the fitted map reproduces the training embedding") {
    Matrix train = random_matrix(12, 4, 7);
    Matrix emb = random_matrix(12, 2, 9);
    KernelMap map = fit(train, emb);
    CHECK_FALSE(map.rank_deficient);
    Matrix out = transform(map, train);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < emb.size(); ++i) {
        double d = out.data()[i] - emb.data()[i];
        num += d * d;
        den += emb.data()[i] * emb.data()[i];
    }
    CHECK(std::sqrt(num / den) < 1e-6);
}

TEST_CASE("the fit satisfies the normal equations") {
    // At a least-squares optimum, K^T (K A - E) vanishes; with residual r =
    // K A - E that is an h x n system of orthogonality conditions.
    Matrix train = random_matrix(10, 3, 11);
    Matrix emb = random_matrix(10, 2, 13);
    KernelMap map = fit(train, emb);
    Matrix k = build_kernel_rows(train, train, map.widths);
    const std::size_t n = 10, h = 2;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < h; ++l) {
            double v = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double pred = 0.0;
                for (std::size_t m = 0; m < n; ++m) pred += k(i, m) * map.coeffs(m, l);
                v += k(i, j) * (pred - emb(i, l));
            }
            CHECK(std::abs(v) < 1e-8);
        }
}

TEST_CASE("an all-uniform kernel matrix is flagged as rank deficient") {
    // A huge gamma washes out the distances: every kernel row becomes 1/n,
    // the matrix has rank one, and the solver must say so while still
    // returning a usable minimum-norm fit.
    Matrix train = random_matrix(8, 3, 17);
    Matrix emb = random_matrix(8, 2, 19);
    KernelMap map = fit(train, emb, /*gamma=*/1e9);
    CHECK(map.rank_deficient);
    Matrix out = transform(map, train);
    CHECK(out.all_finite());
    // Best rank-one approximation of the embedding: every output row is the
    // column mean.
    for (std::size_t l = 0; l < 2; ++l) {
        double mean = 0.0;
        for (std::size_t i = 0; i < 8; ++i) mean += emb(i, l) / 8.0;
        for (std::size_t i = 0; i < 8; ++i)
            CHECK(out(i, l) == doctest::Approx(mean).epsilon(1e-9));
    }
}

TEST_CASE("training order does not matter") {
    Matrix train = random_matrix(9, 3, 23);
    Matrix emb = random_matrix(9, 2, 29);
    Matrix queries = random_matrix(5, 3, 31);

    // Reverse the training rows; the fitted function must be the same.
    Matrix rtrain(9, 3), remb(9, 2);
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = 0; j < 3; ++j) rtrain(i, j) = train(8 - i, j);
        for (std::size_t j = 0; j < 2; ++j) remb(i, j) = emb(8 - i, j);
    }
    Matrix a = transform(fit(train, emb), queries);
    Matrix b = transform(fit(rtrain, remb), queries);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.data()[i] == doctest::Approx(b.data()[i]).epsilon(1e-9));
}

TEST_CASE("shape mismatches are rejected") {
    Matrix train = random_matrix(5, 3, 37);
    Matrix emb = random_matrix(4, 2, 41);
    CHECK_THROWS_AS((void)fit(train, emb), DataError);
    KernelMap map = fit(train, random_matrix(5, 2, 43));
    CHECK_THROWS_AS((void)transform(map, random_matrix(3, 2, 47)), DataError);
}
