#include <doctest.h>

#include "amplitile/linalg.hpp"

using namespace amplitile;

namespace {
Matrix random_matrix(Rng& g, int r, int c) {
    Matrix M(r, c);
    for (auto& x : M.a) x = g.rational(7);
    return M;
}
}  // namespace

TEST_CASE("plucker basics") {
    Matrix I = identity(2);
    CHECK(plucker(I, {0, 1}) == 1);
    Rng g(3);
    for (int t = 0; t < 10; ++t) {
        Matrix M = random_matrix(g, 3, 6);
        CHECK(plucker(M, {0, 2, 4}) == -plucker(M, {2, 0, 4}));
        CHECK(plucker(M, {1, 1, 3}) == 0);
    }
    CHECK_THROWS(plucker(I, {0, 5}));
}

TEST_CASE("vandermonde positivity") {
    CHECK(all_maximal_minors_positive(vandermonde_Z(6, 1)));
    CHECK(all_maximal_minors_positive(vandermonde_Z(9, 2)));
    CHECK_THROWS(vandermonde({Q(1), Q(2), Q(2)}, 2));
}

TEST_CASE("twistor cauchy-binet") {
    Rng g(11);
    Matrix Z = vandermonde_Z(7, 2);
    for (int t = 0; t < 20; ++t) {
        Matrix C = random_matrix(g, 2, 7);
        if (rank(C) < 2) continue;
        Matrix Y = multiply(C, Z);
        std::vector<int> I = {0, 2, 3, 6};
        CHECK(twistor(Y, Z, I) == twistor_cauchy_binet(C, Z, I));
        CHECK(twistor(Y, Z, {2, 0, 3, 6}) == -twistor(Y, Z, I));
    }
    Matrix C0(0, 5);
    Matrix Z0 = vandermonde_Z(5, 0);
    Matrix Y0(0, 4);
    CHECK(twistor(Y0, Z0, {0, 1, 2, 3}) == minor_cols(transpose(Z0), {0, 1, 2, 3}));
}

TEST_CASE("cyc refl zero column transport") {
    Rng g(5);
    for (int k = 1; k <= 3; ++k)
        for (int n = k + 1; n <= 7; ++n) {
            Matrix M = random_matrix(g, k, n);
            Matrix R = M;
            for (int i = 0; i < n; ++i) R = cyc(R);
            CHECK(rowspan_equal(R, M));
            CHECK(rowspan_equal(refl(refl(M)), M));
        }
    Matrix M = random_matrix(g, 2, 4);
    Matrix C = cyc(M);
    CHECK(plucker(C, {1, 2}) == plucker(M, {0, 1}));
    Matrix P = insert_zero_columns(M, {2});
    CHECK(P.cols == 5);
    CHECK(plucker(P, {2, 3}) == 0);
    CHECK(plucker(P, {0, 4}) == plucker(M, {0, 3}));
}
