#include "hcx/exactlin.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace hcx;

namespace {

SparseMatrix from_dense(const std::vector<std::vector<long>>& rows) {
    int r = static_cast<int>(rows.size()), c = r ? static_cast<int>(rows[0].size()) : 0;
    MatrixBuilder mb(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (rows[i][j]) mb.add(i, j, rows[i][j]);
    return mb.build();
}

SparseMatrix random_matrix(std::mt19937& rng, int r, int c, int density_pct) {
    std::uniform_int_distribution<int> pct(0, 99), val(-3, 3);
    MatrixBuilder mb(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (pct(rng) < density_pct) mb.add(i, j, static_cast<long>(val(rng)));
    return mb.build();
}

oracle::Dense to_dense(const SparseMatrix& m) {
    oracle::Dense d(m.rows(), std::vector<mpq_class>(m.cols(), 0));
    for (int j = 0; j < m.cols(); ++j)
        for (const auto& e : m.col(j)) d[e.idx][j] = e.val;
    return d;
}

}  // namespace

TEST_CASE("rank of identity and zero") {
    CHECK(rank(SparseMatrix::identity(2)) == 2);
    CHECK(rank(SparseMatrix(3, 4)) == 0);
}

TEST_CASE("kernel and image of trivial cases") {
    CHECK(kernel_basis(SparseMatrix::identity(2)).dim() == 0);
    CHECK(kernel_basis(SparseMatrix(2, 3)).dim() == 3);
    CHECK(image_basis(SparseMatrix::identity(2)).dim() == 2);
    CHECK(image_basis(SparseMatrix(2, 2)).dim() == 0);
}

TEST_CASE("homology of tiny complexes") {
    CHECK(homology_dim(SparseMatrix(2, 0), SparseMatrix(0, 2)) == 2);
    CHECK(homology_dim(SparseMatrix::identity(2), SparseMatrix(0, 2)) == 0);
    CHECK(homology_dim(SparseMatrix(1, 1), SparseMatrix(1, 1)) == 1);
}

TEST_CASE("induced maps of identity and zero") {
    SparseMatrix din(2, 0), dout(0, 2);
    Homology h = homology(din, dout);
    CHECK(induced_on_homology(SparseMatrix::identity(2), h, h) == SparseMatrix::identity(2));
    CHECK(induced_on_homology(SparseMatrix(2, 2), h, h).is_zero());
}

TEST_CASE("solve") {
    SparseVec b{{0, Scalar(3)}, {1, Scalar(-1, 2)}};
    auto x = solve(SparseMatrix::identity(2), b);
    REQUIRE(x);
    CHECK(*x == b);
    CHECK_FALSE(solve(SparseMatrix(2, 2), b));
}

TEST_CASE("exact rationals survive elimination") {
    // [[1/3, 1/2], [2/3, 1]] has rank 1
    MatrixBuilder mb(2, 2);
    mb.add(0, 0, Scalar(1, 3));
    mb.add(0, 1, Scalar(1, 2));
    mb.add(1, 0, Scalar(2, 3));
    mb.add(1, 1, Scalar(1));
    CHECK(rank(mb.build()) == 1);
}

TEST_CASE("property: rank agrees with a dense reference and rank-nullity holds") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 60; ++trial) {
        int r = 1 + trial % 7, c = 1 + (trial * 5) % 9;
        SparseMatrix m = random_matrix(rng, r, c, 20 + (trial % 5) * 15);
        int rk = rank(m);
        CHECK(rk == oracle::dense_rank(to_dense(m)));
        SubspaceBasis k = kernel_basis(m);
        CHECK(rk + k.dim() == c);
        CHECK((m * k.inclusion()).is_zero());
        CHECK(image_basis(m).dim() == rk);
    }
}

TEST_CASE("property: solve returns a true solution when one exists") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        SparseMatrix a = random_matrix(rng, 5, 4, 50);
        SparseMatrix x0 = random_matrix(rng, 4, 1, 60);
        SparseVec b = (a * x0).col(0);
        auto x = solve(a, b);
        REQUIRE(x);
        CHECK(a.apply(*x) == b);
    }
}

TEST_CASE("property: homology of d with d^2 = 0 built as a product") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        // d2 spans ker d1, so the middle homology vanishes
        SparseMatrix d1 = random_matrix(rng, 4, 6, 40);
        SubspaceBasis k = kernel_basis(d1);
        SparseMatrix d2 = k.inclusion();
        int h = homology_dim(d2, d1);
        CHECK(h == 0);
        CHECK(homology_dim(SparseMatrix(6, 0), d1) == k.dim());
    }
}

TEST_CASE("subspace coordinates") {
    SparseMatrix m = from_dense({{1, 0}, {1, 1}, {0, 1}});
    SubspaceBasis im = image_basis(m);
    SparseVec v = m.col(0);
    auto c = im.try_coords(v);
    REQUIRE(c);
    CHECK(im.inclusion().apply(*c) == v);
    CHECK_FALSE(im.try_coords(SparseVec{{0, Scalar(1)}}));
}
