#include "hcx/kunneth.hpp"

#include <doctest.h>

using namespace hcx;

TEST_CASE("ground field pair") {
    auto rep = kunneth_verify(builtin("ground_field"), builtin("ground_field"), 4);
    CHECK(rep.verdict);
    CHECK(rep.stable);
    CHECK(rep.lo.tensor == std::array<int, 2>{1, 0});
    CHECK(rep.lo.cc12 == std::array<int, 2>{1, 0});
    CHECK(rep.lo.x2 == std::array<int, 2>{1, 0});

    auto k = build_pipeline(builtin("ground_field"), builtin("ground_field"), 4);
    auto h = s_hat_on_homology(k);
    CHECK(h.s_hat[0].rows() == 1);
    CHECK(h.s_hat[0].cols() == 1);
    CHECK_FALSE(h.s_hat[0].is_zero());
    CHECK(h.s_hat[1].rows() == 0);
    CHECK(h.s_hat[1].cols() == 0);
}

TEST_CASE("dual numbers with the ground field") {
    auto rep = kunneth_verify(builtin("dual_numbers"), builtin("ground_field"), 4);
    CHECK(rep.verdict);
    CHECK(rep.lo.cc12 == rep.lo.cc1);
    CHECK(rep.lo.rank_s_hat == rep.lo.cc12);
}

TEST_CASE("the square commutes on chains for the dual numbers pair") {
    auto k = build_pipeline(builtin("dual_numbers"), builtin("dual_numbers"), 4);
    CHECK(k.Sbar.is_chain_map(k.XX.P, k.XX12.P));
    CHECK(k.I.is_chain_map(k.X12.P, k.XX12.P));
    CHECK(k.P.is_chain_map(k.T, k.XX.P));
    auto r = kunneth_at_cap(builtin("dual_numbers"), builtin("dual_numbers"), 4);
    CHECK(r.square);
    CHECK(r.dim_identity);
    CHECK(r.pass);
}

TEST_CASE("product_kk pair has no cq pairing but still passes through P") {
    // at cap 4 the stable rank of X^2 at T = 2 is still short by one
    auto r4 = kunneth_at_cap(builtin("product_kk"), builtin("ground_field"), 4);
    CHECK_FALSE(r4.pass);
    CHECK(r4.error.find("H(I)") != std::string::npos);
    auto r = kunneth_at_cap(builtin("product_kk"), builtin("ground_field"), 5);
    CHECK_FALSE(r.cq_exists);
    CHECK_FALSE(r.cq_error.empty());
    CHECK(r.pass);
    CHECK(r.tensor == std::array<int, 2>{2, 0});
}

TEST_CASE("chain extension of a pinned identity") {
    auto k = build_pipeline(builtin("dual_numbers"), builtin("ground_field"), 3);
    const SuperComplex& p = k.X1.P;
    std::vector<FixedEntry> fixed;
    for (int t = 0; t < 2; ++t)
        for (int n = 0; n <= p.cap; ++n)
            for (int i = 0; i < p.dim(t, n); ++i)
                for (int j = 0; j < p.dim(t, n); ++j) fixed.push_back({t, n, i, j, Scalar(i == j ? 1 : 0)});
    SuperMap f = solve_chain_extension(p, p, fixed, "identity");
    for (int t = 0; t < 2; ++t)
        for (int n = 0; n <= p.cap; ++n) CHECK(f.F[t][n] == SparseMatrix::identity(p.dim(t, n)));
}
