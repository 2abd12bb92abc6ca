#include "hcx/checks.hpp"
#include "hcx/twisting.hpp"

#include <doctest.h>

using namespace hcx;

TEST_CASE("the zero cochain is twisting and lifts to the counit") {
    auto b = bar(builtin("dual_numbers"), 3);
    TwistingCochain z{b.coalg, b.alg, SparseMatrix(b.alg.dim(), b.coalg.dim())};
    CHECK(is_twisting_cochain(z).ok);
    SparseMatrix L = lift(z, b);
    for (int j = 0; j < L.cols(); ++j) {
        if (j == b.coalg.counit)
            CHECK(L.col(j) == SparseVec{{0, Scalar(1)}});
        else
            CHECK(L.col(j).empty());
    }
}

TEST_CASE("universal cochain: twisting, lift = id, corestrict(id) = universal") {
    for (const auto& n : builtin_names()) {
        auto r = twisting_universal(builtin(n), 4);
        CHECK_MESSAGE(r.pass, (r.subject + ": " + r.detail));
    }
    auto b = bar(builtin("trunc_poly(3)"), 4);
    auto id = SparseMatrix::identity(b.coalg.dim());
    CHECK(lift(corestrict(id, b.coalg, b), b) == id);
}

TEST_CASE("round trip through the shuffle cochain") {
    for (auto [x, y] : std::vector<std::pair<std::string, std::string>>{
             {"dual_numbers", "ground_field"}, {"dual_numbers", "dual_numbers"}, {"product_kk", "ground_field"}}) {
        auto r = twisting_round_trip(builtin(x), builtin(y), 4);
        CHECK_MESSAGE(r.pass, (r.subject + ": " + r.detail));
    }
}

TEST_CASE("a rescaled universal cochain is rejected") {
    auto b = bar(builtin("dual_numbers"), 3);
    auto u = universal_cochain(b);
    u.map = u.map.scaled(2);
    auto chk = is_twisting_cochain(u);
    CHECK_FALSE(chk.ok);
    CHECK_FALSE(chk.witness.empty());
    CHECK_THROWS_AS(lift(u, b), NotATwistingCochain);
}

TEST_CASE("a cochain of the wrong degree is rejected") {
    auto b = bar(builtin("dual_numbers"), 2);
    auto u = universal_cochain(b);
    MatrixBuilder mb(b.alg.dim(), b.coalg.dim());
    mb.add(0, b.coalg.counit, 1L);
    u.map = mb.build();
    CHECK_FALSE(is_twisting_cochain(u).ok);
}

TEST_CASE("lift refuses to leave the target's cap") {
    auto big = bar(builtin("dual_numbers"), 4);
    auto small = bar(builtin("dual_numbers"), 2);
    auto u = universal_cochain(big);
    CHECK_THROWS_AS(lift_unchecked(u, small), std::out_of_range);
}
