#include "hcx/barcobar.hpp"
#include "hcx/checks.hpp"

#include <doctest.h>

#include <functional>

using namespace hcx;

TEST_CASE("bar dimensions") {
    for (const auto& n : builtin_names()) {
        Algebra a = builtin(n);
        auto b = bar(a, 4);
        int expect = 0, p = 1;
        for (int k = 0; k <= 4; ++k, p *= a.dim()) expect += p;
        CHECK(b.coalg.dim() == expect);
        CHECK(b.words[0].empty());
        CHECK(b.coalg.counit == 0);
        for (int i = 0; i < b.coalg.dim(); ++i) CHECK(b.coalg.deg[i] == static_cast<int>(b.words[i].size()));
    }
}

TEST_CASE("bar of every builtin squares to zero up to weight 6") {
    for (const auto& n : builtin_names())
        for (int w = 0; w <= 6; ++w) {
            auto r = bar_square_zero(builtin(n), w);
            CHECK_MESSAGE(r.pass, (r.subject + ": " + r.detail));
        }
}

TEST_CASE("bar coalgebras validate") {
    for (const auto& n : builtin_names()) {
        CHECK(validate_coalgebra(bar(builtin(n), 3).coalg).ok());
        CHECK(validate_coalgebra(normalized_bar(builtin(n), 3).coalg).ok());
    }
}

TEST_CASE("normalized bar uses the augmentation ideal") {
    for (const auto& n : builtin_names()) {
        Algebra a = builtin(n);
        auto b = normalized_bar(a, 4);
        int expect = 0, p = 1;
        for (int k = 0; k <= 4; ++k, p *= a.dim() - 1) expect += p;
        CHECK(b.coalg.dim() == expect);
        CHECK(b.normalized);
        auto sq = b.differential() * b.differential();
        CHECK(sq.is_zero());
    }
    // product_kk needs a change of basis; the adapted f has augmentation 0
    Algebra ad = augmentation_adapted(builtin("product_kk"));
    CHECK((*ad.aug)[1] == 0);
    CHECK(validate_algebra(ad).ok());
}

TEST_CASE("cobar of the trivial coalgebra is k") {
    Coalgebra k = dualize(builtin("ground_field"));
    auto c = cobar(k, 5);
    CHECK(c.words.size() == 1);
    CHECK(c.words[0].empty());
    CHECK(c.differential().is_zero());
}

TEST_CASE("cobar squares to zero on bar coalgebras") {
    for (const auto& n : builtin_names())
        for (int L = 0; L <= 4; ++L) {
            auto r = cobar_square_zero(bar(builtin(n), L).coalg, L);
            CHECK_MESSAGE(r.pass, (r.subject + ": " + r.detail));
        }
}

TEST_CASE("cobar rejects coalgebras that are not connected") {
    CHECK_THROWS_AS(cobar(dualize(builtin("dual_numbers")), 3), NonConnected);
}

// (B^c C)_n = sum over r and i_1 + ... + i_r = n + r of C_{i_1} (x) ... (x) C_{i_r},
// with i_j >= 1; here also cut at sum i_j <= L.
TEST_CASE("cobar degree count") {
    auto b = bar(builtin("dual_numbers"), 4);
    const int L = 4;
    auto c = cobar(b.coalg, L);
    std::vector<int> dimC(L + 1, 0);
    for (int i = 0; i < b.coalg.dim(); ++i)
        if (b.coalg.deg[i] <= L) dimC[b.coalg.deg[i]]++;
    std::map<int, long> formula;
    std::function<void(int, int, long)> grow = [&](int r, int load, long count) {
        formula[load - r] += count;
        for (int i = 1; load + i <= L; ++i)
            if (dimC[i]) grow(r + 1, load + i, count * dimC[i]);
    };
    grow(0, 0, 1);
    std::map<int, long> counted;
    for (int d : c.deg) counted[d]++;
    CHECK(counted == formula);
}
