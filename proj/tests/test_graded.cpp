#include "hcx/graded.hpp"
#include "hcx/xforms.hpp"

#include <doctest.h>

using namespace hcx;

namespace {

Complex one_dim(int degree) {
    Complex c;
    c.space.comps[degree] = {"u"};
    c.diff.shift = -1;
    c.trusted_hi = 10;
    return c;
}

// Even part k in weight 0, nothing else; X-type conventions.
SuperComplex unit_super(int cap, int s, int b0, int off) {
    SuperComplex p;
    p.kind = "unit";
    p.s = s;
    p.b0 = b0;
    p.off = off;
    p.resize(cap);
    p.dims[0][0] = 1;
    for (int t = 0; t < 2; ++t)
        for (int n = 0; n <= cap; ++n) {
            if (n >= 1) p.V[t][n] = SparseMatrix(p.dim(t, n - 1), p.dim(t, n));
            if (n + s <= cap) p.H[t][n] = SparseMatrix(p.dim(1 - t, n + s), p.dim(t, n));
        }
    return p;
}

}  // namespace

TEST_CASE("Koszul signs") {
    CHECK(koszul_sign({0, 1, 2}, {1, 3, 5}) == 1);
    CHECK(koszul_sign({1, 0}, {1, 1}) == -1);
    CHECK(koszul_sign({1, 0}, {1, 2}) == 1);
    CHECK(koszul_sign({2, 0, 1}, {1, 1, 1}) == 1);  // a 3-cycle of odd elements is even
    CHECK(koszul_pair_sign(3, 5) == -1);
    CHECK(koszul_pair_sign(2, 5) == 1);
}

TEST_CASE("tensor of complexes") {
    Complex x;
    x.space.comps[0] = {"a"};
    x.space.comps[1] = {"b"};
    x.diff.shift = -1;
    x.diff.blocks[1] = SparseMatrix::identity(1);
    x.trusted_hi = 10;
    Complex z = tensor(one_dim(0), x);
    CHECK(z.dim(0) == 1);
    CHECK(z.dim(1) == 1);
    CHECK(z.homology_dim(0) == 0);
    CHECK(z.first_square_failure() == -1);

    Complex w = tensor(one_dim(1), one_dim(1));
    CHECK(w.dim(2) == 1);
    CHECK(w.dim(1) == 0);
}

TEST_CASE("completed tensor with the unit leaves a supercomplex unchanged") {
    XComplex x = cc_of_algebra(builtin("dual_numbers"), 4);
    SuperComplex u = unit_super(4, x.P.s, x.P.b0, x.P.off);
    SuperComplex t = completed_tensor(u, x.P, 4);
    CHECK(t.check().empty());
    CHECK(t.dims == x.P.dims);
    for (int T = 0; T <= tower_trusted(t); ++T) CHECK(tower_homology_dim(t, T) == tower_homology_dim(x.P, T));

    SuperComplex t0 = completed_tensor(x.P, x.P, 0);
    CHECK(t0.cap == 0);
    CHECK(t0.dims[0][0] == x.P.dims[0][0] * x.P.dims[0][0] + x.P.dims[1][0] * x.P.dims[1][0]);
}

TEST_CASE("completed tensor of two X-complexes is a supercomplex") {
    XComplex a = cc_of_algebra(builtin("dual_numbers"), 4);
    XComplex b = cc_of_algebra(builtin("product_kk"), 4);
    SuperComplex t = completed_tensor(a.P, b.P, 4);
    CHECK(t.check().empty());
    for (int n = 0; n <= 4; ++n) {
        int even = 0;
        for (int k = 0; k <= n; ++k) even += a.P.dims[0][k] * b.P.dims[0][n - k] + a.P.dims[1][k] * b.P.dims[1][n - k];
        CHECK(t.dims[0][n] == even);
    }
}

TEST_CASE("towers of tiny supercomplexes") {
    // concentrated in a single spot: homology is that space
    SuperComplex p = unit_super(0, 1, 0, 0);
    CHECK(tower_dim(p, 0) == 1);
    CHECK(tower_homology_dim(p, 0) == 1);

    // weight 1 mapping isomorphically onto weight 0: acyclic
    SuperComplex q = unit_super(1, 1, 0, 0);
    q.dims[0][1] = 1;
    q.V[0][1] = SparseMatrix::identity(1);
    q.V[1][1] = SparseMatrix(0, 0);
    q.H[0][0] = SparseMatrix(q.dim(1, 1), 1);
    q.H[1][0] = SparseMatrix(1, 0);
    CHECK(q.check() == "");
    CHECK(tower_trusted(q) == 0);
    CHECK(tower_homology_dim(q, 0) == 0);
}
