#include "hcx/presentations.hpp"

#include <doctest.h>

using namespace hcx;

namespace {

const AxiomCheck* failing(const ValidationReport& r, const std::string& axiom) {
    for (const auto& c : r.checks)
        if (c.axiom == axiom && !c.pass) return &c;
    return nullptr;
}

Coalgebra trivial_coalgebra() {
    Coalgebra c;
    c.name = "k";
    c.labels = {"1"};
    c.deg = {0};
    c.weight = {0};
    c.counit = 0;
    c.comult = {{{0, 0, Scalar(1)}}};
    return c;
}

}  // namespace

TEST_CASE("every builtin validates") {
    for (const auto& n : builtin_names()) {
        CAPTURE(n);
        auto r = validate_algebra(builtin(n));
        CHECK(r.ok());
        CHECK(validate_coalgebra(dualize(builtin(n))).ok());
    }
}

TEST_CASE("builtin dimensions and relations") {
    CHECK(builtin("ground_field").dim() == 1);
    Algebra e = builtin("dual_numbers");
    CHECK(e.dim() == 2);
    CHECK(e.m(1, 1).empty());
    Algebra t = builtin("trunc_poly(3)");
    CHECK(t.dim() == 3);
    CHECK(t.mul(t.mul({{1, 1}}, {{1, 1}}), {{1, 1}}).empty());
    CHECK_FALSE(t.mul({{1, 1}}, {{1, 1}}).empty());
    CHECK(builtin("trunc_poly(5)").dim() == 5);
    CHECK(builtin("k[e]").dim() == 2);
    CHECK(builtin("kxk").dim() == 2);
    CHECK_THROWS_AS(builtin("no_such_algebra"), UnknownName);
}

TEST_CASE("planted associativity defect is caught with a witness") {
    Algebra a = builtin("trunc_poly(3)");
    // x * x^2 = x^2 instead of 0 breaks (x x) x^2 = x (x x^2) only on one side
    a.set_mult(1, 2, {{2, Scalar(1)}});
    auto r = validate_algebra(a);
    CHECK_FALSE(r.ok());
    auto* f = failing(r, "associativity");
    REQUIRE(f);
    CHECK(f->witness.front() == '(');
}

TEST_CASE("planted unit and differential defects") {
    Algebra a = builtin("dual_numbers");
    a.set_mult(0, 1, {{0, Scalar(1)}});
    CHECK(failing(validate_algebra(a), "unit"));

    // exterior algebra on e with d(e) = 1 is a valid (acyclic) DG algebra
    Algebra b = builtin("dual_numbers");
    b.aug.reset();
    b.deg = {0, 1};
    b.diff = {{}, {{0, Scalar(1)}}};
    CHECK(validate_algebra(b).ok());
    b.diff = {{}, {{1, Scalar(1)}}};
    CHECK(failing(validate_algebra(b), "differential degree"));

    // {1, e, f} in degrees 0, 1, 1 with zero products and d(e) = 1:
    // d(e f) = 0 but d(e) f - e d(f) = f
    Algebra c;
    c.name = "leibniz_defect";
    c.labels = {"1", "e", "f"};
    c.deg = {0, 1, 1};
    for (int i = 0; i < 3; ++i) {
        c.set_mult(0, i, {{i, Scalar(1)}});
        c.set_mult(i, 0, {{i, Scalar(1)}});
    }
    c.diff = {{}, {{0, Scalar(1)}}, {}};
    CHECK(failing(validate_algebra(c), "Leibniz"));
}

TEST_CASE("trivial coalgebra and a planted coassociativity defect") {
    CHECK(validate_coalgebra(trivial_coalgebra()).ok());
    Coalgebra c = dualize(builtin("trunc_poly(3)"));
    // a stray x1* (x) x2* term in Delta(x2*)
    c.comult[2].push_back({1, 2, Scalar(1)});
    auto r = validate_coalgebra(c);
    CHECK_FALSE(r.ok());
    CHECK(failing(r, "coassociativity"));
}

TEST_CASE("tensoring with the ground field changes nothing") {
    for (const auto& n : builtin_names()) {
        Algebra a = builtin(n), t = tensor_algebras(builtin("ground_field"), a);
        REQUIRE(t.dim() == a.dim());
        CHECK(t.unit == a.unit);
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) CHECK(t.m(i, j) == a.m(i, j));
    }
}

TEST_CASE("dualize and dual_algebra are inverse on constants") {
    Coalgebra k = dualize(builtin("ground_field"));
    CHECK(k.dim() == 1);
    CHECK(k.comult[0].size() == 1);
    for (const auto& n : builtin_names()) {
        Algebra a = builtin(n), b = dual_algebra(dualize(a));
        CHECK(b.unit == a.unit);
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) CHECK(b.m(i, j) == a.m(i, j));
    }
}
