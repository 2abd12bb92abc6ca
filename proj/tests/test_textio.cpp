#include "hcx/checks.hpp"
#include "hcx/textio.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace hcx;

namespace {

int error_line(const std::string& text) {
    try {
        parse_presentation(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

const char* head = "name = t\nkind = algebra\nfield = Q\nbasis = 1 x\ndegrees = 0 0\nunit = 1\n";

}  // namespace

TEST_CASE("exported builtins round-trip losslessly") {
    for (const auto& n : builtin_names()) {
        CAPTURE(n);
        auto r = text_round_trip(builtin(n));
        CHECK_MESSAGE(r.pass, (r.detail));
    }
}

TEST_CASE("dual_numbers file round-trips to identical constants") {
    Algebra a = builtin("dual_numbers");
    auto p = parse_presentation(to_text(a));
    const Algebra& b = std::get<Algebra>(p);
    CHECK(b.labels == a.labels);
    CHECK(b.aug == a.aug);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(b.m(i, j) == a.m(i, j));
}

TEST_CASE("rational coefficients are stored exactly") {
    std::string t = std::string(head) + "[mult]\n1 1 1 1\n1 x x 1\nx 1 x 1\nx x x 1/2\n";
    auto p = parse_presentation(t);
    const Algebra& a = std::get<Algebra>(p);
    REQUIRE(a.m(1, 1).size() == 1);
    CHECK(a.m(1, 1)[0].val == Scalar(1, 2));
    CHECK(a.m(1, 1)[0].val != Scalar(0.5000001));
    // 0-based indices work where they do not clash with a label
    auto p2 = parse_presentation(
        "name = t\nkind = algebra\nfield = Q\nbasis = u v\nunit = u\n[mult]\n0 0 0 1\n0 1 1 1\n1 0 1 1\n1 1 1 -6/4\n");
    CHECK(std::get<Algebra>(p2).m(1, 1)[0].val == Scalar(-3, 2));
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(error_line(std::string(head) + "colour = blue\n") == 7);
    CHECK(error_line(std::string(head) + "[mult]\n1 1 1 1\n1 x q 1\n") == 9);
    CHECK(error_line(std::string(head) + "[mult]\n1 1 1 0.5\n") == 8);
    CHECK(error_line(std::string(head) + "[mult]\n1 1 1 1/0\n") == 8);
    CHECK(error_line(std::string(head) + "[mult]\n1 1 1\n") == 8);
    CHECK(error_line(std::string(head) + "[tables]\n") == 7);
    CHECK(error_line("name = t\nkind = algebra\nfield = F2\nbasis = 1\nunit = 1\n") == 3);
    CHECK(error_line("name = t\nkind = algebra\nfield = Q\nbasis = 1\nunit = 1\nname = u\n") == 6);
    CHECK(error_line(std::string(head) + "counit = 1\n") == 7);
}

TEST_CASE("missing keys are parse errors") {
    CHECK_THROWS_AS(parse_presentation("name = t\nkind = algebra\nbasis = 1\nunit = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("kind = algebra\nfield = Q\nbasis = 1\nunit = 1\n"), ParseError);
}

TEST_CASE("non-associative table gives a ValidationError naming the triple") {
    std::string t =
        "name = broken\nkind = algebra\nfield = Q\nbasis = 1 x y\ndegrees = 0 0 0\nunit = 1\n[mult]\n"
        "1 1 1 1\n1 x x 1\n1 y y 1\nx 1 x 1\ny 1 y 1\nx x y 1\nx y x 1\n";
    try {
        validate(parse_presentation(t));
        FAIL("accepted a non-associative table");
    } catch (const ValidationError& e) {
        std::string msg = e.what();
        CHECK(msg.find("associativity") != std::string::npos);
        CHECK(msg.find("(x,x,x)") != std::string::npos);
    }
}

TEST_CASE("coalgebra files") {
    Coalgebra c = dualize(builtin("trunc_poly(3)"));
    auto p = parse_presentation(to_text(c));
    const Coalgebra& d = std::get<Coalgebra>(p);
    CHECK(d.labels == c.labels);
    CHECK(d.counit == c.counit);
    CHECK(to_text(d) == to_text(c));
    CHECK(validate_coalgebra(d).ok());
}

TEST_CASE("load_presentation takes files and builtin names") {
    std::string path = "hcx_textio_test.txt";
    {
        std::ofstream f(path);
        f << to_text(builtin("product_kk"));
    }
    auto p = load_presentation(path);
    CHECK(presentation_name(p) == "product_kk");
    std::remove(path.c_str());
    CHECK(std::get<Algebra>(load_presentation("k[eps]")).dim() == 2);
    CHECK_THROWS_AS(load_presentation("not_a_file_or_name"), ParseError);
}

TEST_CASE("bar coalgebras with bracketed labels round-trip") {
    Coalgebra c = bar(builtin("dual_numbers"), 3).coalg;
    std::string t = to_text(c);
    auto p = parse_presentation(t);
    const Coalgebra& d = std::get<Coalgebra>(p);
    CHECK(d.labels == c.labels);
    CHECK(d.deg == c.deg);
    CHECK(to_text(d) == t);
    CHECK(validate_coalgebra(d).ok());
}
