// Parser and printer for elements of Q(t)(x): grammar coverage, error
// reporting, frozen output formats, and print/parse round trips.
#include <catch2/catch_amalgamated.hpp>

#include "ftel/expr.hpp"
#include "test_util.hpp"

using namespace ftel;

TEST_CASE("parser handles the grammar") {
    const XPoly x = XPoly::gen();
    const K t = k_t();

    CHECK(parse_xrat("x^2 + 2*x + 1") == XRat((x + 1) * (x + 1)));
    CHECK(parse_xrat("-x^2") == XRat(-(x * x)));
    CHECK(parse_xrat("1/2*t") == XRat(XPoly(t * K(TPoly(Rat(1, 2))))));
    CHECK(parse_xrat("t^-1") == XRat(XPoly(t.inv())));
    CHECK(parse_xrat("2^3") == XRat(XPoly(K(TPoly(Rat(8))))));
    CHECK(parse_xrat("(x+1)/(x-1)") == XRat(x + 1, x - 1));
    CHECK(parse_xrat(" 1 - 1 ").is_zero());
    CHECK(parse_xrat("-t*x/x^2") == XRat(XPoly(-k_t()), x));

    CHECK_THROWS_AS(parse_xrat("x +"), ParseError);
    CHECK_THROWS_AS(parse_xrat("(x"), ParseError);
    CHECK_THROWS_AS(parse_xrat("x$"), ParseError);
    CHECK_THROWS_AS(parse_xrat("1/0"), ParseError);
    CHECK_THROWS_AS(parse_xrat("0^-1"), ParseError);
    CHECK_THROWS_AS(parse_xrat("y"), ParseError);
}

TEST_CASE("typed parse entry points") {
    CHECK(parse_k("t/(t-1)") == K(TPoly::gen(), TPoly::gen() - 1));
    CHECK_THROWS_AS(parse_k("x"), ParseError);
    CHECK(parse_xpoly("x^2/t").degree() == 2);
    CHECK_THROWS_AS(parse_xpoly("1/x"), ParseError);
}

TEST_CASE("printer output is minimal and frozen") {
    CHECK(str(Rat(-3, 7)) == "-3/7");
    CHECK(str(TPoly()) == "0");
    CHECK(str(K(1)) == "1");
    CHECK(str(-k_t()) == "-t");
    CHECK(str(k_t() * k_t()) == "t^2");
    CHECK(str(K(TPoly::gen() - 1)) == "t - 1");
    CHECK(str(K(TPoly(1), TPoly::gen())) == "1/t");
    CHECK(str(K(TPoly::gen() + 1, TPoly::gen() - 1)) == "(t + 1)/(t - 1)");

    CHECK(str(parse_xpoly("x^2 + x/t - 2/t^2")) == "x^2 + 1/t*x - 2/t^2");
    CHECK(str(parse_xrat("(x+1)/(x^2-1)")) == "1/(x - 1)");
    CHECK(str(parse_xrat("-t*x/(x^2-1)")) == "-t*x/(x^2 - 1)");
    CHECK(str(parse_xrat("(t^2+1)*x/2")) == "(1/2*t^2 + 1/2)*x");
    CHECK(str(XRat()) == "0");
}

TEST_CASE("operator formatting") {
    std::vector<K> p{K(1), -k_t(), k_t() * k_t()};
    CHECK(format_operator(p, "Dt") == "t^2*Dt^2 - t*Dt + 1");
    std::vector<K> q{K(1), K(TPoly::gen().scaled(Rat(8)) - 4),
                     K((TPoly::gen() * TPoly::gen()).scaled(Rat(4)) - TPoly::gen().scaled(Rat(4)))};
    CHECK(format_operator(q, "Dt") == "(4*t^2 - 4*t)*Dt^2 + (8*t - 4)*Dt + 1");
}

TEST_CASE("print/parse round trip on random elements") {
    testutil::Rng rng(90210u);
    for (int i = 0; i < 200; ++i) {
        XRat v = rng.xrat(3, 2, 7);
        CAPTURE(i, str(v));
        CHECK(parse_xrat(str(v)) == v);
    }
}
