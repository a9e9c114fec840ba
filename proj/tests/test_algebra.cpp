// Exercises the coefficient tower Q -> Q[t] -> Q(t) -> Q(t)[x] -> Q(t)(x):
// canonical forms, division, gcd (including across mixed t-denominators),
// squarefree factorization and integer root finding.
#include <catch2/catch_amalgamated.hpp>

#include "ftel/tower.hpp"
#include "test_util.hpp"

using namespace ftel;

namespace {
XPoly c(const K& v) { return XPoly(v); }
K kq(long n, long d = 1) { return K(TPoly(Rat(n, d))); }
}  // namespace

TEST_CASE("rationals are canonical and exact") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(1, -2) == Rat(-1, 2));
    CHECK(Rat::from_string("-3/7").str() == "-3/7");
    CHECK(Rat::from_string("12").is_integer());
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK(Rat(1, 2) * Rat(2, 3) == Rat(1, 3));
    CHECK(Rat(7, 3).inv() == Rat(3, 7));
    CHECK(abs(Rat(-5, 2)) == Rat(5, 2));
    CHECK(Rat(-1, 3) < Rat(1, 4));
    CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
}

TEST_CASE("polynomial arithmetic over Q") {
    const TPoly t = TPoly::gen();
    CHECK((t + 1) * (t + 1) == t * t + t.scaled(Rat(2)) + 1);
    CHECK((t * t * t - 1) / (t - 1) == t * t + t + 1);
    CHECK(((t * t * t - 1) % (t - 1)).is_zero());
    CHECK((t * t + 1).derivative() == t.scaled(Rat(2)));
    CHECK((t * t - 2).evaluate(Rat(3)) == Rat(7));
    CHECK(TPoly().degree() == -1);
    CHECK(TPoly::monomial(Rat(1), 4).valuation() == 4);

    SECTION("gcd and xgcd") {
        CHECK(poly_gcd(t * t - 1, t * t - t.scaled(Rat(2)) + 1) == t - 1);
        auto r = xgcd(t * t - 1, t + 2);
        CHECK(r.g == TPoly(1));  // coprime
        CHECK(r.s * (t * t - 1) + r.u * (t + 2) == TPoly(1));
    }
}

TEST_CASE("squarefree factorization collects factors by multiplicity") {
    const TPoly t = TPoly::gen();
    TPoly f = (t * (t - 1) * (t - 1) * (t + 2) * (t + 2) * (t + 2)).scaled(Rat(5));
    auto sf = squarefree_factorization(f);
    CHECK(sf.unit == Rat(5));
    REQUIRE(sf.factors.size() == 3);
    CHECK(sf.factors[0] == std::pair{t, 1});
    CHECK(sf.factors[1] == std::pair{t - 1, 2});
    CHECK(sf.factors[2] == std::pair{t + 2, 3});

    // Distinct roots of equal multiplicity come out as one squarefree factor.
    TPoly g = (t - 1) * (t + 1) * t * t;
    auto sg = squarefree_factorization(g);
    REQUIRE(sg.factors.size() == 2);
    CHECK(sg.factors[0] == std::pair{t * t - 1, 1});
    CHECK(sg.factors[1] == std::pair{t, 2});

    // Reconstruction.
    TPoly prod(sg.unit);
    for (auto& [p, m] : sg.factors) prod *= p.pow(m);
    CHECK(prod == g);
}

TEST_CASE("rational functions in t normalize to coprime, monic-denominator form") {
    const TPoly t = TPoly::gen();
    CHECK(K(t * t - 1, t - 1) == K(t + 1));
    K half(TPoly(1), t.scaled(Rat(2)) - 2);
    CHECK(half.den() == t - 1);
    CHECK(half.num() == TPoly(Rat(1, 2)));
    CHECK(K(TPoly(1), t).derivative() == K(TPoly(-1), t * t));
    CHECK(k_t().inv() * k_t() == K(1));
}

TEST_CASE("gcd over Q(t)[x] cancels factors with mixed t-denominators") {
    const XPoly x = XPoly::gen();
    const K t = k_t();

    // Plain case, frozen ahead of time.
    CHECK(poly_gcd((x * x - 1) * x * x, (x - 1) * x * x * x) == x * x * x - x * x);

    // (t*x - 1) and (x - 1/t) generate the same ideal over Q(t).
    XPoly a = (c(t) * x - 1) * (x + 2);
    XPoly b = (x - c(t.inv())) * (x + 3);
    CHECK(poly_gcd(a, b) == x - c(t.inv()));
    CHECK(poly_gcd(x + 1, x + 2) == XPoly(1));

    auto r = xgcd(a, x + 3);
    CHECK(r.g == XPoly(1));
    CHECK(r.s * a + r.u * (x + 3) == XPoly(1));
}

TEST_CASE("gcd over Q(t)[x] respects random common factors") {
    testutil::Rng rng(7321u);
    int checked = 0;
    while (checked < 100) {
        XPoly g = rng.nonzero_xpoly(2), a1 = rng.nonzero_xpoly(2), b1 = rng.nonzero_xpoly(2);
        XPoly a = g * a1, b = g * b1;
        XPoly d = poly_gcd(a, b);
        CAPTURE(checked);
        CHECK(div_rem(a, d).second.is_zero());
        CHECK(div_rem(b, d).second.is_zero());
        CHECK(div_rem(d, monic(g)).second.is_zero());
        ++checked;
    }
}

TEST_CASE("rational functions in x cancel exactly") {
    const XPoly x = XPoly::gen();
    const K t = k_t();

    XRat r(c(t * t) * x * x - c(t) * x, c(t) * x - 1);
    CHECK(r.num() == c(t) * x);
    CHECK(r.den().is_one());

    // Cancellation that only exists over Q(t).
    XRat s(c(t) * x - 1, x - c(t.inv()));
    CHECK(s == XRat(c(t)));

    CHECK(XRat(XPoly(1), x).derivative() == XRat(-XPoly(1), x * x));

    // Squarefree decomposition of a denominator with t in its coefficients.
    XPoly e = x * x * x - x.scaled(t.inv() * t.inv());
    auto sf = squarefree_factorization(e);
    REQUIRE(sf.factors.size() == 1);
    CHECK(sf.factors[0] == std::pair{e, 1});
}

TEST_CASE("integer roots of polynomials with Q(t) coefficients") {
    // Coefficients ascending in the unknown; t may appear in them.
    Poly<K> p1(std::vector<K>{kq(0), kq(-1), kq(1)});  // s^2 - s
    CHECK(integer_roots(p1) == std::vector<long>{0, 1});

    // (t*s - 1)(s - 3)(s + 2): the root 1/t is not an integer.
    const K t = k_t();
    Poly<K> p2(std::vector<K>{kq(6), kq(1) - t * kq(6), -t - kq(1), t});
    CHECK(integer_roots(p2) == std::vector<long>{-2, 3});
    CHECK(integer_roots(p2, 1u) == integer_roots(p2, 424242u));

    Poly<K> p3(std::vector<K>{kq(1), kq(0), kq(1)});  // s^2 + 1
    CHECK(integer_roots(p3).empty());

    Poly<K> p4(std::vector<K>{kq(0), kq(0), kq(0), kq(1)});  // s^3
    CHECK(integer_roots(p4) == std::vector<long>{0});
}
