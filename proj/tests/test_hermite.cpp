// Hermite reduction: the worked single-step example with its mod-x linear
// system, the parameterized variant, remainder reduction modulo U, and the
// integrability decision.
#include <catch2/catch_amalgamated.hpp>

#include "ftel/frame.hpp"
#include "ftel/hermite.hpp"
#include "fixtures.hpp"
#include "test_util.hpp"

using namespace ftel;
using testfix::vec;

namespace {

struct Setup {
    testfix::System S;
    BasisFrame W;
    DiffData d;
    Setup(testfix::System sys) : S(std::move(sys)), W(S.mod, S.W), d(diff_matrix(W)) {}
};

bool vec_eq(const std::vector<XRat>& a, const std::vector<XRat>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

XRat xq(const Rat& r) { return XRat(XPoly(K(TPoly(r)))); }

bool proper(const std::vector<XRat>& c) {
    for (const XRat& q : c)
        if (!q.is_zero() && q.num().degree() >= q.den().degree()) return false;
    return true;
}

}  // namespace

TEST_CASE("worked reduction step with its mod-x system") {
    Setup s(testfix::logsqrt_t1());
    // f = (x+1)/((x^2-1)x^2) * w_1
    AModule::Vec f = s.W.assemble({parse_xrat("(x + 1)/((x^2 - 1)*x^2)"), XRat()});
    auto hf = hermite_reduce(s.W, s.d, f);

    REQUIRE(hf.steps.size() == 1);
    const HermiteStep& st = hf.steps[0];
    CHECK(st.v == parse_xpoly("x"));
    CHECK(st.mu == 2);
    CHECK(st.u == parse_xpoly("x^2 - 1"));
    CHECK(st.w == parse_xpoly("1"));

    // The linear system for (g_1, g_2) modulo x, exactly as solved.
    CHECK(st.system[0][0] == parse_xpoly("x - 1"));
    CHECK(st.system[0][1] == parse_xpoly("-x^3 - x^2 + 5*x - 4"));
    CHECK(st.system[1][0] == parse_xpoly("1"));
    CHECK(st.system[1][1] == parse_xpoly("3 - x"));
    CHECK(st.rhs[0] == parse_xpoly("x + 1"));
    CHECK(st.rhs[1] == parse_xpoly("0"));
    CHECK(st.g[0] == parse_xpoly("3"));
    CHECK(st.g[1] == parse_xpoly("-1"));

    CHECK(vec_eq(hf.g_coords, {parse_xrat("3/x"), parse_xrat("-1/x")}));
    CHECK(hf.h_den == parse_xpoly("x^3 - x"));
    CHECK(hf.h_nums[0] == parse_xpoly("-x^2 - x + 3"));
    CHECK(hf.h_nums[1] == parse_xpoly("-1"));
    CHECK(vec_eq(hf.h_coords(), {parse_xrat("(-x^2 - x + 3)/((x^2 - 1)*x)"),
                                 parse_xrat("-1/((x^2 - 1)*x)")}));
}

TEST_CASE("reduction of the parameterized system") {
    Setup s(testfix::logsqrt_param());
    AModule::Vec f{parse_xrat("1"), XRat()};
    auto hf = hermite_reduce(s.W, s.d, f);
    CHECK(!hf.steps.empty());
    CHECK(proper(hf.g_coords));
    CHECK(hf.h_den == parse_xpoly("x^3 - x/t^2"));
    CHECK(vec_eq(hf.h_coords(),
                 {parse_xrat("(-t^3*x^2 - t^2*x + 3*t)/((t^2*x^2 - 1)*x)"),
                  parse_xrat("-t/((t^2*x^2 - 1)*x)")}));
}

TEST_CASE("nonzero remainder that is itself a derivative") {
    Setup s(testfix::cuberoot());
    AModule::Vec f = vec({"3/x^2", "(4*x + 2)/(x^3 - x)"});
    auto hf = hermite_reduce(s.W, s.d, f);

    REQUIRE(hf.steps.size() == 1);
    CHECK(hf.steps[0].v == parse_xpoly("x^3 - x"));
    CHECK(hf.steps[0].mu == 2);
    CHECK(hf.steps[0].u == parse_xpoly("1"));
    CHECK(hf.steps[0].w == parse_xpoly("1"));
    CHECK(hf.steps[0].g[0] == parse_xpoly("-3*x^2 + 3"));
    CHECK(hf.steps[0].g[1] == parse_xpoly("-3*x - 3/2"));

    CHECK(vec_eq(hf.g_coords, {parse_xrat("-3/x"), parse_xrat("(-6*x - 3)/(2*x^3 - 2*x)")}));
    CHECK(vec_eq(hf.h_coords(), {XRat(), parse_xrat("-3/(x^3 - x)")}));

    // The remainder is exactly -3 w_1'.
    auto w1p = s.S.mod.x_derivative(s.W.row(0));
    auto h = hf.h_element(s.W);
    for (size_t j = 0; j < h.size(); ++j)
        CHECK(h[j] == parse_xrat("-3") * w1p[j]);

    auto V = v_space(s.W, s.S.taus);
    REQUIRE(V.basis.size() == 1);
    auto ur = reduce_mod_U(s.W, V, hf);
    CHECK(ur.in_U);
    CHECK(ur.combo[0] == parse_k("-3"));
    for (const XRat& c : ur.h_coords) CHECK(c.is_zero());

    CHECK(has_double_root_at_infinity(s.W, s.S.taus, f));
    auto res = is_integrable(s.W, s.d, s.S.taus, V, f);
    REQUIRE(res.integrable);
    CHECK(vec_eq(res.antiderivative,
                 {parse_xrat("(-3*x - 3)/x"), parse_xrat("(-6*x - 3)/(2*x^3 - 2*x)")}));
}

TEST_CASE("inputs with squarefree denominators pass through unchanged") {
    Setup s(testfix::elliptic());
    AModule::Vec f = vec({"-1/x^2"});
    auto hf = hermite_reduce(s.W, s.d, f);
    CHECK(hf.steps.empty());
    CHECK(hf.g_coords[0].is_zero());
    CHECK(hf.h_den == s.d.e);
    CHECK(hf.h_coords()[0] ==
          parse_xrat("-1/(x*((4 - 2*t)*x^3 + (8 - 3*t)*x^2 + (5 - t)*x + 1))"));

    // f = 0 reduces to zero.
    auto z = hermite_reduce(s.W, s.d, AModule::Vec{XRat()});
    CHECK(z.steps.empty());
    CHECK(z.g_coords[0].is_zero());
    CHECK(z.h_coords()[0].is_zero());
}

TEST_CASE("a singular mod-v system reports non-integrality") {
    // Order-1 module with frame row x*1: the basis fails to be integral at
    // the origin, and the very first elimination step detects it.
    OreOp L = testfix::oper({"0", "1"});
    AModule A(L);
    BasisFrame W(A, {vec({"x"})});
    auto d = diff_matrix(W);
    REQUIRE(d.e == parse_xpoly("x"));
    AModule::Vec f = vec({"1/x"});
    CHECK_THROWS_AS(hermite_reduce(W, d, f), std::domain_error);
}

TEST_CASE("the identity f = g' + h holds on random inputs") {
    testutil::Rng rng(20240917u);
    auto run = [&](const testfix::System& sys, int cases, int tdeg,
                   std::initializer_list<const char*> factors) {
        Setup s(sys);
        std::vector<XPoly> fs;
        for (const char* f : factors) fs.push_back(parse_xpoly(f));
        for (int it = 0; it < cases; ++it) {
            std::vector<XRat> c(static_cast<size_t>(s.W.size()));
            for (auto& ci : c) {
                XPoly den(K(1));
                for (const XPoly& fac : fs)
                    den = den * power_of(fac, static_cast<int>(rng.integer(0, 3)));
                ci = XRat(rng.xpoly(3, tdeg, 4), den);
            }
            auto hf = hermite_reduce(s.W, s.d, s.W.assemble(c));  // verifies f = g' + h
            CHECK(proper(hf.g_coords));
            CHECK(poly_gcd(hf.h_den, hf.h_den.derivative()).degree() == 0);
            CHECK((hf.h_den % s.d.e).is_zero());
        }
    };
    run(testfix::logsqrt_t1(), 35, 0, {"x", "x - 1", "x + 1"});
    run(testfix::cuberoot(), 30, 0, {"x", "x - 1", "x + 1"});
    run(testfix::elliptic(), 25, 0, {"x", "2*x + 1", "x + 1"});
    run(testfix::logsqrt_param(), 10, 2, {"x", "t*x - 1", "t*x + 1"});
}

TEST_CASE("membership reduction is coset-invariant") {
    Setup s(testfix::cuberoot());
    auto V = v_space(s.W, s.S.taus);
    AModule::Vec f = vec({"3/x^2", "(4*x + 2)/(x^3 - x)"});
    auto hf = hermite_reduce(s.W, s.d, f);
    auto base = reduce_mod_U(s.W, V, hf);

    testutil::Rng rng(77u);
    for (int it = 0; it < 5; ++it) {
        const XRat a = xq(rng.nonzero_rat());
        auto shifted = hf;
        auto w1p_coords = s.W.coords(s.S.mod.x_derivative(s.W.row(0)));
        std::vector<XRat> hc = hf.h_coords();
        for (size_t i = 0; i < hc.size(); ++i) hc[i] = hc[i] + a * w1p_coords[i];
        XPoly D = s.d.e;
        for (const XRat& q : hc) D = poly_lcm(D, q.den());
        shifted.h_den = D;
        for (size_t i = 0; i < hc.size(); ++i) shifted.h_nums[i] = (hc[i] * XRat(D)).num();
        auto moved = reduce_mod_U(s.W, V, shifted);
        CHECK(vec_eq(moved.h_coords, base.h_coords));
        CHECK(moved.combo[0] == base.combo[0] + a.num().coeff(0));
    }
}

TEST_CASE("the composite reduction map is K-linear") {
    Setup s(testfix::cuberoot());
    auto V = v_space(s.W, s.S.taus);
    testutil::Rng rng(991u);
    auto reduced = [&](const AModule::Vec& f) {
        return reduce_mod_U(s.W, V, hermite_reduce(s.W, s.d, f)).h_coords;
    };
    for (int it = 0; it < 8; ++it) {
        // Shared denominator so both inputs reduce along the same factors.
        XPoly den = power_of(parse_xpoly("x"), static_cast<int>(rng.integer(1, 3))) *
                    power_of(parse_xpoly("x - 1"), static_cast<int>(rng.integer(0, 2))) *
                    power_of(parse_xpoly("x + 1"), static_cast<int>(rng.integer(0, 2)));
        auto mk = [&] {
            std::vector<XRat> c(static_cast<size_t>(s.W.size()));
            for (auto& ci : c) ci = XRat(rng.xpoly(3, 0, 4), den);
            return s.W.assemble(c);
        };
        AModule::Vec f1 = mk(), f2 = mk();
        const XRat a = xq(rng.nonzero_rat());
        const XRat b = xq(rng.nonzero_rat());
        AModule::Vec f3(f1.size());
        for (size_t j = 0; j < f1.size(); ++j) f3[j] = a * f1[j] + b * f2[j];
        auto r1 = reduced(f1), r2 = reduced(f2), r3 = reduced(f3);
        for (size_t i = 0; i < r3.size(); ++i) CHECK(r3[i] == a * r1[i] + b * r2[i]);
    }
}

TEST_CASE("integrability decisions and the infinity precondition") {
    // The sqrt/log system at t = 1: V is empty there, so integrable means
    // a vanishing remainder, which this input does not have.
    Setup s(testfix::logsqrt_t1());
    auto V = v_space(s.W, s.S.taus);
    CHECK(V.basis.empty());
    AModule::Vec f = s.W.assemble({parse_xrat("(x + 1)/((x^2 - 1)*x^2)"), XRat()});
    CHECK(has_double_root_at_infinity(s.W, s.S.taus, f));
    auto res = is_integrable(s.W, s.d, s.S.taus, V, f);
    CHECK(!res.integrable);

    // Derivatives of V-span elements always reduce to zero.
    Setup c(testfix::cuberoot());
    auto Vc = v_space(c.W, c.S.taus);
    testutil::Rng rng(5150u);
    for (int it = 0; it < 5; ++it) {
        const XRat a = xq(rng.nonzero_rat());
        AModule::Vec g(Vc.basis[0].size());
        for (size_t j = 0; j < g.size(); ++j) g[j] = a * Vc.basis[0][j];
        auto f2 = c.S.mod.x_derivative(g);
        auto res2 = is_integrable(c.W, c.d, c.S.taus, Vc, f2);
        REQUIRE(res2.integrable);
        auto back = c.S.mod.x_derivative(c.W.assemble(res2.antiderivative));
        for (size_t j = 0; j < f2.size(); ++j) CHECK(back[j] == f2[j]);
    }

    // Elements that do not vanish doubly at infinity are rejected.
    AModule::Vec one{parse_xrat("1"), XRat()};
    CHECK(!has_double_root_at_infinity(c.W, c.S.taus, one));
    CHECK_THROWS_AS(is_integrable(c.W, c.d, c.S.taus, Vc, one), std::invalid_argument);
}
