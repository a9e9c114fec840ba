// Telescoper search over both reduction backends: pinned operators for the
// worked examples, backend agreement, order bounds, and certificate checks.
#include <catch2/catch_amalgamated.hpp>

#include "ftel/telescope.hpp"
#include "fixtures.hpp"
#include "test_util.hpp"

using namespace ftel;
using testfix::vec;

namespace {

struct TSetup {
    testfix::System S;
    BasisFrame W;
    DiffData d;
    VSpaceData V;
    LocalFrameData lf;
    PhiContext ctx;
    TAction act;
    TSetup(testfix::System sys)
        : S(std::move(sys)),
          W(S.mod, S.W),
          d(diff_matrix(W)),
          V(v_space(W, S.taus)),
          lf(build_local_frame(W, S.taus, d.e)),
          ctx(make_phi_context(lf, d.e)),
          act(S.mod, S.U) {}

    std::optional<Telescoper> canonical(const AModule::Vec& f, int max_order = -1) {
        return telescope_canonical(W, d, S.taus, V, act, f, max_order);
    }
    std::optional<Telescoper> polyred(const AModule::Vec& f, int max_order = -1) {
        return telescope_polyred(W, d, lf, S.taus, ctx, act, f, max_order);
    }
};

void check_coeffs(const Telescoper& tel, std::initializer_list<const char*> expected) {
    REQUIRE(tel.coeffs.size() == expected.size());
    size_t k = 0;
    for (const char* c : expected) CHECK(tel.coeffs[k++] == parse_k(c));
}

}  // namespace

TEST_CASE("telescoper of the parameterized example") {
    TSetup s(testfix::logsqrt_param());
    AModule::Vec f{parse_xrat("1"), XRat()};

    auto can = s.canonical(f);
    REQUIRE(can);
    CHECK(can->order() == 2);
    check_coeffs(*can, {"1", "-t", "t^2"});
    CHECK(verify_telescoper(s.W, s.act, f, *can));

    auto pol = s.polyred(f);
    REQUIRE(pol);
    check_coeffs(*pol, {"1", "-t", "t^2"});
    CHECK(verify_telescoper(s.W, s.act, f, *pol));
}

TEST_CASE("telescoper of the moved elliptic integrand") {
    TSetup s(testfix::elliptic());
    AModule::Vec f = vec({"-1/x^2"});

    auto can = s.canonical(f);
    REQUIRE(can);
    CHECK(can->order() == 2);
    check_coeffs(*can, {"1", "8*t - 4", "4*t^2 - 4*t"});
    CHECK(verify_telescoper(s.W, s.act, f, *can));

    auto pol = s.polyred(f);
    REQUIRE(pol);
    check_coeffs(*pol, {"1", "8*t - 4", "4*t^2 - 4*t"});
    CHECK(verify_telescoper(s.W, s.act, f, *pol));
}

TEST_CASE("integrable inputs get the order-zero telescoper") {
    TSetup s(testfix::cuberoot());
    AModule::Vec f = vec({"3/x^2", "(4*x + 2)/(x^3 - x)"});
    auto can = s.canonical(f);
    REQUIRE(can);
    CHECK(can->order() == 0);
    check_coeffs(*can, {"1"});
    CHECK(verify_telescoper(s.W, s.act, f, *can));
    auto pol = s.polyred(f);
    REQUIRE(pol);
    check_coeffs(*pol, {"1"});
}

TEST_CASE("order cap is respected") {
    TSetup s(testfix::logsqrt_param());
    AModule::Vec f{parse_xrat("1"), XRat()};
    CHECK(!s.canonical(f, 1));
    CHECK(!s.polyred(f, 1));
    auto just = s.canonical(f, 2);
    REQUIRE(just);
    CHECK(just->order() == 2);
}

TEST_CASE("inputs without the infinity condition are rejected") {
    TSetup s(testfix::logsqrt_t1());
    AModule::Vec f{parse_xrat("x^2"), XRat()};
    CHECK_THROWS_AS(s.canonical(f), std::invalid_argument);
    CHECK_THROWS_AS(s.polyred(f), std::invalid_argument);
}

TEST_CASE("backends agree on random inputs with verified certificates") {
    testutil::Rng rng(271828u);
    auto den_of = [&](int mindeg) {
        XPoly d = parse_xpoly("x*(x - 1)*(x + 1)");
        while (d.degree() < mindeg) d = d * parse_xpoly("x");
        return d;
    };
    auto run = [&](TSetup& s, int cases) {
        const int n = s.W.size();
        for (int it = 0; it < cases; ++it) {
            std::vector<XRat> c(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) {
                XPoly num = rng.xpoly(1, 0, 3);
                XPoly den = den_of(num.degree() + 2 - s.S.taus[static_cast<size_t>(i)]);
                c[static_cast<size_t>(i)] = XRat(num, den);
            }
            AModule::Vec f = s.W.assemble(c);
            if (!has_double_root_at_infinity(s.W, s.S.taus, f)) continue;
            auto can = s.canonical(f);
            auto pol = s.polyred(f);
            REQUIRE(can);
            REQUIRE(pol);
            CHECK(can->coeffs == pol->coeffs);
            CHECK(verify_telescoper(s.W, s.act, f, *can));
            CHECK(verify_telescoper(s.W, s.act, f, *pol));
        }
    };
    TSetup a(testfix::logsqrt_t1());
    run(a, 4);
    TSetup c(testfix::cuberoot());
    run(c, 3);
}
