#pragma once
// The four worked systems shared by the higher-level test suites.  The
// frozen values scattered through the tests (frames, matrices, exponent
// vectors, reduced forms) come from an independent computer-algebra
// derivation of the same quantities; see scripts/derive_fixtures.py.
#include <initializer_list>
#include <utility>
#include <vector>

#include "ftel/expr.hpp"
#include "ftel/ore.hpp"

namespace ftel::testfix {

inline AModule::Vec vec(std::initializer_list<const char*> ss) {
    AModule::Vec v;
    for (const char* s : ss) v.push_back(parse_xrat(s));
    return v;
}

inline OreOp oper(std::initializer_list<const char*> ss) {
    std::vector<XRat> c;
    for (const char* s : ss) c.push_back(parse_xrat(s));
    return OreOp(std::move(c));
}

struct System {
    OreOp L;
    AModule mod;
    AModule::Vec U;                // power coords of the t-action on 1
    std::vector<AModule::Vec> W;   // global integral frame (rows)
    std::vector<AModule::Vec> Nu;  // local integral frame at infinity
    std::vector<int> taus;         // exponents of the normal frame
};

// Order-2 operator annihilating log(1/x^2 - 1) sqrt((1+x)/(1-x)) / x^2
// (the parameterized family below specialized at t = 1).
inline System logsqrt_t1() {
    OreOp L = oper({"8*x^4 + 5*x^3 - 11*x^2 - 5*x + 4",
                    "(x^2 - 1)*(x + 1)*(7*x - 5)*x",
                    "(x^2 - 1)^2*x^2"});
    AModule mod{L};
    return {L, std::move(mod),
            vec({"0", "0"}),
            {vec({"(x - 1)*x^2", "0"}),
             vec({"2*(x - 1)*x^4", "(x^2 - 1)*(x - 1)*x^3"})},
            {vec({"(x - 1)*x", "0"}),
             vec({"2*(x - 1)*x^2", "(x^2 - 1)*(x - 1)*x"})},
            {-1, -2}};
}

// The parameterized family: annihilates
// log(1/x^2 - t^2) sqrt((1+t*x)/(1-t*x)) / x^2, with the t-action on the
// class of 1 given by U below.
inline System logsqrt_param() {
    OreOp L = oper({"8*t^4*x^4 + 5*t^3*x^3 - 11*t^2*x^2 - 5*t*x + 4",
                    "(t^2*x^2 - 1)*(t*x + 1)*(7*t*x - 5)*x",
                    "(t^2*x^2 - 1)^2*x^2"});
    AModule mod{L};
    return {L, std::move(mod),
            vec({"2*t*x^2 + x", "t*x^3"}),
            {vec({"(t*x - 1)*x^2", "0"}),
             vec({"2*t^2*(t*x - 1)*x^4", "(t^2*x^2 - 1)*(t*x - 1)*x^3"})},
            {vec({"(t*x - 1)*x", "0"}),
             vec({"2*t^2*(t*x - 1)*x^2", "(t^2*x^2 - 1)*(t*x - 1)*x"})},
            {-1, -2}};
}

// Hypergeometric system: solutions 1 and x^(1/3) 2F1(1/6, 2/3; 7/6; x^2).
// No parameter dependence (the zero t-action is compatible).
inline System cuberoot() {
    OreOp L = oper({"0", "2*(3*x^2 - 1)", "3*(x^3 - x)"});
    AModule mod{L};
    return {L, std::move(mod),
            vec({"0", "0"}),
            {vec({"1", "0"}), vec({"0", "x^3 - x"})},
            {vec({"1", "0"}), vec({"0", "x^2 - 1"})},
            {0, -1}};
}

// First-order system for the elliptic integrand 1/sqrt(x(x-1)(x-t))
// after the substitution x -> 2 + 1/x, which turns it into
// x^(3/2) / sqrt((2x+1)(x+1)((2-t)x+1)) and moves the ordinary point 2
// to infinity.
inline System elliptic() {
    OreOp L = oper(
        {"(3*t*x^2 + 2*t*x - 8*x^2 - 10*x - 3)"
         "/(2*x*(-2*t*x^3 - 3*t*x^2 - t*x + 4*x^3 + 8*x^2 + 5*x + 1))",
         "1"});
    AModule mod{L};
    return {L, std::move(mod),
            vec({"-x/(2*t*x - 4*x - 2)"}),
            {vec({"(-2*t*x^3 - 3*t*x^2 - t*x + 4*x^3 + 8*x^2 + 5*x + 1)/x"})},
            {vec({"(-2*t*x^3 - 3*t*x^2 - t*x + 4*x^3 + 8*x^2 + 5*x + 1)/x^3"})},
            {-2}};
}

}  // namespace ftel::testfix
