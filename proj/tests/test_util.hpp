#pragma once
// Shared helpers for the test suites: seeded random elements of the
// coefficient tower, sized small enough that exact arithmetic stays fast.
#include <random>
#include <vector>

#include "ftel/tower.hpp"

namespace ftel::testutil {

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}

    long integer(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(gen);
    }
    Rat rat(long m = 9) {
        long d = integer(1, 4);
        return Rat(integer(-m, m), d);
    }
    Rat nonzero_rat(long m = 9) {
        for (;;) {
            Rat r = rat(m);
            if (!r.is_zero()) return r;
        }
    }
    TPoly tpoly(int maxdeg = 2, long m = 5) {
        std::vector<Rat> c;
        int d = static_cast<int>(integer(0, maxdeg));
        for (int i = 0; i <= d; ++i) c.push_back(rat(m));
        return TPoly(std::move(c));
    }
    TPoly nonzero_tpoly(int maxdeg = 2, long m = 5) {
        for (;;) {
            TPoly p = tpoly(maxdeg, m);
            if (!p.is_zero()) return p;
        }
    }
    K k(int maxdeg = 2, long m = 5) {
        return K(tpoly(maxdeg, m), nonzero_tpoly(maxdeg, m));
    }
    XPoly xpoly(int maxdeg = 3, int tdeg = 1, long m = 5) {
        std::vector<K> c;
        int d = static_cast<int>(integer(0, maxdeg));
        for (int i = 0; i <= d; ++i) c.push_back(k(tdeg, m));
        return XPoly(std::move(c));
    }
    XPoly nonzero_xpoly(int maxdeg = 3, int tdeg = 1, long m = 5) {
        for (;;) {
            XPoly p = xpoly(maxdeg, tdeg, m);
            if (!p.is_zero()) return p;
        }
    }
    XRat xrat(int maxdeg = 3, int tdeg = 1, long m = 5) {
        return XRat(xpoly(maxdeg, tdeg, m), nonzero_xpoly(maxdeg, tdeg, m));
    }
};

}  // namespace ftel::testutil
