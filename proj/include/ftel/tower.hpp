#pragma once
/**
 * @file tower.hpp
 * The coefficient tower used throughout:
 *
 *   Rat   = Q            exact rationals
 *   TPoly = Q[t]         polynomials in the parameter
 *   K     = Q(t)         the constant field of the derivation d/dx
 *   XPoly = K[x]
 *   XRat  = K(x)
 *
 * Gcds at the Q[t] and Q(t)[x] levels are subresultant PRS on primitive
 * parts (integer-primitive at the bottom, Q[t]-primitive above after
 * clearing denominators).  This matters twice over: fractions over K[x]
 * must cancel factors like (t*x - 1) against (x - 1/t), which only match
 * after clearing denominators, and the Euclidean remainder sequence at
 * either level blows up its intermediate coefficients badly.
 */
#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "frac.hpp"
#include "poly.hpp"
#include "rat.hpp"

namespace ftel {

using TPoly = Poly<Rat>;    // Q[t]
using K = Frac<TPoly>;      // Q(t)
using XPoly = Poly<K>;      // Q(t)[x]
using XRat = Frac<XPoly>;   // Q(t)(x)
using TTPoly = Poly<TPoly>; // Q[t][x], used inside the gcd

// ------------------------------------------------- subresultant PRS (generic)

// Exact element division in the coefficient domain of the PRS.
template <class T>
struct PrsOps {
    static T div(const T& a, const T& b) { return div_exact(a, b); }
};
template <>
struct PrsOps<Rat> {
    static Rat div(const Rat& a, const Rat& b) { return a / b; }
};

/**
 * Last nonzero element of the subresultant remainder sequence (Brown's
 * algorithm) of primitive A, B; the caller normalizes the result.  All
 * divisions below are exact in the domain.
 */
template <class T>
Poly<T> subresultant_prs_gcd(Poly<T> A, Poly<T> B) {
    if (A.degree() < B.degree()) std::swap(A, B);
    T g(1), h(1);
    while (!B.is_zero()) {
        const int delta = A.degree() - B.degree();
        Poly<T> R = prem(A, B);
        A = std::move(B);
        if (R.is_zero()) {
            B = Poly<T>();
        } else {
            const T divisor = g * power_of(h, delta);
            std::vector<T> c;
            c.reserve(R.coeffs().size());
            for (const auto& r : R.coeffs()) c.push_back(PrsOps<T>::div(r, divisor));
            B = Poly<T>(std::move(c));
        }
        g = A.lead_coeff();
        if (delta > 0) h = PrsOps<T>::div(power_of(g, delta), power_of(h, delta - 1));
    }
    return A;
}

// ------------------------------------------------------------- gcd over Q[t]

/// Positive rational c such that p/c has coprime integer coefficients
/// (1 for the zero polynomial).
inline Rat rat_content(const TPoly& p) {
    mpz_class g(0), l(1);
    for (const auto& c : p.coeffs()) {
        if (c.is_zero()) continue;
        g = gcd(g, c.num());
        l = lcm(l, c.den());
    }
    if (g == 0) return Rat(1);
    return Rat(g, l);
}

template <>
struct PolyGcdImpl<TPoly> {
    static TPoly run(const TPoly& a, const TPoly& b) {
        TPoly A = a.divided_by(rat_content(a));
        TPoly B = b.divided_by(rat_content(b));
        TPoly G = subresultant_prs_gcd(std::move(A), std::move(B));
        if (G.degree() == 0) return TPoly(1);
        return monic(G);
    }
};

// ------------------------------------------------------- Q[t][x] utilities

/// Coefficient-wise exact division of A in Q[t][x] by d in Q[t].
inline TTPoly coeff_div_exact(const TTPoly& A, const TPoly& d) {
    std::vector<TPoly> c;
    c.reserve(A.coeffs().size());
    for (const auto& a : A.coeffs()) c.push_back(div_exact(a, d));
    return TTPoly(std::move(c));
}

inline TTPoly coeff_divided_by(const TTPoly& A, const Rat& d) {
    std::vector<TPoly> c;
    c.reserve(A.coeffs().size());
    for (const auto& a : A.coeffs()) c.push_back(a.divided_by(d));
    return TTPoly(std::move(c));
}

/// Monic gcd in Q[t] of all coefficients (1 for the zero polynomial).
inline TPoly content_t(const TTPoly& A) {
    TPoly g;
    for (const auto& a : A.coeffs()) g = poly_gcd(g, a);
    return g.is_zero() ? TPoly(1) : g;
}

/// Strips both the Q[t] content and the remaining rational content, so
/// the result has coprime coefficients over Z[t].
inline TTPoly primitive_part(const TTPoly& A) {
    if (A.is_zero()) return A;
    TTPoly P = coeff_div_exact(A, content_t(A));
    mpz_class g(0), l(1);
    for (const auto& a : P.coeffs())
        for (const auto& c : a.coeffs()) {
            if (c.is_zero()) continue;
            g = gcd(g, c.num());
            l = lcm(l, c.den());
        }
    if (g == 0) return P;
    return coeff_divided_by(P, Rat(g, l));
}

// ------------------------------------------- conversions Q(t)[x] <-> Q[t][x]

/// Writes p = num / den with num in Q[t][x] and den in Q[t] (lcm of the
/// coefficient denominators).
struct ClearedXPoly {
    TTPoly num;
    TPoly den;
};

inline ClearedXPoly clear_denominators(const XPoly& p) {
    TPoly L(1);
    for (const auto& c : p.coeffs())
        if (!c.is_zero()) L = poly_lcm(L, c.den());
    std::vector<TPoly> nc;
    nc.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs())
        nc.push_back(c.num() * div_exact(L, c.den()));
    return {TTPoly(std::move(nc)), std::move(L)};
}

inline XPoly to_xpoly(const TTPoly& A) {
    std::vector<K> c;
    c.reserve(A.coeffs().size());
    for (const auto& a : A.coeffs()) c.emplace_back(a);
    return XPoly(std::move(c));
}

/**
 * Sound coprimality certificate by specialization: pick t0 with neither
 * leading coefficient vanishing.  The primitive part of the true gcd
 * divides both inputs over Q[t][x] (Gauss), and its leading coefficient
 * divides the inputs' leading coefficients, so it keeps full x-degree at
 * t0 and divides gcd(A(t0), B(t0)) over Q.  Hence a degree-0 specialized
 * gcd proves the gcd over Q(t) is 1.  A positive answer is definitive; a
 * negative one (rare for actually-coprime inputs: t0 must hit the
 * resultant) just sends the caller down the full PRS.
 */
inline bool coprime_by_specialization(const TTPoly& A, const TTPoly& B) {
    static const long points[] = {2, -2, 3, -3, 5, -5, 7, 11};
    int tried = 0;
    for (long p : points) {
        const Rat t0(p);
        if (A.lead_coeff().evaluate(t0).is_zero()) continue;
        if (B.lead_coeff().evaluate(t0).is_zero()) continue;
        std::vector<Rat> ca, cb;
        ca.reserve(A.coeffs().size());
        cb.reserve(B.coeffs().size());
        for (const auto& c : A.coeffs()) ca.push_back(c.evaluate(t0));
        for (const auto& c : B.coeffs()) cb.push_back(c.evaluate(t0));
        // Gcd of the specialized images over Q[x]; Poly<Rat> is TPoly.
        if (poly_gcd(TPoly(std::move(ca)), TPoly(std::move(cb))).degree() == 0)
            return true;
        if (++tried == 2) return false;
    }
    return false;
}

// The gcd used whenever a Frac<XPoly> is normalized.
template <>
struct PolyGcdImpl<XPoly> {
    static XPoly run(const XPoly& a, const XPoly& b) {
        ClearedXPoly ca = clear_denominators(a);
        ClearedXPoly cb = clear_denominators(b);
        if (coprime_by_specialization(ca.num, cb.num)) return XPoly(K(1));
        TTPoly A = primitive_part(ca.num);
        TTPoly B = primitive_part(cb.num);
        TTPoly G = subresultant_prs_gcd(std::move(A), std::move(B));
        if (G.degree() == 0) return XPoly(K(1));
        return monic(to_xpoly(primitive_part(G)));
    }
};

inline K k_t() { return K(TPoly::gen()); }

// ------------------------------------------------------------- integer roots

/**
 * All integer roots of a nonzero polynomial in one variable with
 * coefficients in Q(t).  Candidates come from the integer-root theorem
 * after specializing t at a random rational point (seeded, but every
 * candidate is verified exactly, so the result does not depend on the
 * seed); a candidate r is kept iff p(r) = 0 in Q(t).
 */
inline std::vector<long> integer_roots(const Poly<K>& p, unsigned seed = 20240914u) {
    if (p.is_zero()) throw std::invalid_argument("integer_roots: zero polynomial");
    std::vector<long> roots;
    auto verify = [&](long r) {
        K v(0);
        K rr{TPoly(Rat(r))};
        for (int i = p.degree(); i >= 0; --i) v = v * rr + p.coeff(i);
        return v.is_zero();
    };
    // Strip the power of the variable: 0 is a root iff the constant term vanishes.
    int val = p.valuation();
    if (val > 0) roots.push_back(0);
    std::vector<K> top(p.coeffs().begin() + val, p.coeffs().end());
    Poly<K> q(std::move(top));
    if (q.degree() == 0) return roots;

    TTPoly N = primitive_part(clear_denominators(q).num);

    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> num_d(2, 60), den_d(1, 9), sign_d(0, 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
        long n0 = num_d(rng) * (sign_d(rng) ? 1 : -1);
        Rat t0(n0, den_d(rng));
        if (N.lead_coeff().evaluate(t0).is_zero()) continue;
        // Specialize t and clear to integer coefficients.
        std::vector<Rat> sc;
        for (const auto& a : N.coeffs()) sc.push_back(a.evaluate(t0));
        mpz_class L(1);
        for (const auto& r : sc) L = lcm(L, r.den());
        std::vector<mpz_class> ic;
        for (const auto& r : sc) ic.push_back(r.num() * (L / r.den()));
        mpz_class a0 = abs(ic.front());
        if (a0 == 0) throw std::logic_error("integer_roots: stripped constant vanished");
        // Integer roots divide the (integer) constant coefficient.
        for (mpz_class d(1); d * d <= a0; ++d) {
            if (a0 % d != 0) continue;
            mpz_class other = a0 / d;
            for (const mpz_class& cand : {d, other}) {
                if (!cand.fits_slong_p()) continue;
                long r = cand.get_si();
                if (verify(r)) roots.push_back(r);
                if (verify(-r)) roots.push_back(-r);
            }
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        return roots;
    }
    throw std::runtime_error("integer_roots: could not find a good specialization point");
}

}  // namespace ftel
