#pragma once

// Polynomial reduction over the local frame at infinity.  The map
// phi(P) = x^lambda e P' + P B describes differentiation of polynomial
// combinations of the local rows; reducing a Laurent vector against the
// phi-images of the window monomials splits it into an exact-derivative
// preimage plus a canonical remainder in the finite complement N_V.
// Stacked on Hermite reduction this yields the full additive
// decomposition  f = g' + (1/d) R.W + (1/(x^lambda e)) Q.V.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ftel/frame.hpp"
#include "ftel/hermite.hpp"
#include "ftel/laurent.hpp"
#include "ftel/linalg.hpp"
#include "ftel/tower.hpp"

namespace ftel {

struct PhiContext {
    int lambda = 0;
    XPoly e;
    std::vector<std::vector<XPoly>> B;
    int delta = 0;    // lambda + deg e - 1
    bool case1 = true;  // deg B < delta
    int ell = 0;      // highest window exponent forced by singular shifts
    int lower = 0;    // window floor
};

/// phi(P) = x^lambda e P' + P B, extended K-linearly from monomials.
inline LaurentVec phi_V(const LaurentVec& P, const PhiContext& ctx) {
    const int n = P.comps();
    LaurentVec out(n);
    for (const auto& [k, i] : P.support()) {
        const K c = P.get(k, i);
        if (k != 0) {
            const K kc = c * K(k);
            for (int m = 0; m <= ctx.e.degree(); ++m)
                out.add(m + ctx.lambda + k - 1, i, kc * ctx.e.coeff(m));
        }
        for (int j = 0; j < n; ++j) {
            const XPoly& b = ctx.B[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (int m = 0; m <= b.degree(); ++m) out.add(k + m, j, c * b.coeff(m));
        }
    }
    return out;
}

namespace detail {

/// Characteristic polynomial of M (Faddeev-LeVerrier), low to high degree.
inline Poly<K> charpoly(const Mat<K>& M) {
    const int n = M.rows();
    auto trace = [&](const Mat<K>& A) {
        K s(0);
        for (int i = 0; i < n; ++i) s += A.at(i, i);
        return s;
    };
    std::vector<K> c(static_cast<size_t>(n) + 1, K(0));
    c[static_cast<size_t>(n)] = K(1);
    Mat<K> Nk = M;
    for (int k = 1; k <= n; ++k) {
        const K ck = -(trace(Nk) / K(k));
        c[static_cast<size_t>(n - k)] = ck;
        if (k == n) break;
        for (int i = 0; i < n; ++i) Nk.at(i, i) += ck;
        Nk = mat_mul(M, Nk);
    }
    return Poly<K>(std::move(c));
}

}  // namespace detail

/**
 * The window exponent ell: 0 in Case 1 (deg B < delta); otherwise the
 * largest nonnegative integer s for which s*lc(e)I + lc(B) is singular,
 * i.e. -s*lc(e) is an eigenvalue of the leading-coefficient matrix.
 * Every exponent above ell reduces unconditionally.
 */
inline int compute_ell(const PhiContext& ctx, unsigned seed = 20240914u) {
    if (ctx.case1) return 0;
    const int n = static_cast<int>(ctx.B.size());
    Mat<K> lcB(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const XPoly& b = ctx.B[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (b.degree() == ctx.delta) lcB.at(i, j) = b.lead_coeff();
        }
    const Poly<K> cp = detail::charpoly(lcB);
    // q(s) = det(s*lc(e)I + lcB) up to sign: substitute z = -s*lc(e).
    const K lce = ctx.e.lead_coeff();
    Poly<K> q;
    K zpow(1);
    for (int j = 0; j <= cp.degree(); ++j) {
        q += Poly<K>::monomial(cp.coeff(j) * zpow, j);
        zpow = zpow * (-lce);
    }
    int ell = 0;
    for (long r : integer_roots(q, seed))
        if (r > ell) ell = static_cast<int>(r);
    return ell;
}

/// Assembles the context for a computed local frame over the denominator e.
/// The seed only steers the specialization points inside the integer-root
/// filter; the result is seed-independent.
inline PhiContext make_phi_context(const LocalFrameData& lf, const XPoly& e,
                                   unsigned seed = 20240914u) {
    PhiContext ctx;
    ctx.lambda = lf.lambda;
    ctx.e = e;
    ctx.B = lf.B;
    ctx.delta = lf.lambda + e.degree() - 1;
    int degB = -1;
    for (const auto& row : lf.B)
        for (const XPoly& b : row) degB = std::max(degB, b.degree());
    ctx.case1 = degB < ctx.delta;
    if (degB > ctx.delta)
        throw std::domain_error("make_phi_context: deg B exceeds its bound; invalid local frame");
    ctx.ell = compute_ell(ctx, seed);
    return ctx;
}

/// S = phi_V(P1) + S2 with S2 in the standard complement of the phi-image
/// over the window [ctx.lower, jmax].
struct NvReduction {
    LaurentVec P1;
    LaurentVec S2;
    int jmax = 0;
};

inline NvReduction nv_reduce(const LaurentVec& S, const PhiContext& ctx) {
    const int n = S.comps();
    NvReduction out{LaurentVec(n), S, ctx.lower};
    if (S.is_zero()) return out;
    const int jmax = std::max({ctx.ell, S.max_exp() - ctx.delta, ctx.lower});
    out.jmax = jmax;

    // Echelonize the phi-images of the window monomials, tracking the
    // monomial preimage of every stored row.
    struct ERow {
        LaurentVec::Mono lead;
        LaurentVec v;    // unit leading coefficient
        LaurentVec tag;  // preimage: v = phi_V(tag) modulo earlier rows
    };
    std::vector<ERow> ech;
    auto find = [&](const LaurentVec::Mono& m) -> const ERow* {
        for (const auto& r : ech)
            if (r.lead == m) return &r;
        return nullptr;
    };
    for (int j = jmax; j >= ctx.lower; --j)
        for (int i = 0; i < n; ++i) {
            LaurentVec tag(n);
            tag.add(j, i, K(1));
            LaurentVec r = phi_V(tag, ctx);
            for (;;) {
                auto ld = r.lead();
                if (!ld) break;
                const ERow* hit = find(*ld);
                if (!hit) break;
                const K alpha = -r.get(ld->first, ld->second);
                r.axpy(alpha, hit->v);
                tag.axpy(alpha, hit->tag);
            }
            if (auto ld = r.lead()) {
                const K inv = K(1) / r.get(ld->first, ld->second);
                r.scale(inv);
                tag.scale(inv);
                ech.push_back({*ld, std::move(r), std::move(tag)});
            }
        }

    // Eliminate every reducible monomial of S, highest first.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& mono : out.S2.support()) {
            const ERow* hit = find(mono);
            if (!hit) continue;
            const K alpha = -out.S2.get(mono.first, mono.second);
            out.S2.axpy(alpha, hit->v);
            out.P1.axpy(-alpha, hit->tag);
            changed = true;
            break;
        }
    }

    // The defining invariant, checked on every call.
    LaurentVec probe = phi_V(out.P1, ctx);
    probe.axpy(K(1), out.S2);
    probe.axpy(K(-1), S);
    if (!probe.is_zero()) throw std::logic_error("nv_reduce: invariant S = phi(P1) + S2 failed");
    return out;
}

/**
 * Full additive decomposition relative to the frame pair (W, V):
 *     f = g' + (1/d) sum R_i w_i + (1/(x^lambda e)) sum Q_(k,i) x^k nu_i
 * with d squarefree and coprime to e, deg R_i < deg d, and Q in the
 * standard complement.  R = Q = 0 exactly when f is a derivative.
 */
struct AdditiveDecomposition {
    AModule::Vec g;         // integrated part, power-basis coordinates
    std::vector<XPoly> R;   // finite simple-pole numerators over d
    XPoly d;                // squarefree, coprime to e
    LaurentVec P1{1};       // window preimage absorbed into g
    LaurentVec Q{1};        // canonical remainder in N_V
    HermiteForm hermite;    // the underlying first-stage reduction
};

inline AdditiveDecomposition additive_decompose(const BasisFrame& W, const DiffData& dd,
                                                const LocalFrameData& lf,
                                                const std::vector<int>& taus,
                                                const PhiContext& ctx, const AModule::Vec& f) {
    const int n = W.size();
    AdditiveDecomposition out;
    out.hermite = hermite_reduce(W, dd, f);
    out.d = div_exact(out.hermite.h_den, dd.e);

    // Split each h_i = R_i/d + s_i/e by partial fractions.
    std::vector<XPoly> s(static_cast<size_t>(n));
    out.R.assign(static_cast<size_t>(n), XPoly());
    if (out.d.degree() == 0) {
        for (int i = 0; i < n; ++i) s[static_cast<size_t>(i)] = out.hermite.h_nums[static_cast<size_t>(i)];
        out.d = XPoly(K(1));
    } else {
        const auto eg = xgcd(out.d, ctx.e);
        if (eg.g.degree() != 0)
            throw std::logic_error("additive_decompose: d and e share a factor");
        for (int i = 0; i < n; ++i) {
            const XPoly& num = out.hermite.h_nums[static_cast<size_t>(i)];
            const XPoly nu = num * eg.u;  // the 1/d share
            out.R[static_cast<size_t>(i)] = nu % out.d;
            const XPoly q = div_exact(nu - out.R[static_cast<size_t>(i)], out.d);
            s[static_cast<size_t>(i)] = num * eg.s + q * ctx.e;
        }
    }

    // Change to the local rows: component i picks up x^{lambda - tau_i}.
    std::vector<int> shifts(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) shifts[static_cast<size_t>(i)] = ctx.lambda - taus[static_cast<size_t>(i)];
    auto red = nv_reduce(to_laurent(s, shifts), ctx);
    out.P1 = std::move(red.P1);
    out.Q = std::move(red.S2);

    // g = Hermite's g plus the reduced preimage P1.V.
    out.g = out.hermite.g_element(W);
    for (const auto& [k, i] : out.P1.support()) {
        const XRat c = XRat(XPoly::monomial(out.P1.get(k, i), k));
        for (int j = 0; j < n; ++j)
            out.g[static_cast<size_t>(j)] =
                out.g[static_cast<size_t>(j)] + c * lf.frame.row(i)[static_cast<size_t>(j)];
    }

    // Exact residual check of the decomposition identity.
    const XPoly xle = ctx.e.shifted(ctx.lambda);
    std::vector<XRat> vc(static_cast<size_t>(n)), wc(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        XPoly qi;
        for (const auto& [k, j] : out.Q.support())
            if (j == i) qi += XPoly::monomial(out.Q.get(k, i), k);
        vc[static_cast<size_t>(i)] = XRat(qi, xle);
        wc[static_cast<size_t>(i)] = XRat(out.R[static_cast<size_t>(i)], out.d);
    }
    AModule::Vec residual = detail::vec_sub(f, W.mod().x_derivative(out.g));
    residual = detail::vec_sub(residual, W.assemble(wc));
    residual = detail::vec_sub(residual, lf.frame.assemble(vc));
    for (const XRat& c : residual)
        if (!c.is_zero()) throw std::logic_error("additive_decompose: identity failed");
    return out;
}

/// True when the decomposition certifies integrability.
inline bool decomposition_is_zero(const AdditiveDecomposition& dec) {
    if (!dec.Q.is_zero()) return false;
    for (const XPoly& r : dec.R)
        if (!r.is_zero()) return false;
    return true;
}

}  // namespace ftel
