#pragma once

// Hermite reduction of a module element with respect to an integral basis:
// splits f into an exact derivative g' plus a remainder h whose coordinate
// denominators are squarefree (times the frame denominator e).  On top of
// that sits the integrability decision: after reducing the remainder
// against the derivatives of the everywhere-integral elements, f is a
// derivative exactly when nothing is left.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ftel/frame.hpp"
#include "ftel/linalg.hpp"
#include "ftel/ore.hpp"
#include "ftel/poly.hpp"
#include "ftel/tower.hpp"

namespace ftel {

inline constexpr int kMaxHermiteRounds = 60;

/**
 * One elimination round.  With the current representation
 * f = sum_j (rhs_j / (u v^mu)) w_j the unknown coefficients g_i
 * (deg g_i < deg v) satisfy, component by component,
 *
 *     rhs_j = sum_i g_i * system[j][i]   (mod v),
 *
 * where system[j][i] = w*M[i][j] - (mu-1)*u*v'*delta_ij and w = uv/e.
 * Subtracting (sum_i g_i/v^{mu-1} w_i)' then lowers the multiplicity
 * of v in the denominator.
 */
struct HermiteStep {
    XPoly v;                                 // squarefree factor being removed
    int mu = 0;                              // its multiplicity in the denominator
    XPoly u;                                 // cofactor: denominator = u * v^mu
    XPoly w;                                 // u*v/e, polynomial by integrality
    std::vector<std::vector<XPoly>> system;  // system[j][i], unreduced
    std::vector<XPoly> rhs;                  // cleared numerators of f
    std::vector<XPoly> g;                    // solution, deg g[i] < deg v
};

/// Result of the full reduction: f = g' + h with h = sum_i (h_nums[i]/h_den) w_i,
/// h_den squarefree-times-e, and every coordinate of g proper.
struct HermiteForm {
    std::vector<XRat> g_coords;     // frame coordinates of the integrated part
    std::vector<XPoly> h_nums;      // remainder numerators over h_den
    XPoly h_den;                    // common denominator, squarefree multiple of e
    std::vector<HermiteStep> steps;

    std::vector<XRat> h_coords() const {
        std::vector<XRat> c(h_nums.size());
        for (size_t i = 0; i < h_nums.size(); ++i) c[i] = XRat(h_nums[i], h_den);
        return c;
    }
    AModule::Vec g_element(const BasisFrame& frame) const { return frame.assemble(g_coords); }
    AModule::Vec h_element(const BasisFrame& frame) const { return frame.assemble(h_coords()); }
};

/**
 * Solves the mod-v linear system of one reduction round.  nums are the
 * cleared numerators of f over u*v^mu.  Returns the full step record;
 * throws std::domain_error when the system is singular, which certifies
 * that the frame is not locally integral at a root of v.
 */
inline HermiteStep hermite_step(const BasisFrame& frame, const DiffData& dd,
                                const std::vector<XPoly>& nums, const XPoly& v, int mu,
                                const XPoly& u) {
    const int n = frame.size();
    if (static_cast<int>(nums.size()) != n)
        throw std::invalid_argument("hermite_step: numerator count mismatch");
    if (mu < 2) throw std::invalid_argument("hermite_step: multiplicity must exceed 1");

    HermiteStep st;
    st.v = v;
    st.mu = mu;
    st.u = u;
    {
        const XRat q = XRat(u * v, dd.e);
        if (!q.is_polynomial())
            throw std::domain_error("hermite_step: e does not divide u*v; frame is not integral");
        st.w = q.num();
    }
    const XPoly up = u * v.derivative() * XPoly(K(mu - 1));

    st.system.assign(static_cast<size_t>(n), std::vector<XPoly>(static_cast<size_t>(n)));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            XPoly p = st.w * dd.M[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (i == j) p = p - up;
            st.system[static_cast<size_t>(j)][static_cast<size_t>(i)] = std::move(p);
        }
    st.rhs = nums;

    // Linearize over K: unknown (i,k) is the x^k coefficient of g_i and
    // equation (j,m) compares x^m coefficients in the w_j component mod v.
    const int dv = v.degree();
    Mat<K> A(n * dv, n * dv);
    std::vector<K> b(static_cast<size_t>(n) * static_cast<size_t>(dv), K(0));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            XPoly q = st.system[static_cast<size_t>(j)][static_cast<size_t>(i)] % v;
            for (int k = 0; k < dv; ++k) {
                for (int m = 0; m <= q.degree(); ++m) A.at(j * dv + m, i * dv + k) = q.coeff(m);
                if (k + 1 < dv) q = q.shifted(1) % v;
            }
        }
        const XPoly r = nums[static_cast<size_t>(j)] % v;
        for (int m = 0; m <= r.degree(); ++m) b[static_cast<size_t>(j * dv + m)] = r.coeff(m);
    }
    auto sol = solve(A, b);
    if (!sol)
        throw std::domain_error(
            "hermite_step: singular system modulo the chosen factor; "
            "the basis is not locally integral at one of its roots");
    st.g.assign(static_cast<size_t>(n), XPoly());
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < dv; ++k)
            st.g[static_cast<size_t>(i)] += XPoly::monomial((*sol)[static_cast<size_t>(i * dv + k)], k);
    return st;
}

namespace detail {

inline AModule::Vec vec_sub(const AModule::Vec& a, const AModule::Vec& b) {
    AModule::Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

}  // namespace detail

/**
 * Full Hermite reduction of f (power-basis coordinates) with respect to
 * the frame: repeatedly removes the squarefree factor of highest
 * multiplicity (then lowest degree) from the common coordinate
 * denominator until it is squarefree.  The identity f = g' + h is
 * verified exactly before returning.
 */
inline HermiteForm hermite_reduce(const BasisFrame& frame, const DiffData& dd,
                                  const AModule::Vec& f) {
    const int n = frame.size();
    const AModule& A = frame.mod();
    if (static_cast<int>(f.size()) != static_cast<int>(A.order()))
        throw std::invalid_argument("hermite_reduce: element size mismatch");

    HermiteForm out;
    out.g_coords.assign(static_cast<size_t>(n), XRat());
    AModule::Vec cur = f;

    for (int round = 0;; ++round) {
        if (round >= kMaxHermiteRounds)
            throw std::runtime_error("hermite_reduce: no termination; is e squarefree?");
        const std::vector<XRat> fc = frame.coords(cur);
        XPoly D = dd.e;
        for (const XRat& c : fc) D = poly_lcm(D, c.den());
        std::vector<XPoly> nums(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            const XRat cleared = fc[static_cast<size_t>(j)] * XRat(D);
            if (!cleared.is_polynomial())
                throw std::logic_error("hermite_reduce: denominator clearing failed");
            nums[static_cast<size_t>(j)] = cleared.num();
        }

        // Pick the factor to eliminate.  Yun lists at most one factor per
        // multiplicity, so "highest multiplicity, then lowest degree" has a
        // unique answer.
        auto sqf = squarefree_factorization(D);
        const XPoly* v = nullptr;
        int mu = 1;
        for (const auto& [fac, m] : sqf.factors)
            if (m > mu || (m == mu && v && fac.degree() < v->degree())) {
                v = &fac;
                mu = m;
            }
        if (!v) {
            out.h_nums = std::move(nums);
            out.h_den = D;
            break;
        }

        const XPoly u = div_exact(D, power_of(*v, mu));
        HermiteStep st = hermite_step(frame, dd, nums, *v, mu, u);

        std::vector<XRat> contrib(static_cast<size_t>(n));
        const XPoly vpow = power_of(*v, mu - 1);
        for (int i = 0; i < n; ++i)
            contrib[static_cast<size_t>(i)] = XRat(st.g[static_cast<size_t>(i)], vpow);
        cur = detail::vec_sub(cur, A.x_derivative(frame.assemble(contrib)));
        for (int i = 0; i < n; ++i)
            out.g_coords[static_cast<size_t>(i)] =
                out.g_coords[static_cast<size_t>(i)] + contrib[static_cast<size_t>(i)];
        out.steps.push_back(std::move(st));
    }

    // f - g' - h must vanish identically.
    const AModule::Vec check = detail::vec_sub(
        detail::vec_sub(f, A.x_derivative(out.g_element(frame))), out.h_element(frame));
    for (const XRat& c : check)
        if (!c.is_zero()) throw std::logic_error("hermite_reduce: identity f = g' + h failed");
    return out;
}

/// Remainder of the reduction against U = span of derivative_basis.
struct UReduction {
    std::vector<XRat> h_coords;  // reduced remainder, frame coordinates
    std::vector<K> combo;        // coefficients on V.derivative_basis, one per element
    bool in_U = false;           // true when the reduced remainder vanishes
};

/**
 * Reduces the remainder of a HermiteForm modulo U by eliminating against
 * the derivatives of the V-space basis in a fixed echelon order, so the
 * output is a canonical coset representative.  The subtracted combination
 * satisfies h = reduced + sum_d combo[d] * derivative_basis[d].
 */
inline UReduction reduce_mod_U(const BasisFrame& frame, const VSpaceData& V,
                               const HermiteForm& form) {
    UReduction out;
    const AModule& A = frame.mod();
    const size_t n = A.order();
    const AModule::Vec h = form.h_element(frame);
    out.combo.assign(V.derivative_basis.size(), K(0));
    if (V.derivative_basis.empty()) {
        out.h_coords = form.h_coords();
        out.in_U = true;
        for (const XRat& c : out.h_coords)
            if (!c.is_zero()) out.in_U = false;
        return out;
    }

    // Flatten everything over one common denominator so the membership
    // question becomes plain linear algebra over K.
    XPoly D = form.h_den;
    for (const auto& gen : V.derivative_basis)
        for (const XRat& c : gen) D = poly_lcm(D, c.den());
    for (const XRat& c : h) D = poly_lcm(D, c.den());

    auto clear = [&](const AModule::Vec& v) {
        std::vector<XPoly> nums(n);
        for (size_t j = 0; j < n; ++j) {
            const XRat q = v[j] * XRat(D);
            if (!q.is_polynomial()) throw std::logic_error("reduce_mod_U: clearing failed");
            nums[j] = q.num();
        }
        return nums;
    };
    std::vector<std::vector<XPoly>> gen_nums;
    gen_nums.reserve(V.derivative_basis.size());
    for (const auto& gen : V.derivative_basis) gen_nums.push_back(clear(gen));
    const std::vector<XPoly> h_nums = clear(h);

    std::vector<int> width(n, 1);
    auto widen = [&](const std::vector<XPoly>& nums) {
        for (size_t j = 0; j < n; ++j) width[j] = std::max(width[j], nums[j].degree() + 1);
    };
    for (const auto& g : gen_nums) widen(g);
    widen(h_nums);
    std::vector<int> offset(n, 0);
    int total = 0;
    for (size_t j = 0; j < n; ++j) {
        offset[j] = total;
        total += width[j];
    }
    auto flatten = [&](const std::vector<XPoly>& nums) {
        std::vector<K> flat(static_cast<size_t>(total), K(0));
        for (size_t j = 0; j < n; ++j)
            for (int k = 0; k <= nums[j].degree(); ++k)
                flat[static_cast<size_t>(offset[j] + k)] = nums[j].coeff(k);
        return flat;
    };

    Echelon<K> ech(total);
    std::vector<size_t> added;  // which generators actually extended the span
    for (size_t d = 0; d < gen_nums.size(); ++d)
        if (ech.insert(flatten(gen_nums[d]))) added.push_back(d);

    std::vector<K> combo;
    const std::vector<K> res = ech.reduce(flatten(h_nums), &combo);
    for (size_t k = 0; k < combo.size(); ++k) out.combo[added[k]] = combo[k];

    out.in_U = true;
    AModule::Vec reduced(n);
    for (size_t j = 0; j < n; ++j) {
        XPoly p;
        for (int k = 0; k < width[j]; ++k)
            p += XPoly::monomial(res[static_cast<size_t>(offset[j] + k)], k);
        if (!p.is_zero()) out.in_U = false;
        reduced[j] = XRat(p, D);
    }
    out.h_coords = frame.coords(reduced);
    return out;
}

/// Integrability decision for elements with a double root at infinity:
/// f is a derivative in the module iff the Hermite remainder lies in U.
struct IntegrabilityResult {
    bool integrable = false;
    std::vector<XRat> antiderivative;  // frame coordinates of G with G' = f
    HermiteForm form;
    UReduction remainder;
};

inline IntegrabilityResult is_integrable(const BasisFrame& frame, const DiffData& dd,
                                         const std::vector<int>& taus, const VSpaceData& V,
                                         const AModule::Vec& f) {
    if (!has_double_root_at_infinity(frame, taus, f))
        throw std::invalid_argument(
            "is_integrable: input has no double root at infinity; move a regular "
            "point there with mobius_substitute first");
    IntegrabilityResult out;
    out.form = hermite_reduce(frame, dd, f);
    out.remainder = reduce_mod_U(frame, V, out.form);
    out.integrable = out.remainder.in_U;
    if (!out.integrable) return out;

    // G = g + the V-combination whose derivative matched the remainder.
    out.antiderivative = out.form.g_coords;
    for (size_t d = 0; d < out.remainder.combo.size(); ++d) {
        const K& c = out.remainder.combo[d];
        if (c == K(0)) continue;
        const auto [i, j] = V.index[d];
        out.antiderivative[static_cast<size_t>(i)] =
            out.antiderivative[static_cast<size_t>(i)] + XRat(XPoly::monomial(c, j));
    }
    const AModule::Vec check =
        detail::vec_sub(f, frame.mod().x_derivative(frame.assemble(out.antiderivative)));
    for (const XRat& c : check)
        if (!c.is_zero()) throw std::logic_error("is_integrable: antiderivative check failed");
    return out;
}

}  // namespace ftel
