// Telescoper search: the minimal operator sum c_k Dt^k annihilating the
// class of f modulo x-derivatives, with an exact certificate.  Two
// interchangeable reduction backends produce the per-order residual forms:
// the Hermite remainder reduced modulo U, or the confined additive
// decomposition.  Both are K-linear with canonical zero, so the telescoper
// appears as the first K-dependence among the residuals.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ftel/hermite.hpp"
#include "ftel/polyred.hpp"

namespace ftel {

struct Telescoper {
    std::vector<K> coeffs;          // c_0 + c_1 Dt + ... + c_r Dt^r, c_r nonzero
    std::vector<XRat> certificate;  // frame coordinates of g with P(f) = g'
    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

namespace detail {

/// First K-linear dependence among the given coordinate vectors, or nullopt
/// if they are independent.  Exact: flattens per component over the lcm of
/// the denominators seen and takes the left null space.
inline std::optional<std::vector<K>> find_dependence(
    const std::vector<std::vector<XRat>>& forms) {
    if (forms.empty()) return std::nullopt;
    const size_t n = forms.front().size();
    std::vector<XPoly> D(n, XPoly(1));
    for (const auto& form : forms)
        for (size_t j = 0; j < n; ++j) D[j] = poly_lcm(D[j], form[j].den());

    std::vector<std::vector<XPoly>> nums(forms.size(), std::vector<XPoly>(n));
    std::vector<int> width(n, 1);
    for (size_t k = 0; k < forms.size(); ++k)
        for (size_t j = 0; j < n; ++j) {
            nums[k][j] = forms[k][j].num() * div_exact(D[j], forms[k][j].den());
            width[j] = std::max(width[j], nums[k][j].degree() + 1);
        }
    int total = 0;
    std::vector<int> offset(n, 0);
    for (size_t j = 0; j < n; ++j) {
        offset[j] = total;
        total += width[j];
    }

    // Columns index the forms; the right null space is then the dependence.
    Mat<K> A(total, static_cast<int>(forms.size()));
    for (size_t k = 0; k < forms.size(); ++k)
        for (size_t j = 0; j < n; ++j)
            for (int d = 0; d <= nums[k][j].degree(); ++d)
                A.at(offset[j] + d, static_cast<int>(k)) = nums[k][j].coeff(d);
    auto ker = nullspace(A);
    if (ker.empty()) return std::nullopt;
    return ker.front();
}

/// Scale so the Dt-coefficients, cleared of denominators and common factors,
/// have integer content one and a positive leading numeral; the certificate
/// is scaled along.  Trailing zero coefficients are dropped first.
inline void normalize_telescoper(Telescoper& tel) {
    while (!tel.coeffs.empty() && tel.coeffs.back() == K(0)) tel.coeffs.pop_back();
    if (tel.coeffs.empty()) throw std::logic_error("normalize_telescoper: zero operator");

    TPoly m(1);
    for (const K& c : tel.coeffs) m = poly_lcm(m, c.den());
    std::vector<TPoly> p;
    p.reserve(tel.coeffs.size());
    for (const K& c : tel.coeffs) {
        const K q = c * K(m);
        if (!q.is_polynomial()) throw std::logic_error("normalize_telescoper: clearing failed");
        p.push_back(q.num());
    }
    TPoly g;
    for (const TPoly& q : p)
        if (!q.is_zero()) g = g.is_zero() ? monic(q) : poly_gcd(g, q);
    for (TPoly& q : p) q = div_exact(q, g);

    mpz_class num_gcd = 0, den_lcm = 1;
    for (const TPoly& q : p)
        for (int i = 0; i <= q.degree(); ++i) {
            const Rat& r = q.coeff(i);
            if (r.is_zero()) continue;
            num_gcd = gcd(num_gcd, r.num());
            den_lcm = lcm(den_lcm, r.den());
        }
    Rat content(num_gcd, den_lcm);
    const TPoly& top = p.back();
    if ((top.coeff(top.degree()) / content).sgn() < 0) content = -content;

    const K scale = (K(m) / K(g)) / K(TPoly(content));
    const XRat xscale{XPoly(scale)};
    for (K& c : tel.coeffs) c = c * scale;
    for (XRat& c : tel.certificate) c = c * xscale;
}

template <class Reducer>
std::optional<Telescoper> telescope_loop(const BasisFrame& frame, const TAction& act,
                                         const AModule::Vec& f, int max_order,
                                         Reducer&& reduce) {
    std::vector<std::vector<XRat>> residuals;
    std::vector<std::vector<XRat>> pieces;  // dt^k f = piece_k' + residual_k
    AModule::Vec fk = f;
    std::vector<AModule::Vec> fks;
    for (int k = 0; k <= max_order; ++k) {
        if (k > 0) fk = act.t_derivative(fk);
        fks.push_back(fk);
        auto [residual, piece] = reduce(fk);
        residuals.push_back(std::move(residual));
        pieces.push_back(std::move(piece));
        auto dep = find_dependence(residuals);
        if (!dep) continue;

        Telescoper tel;
        tel.coeffs = std::move(*dep);
        tel.certificate.assign(frame.size(), XRat());
        for (size_t j = 0; j < tel.coeffs.size(); ++j) {
            if (tel.coeffs[j] == K(0)) continue;
            const XRat c{XPoly(tel.coeffs[j])};
            for (size_t i = 0; i < tel.certificate.size(); ++i)
                tel.certificate[i] += c * pieces[j][i];
        }
        normalize_telescoper(tel);

        AModule::Vec lhs(static_cast<size_t>(frame.mod().order()));
        for (size_t j = 0; j < tel.coeffs.size(); ++j) {
            if (tel.coeffs[j] == K(0)) continue;
            const XRat c{XPoly(tel.coeffs[j])};
            for (size_t i = 0; i < lhs.size(); ++i) lhs[i] += c * fks[j][i];
        }
        const AModule::Vec rhs = frame.mod().x_derivative(frame.assemble(tel.certificate));
        for (size_t i = 0; i < lhs.size(); ++i)
            if (lhs[i] != rhs[i])
                throw std::logic_error("telescope: certificate verification failed");
        return tel;
    }
    return std::nullopt;
}

inline void require_infinity_condition(const BasisFrame& frame, const std::vector<int>& taus,
                                       const AModule::Vec& f) {
    if (!has_double_root_at_infinity(frame, taus, f))
        throw std::invalid_argument(
            "telescope: input has no double root at infinity; move a regular "
            "point there with mobius_substitute first");
}

inline int default_max_order(const BasisFrame& frame, const XPoly& e, int requested) {
    if (requested >= 0) return requested;
    return frame.size() * (e.degree() + 3) + 2;
}

}  // namespace detail

/// Telescoper via Hermite reduction and reduction modulo U.
inline std::optional<Telescoper> telescope_canonical(const BasisFrame& frame,
                                                     const DiffData& dd,
                                                     const std::vector<int>& taus,
                                                     const VSpaceData& V, const TAction& act,
                                                     const AModule::Vec& f,
                                                     int max_order = -1) {
    detail::require_infinity_condition(frame, taus, f);
    max_order = detail::default_max_order(frame, dd.e, max_order);
    auto reduce = [&](const AModule::Vec& fk) {
        HermiteForm form = hermite_reduce(frame, dd, fk);
        UReduction red = reduce_mod_U(frame, V, form);
        std::vector<XRat> piece = form.g_coords;
        for (size_t d = 0; d < red.combo.size(); ++d) {
            if (red.combo[d] == K(0)) continue;
            const auto [i, j] = V.index[d];
            piece[static_cast<size_t>(i)] += XRat(XPoly::monomial(red.combo[d], j));
        }
        return std::make_pair(std::move(red.h_coords), std::move(piece));
    };
    return detail::telescope_loop(frame, act, f, max_order, reduce);
}

/// Telescoper via the confined additive decomposition.
inline std::optional<Telescoper> telescope_polyred(const BasisFrame& frame, const DiffData& dd,
                                                   const LocalFrameData& lf,
                                                   const std::vector<int>& taus,
                                                   const PhiContext& ctx, const TAction& act,
                                                   const AModule::Vec& f, int max_order = -1) {
    detail::require_infinity_condition(frame, taus, f);
    max_order = detail::default_max_order(frame, dd.e, max_order);
    auto reduce = [&](const AModule::Vec& fk) {
        AdditiveDecomposition dec = additive_decompose(frame, dd, lf, taus, ctx, fk);
        std::vector<XRat> residual =
            frame.coords(detail::vec_sub(fk, frame.mod().x_derivative(dec.g)));
        return std::make_pair(std::move(residual), frame.coords(dec.g));
    };
    return detail::telescope_loop(frame, act, f, max_order, reduce);
}

inline bool verify_telescoper(const BasisFrame& frame, const TAction& act,
                              const AModule::Vec& f, const Telescoper& tel) {
    AModule::Vec lhs(static_cast<size_t>(frame.mod().order()));
    AModule::Vec fk = f;
    for (size_t j = 0; j < tel.coeffs.size(); ++j) {
        if (j > 0) fk = act.t_derivative(fk);
        if (tel.coeffs[j] == K(0)) continue;
        const XRat c{XPoly(tel.coeffs[j])};
        for (size_t i = 0; i < lhs.size(); ++i) lhs[i] += c * fk[i];
    }
    const AModule::Vec rhs = frame.mod().x_derivative(frame.assemble(tel.certificate));
    for (size_t i = 0; i < lhs.size(); ++i)
        if (lhs[i] != rhs[i]) return false;
    return true;
}

}  // namespace ftel
