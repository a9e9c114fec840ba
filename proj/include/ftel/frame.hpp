#pragma once
/**
 * @file frame.hpp
 * Frames (bases of the module given by power-basis coordinate rows) and
 * the bookkeeping attached to them:
 *
 *   - the differentiation matrix e, M with e w_i' = sum_j M_ij w_j,
 *   - the t-matrix tM with e (dt w_i) = sum_j tM_ij w_j,
 *   - normalization at infinity against a local integral basis,
 *   - the local frame nu_i = x^{tau_i} w_i with its own matrix B,
 *   - the space V of everywhere-integral elements and its derivative
 *     space U.
 *
 * Integrality itself is a property of the inputs (frames are supplied,
 * not computed here); the routines check the consequences they depend
 * on (divisibility, degree bounds) and reject inputs that break them.
 */
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "ore.hpp"

namespace ftel {

/// Order at infinity of a nonzero rational function: positive when it
/// vanishes at infinity, negative when it has a pole there.
inline int ord_at_infinity(const XRat& f) {
    if (f.is_zero()) throw std::invalid_argument("ord_at_infinity: zero argument");
    return f.den().degree() - f.num().degree();
}

/// x^k as an element of K(x), for any sign of k.
inline XRat x_power(int k) {
    if (k >= 0) return XRat(XPoly::monomial(K(1), k));
    return XRat(XPoly(1), XPoly::monomial(K(1), -k));
}

/// e and M of e w_i' = sum_j M_ij w_j (e monic, M polynomial,
/// gcd(e, entries of M) = 1).
struct DiffData {
    XPoly e;
    std::vector<std::vector<XPoly>> M;
};

/**
 * A basis of the module, stored as rows of power-basis coordinates.
 * The change-of-basis matrix is inverted once at construction, so
 * coordinate computations are matrix-vector products.  The module must
 * outlive the frame.
 */
class BasisFrame {
public:
    using Vec = AModule::Vec;

    BasisFrame(const AModule& mod, std::vector<Vec> rows)
        : mod_(&mod), rows_(std::move(rows)) {
        const int n = mod_->order();
        if (static_cast<int>(rows_.size()) != n)
            throw std::invalid_argument("BasisFrame: need exactly n rows");
        for (const auto& r : rows_)
            if (static_cast<int>(r.size()) != n)
                throw std::invalid_argument("BasisFrame: row length mismatch");
        Mat<XRat> wt(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) wt.at(j, i) = rows_[i][j];
        try {
            wtinv_ = inverse(wt);
        } catch (const std::domain_error&) {
            throw std::invalid_argument("BasisFrame: rows are linearly dependent");
        }
    }

    int size() const { return static_cast<int>(rows_.size()); }
    const AModule& mod() const { return *mod_; }
    const std::vector<Vec>& rows() const { return rows_; }
    const Vec& row(int i) const { return rows_[static_cast<size_t>(i)]; }

    /// Coordinates c with v = sum_i c_i row_i.
    Vec coords(const Vec& v) const { return mat_vec(wtinv_, v); }

    /// Power-basis coordinates of sum_i c_i row_i.
    Vec assemble(const Vec& c) const {
        Vec out(rows_.size());
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (c[i].is_zero()) continue;
            for (size_t j = 0; j < rows_.size(); ++j) out[j] += c[i] * rows_[i][j];
        }
        return out;
    }

    // Bookkeeping: differentiation data and the t-matrix are attached by
    // whoever computes them; tags record claimed properties of the frame
    // ("global-integral", "local-at-infinity", "normal-at-infinity", ...).
    std::optional<DiffData> diff;
    std::optional<std::vector<std::vector<XPoly>>> tmat;

    bool has_tag(const std::string& t) const {
        for (const auto& s : tags_) if (s == t) return true;
        return false;
    }
    BasisFrame& add_tag(std::string t) {
        if (!has_tag(t)) tags_.push_back(std::move(t));
        return *this;
    }
    const std::vector<std::string>& tags() const { return tags_; }

private:
    const AModule* mod_;
    std::vector<Vec> rows_;
    Mat<XRat> wtinv_;
    std::vector<std::string> tags_;
};

/**
 * Differentiation data of a frame: the denominator e is the (monic) lcm
 * of the coordinate denominators of the derivatives, the common content
 * of (e, M) is divided out.  For a globally integral frame e comes out
 * squarefree; that is a property of the input, not enforced here.
 */
inline DiffData diff_matrix(const BasisFrame& W) {
    const int n = W.size();
    std::vector<BasisFrame::Vec> coords;
    coords.reserve(static_cast<size_t>(n));
    XPoly e(1);
    for (int i = 0; i < n; ++i) {
        auto cr = W.coords(W.mod().x_derivative(W.row(i)));
        for (const auto& c : cr)
            if (!c.is_zero()) e = poly_lcm(e, c.den());
        coords.push_back(std::move(cr));
    }
    std::vector<std::vector<XPoly>> M(n, std::vector<XPoly>(n));
    XPoly g = e;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            XRat m = coords[i][j] * XRat(e);
            if (!m.is_polynomial())
                throw std::logic_error("diff_matrix: denominator does not divide e");
            M[i][j] = m.num();
            if (!M[i][j].is_zero()) g = poly_gcd(g, M[i][j]);
        }
    if (g.degree() > 0) {
        e = div_exact(e, g);
        for (auto& row : M)
            for (auto& p : row) p = p.is_zero() ? p : div_exact(p, g);
    }
    const K lc = e.lead_coeff();
    if (!(lc == K(1))) {
        e = e.divided_by(lc);
        for (auto& row : M)
            for (auto& p : row) p = p.divided_by(lc);
    }
    return {std::move(e), std::move(M)};
}

/**
 * The t-matrix over the same denominator e as the differentiation data:
 * e (dt w_i) = sum_j tM_ij w_j.  For compatible integral inputs the
 * entries are polynomial; a divisibility failure means the frame and the
 * t-action do not belong together and is reported as an error.
 */
inline std::vector<std::vector<XPoly>> t_matrix(const BasisFrame& W,
                                                const TAction& act,
                                                const XPoly& e) {
    const int n = W.size();
    std::vector<std::vector<XPoly>> tM(n, std::vector<XPoly>(n));
    for (int i = 0; i < n; ++i) {
        auto cr = W.coords(act.t_derivative(W.row(i)));
        for (int j = 0; j < n; ++j) {
            XRat m = cr[j] * XRat(e);
            if (!m.is_polynomial())
                throw std::domain_error(
                    "t_matrix: entries are not polynomial over e; "
                    "the frame is not an integral basis compatible with the t-action");
            tM[i][j] = m.num();
        }
    }
    return tM;
}

struct NormalizedFrame {
    BasisFrame frame;
    std::vector<int> taus;
    int iterations;  // number of evaluate-at-infinity passes (1 = already normal)
};

/**
 * Makes a globally integral frame normal at infinity, given a local
 * integral basis Nu at infinity.  Writing row_i = sum_j m_ij nu_j, the
 * exponent tau_i is the largest with x^{tau_i} m_ij pole-free at
 * infinity for all j; the matrix of values at infinity decides whether
 * the x^{tau_i} row_i already form a local integral basis.  If not, a
 * left kernel vector a combines rows: the row with minimal tau among
 * the support of a (smallest index on ties) is replaced by
 * sum_i a_i x^{tau_i - tau_l} row_i, which keeps global integrality and
 * strictly increases tau_1 + ... + tau_n.  The sum is bounded, so the
 * loop terminates; the cap below only guards against invalid inputs.
 */
inline NormalizedFrame normalize_at_infinity(const BasisFrame& W, const BasisFrame& Nu) {
    const int n = W.size();
    auto rows = W.rows();
    bool have_last = false;
    long last_sum = 0;
    for (int pass = 1; pass <= 64; ++pass) {
        std::vector<int> taus(static_cast<size_t>(n), 0);
        std::vector<std::vector<XRat>> m;
        m.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            m.push_back(Nu.coords(rows[static_cast<size_t>(i)]));
            bool any = false;
            int tau = 0;
            for (const auto& c : m.back()) {
                if (c.is_zero()) continue;
                const int o = ord_at_infinity(c);
                tau = any ? std::min(tau, o) : o;
                any = true;
            }
            if (!any) throw std::invalid_argument("normalize_at_infinity: zero frame row");
            taus[static_cast<size_t>(i)] = tau;
        }
        long sum = 0;
        for (int t : taus) sum += t;
        if (have_last && !(sum > last_sum))
            throw std::logic_error("normalize_at_infinity: tau-sum failed to increase");
        have_last = true;
        last_sum = sum;

        // Values of x^{tau_i} m_ij at infinity (denominators are monic,
        // so the value is the leading numerator coefficient when the
        // shifted order is zero, and 0 when it is positive).
        Mat<K> B(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const XRat& c = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (c.is_zero()) continue;
                if (ord_at_infinity(c) == taus[static_cast<size_t>(i)])
                    B.at(i, j) = c.num().lead_coeff();
            }
        auto kernel = nullspace(B.transpose());
        if (kernel.empty())
            return {BasisFrame(W.mod(), std::move(rows)), std::move(taus), pass};

        auto a = kernel.front();
        int ell = -1;
        for (int i = 0; i < n; ++i)
            if (!a[static_cast<size_t>(i)].is_zero() &&
                (ell < 0 || taus[static_cast<size_t>(i)] < taus[static_cast<size_t>(ell)]))
                ell = i;
        // Scale so the replaced row enters with coefficient 1; the kernel
        // vector is only defined up to a constant and this choice keeps
        // the output deterministic.
        const K piv = a[static_cast<size_t>(ell)];
        for (auto& ai : a) ai = ai / piv;
        BasisFrame::Vec nr(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (a[static_cast<size_t>(i)].is_zero()) continue;
            const XRat s = XRat(XPoly(a[static_cast<size_t>(i)])) *
                           x_power(taus[static_cast<size_t>(i)] - taus[static_cast<size_t>(ell)]);
            for (int j = 0; j < n; ++j) nr[static_cast<size_t>(j)] += s * rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
        rows[static_cast<size_t>(ell)] = std::move(nr);
    }
    throw std::runtime_error(
        "normalize_at_infinity: iteration cap exceeded; "
        "inputs are not an integral basis pair of a fuchsian operator");
}

struct LocalFrameData {
    BasisFrame frame;  // nu_i = x^{tau_i} w_i
    int lambda;        // minimal with x^lambda e nu_i' polynomial over the frame
    std::vector<std::vector<XPoly>> B;  // x^lambda e nu_i' = sum_j B_ij nu_j
};

/**
 * The local frame nu_i = x^{tau_i} w_i of a frame normal at infinity,
 * with its differentiation data over the denominator x^lambda e; lambda
 * is minimal in N.  The entries must satisfy deg B_ij <= lambda + deg e - 1
 * (the local-at-infinity degree bound); a violation means the supplied
 * tau vector or frame was not what it claimed to be.
 */
inline LocalFrameData build_local_frame(const BasisFrame& Wn,
                                        const std::vector<int>& taus,
                                        const XPoly& e) {
    const int n = Wn.size();
    if (static_cast<int>(taus.size()) != n)
        throw std::invalid_argument("build_local_frame: tau vector length mismatch");
    std::vector<BasisFrame::Vec> vrows(static_cast<size_t>(n), BasisFrame::Vec(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) {
        const XRat s = x_power(taus[static_cast<size_t>(i)]);
        for (int j = 0; j < n; ++j)
            vrows[static_cast<size_t>(i)][static_cast<size_t>(j)] = s * Wn.row(i)[static_cast<size_t>(j)];
    }
    BasisFrame V(Wn.mod(), std::move(vrows));
    std::vector<BasisFrame::Vec> coords;
    coords.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        coords.push_back(V.coords(Wn.mod().x_derivative(V.row(i))));
    for (int lam = 0; lam < 16; ++lam) {
        std::vector<std::vector<XPoly>> B(n, std::vector<XPoly>(n));
        const XRat scale{e.shifted(lam)};
        bool ok = true;
        for (int i = 0; ok && i < n; ++i)
            for (int j = 0; j < n; ++j) {
                XRat p = coords[static_cast<size_t>(i)][static_cast<size_t>(j)] * scale;
                if (!p.is_polynomial()) {
                    ok = false;
                    break;
                }
                B[static_cast<size_t>(i)][static_cast<size_t>(j)] = p.num();
            }
        if (!ok) continue;
        for (const auto& row : B)
            for (const auto& p : row)
                if (p.degree() > lam + e.degree() - 1)
                    throw std::domain_error(
                        "build_local_frame: degree bound violated; "
                        "the frame is not locally integral at infinity");
        return {std::move(V), lam, std::move(B)};
    }
    throw std::runtime_error("build_local_frame: no valid denominator power below cap");
}

struct VSpaceData {
    std::vector<AModule::Vec> basis;             // {x^j w_i : 0 <= j <= tau_i}
    std::vector<AModule::Vec> derivative_basis;  // their x-derivatives, spanning U
    std::vector<std::pair<int, int>> index;      // (i, j) of each basis element
};

/// The space V of everywhere-integral elements of the module, spanned by
/// x^j w_i for 0 <= j <= tau_i (rows with tau_i < 0 contribute nothing),
/// together with the generators of U = {v' : v in V}.
inline VSpaceData v_space(const BasisFrame& Wn, const std::vector<int>& taus) {
    VSpaceData out;
    for (int i = 0; i < Wn.size(); ++i)
        for (int j = 0; j <= taus[static_cast<size_t>(i)]; ++j) {
            AModule::Vec b(static_cast<size_t>(Wn.size()));
            const XRat xj = x_power(j);
            for (int k = 0; k < Wn.size(); ++k)
                b[static_cast<size_t>(k)] = xj * Wn.row(i)[static_cast<size_t>(k)];
            out.derivative_basis.push_back(Wn.mod().x_derivative(b));
            out.index.emplace_back(i, j);
            out.basis.push_back(std::move(b));
        }
    return out;
}

/// Number of distinct roots of p (the degree of its squarefree part).
inline int distinct_root_count(const XPoly& p) {
    if (p.degree() <= 0) return 0;
    return p.degree() - poly_gcd(p, p.derivative()).degree();
}

/**
 * True when v vanishes to order >= 2 at infinity, i.e. x^2 * v still lies
 * in the span of the locally-integral elements x^{tau_i} w_i over the
 * subring of rational functions with no pole at infinity.  Concretely:
 * every coordinate c_i of x^2 * v in the frame satisfies
 * ord_inf(c_i) >= -tau_i.
 */
inline bool has_double_root_at_infinity(const BasisFrame& frame,
                                        const std::vector<int>& taus,
                                        const AModule::Vec& v) {
    if (static_cast<int>(taus.size()) != frame.size())
        throw std::invalid_argument("has_double_root_at_infinity: tau count mismatch");
    const XRat x2 = x_power(2);
    AModule::Vec scaled(v.size());
    for (size_t j = 0; j < v.size(); ++j) scaled[j] = x2 * v[j];
    const std::vector<XRat> c = frame.coords(scaled);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        if (ord_at_infinity(c[i]) < -taus[i]) return false;
    }
    return true;
}

}  // namespace ftel
