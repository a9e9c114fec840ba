#pragma once
/**
 * @file ore.hpp
 * Linear differential operators in D = d/dx with rational-function
 * coefficients, the quotient module by a fixed operator L, and the two
 * commuting derivations on it:
 *
 *   - the x-derivative, which folds D^n back through L, and
 *   - the t-derivative, induced by an element U of the module with
 *     la_t(solution) = U(solution); consistency of U with L is verified
 *     at construction time.
 *
 * Module elements are coordinate vectors over the basis 1, D, ..., D^(n-1).
 */
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tower.hpp"

namespace ftel {

// ------------------------------------------------------------ t-derivatives

inline XPoly t_derivative(const XPoly& p) {
    std::vector<K> c;
    c.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) c.push_back(a.derivative());
    return XPoly(std::move(c));
}

inline XRat t_derivative(const XRat& f) {
    // Same cancellation as Frac::derivative: the x-gcd of den and its
    // t-derivative catches the repeated part of the denominator, because
    // any derivation sends p^e into p^(e-1) * (...).
    if (f.is_polynomial()) return XRat(t_derivative(f.num()));
    XPoly dd = t_derivative(f.den());
    XPoly g = poly_gcd(f.den(), dd);
    if (g.degree() > 0) {
        XPoly d1 = div_exact(f.den(), g);
        return XRat(t_derivative(f.num()) * d1 - f.num() * div_exact(dd, g),
                    f.den() * d1);
    }
    return XRat(t_derivative(f.num()) * f.den() - f.num() * dd, f.den() * f.den());
}

// ----------------------------------------------------------------- operators

class OreOp {
public:
    OreOp() = default;
    explicit OreOp(std::vector<XRat> c) : c_(std::move(c)) { prune(); }
    static OreOp d() { return OreOp({XRat(), XRat(XPoly(1))}); }
    static OreOp monomial(XRat c, int k) {
        std::vector<XRat> v(static_cast<size_t>(k) + 1);
        v.back() = std::move(c);
        return OreOp(std::move(v));
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const XRat& coeff(int i) const {
        static const XRat zero{};
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<size_t>(i)];
    }
    const std::vector<XRat>& coeffs() const { return c_; }

    /// Apply to a rational function: sum c_i * f^(i).
    XRat apply(const XRat& f) const {
        XRat out, di = f;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i > 0) di = di.derivative();
            out += c_[i] * di;
        }
        return out;
    }

    friend OreOp operator+(const OreOp& a, const OreOp& b) {
        std::vector<XRat> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return OreOp(std::move(c));
    }
    friend OreOp operator-(const OreOp& a, const OreOp& b) {
        std::vector<XRat> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        return OreOp(std::move(c));
    }
    OreOp scaled(const XRat& s) const {
        OreOp r(*this);
        for (auto& v : r.c_) v *= s;
        r.prune();
        return r;
    }

    /// Composition (noncommutative): D * a = a * D + a'.
    friend OreOp operator*(const OreOp& a, const OreOp& b) {
        OreOp out;
        OreOp dib = b;  // D^i applied from the left to b
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (i > 0) dib = d_compose(dib);
            out = out + dib.scaled(a.c_[i]);
        }
        return out;
    }

    friend bool operator==(const OreOp& a, const OreOp& b) { return a.c_ == b.c_; }
    friend bool operator!=(const OreOp& a, const OreOp& b) { return !(a == b); }

private:
    std::vector<XRat> c_;
    void prune() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    static OreOp d_compose(const OreOp& m) {
        std::vector<XRat> c(m.c_.size() + 1);
        for (size_t j = 0; j < m.c_.size(); ++j) {
            c[j + 1] += m.c_[j];
            c[j] += m.c_[j].derivative();
        }
        return OreOp(std::move(c));
    }
};

/**
 * Clears x- and t-denominators of operator coefficients and removes the
 * common polynomial and numeric content, fixing the sign of the leading
 * term.  The result has coprime coefficients in Z[t][x]; as a left
 * multiple by a unit it defines the same solution space.
 */
inline std::vector<XPoly> normalize_operator_coeffs(const std::vector<XRat>& in) {
    if (in.empty()) return {};
    XPoly D(K(1));
    for (const auto& f : in)
        if (!f.is_zero()) D = poly_lcm(D, f.den());
    std::vector<XPoly> nums;
    nums.reserve(in.size());
    for (const auto& f : in) nums.push_back(f.num() * div_exact(D, f.den()));
    XPoly G;
    for (const auto& p : nums) G = poly_gcd(G, p);
    if (G.degree() > 0)
        for (auto& p : nums) p = div_exact(p, G);
    // Clear denominators in t.
    TPoly Lt(1);
    for (const auto& p : nums)
        for (const auto& c : p.coeffs())
            if (!c.is_zero()) Lt = poly_lcm(Lt, c.den());
    K scale{Lt};
    // Remove the numeric content and make the overall leading term positive.
    mpz_class g(0), l(1);
    for (const auto& p : nums)
        for (const auto& c : p.coeffs()) {
            TPoly q = c.num() * div_exact(Lt, c.den());
            for (const auto& r : q.coeffs()) {
                if (r.is_zero()) continue;
                g = gcd(g, r.num());
                l = lcm(l, r.den());
            }
        }
    if (g != 0) scale = scale * K(TPoly(Rat(l, g)));
    std::vector<XPoly> out;
    out.reserve(nums.size());
    for (const auto& p : nums) out.push_back(p.scaled(scale));
    for (auto it = out.rbegin(); it != out.rend(); ++it)
        if (!it->is_zero()) {
            if (it->lead_coeff().num().lead_coeff().sgn() < 0)
                for (auto& p : out) p = -p;
            break;
        }
    return out;
}

/**
 * Substitute x -> a + 1/x into the operator: coefficients are composed
 * with a + 1/x and d/dx becomes -x^2 d/dx.  The result is normalized via
 * normalize_operator_coeffs.  For a = 0 the substitution is an involution.
 */
inline OreOp mobius_substitute(const OreOp& op, const Rat& a) {
    const XRat sub = XRat(XPoly(K(TPoly(a)))) + XRat(XPoly(1), XPoly::gen());
    auto compose = [&](const XRat& f) {
        XRat num, den;
        // Evaluate numerator and denominator polynomials at a + 1/x.
        auto eval = [&](const XPoly& p) {
            XRat v;
            for (int i = p.degree(); i >= 0; --i) v = v * sub + XRat(XPoly(p.coeff(i)));
            return v;
        };
        num = eval(f.num());
        den = eval(f.den());
        return num / den;
    };
    const OreOp dnew = OreOp::monomial(-XRat(XPoly::gen() * XPoly::gen()), 1);
    OreOp out, dpow(std::vector<XRat>{XRat(XPoly(1))});
    for (int i = 0; i <= op.order(); ++i) {
        if (i > 0) dpow = dnew * dpow;
        if (!op.coeff(i).is_zero()) out = out + dpow.scaled(compose(op.coeff(i)));
    }
    std::vector<XRat> cleaned;
    for (const XPoly& p : normalize_operator_coeffs(out.coeffs())) cleaned.emplace_back(p);
    return OreOp(std::move(cleaned));
}

// -------------------------------------------------------------- the module

class AModule {
public:
    using Vec = std::vector<XRat>;

    explicit AModule(OreOp L) : L_(std::move(L)) {
        n_ = L_.order();
        if (n_ < 1) throw std::invalid_argument("AModule: operator order must be >= 1");
        const XRat& top = L_.coeff(n_);
        top_.resize(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) top_[static_cast<size_t>(i)] = -(L_.coeff(i) / top);
    }

    int order() const { return n_; }
    const OreOp& op() const { return L_; }

    Vec zero() const { return Vec(static_cast<size_t>(n_)); }
    Vec basis(int j) const {
        Vec v = zero();
        v[static_cast<size_t>(j)] = XRat(XPoly(1));
        return v;
    }
    static bool vec_is_zero(const Vec& v) {
        for (const auto& c : v)
            if (!c.is_zero()) return false;
        return true;
    }

    /// Reduce coordinates over 1, D, ..., D^(m) (m >= n allowed) to the
    /// module basis, folding the top powers through L.
    Vec reduce(std::vector<XRat> raw) const {
        if (static_cast<int>(raw.size()) <= n_) {
            raw.resize(static_cast<size_t>(n_));
            return raw;
        }
        // rep[k] = basis coordinates of the class of D^(n+k).
        std::vector<Vec> rep;
        rep.push_back(top_);
        while (static_cast<int>(rep.size()) < static_cast<int>(raw.size()) - n_)
            rep.push_back(x_derivative(rep.back()));
        Vec out(raw.begin(), raw.begin() + n_);
        for (size_t m = static_cast<size_t>(n_); m < raw.size(); ++m) {
            const Vec& r = rep[m - static_cast<size_t>(n_)];
            for (int j = 0; j < n_; ++j) out[static_cast<size_t>(j)] += raw[m] * r[static_cast<size_t>(j)];
        }
        return out;
    }

    /// Derivation in x: differentiate coefficients and shift, then fold.
    Vec x_derivative(const Vec& v) const {
        check(v);
        std::vector<XRat> raw(static_cast<size_t>(n_) + 1);
        for (int j = 0; j < n_; ++j) {
            raw[static_cast<size_t>(j)] += v[static_cast<size_t>(j)].derivative();
            raw[static_cast<size_t>(j) + 1] += v[static_cast<size_t>(j)];
        }
        return reduce(std::move(raw));
    }

    /// Apply an operator (its class acts by iterated x-derivation).
    Vec apply(const OreOp& P, const Vec& v) const {
        check(v);
        Vec out = zero(), di = v;
        for (int i = 0; i <= P.order(); ++i) {
            if (i > 0) di = x_derivative(di);
            if (P.coeff(i).is_zero()) continue;
            for (int j = 0; j < n_; ++j)
                out[static_cast<size_t>(j)] += P.coeff(i) * di[static_cast<size_t>(j)];
        }
        return out;
    }

    void check(const Vec& v) const {
        if (static_cast<int>(v.size()) != n_)
            throw std::invalid_argument("AModule: coordinate length mismatch");
    }

private:
    OreOp L_;
    int n_;
    Vec top_;  // D^n = sum top_[i] * D^i
};

/**
 * The t-derivation on the module, induced by an element U with
 * la_t(solution) = U(solution).  The two derivations must commute; this
 * is checked on the basis (which suffices, the commutator being linear
 * over the coefficient field).
 */
class TAction {
public:
    TAction(const AModule& m, AModule::Vec u) : mod_(&m) {
        m.check(u);
        du_.push_back(std::move(u));
        for (int j = 1; j < m.order(); ++j) du_.push_back(m.x_derivative(du_.back()));
        for (int j = 0; j < m.order(); ++j) {
            auto e = m.basis(j);
            auto a = t_derivative(m.x_derivative(e));
            auto b = m.x_derivative(t_derivative(e));
            for (int i = 0; i < m.order(); ++i)
                if (a[static_cast<size_t>(i)] != b[static_cast<size_t>(i)])
                    throw std::invalid_argument(
                        "TAction: t-action is incompatible with the operator (derivations do not commute)");
        }
    }

    const AModule& mod() const { return *mod_; }
    const AModule::Vec& u() const { return du_.front(); }

    AModule::Vec t_derivative(const AModule::Vec& v) const {
        mod_->check(v);
        AModule::Vec out(v.size());
        for (size_t j = 0; j < v.size(); ++j) out[j] = ftel::t_derivative(v[j]);
        for (size_t j = 0; j < v.size(); ++j) {
            if (v[j].is_zero()) continue;
            const auto& dju = du_[j];
            for (size_t i = 0; i < v.size(); ++i) out[i] += v[j] * dju[i];
        }
        return out;
    }

private:
    const AModule* mod_;
    std::vector<AModule::Vec> du_;  // du_[j] = j-th x-derivative of U
};

}  // namespace ftel
