#pragma once
/**
 * @file poly.hpp
 * Dense univariate polynomials over an exact coefficient type T.
 *
 * Coefficients are stored ascending; the representation is canonical
 * (no trailing zeros, the zero polynomial has an empty vector).  The
 * division-based algorithms (div_rem, gcd_euclid, xgcd, Yun squarefree
 * factorization) require T to be a field; they are templates and only
 * instantiated where that holds.
 */
#include <stdexcept>
#include <utility>
#include <vector>

namespace ftel {

template <class T>
class Poly {
public:
    using coeff_type = T;

    Poly() = default;
    Poly(int v) { c_.push_back(T(v)); prune(); }
    explicit Poly(T v) { c_.push_back(std::move(v)); prune(); }
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { prune(); }

    /// The generator (monomial x, coefficient 1).
    static Poly gen() {
        std::vector<T> c{T(0), T(1)};
        return Poly(std::move(c));
    }
    /// c * x^k
    static Poly monomial(T c, int k) {
        if (k < 0) throw std::invalid_argument("Poly: negative exponent");
        std::vector<T> v(static_cast<size_t>(k) + 1, T(0));
        v.back() = std::move(c);
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == T(1); }
    bool is_constant() const { return c_.size() <= 1; }

    /// Coefficient of x^i (zero outside the stored range).
    const T& coeff(int i) const {
        static const T zero{0};
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<size_t>(i)];
    }
    T lead_coeff() const { return c_.empty() ? T(0) : c_.back(); }
    T constant_term() const { return coeff(0); }
    const std::vector<T>& coeffs() const { return c_; }

    Poly operator-() const {
        Poly r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        prune();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        prune();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == T(0)) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    /// Scalar multiply / divide.
    Poly scaled(const T& s) const {
        if (s == T(0)) return Poly();
        Poly r(*this);
        for (auto& x : r.c_) x = x * s;
        r.prune();
        return r;
    }
    Poly divided_by(const T& s) const {
        Poly r(*this);
        for (auto& x : r.c_) x = x / s;
        r.prune();
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> r(c_.size() - 1, T(0));
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<int>(i));
        return Poly(std::move(r));
    }

    T evaluate(const T& v) const {
        T r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * v + c_[i];
        return r;
    }

    /// Multiply by x^k.
    Poly shifted(int k) const {
        if (is_zero() || k == 0) return *this;
        if (k < 0) throw std::invalid_argument("Poly: negative shift");
        std::vector<T> r(c_.size() + static_cast<size_t>(k), T(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i + static_cast<size_t>(k)] = c_[i];
        return Poly(std::move(r));
    }

    Poly pow(int k) const {
        if (k < 0) throw std::invalid_argument("Poly: negative power");
        Poly r(1), b(*this);
        while (k > 0) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    /// Lowest exponent with a nonzero coefficient (valuation); -1 for zero.
    int valuation() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == T(0))) return static_cast<int>(i);
        return -1;
    }

private:
    std::vector<T> c_;
    void prune() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
};

// ---------------------------------------------------------------- field algorithms

template <class T>
Poly<T> poly_gcd(const Poly<T>& a, const Poly<T>& b);

/// Quotient and remainder over a field coefficient type.
template <class T>
std::pair<Poly<T>, Poly<T>> div_rem(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw std::domain_error("Poly: division by zero");
    Poly<T> q, r = a;
    const T binv = T(1) / b.lead_coeff();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const int k = r.degree() - b.degree();
        const T c = r.lead_coeff() * binv;
        q += Poly<T>::monomial(c, k);
        r -= b.scaled(c).shifted(k);
    }
    return {q, r};
}

template <class T>
Poly<T> operator/(const Poly<T>& a, const Poly<T>& b) {
    return div_rem(a, b).first;
}
template <class T>
Poly<T> operator%(const Poly<T>& a, const Poly<T>& b) {
    return div_rem(a, b).second;
}

/// Exact division; throws if the remainder is nonzero.
template <class T>
Poly<T> div_exact(const Poly<T>& a, const Poly<T>& b) {
    auto [q, r] = div_rem(a, b);
    if (!r.is_zero()) throw std::domain_error("Poly: inexact division");
    return q;
}

template <class T>
Poly<T> monic(const Poly<T>& a) {
    if (a.is_zero()) return a;
    return a.divided_by(a.lead_coeff());
}

/// Monic gcd by the Euclidean algorithm (field coefficients).
template <class T>
Poly<T> gcd_euclid(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Extended Euclid: returns (g, s, u) with g = s*a + u*b, g monic.
template <class T>
struct XgcdResult {
    Poly<T> g, s, u;
};
template <class T>
XgcdResult<T> xgcd(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> r0 = a, r1 = b;
    Poly<T> s0(1), s1(0), u0(0), u1(1);
    while (!r1.is_zero()) {
        auto [q, r2] = div_rem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        Poly<T> s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly<T> u2 = u0 - q * u1;
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (r0.is_zero()) return {r0, s0, u0};
    const T lc = r0.lead_coeff();
    return {monic(r0), s0.divided_by(lc), u0.divided_by(lc)};
}

/**
 * Squarefree factorization (Yun).  Returns the unit and the list of
 * (monic squarefree factor, multiplicity), multiplicities strictly
 * increasing, with input = unit * prod factor^mult.
 */
template <class T>
struct SquarefreeFactorization {
    T unit;
    std::vector<std::pair<Poly<T>, int>> factors;
};

template <class T>
SquarefreeFactorization<T> squarefree_factorization(const Poly<T>& f_in) {
    SquarefreeFactorization<T> out;
    if (f_in.is_zero()) throw std::domain_error("squarefree_factorization: zero input");
    out.unit = f_in.lead_coeff();
    Poly<T> f = monic(f_in);
    if (f.degree() == 0) return out;
    Poly<T> fp = f.derivative();
    Poly<T> g = poly_gcd(f, fp);
    Poly<T> w = div_exact(f, g);
    Poly<T> y = div_exact(fp, g);
    int i = 1;
    while (w.degree() > 0) {
        Poly<T> z = y - w.derivative();
        Poly<T> a = poly_gcd(w, z);
        if (a.degree() > 0) out.factors.emplace_back(a, i);
        w = div_exact(w, a);
        y = div_exact(z, a);
        ++i;
    }
    return out;
}

template <class T>
T power_of(T base, int k) {
    T r(1);
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

/// Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A mod B, computed
/// entirely within the coefficient domain (no divisions).
template <class T>
Poly<T> prem(Poly<T> R, const Poly<T>& B) {
    if (B.is_zero()) throw std::domain_error("prem: zero divisor");
    const T lb = B.lead_coeff();
    int e = R.degree() - B.degree() + 1;
    while (!R.is_zero() && R.degree() >= B.degree()) {
        const int k = R.degree() - B.degree();
        const T lr = R.lead_coeff();
        R = R.scaled(lb) - (B * Poly<T>::monomial(lr, k));
        --e;
    }
    for (; e > 0; --e) R = R.scaled(lb);
    return R;
}

// Default polynomial gcd used by Frac and squarefree factorization.  The
// coefficient tower header specializes this for Q[t] and Q(t)[x]
// (subresultant PRS; the Euclidean remainder sequence suffers severe
// coefficient growth there).
template <class P>
struct PolyGcdImpl {
    static P run(const P& a, const P& b) { return gcd_euclid(a, b); }
};

template <class T>
Poly<T> poly_gcd(const Poly<T>& a, const Poly<T>& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    return PolyGcdImpl<Poly<T>>::run(a, b);
}

template <class T>
Poly<T> poly_lcm(const Poly<T>& a, const Poly<T>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<T>();
    return monic(div_exact(a * b, poly_gcd(a, b)));
}

}  // namespace ftel
