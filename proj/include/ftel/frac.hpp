#pragma once
/**
 * @file frac.hpp
 * Fractions of polynomials, kept in canonical form: numerator and
 * denominator coprime (via poly_gcd) and the denominator monic.
 */
#include <stdexcept>
#include <utility>

#include "poly.hpp"

namespace ftel {

template <class P>
class Frac {
public:
    using poly_type = P;
    using coeff_type = typename P::coeff_type;

    Frac() : num_(), den_(1) {}
    Frac(int v) : num_(v), den_(1) {}
    Frac(P num) : num_(std::move(num)), den_(1) {}
    Frac(P num, P den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static Frac gen() { return Frac(P::gen()); }

    const P& num() const { return num_; }
    const P& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    Frac operator-() const {
        Frac r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    // The arithmetic cancels across the operands first (gcd of the two
    // denominators for +/-, numerator-against-denominator for * and /),
    // so the normalizing gcd in the constructor nearly always sees a
    // coprime pair.  On fractions over Q(t)[x] that is the difference
    // between a short certificate and a full remainder sequence.
    friend Frac operator+(const Frac& a, const Frac& b) {
        P g = poly_gcd(a.den_, b.den_);
        if (g.degree() <= 0)
            return Frac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
        P db = div_exact(b.den_, g);
        return Frac(a.num_ * db + b.num_ * div_exact(a.den_, g), a.den_ * db);
    }
    friend Frac operator-(const Frac& a, const Frac& b) { return a + (-b); }
    friend Frac operator*(const Frac& a, const Frac& b) {
        P g1 = poly_gcd(a.num_, b.den_);
        P g2 = poly_gcd(b.num_, a.den_);
        return Frac(div_exact(a.num_, g1) * div_exact(b.num_, g2),
                    div_exact(a.den_, g2) * div_exact(b.den_, g1));
    }
    friend Frac operator/(const Frac& a, const Frac& b) {
        if (b.is_zero()) throw std::domain_error("Frac: division by zero");
        P g1 = poly_gcd(a.num_, b.num_);
        P g2 = poly_gcd(b.den_, a.den_);
        return Frac(div_exact(a.num_, g1) * div_exact(b.den_, g2),
                    div_exact(a.den_, g2) * div_exact(b.num_, g1));
    }
    Frac& operator+=(const Frac& o) { return *this = *this + o; }
    Frac& operator-=(const Frac& o) { return *this = *this - o; }
    Frac& operator*=(const Frac& o) { return *this = *this * o; }
    Frac& operator/=(const Frac& o) { return *this = *this / o; }

    Frac inv() const {
        if (is_zero()) throw std::domain_error("Frac: inverse of zero");
        return Frac(den_, num_);
    }

    friend bool operator==(const Frac& a, const Frac& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }

    /// d/dx by the quotient rule (result canonical).  The repeated part
    /// of the denominator, g = gcd(den, den'), is cancelled up front:
    /// with den = g*d1 the derivative is (num'*d1 - num*(den'/g))/(den*d1),
    /// which avoids forming den^2 only to cancel most of it again.
    Frac derivative() const {
        if (den_.is_one()) return Frac(num_.derivative());
        P dd = den_.derivative();
        P g = poly_gcd(den_, dd);
        if (g.degree() > 0) {
            P d1 = div_exact(den_, g);
            return Frac(num_.derivative() * d1 - num_ * div_exact(dd, g), den_ * d1);
        }
        return Frac(num_.derivative() * den_ - num_ * dd, den_ * den_);
    }

private:
    P num_, den_;

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Frac: zero denominator");
        if (num_.is_zero()) {
            den_ = P(1);
            return;
        }
        P g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = div_exact(num_, g);
            den_ = div_exact(den_, g);
        }
        const auto lc = den_.lead_coeff();
        if (!(lc == coeff_type(1))) {
            num_ = num_.divided_by(lc);
            den_ = den_.divided_by(lc);
        }
    }
};

}  // namespace ftel
