#pragma once
/**
 * @file rat.hpp
 * Arbitrary-precision rational numbers, backed by GMP.
 *
 * Values are always canonical: gcd(num, den) = 1 and den > 0.  gmpxx does
 * not canonicalize two-argument constructors on its own, so we do it here.
 */
#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ftel {

class Rat {
public:
    Rat() : v_(0) {}
    Rat(int n) : v_(n) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        v_.canonicalize();
    }
    Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    /// Parses "123", "-4", "3/7", "-3/7" (arbitrary precision).
    static Rat from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("Rat: cannot parse '" + s + "'");
        q.canonicalize();
        return Rat(std::move(q));
    }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sgn() const { return mpq_sgn(v_.get_mpq_t()); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

    Rat inv() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        return Rat(mpq_class(1 / v_));
    }

    std::string str() const { return v_.get_str(); }

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

inline Rat abs(const Rat& a) { return a.sgn() < 0 ? -a : a; }

}  // namespace ftel
