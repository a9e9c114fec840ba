#pragma once
/**
 * @file expr.hpp
 * Text form of elements of Q(t)(x).
 *
 * Grammar (usual precedence, left-associative * and /, right-assoc ^):
 *
 *   expr   := term (('+'|'-') term)*
 *   term   := unary (('*'|'/') unary)*
 *   unary  := '-' unary | power
 *   power  := atom ('^' ['-'] digits)?
 *   atom   := digits | 't' | 'x' | '(' expr ')'
 *
 * The printer emits strings that parse back to the same element; the
 * term layout relies on '*' and '/' being left-associative, so e.g.
 * "1/t*x" means (1/t)*x and "-t*x/x^2" means -((t*x)/x^2).
 */
#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "tower.hpp"

namespace ftel {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    XRat parse() {
        XRat v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("parse error at position " + std::to_string(pos_) + ": " + what +
                         " in '" + s_ + "'");
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    XRat expr() {
        XRat v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    XRat term() {
        XRat v = unary();
        for (;;) {
            if (eat('*')) v *= unary();
            else if (eat('/')) {
                XRat d = unary();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else
                return v;
        }
    }
    XRat unary() {
        if (eat('-')) return -unary();
        return power();
    }
    XRat power() {
        XRat base = atom();
        if (!eat('^')) return base;
        bool neg = eat('-');
        long e = digits();
        if (e > 4096) fail("exponent too large");
        if (neg) {
            if (base.is_zero()) fail("zero to a negative power");
            base = base.inv();
        }
        XRat r(XPoly(1));
        for (long i = 0; i < e; ++i) r *= base;
        return r;
    }
    XRat atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            XRat v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == 't') {
            ++pos_;
            return XRat(XPoly(k_t()));
        }
        if (c == 'x') {
            ++pos_;
            return XRat(XPoly::gen());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return XRat(XPoly(K(TPoly(Rat::from_string(s_.substr(start, pos_ - start))))));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
    long digits() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected digits");
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::stol(s_.substr(start, pos_ - start));
    }
};

// ------------------------------------------------------------------ printing

struct PTerm {
    bool neg;
    std::string body;
};

inline std::string join_terms(const std::vector<PTerm>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i == 0)
            out += terms[i].neg ? "-" : "";
        else
            out += terms[i].neg ? " - " : " + ";
        out += terms[i].body;
    }
    return out;
}

inline std::string pow_str(const std::string& var, int k) {
    if (k == 1) return var;
    return var + "^" + std::to_string(k);
}

/// Terms of a Q[t] polynomial, highest power first, signs split off.
inline std::vector<PTerm> tpoly_terms(const TPoly& p) {
    std::vector<PTerm> out;
    for (int k = p.degree(); k >= 0; --k) {
        const Rat& c = p.coeff(k);
        if (c.is_zero()) continue;
        PTerm t;
        t.neg = c.sgn() < 0;
        Rat a = abs(c);
        if (k == 0)
            t.body = a.str();
        else if (a.is_one())
            t.body = pow_str("t", k);
        else
            t.body = a.str() + "*" + pow_str("t", k);
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace detail

inline std::string str(const Rat& r) { return r.str(); }
inline std::string str(const TPoly& p) { return detail::join_terms(detail::tpoly_terms(p)); }

inline std::string str(const K& v) {
    using namespace detail;
    if (v.is_polynomial()) return str(v.num());
    auto nt = tpoly_terms(v.num());
    std::string num = nt.size() == 1 ? (nt[0].neg ? "-" + nt[0].body : nt[0].body)
                                     : "(" + join_terms(nt) + ")";
    auto dt = tpoly_terms(v.den());
    // Denominators are monic, so a single-term denominator is just t^k.
    std::string den = dt.size() == 1 ? dt[0].body : "(" + join_terms(dt) + ")";
    return num + "/" + den;
}

namespace detail {

/// One printed term of a K[x] polynomial (sign split off when possible).
inline PTerm xpoly_term(const K& c, int k) {
    PTerm out{false, ""};
    std::string cs;
    // A coefficient whose numerator is a single Q[t] term carries a usable sign.
    auto nt = tpoly_terms(c.num());
    if (nt.size() == 1) {
        out.neg = nt[0].neg;
        K a = out.neg ? -c : c;
        if (k > 0 && a.is_one()) {
            out.body = pow_str("x", k);
            return out;
        }
        cs = str(a);
    } else {
        cs = "(" + str(c) + ")";
    }
    if (k == 0)
        out.body = cs;
    else
        out.body = cs + "*" + pow_str("x", k);
    return out;
}

inline std::vector<PTerm> xpoly_terms(const XPoly& p) {
    std::vector<PTerm> out;
    for (int k = p.degree(); k >= 0; --k)
        if (!p.coeff(k).is_zero()) out.push_back(xpoly_term(p.coeff(k), k));
    return out;
}

}  // namespace detail

inline std::string str(const XPoly& p) { return detail::join_terms(detail::xpoly_terms(p)); }

inline std::string str(const XRat& r) {
    using namespace detail;
    if (r.is_polynomial()) return str(r.num());
    auto nt = xpoly_terms(r.num());
    std::string num = nt.size() == 1 ? (nt[0].neg ? "-" + nt[0].body : nt[0].body)
                                     : "(" + join_terms(nt) + ")";
    auto dt = xpoly_terms(r.den());
    // Denominators are monic in x; a single printed term has coefficient 1.
    std::string den = dt.size() == 1 && !dt[0].neg ? dt[0].body : "(" + join_terms(dt) + ")";
    return num + "/" + den;
}

inline XRat parse_xrat(const std::string& s) { return detail::ExprParser(s).parse(); }

inline XPoly parse_xpoly(const std::string& s) {
    XRat r = parse_xrat(s);
    if (!r.is_polynomial())
        throw ParseError("expected a polynomial in x, got '" + s + "'");
    return r.num();
}

inline K parse_k(const std::string& s) {
    XRat r = parse_xrat(s);
    if (!r.is_polynomial() || r.num().degree() > 0)
        throw ParseError("expected an expression free of x, got '" + s + "'");
    return r.num().coeff(0);
}

/// Readable form of an operator sum coeffs[i] * D^i with K coefficients.
inline std::string format_operator(const std::vector<K>& coeffs, const std::string& dsym) {
    using namespace detail;
    std::vector<PTerm> terms;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
        const K& c = coeffs[static_cast<size_t>(k)];
        if (c.is_zero()) continue;
        PTerm t{false, ""};
        auto nt = tpoly_terms(c.num());
        bool single = nt.size() == 1;
        if (single) {
            t.neg = nt[0].neg;
            K a = t.neg ? -c : c;
            if (k > 0 && a.is_one())
                t.body = pow_str(dsym, k);
            else if (k == 0)
                t.body = str(a);
            else
                t.body = str(a) + "*" + pow_str(dsym, k);
        } else {
            t.body = k == 0 ? "(" + str(c) + ")" : "(" + str(c) + ")*" + pow_str(dsym, k);
        }
        terms.push_back(std::move(t));
    }
    return join_terms(terms);
}

}  // namespace ftel
