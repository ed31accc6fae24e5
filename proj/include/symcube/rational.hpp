#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace symcube {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct precision_exhausted_error : error {
    using error::error;
};

/**
 * Arbitrary-precision rational, always kept in lowest terms with a
 * positive denominator. Thin value wrapper around GMP's mpq_class so
 * the wire encoding ("num/den") and the p-adic helpers live in one
 * place.
 */
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(long n, long d) : q_(n, d) {
        if (d == 0) throw error("Rational: zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : q_(n) {}
    Rational(const mpz_class& n, const mpz_class& d) : q_(n, d) {
        if (d == 0) throw error("Rational: zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Parses "n" or "n/d".
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(mpz_class(s));
            mpz_class n(s.substr(0, slash)), d(s.substr(slash + 1));
            if (d == 0) throw error("Rational: zero denominator");
            return Rational(n, d);
        } catch (const std::invalid_argument&) {
            throw error("Rational: cannot parse \"" + s + "\"");
        }
    }

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational inverse() const {
        if (is_zero()) throw error("Rational: inverse of zero");
        return Rational(q_.get_den(), q_.get_num());
    }

    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        if (e < 0) return inverse().pow(-e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rational(n, d);
    }

    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    mpq_class q_;
};

inline Rational pow_int(long base, long e) { return Rational(base).pow(e); }

// Exact p-power: p^e as a Rational, e may be negative.
inline Rational p_power(long p, const Rational& e) {
    if (!e.is_integer()) throw error("p_power: non-integral exponent");
    return Rational(p).pow(e.num().get_si());
}

/**
 * Value of a p-adic valuation: an exact rational or +infinity (the
 * valuation of zero). Denominators never exceed 2 here since only
 * quadratic extensions occur.
 */
class Valuation {
public:
    static Valuation infinity() { return Valuation(true, Rational(0)); }
    Valuation() : Valuation(false, Rational(0)) {}
    Valuation(const Rational& v) : inf_(false), v_(v) {}
    Valuation(long v) : inf_(false), v_(v) {}
    Valuation(long n, long d) : inf_(false), v_(n, d) {}

    bool is_infinite() const { return inf_; }
    const Rational& finite() const {
        if (inf_) throw error("Valuation: infinite");
        return v_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return a < b || a == b; }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return b <= a; }

    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.inf_ || b.inf_) return infinity();
        return Valuation(a.v_ + b.v_);
    }
    friend Valuation operator-(const Valuation& a, const Rational& r) {
        if (a.inf_) return infinity();
        return Valuation(a.v_ - r);
    }

    std::string str() const { return inf_ ? "inf" : v_.str(); }
    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
        return os << v.str();
    }

private:
    Valuation(bool inf, const Rational& v) : inf_(inf), v_(v) {}
    bool inf_;
    Rational v_;
};

inline Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

} // namespace symcube
