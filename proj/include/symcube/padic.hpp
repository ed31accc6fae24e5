#pragma once

#include "rational.hpp"

#include <algorithm>

namespace symcube {

// Process-wide default for the p-adic digit cap; the CLI threads its
// --precision option through here before any computation starts.
inline long& default_precision_slot() {
    static long digits = 64;
    return digits;
}
inline long default_precision() { return default_precision_slot(); }
inline void set_default_precision(long digits) {
    if (digits < 1) throw error("precision must be a positive digit count");
    default_precision_slot() = digits;
}

/**
 * Fixed choice of prime and working precision for everything p-adic.
 * The precision cap bounds Hensel lifting in the split quadratic case;
 * results that depend on it carry it in their provenance.
 */
struct PAdicContext {
    long p;
    long precision; // p-adic digits

    explicit PAdicContext(long prime, long digits = default_precision())
        : p(prime), precision(digits) {
        if (!is_prime(prime)) throw error("PAdicContext: p is not prime");
        if (digits < 1) throw error("PAdicContext: precision must be positive");
    }

    // The eigensystem and weight-space layers assume p > 3, so that
    // u = 1+p generates the principal units and cube roots of unity
    // are trivial mod p. Scalar valuations work at any prime.
    void require_standing_assumption() const {
        if (p <= 3) throw error("context: this operation requires p > 3");
    }

    Rational u() const { return Rational(1 + p); }

    PAdicContext with_precision(long digits) const { return PAdicContext(p, digits); }

    static bool is_prime(long n) {
        if (n < 2) return false;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }
};

// Loose context for valuations at auxiliary primes ell (which may be 2 or 3);
// only the exact-arithmetic paths below accept it.
inline long int_valuation(const mpz_class& n, long p) {
    if (n == 0) throw error("int_valuation: zero");
    mpz_class rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

inline Valuation valuation(const Rational& x, long p) {
    if (x.is_zero()) return Valuation::infinity();
    long v = 0;
    mpz_class n = x.num(), d = x.den();
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)))
        v += int_valuation(n, p);
    if (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p)))
        v -= int_valuation(d, p);
    return Valuation(v);
}

inline Valuation valuation(const Rational& x, const PAdicContext& ctx) {
    return valuation(x, ctx.p);
}

inline mpz_class pow_mpz(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

// x written as p^m * u with u a p-adic unit; returns (m, u mod p^digits).
// Requires x != 0.
struct PAdicApprox {
    long val;
    mpz_class unit; // in [0, p^digits)
};

inline PAdicApprox padic_approx(const Rational& x, long p, long digits) {
    if (x.is_zero()) throw error("padic_approx: zero");
    mpz_class n = x.num(), d = x.den();
    long v = 0;
    mpz_class rest;
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
        v += static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t()));
    }
    if (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p))) {
        v -= static_cast<long>(mpz_remove(d.get_mpz_t(), d.get_mpz_t(), mpz_class(p).get_mpz_t()));
    }
    mpz_class mod = pow_mpz(p, digits);
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw error("padic_approx: denominator not invertible");
    mpz_class u = (n * dinv) % mod;
    if (u < 0) u += mod;
    return {v, u};
}

// mpz residue of a p-integral rational mod p^digits (0 allowed).
inline mpz_class padic_approx_or_zero(const Rational& x, long p, long digits, const mpz_class& mod) {
    if (x.is_zero()) return mpz_class(0);
    PAdicApprox a = padic_approx(x, p, digits);
    if (a.val < 0) throw error("padic residue of non-integral rational");
    if (a.val >= digits) return mpz_class(0);
    return (a.unit * pow_mpz(p, a.val)) % mod;
}

/**
 * Hensel lifting for the quadratic X^2 - T X + D. Starting from a
 * simple root mod p, returns the root mod p^digits. T and D must be
 * p-integral and the seed must satisfy f(seed) = 0 mod p with
 * f'(seed) = 2*seed - T a unit mod p.
 */
inline mpz_class hensel_lift(const Rational& T, const Rational& D, long seed_residue,
                             const PAdicContext& ctx, long digits) {
    if (digits < 1) throw error("hensel_lift: digits must be positive");
    long p = ctx.p;
    if (valuation(T, p) < Valuation(0) || valuation(D, p) < Valuation(0))
        throw error("hensel_lift: quadratic does not have integral reduction");
    mpz_class mod = pow_mpz(p, digits);
    mpz_class t = padic_approx_or_zero(T, p, digits, mod);
    mpz_class d = padic_approx_or_zero(D, p, digits, mod);
    mpz_class r = mpz_class(seed_residue) % p;
    if (r < 0) r += p;
    mpz_class fr = (r * r - t * r + d) % p;
    if (fr != 0) throw error("hensel_lift: seed is not a root mod p");
    mpz_class deriv = (2 * r - t) % p;
    if (deriv % p == 0) throw error("hensel_lift: non-simple root (derivative vanishes mod p)");
    // Newton iteration, doubling precision each step.
    long k = 1;
    while (k < digits) {
        k = std::min(2 * k, digits);
        mpz_class mk = pow_mpz(p, k);
        mpz_class f = (r * r - t * r + d) % mk;
        mpz_class df = (2 * r - t) % mk;
        mpz_class dfinv;
        if (mpz_invert(dfinv.get_mpz_t(), df.get_mpz_t(), mk.get_mpz_t()) == 0)
            throw error("hensel_lift: derivative not invertible");
        r = (r - f * dfinv) % mk;
        if (r < 0) r += mk;
    }
    return r % mod;
}

// Legendre symbol of a unit u mod odd prime p.
inline int legendre_symbol(const mpz_class& u, long p) {
    mpz_class r;
    mpz_class e((p - 1) / 2), pm(p);
    mpz_powm(r.get_mpz_t(), u.get_mpz_t(), e.get_mpz_t(), pm.get_mpz_t());
    if (r == 0) return 0;
    return (r == 1) ? 1 : -1;
}

// Tonelli-Shanks square root mod an odd prime p.
inline mpz_class sqrt_mod_prime(const mpz_class& a0, long p) {
    mpz_class pm(p), a = a0 % pm;
    if (a < 0) a += pm;
    if (a == 0) return mpz_class(0);
    if (legendre_symbol(a, p) != 1) throw error("sqrt_mod_prime: not a quadratic residue");
    if (p % 4 == 3) {
        mpz_class r, e((p + 1) / 4);
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), pm.get_mpz_t());
        return r;
    }
    long s = 0;
    mpz_class q(p - 1);
    while (q % 2 == 0) { q /= 2; ++s; }
    mpz_class z(2);
    while (legendre_symbol(z, p) != -1) ++z;
    mpz_class c, r, t, e((q + 1) / 2);
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), pm.get_mpz_t());
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), pm.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), pm.get_mpz_t());
    long m = s;
    while (t != 1) {
        long i = 0;
        mpz_class tt = t;
        while (tt != 1) {
            tt = (tt * tt) % pm;
            ++i;
            if (i == m) throw error("sqrt_mod_prime: internal failure");
        }
        mpz_class b = c;
        for (long j = 0; j < m - i - 1; ++j) b = (b * b) % pm;
        m = i;
        c = (b * b) % pm;
        t = (t * c) % pm;
        r = (r * b) % pm;
    }
    return r;
}

// Square root of a unit square u mod p^digits (p odd), by lifting a
// mod-p square root. Returns the root congruent to the smaller
// representative mod p.
inline mpz_class unit_sqrt_mod(const mpz_class& u, long p, long digits) {
    mpz_class s = sqrt_mod_prime(u, p);
    if (s == 0) throw error("unit_sqrt_mod: input not a unit");
    if (s > p - s) s = p - s;
    long k = 1;
    while (k < digits) {
        k = std::min(2 * k, digits);
        mpz_class mk = pow_mpz(p, k);
        mpz_class f = (s * s - u) % mk;
        mpz_class dfinv;
        mpz_class df = (2 * s) % mk;
        if (mpz_invert(dfinv.get_mpz_t(), df.get_mpz_t(), mk.get_mpz_t()) == 0)
            throw error("unit_sqrt_mod: derivative not invertible");
        s = (s - f * dfinv) % mk;
        if (s < 0) s += mk;
    }
    return s % pow_mpz(p, digits);
}

// Is x a square in Q_p? (x != 0, p odd)
inline bool is_padic_square(const Rational& x, long p) {
    Valuation v = valuation(x, p);
    if (!(v.finite().num() % 2 == 0)) return false;
    PAdicApprox a = padic_approx(x, p, 1);
    return legendre_symbol(a.unit, p) == 1;
}

// Exact rational square root if one exists.
inline bool rational_sqrt(const Rational& x, Rational& out) {
    if (x.sign() < 0) return false;
    if (x.is_zero()) {
        out = Rational(0);
        return true;
    }
    mpz_class n = x.num(), d = x.den(), rn, rd;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = Rational(rn, rd);
    return true;
}

// Exact rational cube root if one exists (sign-aware).
inline bool rational_cbrt(const Rational& x, Rational& out) {
    if (x.is_zero()) {
        out = Rational(0);
        return true;
    }
    mpz_class n = abs(x.num()), d = x.den(), rn, rd;
    if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), 3) == 0) return false;
    if (mpz_root(rd.get_mpz_t(), d.get_mpz_t(), 3) == 0) return false;
    if (x.sign() < 0) rn = -rn;
    out = Rational(rn, rd);
    return true;
}

// Exact rational n-th root if one exists; n >= 1, and for even n the
// input must be >= 0 (the non-negative root is returned).
inline bool rational_nth_root(const Rational& x, unsigned long n, Rational& out) {
    if (x.is_zero()) {
        out = Rational(0);
        return true;
    }
    if (x.sign() < 0 && n % 2 == 0) return false;
    mpz_class num = abs(x.num()), den = x.den(), rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) == 0) return false;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n) == 0) return false;
    if (x.sign() < 0) rn = -rn;
    out = Rational(rn, rd);
    return true;
}

} // namespace symcube
