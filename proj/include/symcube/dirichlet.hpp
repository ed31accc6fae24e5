#pragma once

#include "quadext.hpp"

#include <map>
#include <numeric>

namespace symcube {

/**
 * Dirichlet character of modulus m0 and order n, stored as the table
 * of exponents j(k) with value(k) = zeta_n^j(k) on units k mod m0.
 * Values on non-units are zero (the character is imprimitive-free in
 * the usual convention). Orders 1 and 2 have rational values +-1 and
 * are the "exact mode"; higher orders are formal roots of unity of
 * valuation 0 and cannot be materialised as Scalars.
 */
class DirichletCharacter {
public:
    static DirichletCharacter trivial(long modulus = 1) {
        std::map<long, long> table;
        if (modulus == 1) {
            table[0] = 0;
        } else {
            for (long k = 1; k < modulus; ++k)
                if (std::gcd(k, modulus) == 1) table[k] = 0;
        }
        return DirichletCharacter(modulus, 1, std::move(table));
    }

    // The quadratic character given by the Legendre symbol mod an odd
    // prime q, or the nontrivial character mod 4.
    static DirichletCharacter quadratic(long m) {
        std::map<long, long> table;
        if (m == 4) {
            table[1] = 0;
            table[3] = 1;
            return DirichletCharacter(4, 2, std::move(table));
        }
        if (m < 3 || !PAdicContext::is_prime(m)) throw error("quadratic character: modulus must be an odd prime or 4");
        for (long k = 1; k < m; ++k) table[k] = legendre_symbol(mpz_class(k), m) == 1 ? 0 : 1;
        return DirichletCharacter(m, 2, std::move(table));
    }

    static DirichletCharacter from_table(long modulus, long order, std::map<long, long> table) {
        return DirichletCharacter(modulus, order, std::move(table));
    }

    long modulus() const { return m0_; }
    long order() const { return n_; }
    bool is_exact() const { return n_ <= 2; }
    const std::map<long, long>& table() const { return exp_; }

    bool defined_at(long k) const { return std::gcd(normalize(k), m0_) == 1 || m0_ == 1; }

    // exponent of zeta_n at k; requires gcd(k, m0) = 1
    long value_exponent(long k) const {
        if (m0_ == 1) return 0;
        long r = normalize(k);
        auto it = exp_.find(r);
        if (it == exp_.end()) throw error("character not defined at " + std::to_string(k));
        return it->second;
    }

    // value as an exact scalar; only orders 1 and 2 are representable
    Scalar value(long k) const {
        if (!is_exact())
            throw error("character of order " + std::to_string(n_) +
                        " has values outside the exact scalar field (formal-unit mode)");
        return value_exponent(k) == 0 ? Scalar(Rational(1)) : Scalar(Rational(-1));
    }

    // all character values are roots of unity, so have valuation 0
    Valuation value_valuation(long k) const {
        value_exponent(k);
        return Valuation(0);
    }

    DirichletCharacter cubed() const {
        long g = std::gcd(n_, 3L);
        long new_order = n_ / g;
        std::map<long, long> table;
        for (const auto& [k, j] : exp_) table[k] = ((3 * j) % n_) / g;
        return DirichletCharacter(m0_, new_order, std::move(table));
    }

    DirichletCharacter squared() const {
        long g = std::gcd(n_, 2L);
        long new_order = n_ / g;
        std::map<long, long> table;
        for (const auto& [k, j] : exp_) table[k] = ((2 * j) % n_) / g;
        return DirichletCharacter(m0_, new_order, std::move(table));
    }

    friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
        long m = std::lcm(a.m0_, b.m0_);
        long n = std::lcm(a.n_, b.n_);
        std::map<long, long> table;
        for (long k = 0; k < std::max(m, 1L); ++k) {
            long kk = (m == 1) ? 0 : k;
            if (m != 1 && std::gcd(kk, m) != 1) continue;
            long ja = a.m0_ == 1 ? 0 : a.value_exponent(kk % a.m0_ == 0 ? a.m0_ : kk);
            long jb = b.m0_ == 1 ? 0 : b.value_exponent(kk % b.m0_ == 0 ? b.m0_ : kk);
            table[kk] = (ja * (n / a.n_) + jb * (n / b.n_)) % n;
        }
        // reduce to the actual order
        long g = n;
        for (const auto& [k, j] : table) g = std::gcd(g, j);
        if (g > 1) {
            for (auto& [k, j] : table) j /= g;
            n /= g;
        }
        return DirichletCharacter(m, n, std::move(table));
    }

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.m0_ == b.m0_ && a.n_ == b.n_ && a.exp_ == b.exp_;
    }

private:
    DirichletCharacter(long m0, long n, std::map<long, long> table)
        : m0_(m0), n_(n), exp_(std::move(table)) {
        if (m0_ < 1) throw error("DirichletCharacter: modulus must be positive");
        if (n_ < 1) throw error("DirichletCharacter: order must be positive");
        // structural invariants: defined exactly on the units, value(1) = 1,
        // multiplicative, exponents in range
        if (m0_ == 1) {
            if (exp_ != std::map<long, long>{{0, 0}} && exp_ != std::map<long, long>{{1, 0}})
                exp_ = {{0, 0}};
            return;
        }
        for (long k = 1; k < m0_; ++k) {
            bool unit = std::gcd(k, m0_) == 1;
            if (unit != (exp_.count(k) == 1))
                throw error("DirichletCharacter: table must cover exactly the units mod m0");
        }
        if (exp_.at(1 % m0_) != 0) throw error("DirichletCharacter: value at 1 must be 1");
        for (const auto& [k, j] : exp_) {
            if (j < 0 || j >= n_) throw error("DirichletCharacter: exponent out of range");
            for (const auto& [l, jl] : exp_) {
                long kl = (k * l) % m0_;
                if (exp_.at(kl) != (j + jl) % n_)
                    throw error("DirichletCharacter: table is not multiplicative");
            }
        }
    }

    long normalize(long k) const {
        if (m0_ == 1) return 0;
        long r = k % m0_;
        if (r < 0) r += m0_;
        return r;
    }

    long m0_;
    long n_;
    std::map<long, long> exp_;
};

} // namespace symcube
