#pragma once

#include "quadext.hpp"

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace symcube {

/**
 * Dense univariate polynomial over Scalar, coefficients stored in
 * ascending degree with a nonzero leading coefficient (zero polynomial
 * has an empty coefficient list).
 */
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(const Scalar& s) { return UniPoly({s}); }
    static UniPoly x() { return UniPoly({Scalar(0), Scalar(1)}); }

    static UniPoly monic_from_roots(const std::vector<Scalar>& roots) {
        UniPoly r({Scalar(1)});
        for (const Scalar& a : roots) r = r * UniPoly({-a, Scalar(1)});
        return r;
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(c_.size())) return Scalar(0);
        return c_[i];
    }

    Scalar eval(const Scalar& x) const {
        Scalar acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend UniPoly operator+(const UniPoly& f, const UniPoly& g) {
        std::vector<Scalar> r(std::max(f.c_.size(), g.c_.size()), Scalar(0));
        for (size_t i = 0; i < f.c_.size(); ++i) r[i] = r[i] + f.c_[i];
        for (size_t i = 0; i < g.c_.size(); ++i) r[i] = r[i] + g.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& f, const UniPoly& g) {
        std::vector<Scalar> r(std::max(f.c_.size(), g.c_.size()), Scalar(0));
        for (size_t i = 0; i < f.c_.size(); ++i) r[i] = r[i] + f.c_[i];
        for (size_t i = 0; i < g.c_.size(); ++i) r[i] = r[i] - g.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& f, const UniPoly& g) {
        if (f.is_zero() || g.is_zero()) return UniPoly();
        std::vector<Scalar> r(f.c_.size() + g.c_.size() - 1, Scalar(0));
        for (size_t i = 0; i < f.c_.size(); ++i)
            for (size_t j = 0; j < g.c_.size(); ++j) r[i + j] = r[i + j] + f.c_[i] * g.c_[j];
        return UniPoly(std::move(r));
    }

    friend bool operator==(const UniPoly& f, const UniPoly& g) { return f.c_ == g.c_; }
    friend bool operator!=(const UniPoly& f, const UniPoly& g) { return !(f == g); }

    std::string str(const std::string& var = "X") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (long i = degree(); i >= 0; --i) {
            if (coeff(i).is_zero()) continue;
            if (!first) os << " + ";
            os << coeff(i).str();
            if (i > 0) os << "*" << var << "^" << i;
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Scalar> c_;
};

/**
 * Characteristic polynomial of the symmetric cube of a quadratic:
 * the monic quartic whose roots are a^3, a^2 b, a b^2, b^3 for a, b the
 * roots of X^2 - T X + D. Coefficients are the elementary symmetric
 * functions
 *   e1 = T^3 - 2 T D,  e2 = D (T^4 - 3 D T^2 + 2 D^2),
 *   e3 = D^3 e1,       e4 = D^6.
 */
inline UniPoly sym3_quadratic(const Scalar& T, const Scalar& D) {
    Scalar e1 = T.pow(3) - Scalar(2) * T * D;
    Scalar e2 = D * (T.pow(4) - Scalar(3) * D * T.pow(2) + Scalar(2) * D.pow(2));
    Scalar e3 = D.pow(3) * e1;
    Scalar e4 = D.pow(6);
    return UniPoly({e4, -e3, e2, -e1, Scalar(1)});
}

/**
 * Monic degree-d polynomial with prescribed power sums s_1..s_d of its
 * roots, via Newton's identities (d <= 4, characteristic zero).
 */
inline UniPoly charpoly_from_power_traces(const std::vector<Scalar>& s) {
    size_t d = s.size();
    if (d < 1 || d > 4) throw error("charpoly_from_power_traces: dimension must be 1..4");
    std::vector<Scalar> e(d + 1, Scalar(0));
    e[0] = Scalar(1);
    for (size_t k = 1; k <= d; ++k) {
        Scalar acc(0);
        for (size_t i = 1; i <= k; ++i) {
            Scalar term = e[k - i] * s[i - 1];
            acc = (i % 2 == 1) ? acc + term : acc - term;
        }
        e[k] = acc / Scalar(static_cast<long>(k));
    }
    std::vector<Scalar> c(d + 1, Scalar(0));
    for (size_t k = 0; k <= d; ++k) {
        Scalar v = e[k];
        c[d - k] = (k % 2 == 0) ? v : -v;
    }
    return UniPoly(std::move(c));
}

/**
 * Sparse multivariate polynomial over Q in N variables, lexicographic
 * order on exponent vectors. N = 2 gives the weight-space coordinate
 * ring Q[T1, T2].
 */
template <size_t N>
class MultiPoly {
public:
    using Exp = std::array<long, N>;

    MultiPoly() = default;
    static MultiPoly constant(const Rational& r) {
        MultiPoly f;
        f.add_term(Exp{}, r);
        return f;
    }
    static MultiPoly variable(size_t i, long e = 1) {
        if (i >= N) throw error("MultiPoly: variable index out of range");
        MultiPoly f;
        Exp ex{};
        ex[i] = e;
        f.add_term(ex, Rational(1));
        return f;
    }

    bool is_zero() const { return t_.empty(); }
    const std::map<Exp, Rational>& terms() const { return t_; }

    void add_term(const Exp& e, const Rational& c) {
        if (c.is_zero()) return;
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    friend MultiPoly operator+(const MultiPoly& f, const MultiPoly& g) {
        MultiPoly r = f;
        for (const auto& [e, c] : g.t_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& f, const MultiPoly& g) {
        MultiPoly r = f;
        for (const auto& [e, c] : g.t_) r.add_term(e, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& f, const MultiPoly& g) {
        MultiPoly r;
        for (const auto& [ef, cf] : f.t_)
            for (const auto& [eg, cg] : g.t_) {
                Exp e;
                for (size_t i = 0; i < N; ++i) e[i] = ef[i] + eg[i];
                r.add_term(e, cf * cg);
            }
        return r;
    }
    friend MultiPoly operator*(const Rational& c, const MultiPoly& f) {
        MultiPoly r;
        for (const auto& [e, cf] : f.t_) r.add_term(e, c * cf);
        return r;
    }
    MultiPoly operator-() const { return Rational(-1) * *this; }

    friend bool operator==(const MultiPoly& f, const MultiPoly& g) { return f.t_ == g.t_; }
    friend bool operator!=(const MultiPoly& f, const MultiPoly& g) { return !(f == g); }

    MultiPoly pow(long e) const {
        if (e < 0) throw error("MultiPoly: negative power");
        MultiPoly r = constant(Rational(1));
        for (long i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    template <typename T>
    T eval(const std::array<T, N>& x) const {
        T acc(0);
        for (const auto& [e, c] : t_) {
            T term(c);
            for (size_t i = 0; i < N; ++i)
                for (long k = 0; k < e[i]; ++k) term = term * x[i];
            acc = acc + term;
        }
        return acc;
    }

    // Substitute univariate polynomials for the variables.
    UniPoly substitute(const std::array<UniPoly, N>& x) const {
        UniPoly acc;
        for (const auto& [e, c] : t_) {
            UniPoly term = UniPoly::constant(Scalar(c));
            for (size_t i = 0; i < N; ++i)
                for (long k = 0; k < e[i]; ++k) term = term * x[i];
            acc = acc + term;
        }
        return acc;
    }

    // Leading term in lex order.
    std::pair<Exp, Rational> leading() const {
        if (is_zero()) throw error("MultiPoly: leading term of zero");
        auto it = std::prev(t_.end());
        return {it->first, it->second};
    }

    std::string str(const std::array<std::string, N>& names) const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            if (!first) os << " + ";
            os << it->second.str();
            for (size_t i = 0; i < N; ++i)
                if (it->first[i] != 0) os << "*" << names[i] << "^" << it->first[i];
            first = false;
        }
        return os.str();
    }

private:
    std::map<Exp, Rational> t_;
};

using BiPoly = MultiPoly<2>;
using TriPoly = MultiPoly<3>;

/**
 * Exact division in Q[T1,..,TN] by lexicographic reduction against a
 * single divisor. Returns the quotient when g divides f exactly,
 * absence otherwise.
 */
template <size_t N>
std::optional<MultiPoly<N>> divide_exact(const MultiPoly<N>& f, const MultiPoly<N>& g) {
    if (g.is_zero()) throw error("divide_exact: division by zero polynomial");
    MultiPoly<N> rem = f, q;
    auto [lg, cg] = g.leading();
    while (!rem.is_zero()) {
        auto [lf, cf] = rem.leading();
        typename MultiPoly<N>::Exp e;
        for (size_t i = 0; i < N; ++i) {
            e[i] = lf[i] - lg[i];
            if (e[i] < 0) return std::nullopt;
        }
        MultiPoly<N> t;
        t.add_term(e, cf / cg);
        q = q + t;
        rem = rem - t * g;
    }
    return q;
}

} // namespace symcube
