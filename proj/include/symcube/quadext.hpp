#pragma once

#include "padic.hpp"

#include <optional>
#include <utility>
#include <variant>

namespace symcube {

/**
 * Capped-precision p-adic number: p^v * (u + O(p^prec)) with u a unit,
 * or an exact zero. Internal workhorse for valuations in the split
 * quadratic case; not part of the wire format.
 */
struct CappedPadic {
    long p;
    bool zero;
    long v;
    mpz_class u;
    long prec;

    static CappedPadic exact_zero(long p) { return {p, true, 0, mpz_class(0), 0}; }

    static CappedPadic from_rational(const Rational& x, long p, long prec) {
        if (x.is_zero()) return exact_zero(p);
        PAdicApprox a = padic_approx(x, p, prec);
        return {p, false, a.val, a.unit, prec};
    }

    // Known absolute precision: value determined mod p^(v+prec).
    long abs_prec() const { return v + prec; }

    friend CappedPadic operator*(const CappedPadic& x, const CappedPadic& y) {
        if (x.zero || y.zero) return exact_zero(x.p);
        long prec = std::min(x.prec, y.prec);
        mpz_class mod = pow_mpz(x.p, prec);
        return {x.p, false, x.v + y.v, (x.u * y.u) % mod, prec};
    }

    friend CappedPadic operator+(const CappedPadic& x, const CappedPadic& y) {
        if (x.zero) return y;
        if (y.zero) return x;
        long p = x.p;
        long vmin = std::min(x.v, y.v);
        long abs = std::min(x.abs_prec(), y.abs_prec());
        if (abs <= vmin) throw precision_exhausted_error("p-adic addition: no overlap of precision");
        mpz_class mod = pow_mpz(p, abs - vmin);
        mpz_class s = (x.u * pow_mpz(p, x.v - vmin) + y.u * pow_mpz(p, y.v - vmin)) % mod;
        if (s == 0)
            throw precision_exhausted_error("p-adic addition: cancellation exceeds precision cap");
        long m = int_valuation(s, p);
        long prec = abs - vmin - m;
        if (prec <= 0)
            throw precision_exhausted_error("p-adic addition: cancellation exceeds precision cap");
        mpz_class u = (s / pow_mpz(p, m)) % pow_mpz(p, prec);
        return {p, false, vmin + m, u, prec};
    }

    CappedPadic negate() const {
        if (zero) return *this;
        mpz_class mod = pow_mpz(p, prec);
        return {p, false, v, (mod - u) % mod, prec};
    }

    friend CappedPadic operator-(const CappedPadic& x, const CappedPadic& y) {
        return x + y.negate();
    }

    mpz_class residue_mod(long digits) const {
        // Representative of the value mod p^digits; requires v >= 0.
        if (zero) return mpz_class(0);
        if (v < 0) throw error("CappedPadic: negative valuation residue");
        if (abs_prec() < digits) throw precision_exhausted_error("CappedPadic: residue beyond precision");
        if (v >= digits) return mpz_class(0);
        return (u * pow_mpz(p, v)) % pow_mpz(p, digits);
    }
};

// 2-adic square root of a unit u = 1 mod 8, by bit lifting.
inline mpz_class unit_sqrt_2adic(const mpz_class& u, long digits) {
    if (u % 8 != 1) throw error("unit_sqrt_2adic: unit is not a 2-adic square");
    mpz_class x(1);
    for (long k = 3; k < digits; ++k) {
        mpz_class mk1 = pow_mpz(2, k + 1);
        if ((x * x - u) % mk1 != 0) x += pow_mpz(2, k - 1);
    }
    return x % pow_mpz(2, digits);
}

// Square root of a nonzero rational square of Q_p, one fixed sign.
inline CappedPadic padic_sqrt(const Rational& x, long p, long prec) {
    Valuation vx = valuation(x, p);
    if (!(vx.finite().num() % 2 == 0)) throw error("padic_sqrt: odd valuation");
    long v = vx.finite().num().get_si();
    PAdicApprox a = padic_approx(x, p, prec);
    mpz_class root = (p == 2) ? unit_sqrt_2adic(a.unit, prec) : unit_sqrt_mod(a.unit, p, prec);
    return {p, false, v / 2, root, prec};
}

inline bool is_square_in_Qp(const Rational& x, long p) {
    if (x.is_zero()) return true;
    Valuation v = valuation(x, p);
    if (!(v.finite().num() % 2 == 0)) return false;
    PAdicApprox a = padic_approx(x, p, p == 2 ? 3 : 1);
    if (p == 2) return a.unit % 8 == 1;
    return legendre_symbol(a.unit, p) == 1;
}

/**
 * Element a + b*alpha of the quadratic algebra Q[X]/(X^2 - T X + D),
 * where alpha denotes the branch-selected root. Branch 0 is the root of
 * smaller Newton-polygon slope; when the slopes tie and the quadratic
 * splits over Q_p, branch 0 is the root with the smaller p-adic digit
 * at the first position where the two expansions differ. When the
 * quadratic does not split the two branches are valuation-equivalent
 * and the label only matters for exact values.
 *
 * Arithmetic stays inside one algebra: combining elements with
 * different (T, D) is an error. Mixed branches are aligned via
 * beta = T - alpha.
 */
class QuadExt {
public:
    QuadExt(const Rational& t, const Rational& d, const Rational& a, const Rational& b,
            int branch)
        : t_(t), d_(d), a_(a), b_(b), branch_(branch) {
        if (branch != 0 && branch != 1) throw error("QuadExt: branch must be 0 or 1");
    }

    // The branch-selected root alpha itself.
    static QuadExt root(const Rational& t, const Rational& d, int branch) {
        return QuadExt(t, d, Rational(0), Rational(1), branch);
    }

    const Rational& t() const { return t_; }
    const Rational& d() const { return d_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    int branch() const { return branch_; }

    bool same_field(const QuadExt& o) const { return t_ == o.t_ && d_ == o.d_; }
    bool is_rational_coords() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    Rational disc() const { return t_ * t_ - Rational(4) * d_; }

    QuadExt with_branch(int br) const {
        if (br == branch_) return *this;
        // a + b*alpha' = (a + b*T) - b*alpha
        return QuadExt(t_, d_, a_ + b_ * t_, -b_, br);
    }

    QuadExt conj() const { return QuadExt(t_, d_, a_ + b_ * t_, -b_, branch_); }

    Rational norm() const { return a_ * a_ + a_ * b_ * t_ + b_ * b_ * d_; }
    Rational trace() const { return Rational(2) * a_ + b_ * t_; }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& yy) {
        QuadExt y = aligned(x, yy);
        return QuadExt(x.t_, x.d_, x.a_ + y.a_, x.b_ + y.b_, x.branch_);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& yy) {
        QuadExt y = aligned(x, yy);
        return QuadExt(x.t_, x.d_, x.a_ - y.a_, x.b_ - y.b_, x.branch_);
    }
    QuadExt operator-() const { return QuadExt(t_, d_, -a_, -b_, branch_); }

    friend QuadExt operator*(const QuadExt& x, const QuadExt& yy) {
        QuadExt y = aligned(x, yy);
        // (a + b alpha)(c + d alpha), alpha^2 = T alpha - D
        const Rational &a = x.a_, &b = x.b_, &c = y.a_, &d = y.b_;
        return QuadExt(x.t_, x.d_, a * c - b * d * x.d_, a * d + b * c + b * d * x.t_,
                       x.branch_);
    }

    QuadExt inverse() const {
        if (is_zero()) throw error("QuadExt: inverse of zero");
        Rational n = norm();
        if (n.is_zero())
            throw error("QuadExt: zero divisor (split quadratic); resolve roots to rationals");
        QuadExt c = conj();
        return QuadExt(t_, d_, c.a_ / n, c.b_ / n, branch_);
    }

    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }

    QuadExt pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        QuadExt r(t_, d_, Rational(1), Rational(0), branch_);
        QuadExt base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const QuadExt& x, const QuadExt& yy) {
        if (!x.same_field(yy)) return false;
        QuadExt y = aligned(x, yy);
        return x.a_ == y.a_ && x.b_ == y.b_;
    }

    // p-adic valuation of the branch-embedded value.
    Valuation valuation(const PAdicContext& ctx) const;

    // The two branch roots as exact rationals, when X^2 - TX + D splits
    // over Q (ordering per the branch rule at p).
    std::optional<std::pair<Rational, Rational>> rational_roots(long p) const;

    std::string str() const {
        return "(" + a_.str() + " + " + b_.str() + "*r" + std::to_string(branch_) + " of X^2-" +
               t_.str() + "X+" + d_.str() + ")";
    }

private:
    static QuadExt aligned(const QuadExt& x, const QuadExt& y) {
        if (!x.same_field(y))
            throw error("QuadExt: incompatible quadratic extensions " + x.str() + " vs " + y.str());
        return y.with_branch(x.branch_);
    }

    Rational t_, d_, a_, b_;
    int branch_;
};

// Newton-polygon valuations of the two roots of X^2 - TX + D,
// sorted ascending. (T, D) != (0, 0).
inline std::pair<Valuation, Valuation> quad_root_valuations(const Rational& T, const Rational& D,
                                                            const PAdicContext& ctx) {
    if (T.is_zero() && D.is_zero()) throw error("quad_root_valuations: zero polynomial");
    Valuation vT = valuation(T, ctx.p);
    Valuation vD = valuation(D, ctx.p);
    // compare v(T) with v(D)/2 without dividing an infinite value
    bool low_segment;
    if (vT.is_infinite())
        low_segment = false;
    else if (vD.is_infinite())
        low_segment = true;
    else
        low_segment = Rational(2) * vT.finite() <= vD.finite();
    if (low_segment) {
        Valuation other = vD.is_infinite() ? Valuation::infinity()
                                           : Valuation(vD.finite() - vT.finite());
        return {vT, other};
    }
    Rational half = vD.finite() / Rational(2);
    return {Valuation(half), Valuation(half)};
}

namespace detail {

// p-adic digit-stream order: returns true if x precedes y (first
// differing digit smaller). x != y as p-adic numbers; both p-integral
// after scaling by p^-vmin.
inline bool padic_less(const CappedPadic& x, const CappedPadic& y, long p, long digits) {
    CappedPadic diff = x - y; // throws precision_exhausted on full cancellation
    long j = diff.v;
    long vmin = std::min(x.v, y.v);
    long need = j + 1 - vmin;
    mpz_class mod = pow_mpz(p, need);
    mpz_class rx = x.zero ? mpz_class(0) : (x.u * pow_mpz(p, x.v - vmin)) % mod;
    mpz_class ry = y.zero ? mpz_class(0) : (y.u * pow_mpz(p, y.v - vmin)) % mod;
    if (x.abs_prec() < j + 1 || y.abs_prec() < j + 1)
        throw precision_exhausted_error("branch ordering needs more p-adic digits");
    return rx < ry;
}

// Both roots of X^2 - TX + D in Q_p, branch-ordered, as capped p-adics.
// Pre: the quadratic splits over Q_p and disc != 0.
inline std::pair<CappedPadic, CappedPadic> split_roots(const Rational& T, const Rational& D,
                                                       const PAdicContext& ctx) {
    long p = ctx.p;
    long prec = ctx.precision;
    Rational disc = T * T - Rational(4) * D;
    CappedPadic s = padic_sqrt(disc, p, prec);
    CappedPadic t = CappedPadic::from_rational(T, p, prec);
    CappedPadic half = CappedPadic::from_rational(Rational(1, 2), p, prec);
    CappedPadic r0 = (t + s) * half;
    CappedPadic r1 = (t - s) * half;
    Valuation v0 = r0.zero ? Valuation::infinity() : Valuation(r0.v);
    Valuation v1 = r1.zero ? Valuation::infinity() : Valuation(r1.v);
    if (v0 != v1) {
        if (v1 < v0) std::swap(r0, r1);
        return {r0, r1};
    }
    if (padic_less(r1, r0, p, prec)) std::swap(r0, r1);
    return {r0, r1};
}

} // namespace detail

inline std::optional<std::pair<Rational, Rational>> QuadExt::rational_roots(long p) const {
    Rational dd = disc(), s;
    if (!rational_sqrt(dd, s)) return std::nullopt;
    Rational r0 = (t_ + s) / Rational(2);
    Rational r1 = (t_ - s) / Rational(2);
    // Order by the branch rule: smaller valuation first, digit order on ties.
    Valuation v0 = symcube::valuation(r0, p), v1 = symcube::valuation(r1, p);
    if (v1 < v0) std::swap(r0, r1);
    if (v0 == v1 && !v0.is_infinite() && r0 != r1) {
        long j = symcube::valuation(r0 - r1, p).finite().num().get_si();
        long prec = j - v0.finite().num().get_si() + 2;
        CappedPadic c0 = CappedPadic::from_rational(r0, p, prec);
        CappedPadic c1 = CappedPadic::from_rational(r1, p, prec);
        if (detail::padic_less(c1, c0, p, prec)) std::swap(r0, r1);
    }
    return std::make_pair(r0, r1);
}

inline Valuation QuadExt::valuation(const PAdicContext& ctx) const {
    if (is_zero()) return Valuation::infinity();
    if (b_.is_zero()) return symcube::valuation(a_, ctx.p);
    Rational dd = disc();
    if (dd.is_zero()) return symcube::valuation(a_ + b_ * t_ / Rational(2), ctx.p);
    if (auto roots = rational_roots(ctx.p)) {
        const Rational& r = branch_ == 0 ? roots->first : roots->second;
        return symcube::valuation(a_ + b_ * r, ctx.p);
    }
    if (is_square_in_Qp(dd, ctx.p)) {
        // Splits over Q_p but not Q: embed and read the valuation off the
        // capped expansion. The cap is the callers' to raise.
        auto [r0, r1] = detail::split_roots(t_, d_, ctx);
        const CappedPadic& r = branch_ == 0 ? r0 : r1;
        CappedPadic val = CappedPadic::from_rational(a_, ctx.p, ctx.precision) +
                          CappedPadic::from_rational(b_, ctx.p, ctx.precision) * r;
        return Valuation(val.v);
    }
    // Inert or ramified: v extends via the norm.
    return Valuation(symcube::valuation(norm(), ctx.p).finite() / Rational(2));
}

/**
 * Scalar: an exact rational or quadratic-extension element. QuadExt
 * values with zero alpha-coefficient collapse to Rational on
 * construction so equality stays structural.
 */
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(const Rational& r) : v_(r) {}
    Scalar(long n) : v_(Rational(n)) {}
    Scalar(const QuadExt& q) {
        if (q.is_rational_coords())
            v_ = q.a();
        else
            v_ = q;
    }

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rational() const {
        if (!is_rational()) throw error("Scalar: not rational: " + str());
        return std::get<Rational>(v_);
    }
    const QuadExt& quad() const {
        if (is_rational()) throw error("Scalar: not a quadratic element");
        return std::get<QuadExt>(v_);
    }

    bool is_zero() const {
        return is_rational() ? rational().is_zero() : quad().is_zero();
    }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        return combine(x, y, [](const auto& a, const auto& b) { return a + b; });
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) {
        return combine(x, y, [](const auto& a, const auto& b) { return a - b; });
    }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        return combine(x, y, [](const auto& a, const auto& b) { return a * b; });
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) {
        if (y.is_zero()) throw error("Scalar: division by zero");
        return combine(x, y, [](const auto& a, const auto& b) { return a / b; });
    }
    Scalar operator-() const {
        if (is_rational()) return Scalar(-rational());
        return Scalar(-quad());
    }

    Scalar pow(long e) const {
        if (is_rational()) return Scalar(rational().pow(e));
        return Scalar(quad().pow(e));
    }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        if (x.is_rational() != y.is_rational()) return false;
        if (x.is_rational()) return x.rational() == y.rational();
        return x.quad() == y.quad();
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    Valuation valuation(const PAdicContext& ctx) const {
        if (is_rational()) return symcube::valuation(rational(), ctx.p);
        return quad().valuation(ctx);
    }

    std::string str() const {
        if (is_rational()) return rational().str();
        return quad().str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    template <typename F>
    static Scalar combine(const Scalar& x, const Scalar& y, F f) {
        if (x.is_rational() && y.is_rational()) return Scalar(f(x.rational(), y.rational()));
        if (!x.is_rational() && !y.is_rational()) return Scalar(f(x.quad(), y.quad()));
        // promote the rational side into the other's algebra
        if (x.is_rational()) {
            const QuadExt& q = y.quad();
            QuadExt xr(q.t(), q.d(), x.rational(), Rational(0), q.branch());
            return Scalar(f(xr, q));
        }
        const QuadExt& q = x.quad();
        QuadExt yr(q.t(), q.d(), y.rational(), Rational(0), q.branch());
        return Scalar(f(q, yr));
    }

    std::variant<Rational, QuadExt> v_;
};

// Valuation of x under the branch-embedding at p; dispatch helper.
inline Valuation valuation(const Scalar& x, const PAdicContext& ctx) {
    return x.valuation(ctx);
}

/**
 * The two roots of X^2 - TX + D as Scalars, branch-ordered. Rational
 * when the quadratic splits over Q, QuadExt branches otherwise.
 */
inline std::pair<Scalar, Scalar> quad_roots(const Rational& T, const Rational& D, long p) {
    QuadExt probe = QuadExt::root(T, D, 0);
    if (auto r = probe.rational_roots(p)) return {Scalar(r->first), Scalar(r->second)};
    return {Scalar(QuadExt::root(T, D, 0)), Scalar(QuadExt::root(T, D, 1))};
}

} // namespace symcube
