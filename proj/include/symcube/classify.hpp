#pragma once

#include "eigensystem.hpp"

#include <optional>
#include <set>

namespace symcube {

/**
 * Arithmetic in the cubic field Q(delta) with delta^3 = d, d a rational
 * that is not a cube. Used only when the classifier is allowed to take
 * a symbolic cube root of the similitude value.
 */
class CubicExt {
public:
    CubicExt() : d_(0), c_{Rational(0), Rational(0), Rational(0)} {} // container use only
    CubicExt(const Rational& d, const Rational& c0, const Rational& c1, const Rational& c2)
        : d_(d), c_{c0, c1, c2} {}
    static CubicExt from_rational(const Rational& d, const Rational& r) {
        return CubicExt(d, r, Rational(0), Rational(0));
    }
    static CubicExt delta(const Rational& d) {
        return CubicExt(d, Rational(0), Rational(1), Rational(0));
    }

    const Rational& d() const { return d_; }
    const std::array<Rational, 3>& coords() const { return c_; }
    bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero(); }
    bool is_rational() const { return c_[1].is_zero() && c_[2].is_zero(); }

    friend CubicExt operator+(const CubicExt& x, const CubicExt& y) {
        check(x, y);
        return CubicExt(x.d_, x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2]);
    }
    friend CubicExt operator-(const CubicExt& x, const CubicExt& y) {
        check(x, y);
        return CubicExt(x.d_, x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2]);
    }
    CubicExt operator-() const { return CubicExt(d_, -c_[0], -c_[1], -c_[2]); }
    friend CubicExt operator*(const CubicExt& x, const CubicExt& y) {
        check(x, y);
        std::array<Rational, 5> raw{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) raw[i + j] += x.c_[i] * y.c_[j];
        // delta^3 = d, delta^4 = d delta
        return CubicExt(x.d_, raw[0] + x.d_ * raw[3], raw[1] + x.d_ * raw[4], raw[2]);
    }
    CubicExt inverse() const {
        if (is_zero()) throw error("CubicExt: inverse of zero");
        // solve x * y = 1 as a 3x3 linear system over Q
        std::array<std::array<Rational, 4>, 3> m{};
        std::array<CubicExt, 3> basis{CubicExt::from_rational(d_, Rational(1)),
                                      CubicExt::delta(d_),
                                      CubicExt::delta(d_) * CubicExt::delta(d_)};
        for (int col = 0; col < 3; ++col) {
            CubicExt prod = *this * basis[col];
            for (int row = 0; row < 3; ++row) m[row][col] = prod.c_[row];
        }
        m[0][3] = Rational(1);
        // gaussian elimination
        for (int col = 0, row = 0; col < 3 && row < 3; ++col) {
            int piv = row;
            while (piv < 3 && m[piv][col].is_zero()) ++piv;
            if (piv == 3) throw error("CubicExt: singular multiplication (d is a cube?)");
            std::swap(m[row], m[piv]);
            Rational inv = m[row][col].inverse();
            for (auto& x : m[row]) x *= inv;
            for (int r = 0; r < 3; ++r) {
                if (r == row || m[r][col].is_zero()) continue;
                Rational f = m[r][col];
                for (int c = 0; c < 4; ++c) m[r][c] -= f * m[row][c];
            }
            ++row;
        }
        return CubicExt(d_, m[0][3], m[1][3], m[2][3]);
    }
    friend CubicExt operator/(const CubicExt& x, const CubicExt& y) { return x * y.inverse(); }
    friend bool operator==(const CubicExt& x, const CubicExt& y) {
        return x.d_ == y.d_ && x.c_ == y.c_;
    }

    std::string str() const {
        return "(" + c_[0].str() + " + " + c_[1].str() + "*cbrt + " + c_[2].str() +
               "*cbrt^2 of " + d_.str() + ")";
    }

private:
    static void check(const CubicExt& x, const CubicExt& y) {
        if (x.d_ != y.d_) throw error("CubicExt: incompatible cubic extensions");
    }
    Rational d_;
    std::array<Rational, 3> c_;
};

/**
 * One solution of the parameter-recovery problem: a pair (T, D) with
 * the quartic equal to the cube of X^2 - TX + D. When the similitude
 * cube root does not exist rationally, the pair lives in Q(cbrt(D^3))
 * and is reported in coordinates, flagged as a cubic-extension
 * candidate.
 */
struct Sym3Candidate {
    bool cubic_ext = false;
    Rational T, D;                 // rational case
    Rational dcube;                // cubic case: delta^3
    std::array<Rational, 3> Tc{}, Dc{}; // coordinates in (1, delta, delta^2)

    static Sym3Candidate rational(const Rational& T, const Rational& D) {
        Sym3Candidate s;
        s.T = T;
        s.D = D;
        return s;
    }
    static Sym3Candidate cubic(const Rational& dcube, const CubicExt& T, const CubicExt& D) {
        Sym3Candidate s;
        s.cubic_ext = true;
        s.dcube = dcube;
        s.Tc = T.coords();
        s.Dc = D.coords();
        return s;
    }
};

namespace detail {

// polynomial gcd over a field, coefficients ascending
template <typename F>
std::vector<F> poly_mod(std::vector<F> a, const std::vector<F>& b) {
    auto deg = [](const std::vector<F>& f) {
        long d = static_cast<long>(f.size()) - 1;
        while (d >= 0 && f[d].is_zero()) --d;
        return d;
    };
    long db = deg(b);
    if (db < 0) throw error("poly_mod: division by zero polynomial");
    for (long da = deg(a); da >= db; da = deg(a)) {
        F q = a[da] / b[db];
        for (long i = 0; i <= db; ++i) a[da - db + i] = a[da - db + i] - q * b[i];
        a[da] = a[da] - a[da]; // force exact zero at the top
        a.resize(da);
        if (a.empty()) break;
    }
    return a;
}

template <typename F>
std::vector<F> poly_gcd(std::vector<F> a, std::vector<F> b) {
    auto deg = [](const std::vector<F>& f) {
        long d = static_cast<long>(f.size()) - 1;
        while (d >= 0 && f[d].is_zero()) --d;
        return d;
    };
    while (deg(b) >= 0) {
        std::vector<F> r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    long d = deg(a);
    if (d < 0) return a;
    a.resize(d + 1);
    F lead = a[d];
    for (F& c : a) c = c / lead;
    return a;
}

// roots in the coefficient field of a monic gcd of degree <= 2; the
// quadratic case uses an exact square-root test (rational only).
inline std::vector<Rational> field_roots(const std::vector<Rational>& g) {
    std::vector<Rational> roots;
    if (g.size() == 2) {
        roots.push_back(-g[0]);
    } else if (g.size() == 3) {
        Rational disc = g[1] * g[1] - Rational(4) * g[0];
        Rational s;
        if (rational_sqrt(disc, s)) {
            roots.push_back((-g[1] + s) / Rational(2));
            if (!s.is_zero()) roots.push_back((-g[1] - s) / Rational(2));
        }
    }
    return roots;
}

inline std::vector<CubicExt> field_roots(const std::vector<CubicExt>& g) {
    std::vector<CubicExt> roots;
    if (g.size() == 2) {
        roots.push_back(-g[0]);
    } else if (g.size() == 3) {
        throw error(
            "sym3 parameter recovery: quadratic ambiguity inside a cubic extension is not "
            "resolved; supply data at another prime");
    }
    return roots;
}

// all T in the coefficient field with T^3 - 2TD = e1 and
// D(T^4 - 3DT^2 + 2D^2) = e2
template <typename F>
std::vector<F> recover_trace(const F& D, const F& e1, const F& e2, const F& zero, const F& one) {
    auto C = [&](long n) {
        F r = zero;
        F step = one;
        for (long i = 0; i < std::abs(n); ++i) r = r + step;
        if (n < 0) r = zero - r;
        return r;
    };
    // f(T) = T^3 - 2 D T - e1
    std::vector<F> f{zero - e1, zero - (C(2) * D), zero, one};
    // g(T) = D T^4 - 3 D^2 T^2 + 2 D^3 - e2
    std::vector<F> g{C(2) * D * D * D - e2, zero, zero - (C(3) * D * D), zero, D};
    std::vector<F> gcd = poly_gcd(f, g);
    if (gcd.size() > 3) throw error("recover_trace: unexpected gcd degree (zero determinant?)");
    std::vector<F> roots = field_roots(gcd);
    std::vector<F> verified;
    for (const F& T : roots) {
        F lhs1 = T * T * T - C(2) * T * D;
        F lhs2 = D * (T * T * T * T - C(3) * D * T * T + C(2) * D * D);
        if (lhs1 == e1 && lhs2 == e2) verified.push_back(T);
    }
    return verified;
}

} // namespace detail

/**
 * Decide whether the monic quartic with coefficients
 * X^4 - e1 X^3 + e2 X^2 - e3 X + e4 is the symmetric cube of a
 * quadratic X^2 - TX + D, and recover all (T, D). Rational candidates
 * are always searched; a symbolic cube root of D^3 is taken only when
 * allow_cubic_ext is set, and such candidates carry the flag.
 */
inline std::vector<Sym3Candidate> is_sym3_quartic(const Rational& e1, const Rational& e2,
                                                  const Rational& e3, const Rational& e4,
                                                  bool allow_cubic_ext = false) {
    std::vector<Rational> dcubes;
    if (!e1.is_zero()) {
        Rational dc = e3 / e1;
        if (e4 != dc * dc) return {};
        dcubes.push_back(dc);
    } else {
        if (!e3.is_zero()) return {};
        Rational s;
        if (!rational_sqrt(e4, s)) return {};
        dcubes.push_back(s);
        if (!s.is_zero()) dcubes.push_back(-s);
    }

    std::vector<Sym3Candidate> out;
    for (const Rational& dc : dcubes) {
        Rational D;
        if (rational_cbrt(dc, D)) {
            if (D.is_zero()) {
                // degenerate pair of roots (0, T): the quartic collapses
                // to X^4 - T^3 X^3 and every other coefficient vanishes
                Rational T;
                if (e2.is_zero() && rational_cbrt(e1, T))
                    out.push_back(Sym3Candidate::rational(T, D));
                continue;
            }
            auto traces = detail::recover_trace<Rational>(D, e1, e2, Rational(0), Rational(1));
            for (const Rational& T : traces) out.push_back(Sym3Candidate::rational(T, D));
        } else if (allow_cubic_ext) {
            CubicExt D_k = CubicExt::delta(dc);
            CubicExt e1_k = CubicExt::from_rational(dc, e1);
            CubicExt e2_k = CubicExt::from_rational(dc, e2);
            auto traces = detail::recover_trace<CubicExt>(D_k, e1_k, e2_k,
                                                          CubicExt::from_rational(dc, Rational(0)),
                                                          CubicExt::from_rational(dc, Rational(1)));
            for (const CubicExt& T : traces) out.push_back(Sym3Candidate::cubic(dc, T, D_k));
        }
    }
    return out;
}

/**
 * Classification of a GSp4 eigensystem against the symmetric cube
 * locus: per-prime parameter recovery from the degree-4 Hecke
 * polynomial, plus branch identification from the U-operator binomials
 * when Iwahori data is present.
 */
struct ClassifyResult {
    bool is_sym3 = false;
    std::optional<long> witness_prime;             // first prime where recovery fails
    std::map<long, std::vector<Sym3Candidate>> recovered; // ell -> candidates for (a_l, l c_l)
    bool cubic_ambiguity = false;
    std::optional<std::set<int>> branches; // satisfied branch binomials, if Iwahori data given
};

inline ClassifyResult classify_sym3(const Eigensystem& chi, const std::vector<long>& primes,
                                    bool allow_cubic_ext = false) {
    chi.validate();
    if (chi.group != Group::GSp4) throw error("classify_sym3: GSp4 systems only");
    if (primes.empty()) throw error("classify_sym3: empty prime set");
    ClassifyResult res;
    res.is_sym3 = true;
    for (long ell : primes) {
        auto it = chi.spherical.find(ell);
        if (it == chi.spherical.end())
            throw error("classify_sym3: no spherical data at " + std::to_string(ell));
        for (const Scalar& v : it->second)
            if (!v.is_rational())
                throw error("classify_sym3: spherical values must be rational");
        Rational T0 = it->second[0].rational();
        Rational T1 = it->second[1].rational();
        Rational T2 = it->second[2].rational();
        Rational l(ell);
        Rational e1 = T2;
        Rational e2 = T2 * T2 - T1 - l * l * T0;
        Rational e3 = l.pow(3) * T2 * T0;
        Rational e4 = l.pow(6) * T0 * T0;
        auto candidates = is_sym3_quartic(e1, e2, e3, e4, allow_cubic_ext);
        // the similitude value ties D to l: D^3 must equal l^3 T0
        std::vector<Sym3Candidate> keep;
        for (const Sym3Candidate& c : candidates) {
            Rational dc = c.cubic_ext ? c.dcube : c.D.pow(3);
            if (dc == l.pow(3) * T0) keep.push_back(c);
        }
        if (keep.empty()) {
            res.is_sym3 = false;
            if (!res.witness_prime) res.witness_prime = ell;
            continue;
        }
        for (const Sym3Candidate& c : keep) res.cubic_ambiguity |= c.cubic_ext;
        res.recovered[ell] = std::move(keep);
    }
    if (chi.stabilized()) {
        std::array<Scalar, 3> u{(*chi.iwahori_p)[0], (*chi.iwahori_p)[1], (*chi.iwahori_p)[2]};
        std::set<int> branches;
        for (const TransferBranch& b : all_transfer_branches())
            if (b.binomial_eval(u).is_zero()) branches.insert(b.index);
        res.branches = std::move(branches);
    }
    return res;
}

// c_l recovered from a rational candidate at ell: D = l c
inline Rational recovered_c(const Sym3Candidate& cand, long ell) {
    if (cand.cubic_ext) throw error("recovered_c: candidate lives in a cubic extension");
    return cand.D / Rational(ell);
}

} // namespace symcube
