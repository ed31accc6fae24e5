#pragma once

#include "poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <vector>

namespace symcube {

enum class Group { GL2, GSp4 };

inline int torus_rank(Group g) { return g == Group::GL2 ? 2 : 3; }
inline std::string group_name(Group g) { return g == Group::GL2 ? "GL2" : "GSp4"; }

struct group_mismatch_error : error {
    using error::error;
};

/**
 * Torus double-coset algebra at a prime: the group algebra of the
 * cocharacter lattice, with basis monomials written as exponent
 * vectors in the coset generators t_0, t_1 (GL2) or t_0, t_1, t_2
 * (GSp4). Multiplication adds exponents; Weyl elements act by integer
 * matrices on the lattice.
 */
class TorusHeckeElement {
public:
    using Exp = std::array<long, 3>; // unused trailing entries are 0 for GL2

    TorusHeckeElement(Group g, long ell) : group_(g), ell_(ell) {}

    static TorusHeckeElement monomial(Group g, long ell, const Exp& e,
                                      const Rational& c = Rational(1)) {
        TorusHeckeElement x(g, ell);
        x.add_term(e, c);
        return x;
    }
    // generator t_i
    static TorusHeckeElement generator(Group g, long ell, int i) {
        if (i < 0 || i >= torus_rank(g)) throw error("torus generator index out of range");
        Exp e{};
        e[i] = 1;
        return monomial(g, ell, e);
    }

    Group group() const { return group_; }
    long ell() const { return ell_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<Exp, Rational>& terms() const { return t_; }

    void add_term(const Exp& e, const Rational& c) {
        if (group_ == Group::GL2 && e[2] != 0)
            throw error("GL2 torus monomial with a third exponent");
        if (c.is_zero()) return;
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    bool is_monomial() const { return t_.size() == 1; }
    std::pair<Exp, Rational> single_term() const {
        if (!is_monomial()) throw error("torus element is not a single coset basis element");
        return *t_.begin();
    }

    friend TorusHeckeElement operator+(const TorusHeckeElement& x, const TorusHeckeElement& y) {
        check(x, y);
        TorusHeckeElement r = x;
        for (const auto& [e, c] : y.t_) r.add_term(e, c);
        return r;
    }
    friend TorusHeckeElement operator-(const TorusHeckeElement& x, const TorusHeckeElement& y) {
        check(x, y);
        TorusHeckeElement r = x;
        for (const auto& [e, c] : y.t_) r.add_term(e, -c);
        return r;
    }
    friend TorusHeckeElement operator*(const TorusHeckeElement& x, const TorusHeckeElement& y) {
        check(x, y);
        TorusHeckeElement r(x.group_, x.ell_);
        for (const auto& [ex, cx] : x.t_)
            for (const auto& [ey, cy] : y.t_) {
                Exp e{ex[0] + ey[0], ex[1] + ey[1], ex[2] + ey[2]};
                r.add_term(e, cx * cy);
            }
        return r;
    }
    friend TorusHeckeElement operator*(const Rational& c, const TorusHeckeElement& x) {
        TorusHeckeElement r(x.group_, x.ell_);
        for (const auto& [e, cx] : x.t_) r.add_term(e, c * cx);
        return r;
    }
    friend bool operator==(const TorusHeckeElement& x, const TorusHeckeElement& y) {
        return x.group_ == y.group_ && x.ell_ == y.ell_ && x.t_ == y.t_;
    }
    friend bool operator!=(const TorusHeckeElement& x, const TorusHeckeElement& y) {
        return !(x == y);
    }

    // Dilating cone: non-negative exponents on the non-central
    // generators (t_0 corresponds to a central coset and is invertible).
    bool is_dilating() const {
        for (const auto& [e, c] : t_) {
            if (e[1] < 0) return false;
            if (group_ == Group::GSp4 && e[2] < 0) return false;
        }
        return true;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : t_) {
            if (!first) os << " + ";
            os << c.str();
            for (int i = 0; i < torus_rank(group_); ++i)
                if (e[i] != 0) os << "*t" << i << "^" << e[i];
            first = false;
        }
        return os.str();
    }

private:
    static void check(const TorusHeckeElement& x, const TorusHeckeElement& y) {
        if (x.group_ != y.group_)
            throw group_mismatch_error("torus elements from different groups");
        if (x.ell_ != y.ell_) throw error("torus elements at different primes");
    }

    Group group_;
    long ell_;
    std::map<Exp, Rational> t_;
};

/**
 * Element of the Weyl group W_g = S_g x (Z/2)^g as a word in the
 * generators: w for GL2 (word letters must be 0), w0, w1, w2 for GSp4.
 * The action on the cocharacter lattice is the integer matrix fixed by
 * t0 central, t2 invariant under w0, t1 = t2 * w1(t2) and
 * t0 = t2 * w1w2(t2).
 */
class WeylElement {
public:
    WeylElement(Group g, std::vector<int> word = {}) : group_(g), word_(std::move(word)) {
        for (int l : word_) {
            int maxgen = group_ == Group::GL2 ? 0 : 2;
            if (l < 0 || l > maxgen) throw error("WeylElement: bad generator letter");
        }
    }
    static WeylElement identity(Group g) { return WeylElement(g); }

    Group group() const { return group_; }
    const std::vector<int>& word() const { return word_; }

    using Exp = TorusHeckeElement::Exp;

    Exp apply(const Exp& e) const {
        Exp r = e;
        for (int l : word_) r = apply_generator(group_, l, r);
        return r;
    }

    static Exp apply_generator(Group g, int l, const Exp& e) {
        if (g == Group::GL2) {
            // w: t1 -> t0 t1^{-1}
            return Exp{e[0] + e[1], -e[1], 0};
        }
        switch (l) {
            case 0: // w0: t1 -> t0 t1^{-1} t2^2
                return Exp{e[0] + e[1], -e[1], e[2] + 2 * e[1]};
            case 1: // w1: t2 -> t1 t2^{-1}
                return Exp{e[0], e[1] + e[2], -e[2]};
            case 2: // w2: t1 -> t0^2 t1^{-1}, t2 -> t0 t1^{-1} t2
                return Exp{e[0] + 2 * e[1] + e[2], -e[1] - e[2], e[2]};
            default:
                throw error("WeylElement: bad generator");
        }
    }

private:
    Group group_;
    std::vector<int> word_;
};

inline TorusHeckeElement weyl_act(const WeylElement& w, const TorusHeckeElement& x) {
    if (w.group() != x.group()) throw group_mismatch_error("weyl_act: group mismatch");
    TorusHeckeElement r(x.group(), x.ell());
    for (const auto& [e, c] : x.terms()) r.add_term(w.apply(e), c);
    return r;
}

// All elements of the Weyl group as lattice maps, enumerated by closure.
inline std::vector<WeylElement> weyl_group(Group g) {
    std::vector<int> gens = g == Group::GL2 ? std::vector<int>{0} : std::vector<int>{0, 1, 2};
    // identify elements by their action on a spanning set
    std::vector<TorusHeckeElement::Exp> probes;
    if (g == Group::GL2)
        probes = {{1, 0, 0}, {0, 1, 0}};
    else
        probes = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto signature = [&](const WeylElement& w) {
        std::vector<TorusHeckeElement::Exp> sig;
        for (const auto& p : probes) sig.push_back(w.apply(p));
        return sig;
    };
    std::vector<WeylElement> out{WeylElement::identity(g)};
    std::set<std::vector<TorusHeckeElement::Exp>> seen{signature(out[0])};
    for (size_t i = 0; i < out.size(); ++i) {
        for (int l : gens) {
            std::vector<int> word = out[i].word();
            word.push_back(l);
            WeylElement cand(g, word);
            if (seen.insert(signature(cand)).second) out.push_back(cand);
        }
    }
    return out;
}

// Weyl orbit of a single coset basis element.
inline std::vector<TorusHeckeElement::Exp> weyl_orbit(Group g, const TorusHeckeElement::Exp& e) {
    std::set<TorusHeckeElement::Exp> orb;
    for (const WeylElement& w : weyl_group(g)) orb.insert(w.apply(e));
    return {orb.begin(), orb.end()};
}

/**
 * Spherical-algebra polynomials: sparse polynomials over Q in the
 * symbols T_{l,0}, T_{l,1}, T_{l,2} (variables 0,1,2; GL2 uses 0,1
 * with T_{l,1} the trace operator).
 */
using SphericalPoly = TriPoly;

// Twisted Satake images of the spherical generators inside the torus
// algebra: central generators pick up the l-power normalisations that
// make the closed minimal-polynomial forms integral.
inline TorusHeckeElement satake_generator(Group g, long ell, int i) {
    if (g == Group::GL2) {
        if (i == 0)
            return Rational(1, ell) * TorusHeckeElement::generator(g, ell, 0);
        if (i == 1) {
            TorusHeckeElement t1 = TorusHeckeElement::generator(g, ell, 1);
            return t1 + weyl_act(WeylElement(g, {0}), t1);
        }
        throw error("satake_generator: bad GL2 index");
    }
    if (i == 0) return Rational(1, ell * ell * ell) * TorusHeckeElement::generator(g, ell, 0);
    if (i == 2) {
        TorusHeckeElement sum(g, ell);
        for (const auto& e : weyl_orbit(g, {0, 0, 1}))
            sum = sum + TorusHeckeElement::monomial(g, ell, e);
        return sum;
    }
    if (i == 1) {
        // fixed by S(T1) = S(T2)^2 - e2(orbit of t2) - l^2 S(T0)
        TorusHeckeElement s2 = satake_generator(g, ell, 2);
        auto orbit = weyl_orbit(g, {0, 0, 1});
        TorusHeckeElement e2(g, ell);
        for (size_t a = 0; a < orbit.size(); ++a)
            for (size_t b = a + 1; b < orbit.size(); ++b)
                e2 = e2 + TorusHeckeElement::monomial(
                              g, ell,
                              {orbit[a][0] + orbit[b][0], orbit[a][1] + orbit[b][1],
                               orbit[a][2] + orbit[b][2]});
        TorusHeckeElement s0 = satake_generator(g, ell, 0);
        return s2 * s2 - e2 - Rational(ell * ell) * s0;
    }
    throw error("satake_generator: bad GSp4 index");
}

inline TorusHeckeElement satake_image(Group g, long ell, const SphericalPoly& f) {
    TorusHeckeElement acc(g, ell);
    for (const auto& [e, c] : f.terms()) {
        TorusHeckeElement term = TorusHeckeElement::monomial(g, ell, {0, 0, 0}, c);
        for (int i = 0; i < 3; ++i) {
            if (e[i] == 0) continue;
            if (e[i] < 0) throw error("satake_image: negative exponent");
            TorusHeckeElement s = satake_generator(g, ell, i);
            for (long k = 0; k < e[i]; ++k) term = term * s;
        }
        acc = acc + term;
    }
    return acc;
}

/**
 * Minimal polynomial of a supported torus generator over the spherical
 * algebra: the expanded product over its Weyl orbit, with coefficients
 * expressed in the spherical symbols. The expression is certified at
 * construction by pushing it back through the Satake map and comparing
 * with the orbit expansion.
 */
struct MinimalPolynomial {
    std::vector<SphericalPoly> coeffs; // ascending degree; leading entry is 1
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

namespace detail {

inline std::vector<TorusHeckeElement> orbit_elementary_symmetric(Group g, long ell,
                                                                 const TorusHeckeElement::Exp& e) {
    auto orbit = weyl_orbit(g, e);
    size_t n = orbit.size();
    std::vector<TorusHeckeElement> es(n + 1, TorusHeckeElement(g, ell));
    es[0] = TorusHeckeElement::monomial(g, ell, {0, 0, 0});
    for (size_t k = 0; k < n; ++k) {
        TorusHeckeElement root = TorusHeckeElement::monomial(g, ell, orbit[k]);
        for (size_t j = std::min(k + 1, n); j >= 1; --j) {
            es[j] = es[j] + root * es[j - 1];
        }
    }
    return es;
}

} // namespace detail

inline MinimalPolynomial minimal_polynomial(const TorusHeckeElement& x) {
    auto [e, c] = x.single_term();
    if (c != Rational(1)) throw error("minimal_polynomial: generator must have coefficient 1");
    Group g = x.group();
    long ell = x.ell();
    Rational l(ell);
    auto V = [](int i) { return SphericalPoly::variable(i); };
    auto C = [](const Rational& r) { return SphericalPoly::constant(r); };

    MinimalPolynomial result;
    if (g == Group::GL2 && e == TorusHeckeElement::Exp{0, 1, 0}) {
        // X^2 - T_{l,1} X + l T_{l,0}
        result.coeffs = {C(l) * V(0), -V(1), C(Rational(1))};
    } else if (g == Group::GSp4 && e == TorusHeckeElement::Exp{0, 0, 1}) {
        // X^4 - T2 X^3 + (T2^2 - T1 - l^2 T0) X^2 - l^3 T2 T0 X + l^6 T0^2
        result.coeffs = {C(l.pow(6)) * V(0) * V(0), C(-l.pow(3)) * V(2) * V(0),
                         V(2) * V(2) - V(1) - C(l.pow(2)) * V(0), -V(2), C(Rational(1))};
    } else if (g == Group::GSp4 && e == TorusHeckeElement::Exp{0, 1, 0}) {
        // orbit of t1 under pairing products of the t2 orbit; derived
        // closed form in the spherical symbols (not printed in the
        // classical references, certified below).
        SphericalPoly uv = V(2) * V(2) - V(1) - C(l.pow(2) + Rational(2) * l.pow(3)) * V(0);
        SphericalPoly z = C(l.pow(3)) * V(0);
        SphericalPoly s2 = V(2) * V(2) - Rational(2) * (V(2) * V(2) - V(1) - C(l.pow(2)) * V(0));
        SphericalPoly E2 = Rational(2) * z * z + z * s2;
        result.coeffs = {z * z * z * z, -(z * z * uv), E2, -uv, C(Rational(1))};
    } else {
        throw error("minimal_polynomial: unsupported generator " + x.str());
    }

    // certify against the direct orbit expansion through the Satake map
    auto es = detail::orbit_elementary_symmetric(g, ell, e);
    long d = result.degree();
    if (static_cast<long>(es.size()) - 1 != d)
        throw error("minimal_polynomial: orbit size mismatch");
    for (long k = 0; k <= d; ++k) {
        TorusHeckeElement lhs = satake_image(g, ell, result.coeffs[d - k]);
        TorusHeckeElement rhs = (k % 2 == 0 ? Rational(1) : Rational(-1)) * es[k];
        if (lhs != rhs)
            throw error("minimal_polynomial: closed form disagrees with orbit expansion");
    }
    return result;
}

/**
 * Character of the dilating torus algebra, given by its values on the
 * generators (the t_0 value must be invertible). Extension to the full
 * torus algebra follows the unique character extension: a monomial is
 * written as a quotient of two dilating monomials.
 */
class TorusCharacter {
public:
    TorusCharacter(Group g, std::vector<Scalar> values) : group_(g), v_(std::move(values)) {
        if (static_cast<int>(v_.size()) != torus_rank(g))
            throw error("TorusCharacter: wrong number of generator values");
    }

    Group group() const { return group_; }
    const Scalar& value(int i) const { return v_.at(i); }

    Scalar eval_monomial(const TorusHeckeElement::Exp& e) const {
        // gamma = gamma1 - gamma2 with both parts dilating
        Scalar num(1), den(1);
        for (int i = 0; i < torus_rank(group_); ++i) {
            if (e[i] == 0) continue;
            if (i == 0 || e[i] > 0) {
                num = num * v_[i].pow(e[i]);
            } else {
                Scalar f = v_[i].pow(-e[i]);
                if (f.is_zero()) throw error("extend_character: division by zero character value");
                den = den * f;
            }
        }
        return num / den;
    }

private:
    Group group_;
    std::vector<Scalar> v_;
};

inline Scalar extend_character(const TorusCharacter& chi, const TorusHeckeElement& x) {
    if (chi.group() != x.group()) throw group_mismatch_error("extend_character: group mismatch");
    Scalar acc(0);
    for (const auto& [e, c] : x.terms()) acc = acc + Scalar(c) * chi.eval_monomial(e);
    return acc;
}

// delta: t0 -> t0, t1 -> t0 t1^{-1}; the Atkin-Lehner-style involution
// exchanging the two p-stabilizations on the GL2 torus algebra.
inline TorusHeckeElement delta_involution(const TorusHeckeElement& x) {
    if (x.group() != Group::GL2) throw group_mismatch_error("delta is a GL2 involution");
    TorusHeckeElement r(x.group(), x.ell());
    for (const auto& [e, c] : x.terms()) r.add_term({e[0] + e[1], -e[1], 0}, c);
    return r;
}

/**
 * Unramified transfer: images of the GSp4 spherical generators as
 * polynomials in the GL2 spherical generators (variable 0 = T_{l,0},
 * variable 1 = T_{l,1}), matched so that the degree-4 minimal
 * polynomial of the image is the symmetric cube of the degree-2 one.
 */
inline SphericalPoly transfer_unramified(long ell, int target) {
    Rational l(ell);
    auto V = [](int i) { return SphericalPoly::variable(i); };
    auto C = [](const Rational& r) { return SphericalPoly::constant(r); };
    SphericalPoly a = V(1), c = V(0);
    switch (target) {
        case 0:
            return c * c * c;
        case 2:
            return a * a * a - C(Rational(2) * l) * a * c;
        case 1:
            return a.pow(2) * a.pow(2) * a.pow(2) - C(Rational(5) * l) * c * a.pow(4) +
                   C(Rational(7) * l * l) * c * c * a * a -
                   C(l * l + Rational(2) * l.pow(3)) * c * c * c;
        default:
            throw error("transfer_unramified: target must be 0, 1 or 2");
    }
}

/**
 * Iwahori-level transfer branches: monomial images of the GSp4 torus
 * generators in the GL2 torus algebra. All four branches send t0 to
 * t0^3; only branches 1-3 stay inside the dilating cone.
 */
inline std::array<std::array<long, 2>, 3> branch_exponents(int branch) {
    switch (branch) {
        case 1: return {{{3, 0}, {1, 4}, {0, 3}}};
        case 2: return {{{3, 0}, {2, 2}, {0, 3}}};
        case 3: return {{{3, 0}, {1, 4}, {1, 1}}};
        case 4: return {{{3, 0}, {4, -2}, {1, 1}}};
        default: throw error("transfer branch index must be 1..4");
    }
}

inline TorusHeckeElement transfer_iwahori(int branch, int target, long p) {
    if (target < 0 || target > 2) throw error("transfer_iwahori: target must be 0, 1 or 2");
    auto rows = branch_exponents(branch);
    return TorusHeckeElement::monomial(Group::GL2, p,
                                       {rows[target][0], rows[target][1], 0});
}

/**
 * One Iwahori transfer branch with its derived binomial relation: the
 * generator of the kernel lattice of the 3x2 exponent matrix, i.e. the
 * single multiplicative relation satisfied by the images of the GSp4
 * U-operators on that branch.
 */
struct TransferBranch {
    int index;
    std::array<std::array<long, 2>, 3> exponents;
    std::array<long, 3> kernel; // primitive, first nonzero entry positive

    static TransferBranch make(int branch) {
        TransferBranch b;
        b.index = branch;
        b.exponents = branch_exponents(branch);
        const auto& r = b.exponents;
        auto det2 = [](const std::array<long, 2>& x, const std::array<long, 2>& y) {
            return x[0] * y[1] - x[1] * y[0];
        };
        std::array<long, 3> k{det2(r[1], r[2]), -det2(r[0], r[2]), det2(r[0], r[1])};
        long g = 0;
        for (long v : k) g = std::gcd(g, std::abs(v));
        if (g == 0) throw error("TransferBranch: degenerate exponent matrix");
        for (long& v : k) v /= g;
        for (long v : k) {
            if (v != 0) {
                if (v < 0)
                    for (long& w : k) w = -w;
                break;
            }
        }
        b.kernel = k;
        return b;
    }

    // evaluate the binomial U^+ - U^- at given U-operator values
    Scalar binomial_eval(const std::array<Scalar, 3>& u) const {
        Scalar pos(1), neg(1);
        for (int i = 0; i < 3; ++i) {
            if (kernel[i] > 0) pos = pos * u[i].pow(kernel[i]);
            if (kernel[i] < 0) neg = neg * u[i].pow(-kernel[i]);
        }
        return pos - neg;
    }

    std::string binomial_str() const {
        auto side = [&](int sign) {
            std::string s;
            for (int i = 0; i < 3; ++i) {
                long k = kernel[i] * sign;
                if (k <= 0) continue;
                if (!s.empty()) s += "*";
                s += "U" + std::to_string(i);
                if (k > 1) s += "^" + std::to_string(k);
            }
            return s.empty() ? std::string("1") : s;
        };
        return side(1) + " - " + side(-1);
    }
};

inline std::vector<TransferBranch> all_transfer_branches() {
    return {TransferBranch::make(1), TransferBranch::make(2), TransferBranch::make(3),
            TransferBranch::make(4)};
}

} // namespace symcube
