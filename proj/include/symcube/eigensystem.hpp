#pragma once

#include "dirichlet.hpp"
#include "hecke.hpp"
#include "levels.hpp"

#include <optional>
#include <set>

namespace symcube {

/**
 * A system of Hecke eigenvalues: tame level, weight, spherical values
 * at good primes and, once p-stabilized, the torus character values of
 * the U-operators at p.
 *
 * Value layout follows the wire format: GL2 spherical entries are
 * (T_l, T_{l,0}), GSp4 entries are (T_{l,0}, T_{l,1}, T_{l,2});
 * Iwahori tuples are (t_0, t_1) resp. (t_0, t_1, t_2).
 */
struct Eigensystem {
    Group group = Group::GL2;
    long p = 5;
    long tame_level = 1;
    std::vector<long> weight;                      // (k) or (k1, k2)
    std::map<long, std::vector<Scalar>> spherical; // prime -> values
    std::optional<std::vector<Scalar>> iwahori_p;
    std::optional<DirichletCharacter> nebentypus;
    std::set<std::string> flags;

    bool stabilized() const { return iwahori_p.has_value(); }
    bool normalized() const { return flags.count("normalized") > 0; }

    long k() const {
        if (group != Group::GL2) throw error("k(): not a GL2 system");
        return weight.at(0);
    }
    long k1() const { return weight.at(0); }
    long k2() const {
        if (group != Group::GSp4) throw error("k2(): not a GSp4 system");
        return weight.at(1);
    }

    void validate() const {
        if (!PAdicContext::is_prime(p) || p <= 3) throw error("eigensystem: p must be a prime > 3");
        if (tame_level < 1) throw error("eigensystem: tame level must be positive");
        if (tame_level % p == 0) throw error("eigensystem: tame level must be coprime to p");
        size_t wsize = group == Group::GL2 ? 1 : 2;
        if (weight.size() != wsize) throw error("eigensystem: wrong number of weight entries");
        if (group == Group::GL2 && weight[0] < 2) throw error("eigensystem: GL2 weight must be >= 2");
        if (group == Group::GSp4 && (weight[0] < weight[1] || weight[1] < 3))
            throw error("eigensystem: GSp4 weight must satisfy k1 >= k2 >= 3");
        size_t nvals = group == Group::GL2 ? 2 : 3;
        for (const auto& [ell, vals] : spherical) {
            if (!PAdicContext::is_prime(ell)) throw error("eigensystem: spherical key is not prime");
            if (vals.size() != nvals) throw error("eigensystem: wrong spherical arity");
            if (ell != p && tame_level % ell == 0)
                throw error("eigensystem: spherical prime divides the tame level");
            if (ell == p && stabilized())
                throw error("eigensystem: stabilized system still carries spherical data at p");
        }
        if (stabilized() && iwahori_p->size() != nvals)
            throw error("eigensystem: wrong Iwahori arity");
        if (nebentypus && nebentypus->modulus() % p == 0)
            throw error("eigensystem: nebentypus modulus must be coprime to p");
    }

    friend bool operator==(const Eigensystem& a, const Eigensystem& b) {
        bool neb_eq = a.nebentypus.has_value() == b.nebentypus.has_value() &&
                      (!a.nebentypus || *a.nebentypus == *b.nebentypus);
        return a.group == b.group && a.p == b.p && a.tame_level == b.tame_level &&
               a.weight == b.weight && a.spherical == b.spherical &&
               a.iwahori_p == b.iwahori_p && neb_eq;
    }
};

/**
 * Weight normalization of the U-operator eigenvalues: for genus 2 the
 * middle operator picks up p^-(k2-2); the top operator and everything
 * away from p stay put. Genus 1 is untouched.
 */
inline Eigensystem normalize(const Eigensystem& chi) {
    chi.validate();
    if (!chi.stabilized()) throw error("normalize: system is not stabilized");
    if (chi.normalized()) throw error("normalize: already normalized");
    Eigensystem out = chi;
    if (chi.group == Group::GSp4) {
        Scalar factor(p_power(chi.p, Rational(-(chi.k2() - 2))));
        (*out.iwahori_p)[1] = (*out.iwahori_p)[1] * factor;
    }
    out.flags.insert("normalized");
    return out;
}

/**
 * The two p-stabilizations of a level-prime-to-p GL2 system: the
 * Iwahori values (t_0, t_1) = (alpha beta, alpha) and (alpha beta, beta)
 * for alpha, beta the roots of X^2 - T_p X + p T_{p,0}. A double root
 * yields two equal systems carrying a degeneracy flag.
 */
inline std::vector<Eigensystem> stabilizations(const Eigensystem& chi) {
    chi.validate();
    if (chi.group != Group::GL2) throw error("stabilizations: GL2 systems only");
    if (chi.stabilized()) throw error("stabilizations: system already stabilized");
    auto it = chi.spherical.find(chi.p);
    if (it == chi.spherical.end())
        throw error("stabilizations: spherical values at p are required");
    if (!it->second[0].is_rational() || !it->second[1].is_rational())
        throw error("stabilizations: spherical values at p must be rational");
    Rational tp = it->second[0].rational();
    Rational tp0 = it->second[1].rational();
    Rational T = tp, D = Rational(chi.p) * tp0;
    auto [alpha, beta] = quad_roots(T, D, chi.p);
    bool degenerate = (T * T - Rational(4) * D).is_zero();

    Eigensystem base = chi;
    base.spherical.erase(chi.p);
    std::vector<Eigensystem> out;
    for (const Scalar& root : {alpha, beta}) {
        Eigensystem st = base;
        st.iwahori_p = std::vector<Scalar>{Scalar(D), root};
        if (degenerate) st.flags.insert("degenerate-stabilization");
        out.push_back(std::move(st));
    }
    return out;
}

// Slope: valuation of the normalized product of the U-operator values.
inline Valuation slope(const Eigensystem& chi) {
    chi.validate();
    if (!chi.stabilized()) throw error("slope: system is not stabilized");
    PAdicContext ctx(chi.p);
    if (chi.group == Group::GL2) return (*chi.iwahori_p)[1].valuation(ctx);
    Valuation v = ((*chi.iwahori_p)[1] * (*chi.iwahori_p)[2]).valuation(ctx);
    if (chi.normalized()) return v;
    return v - Rational(chi.k2() - 2);
}

// Small-slope classicality test for genus 2: slope < k2 - 3.
inline bool classicality_guaranteed(const Eigensystem& chi) {
    if (chi.group != Group::GSp4) throw error("classicality_guaranteed: GSp4 systems only");
    Valuation s = slope(chi);
    if (s.is_infinite()) return false;
    return s.finite() < Rational(chi.k2() - 3);
}

/**
 * Symmetric cube lift of a stabilized GL2 system along one of the four
 * Iwahori branches: spherical values through the unramified transfer,
 * U-operator values through the branch monomials (branch 4 leaves the
 * dilating cone and goes through the character extension), weight
 * (2k-1, k+1), tame level M(N), nebentypus cubed.
 */
inline Eigensystem sym3_lift(const Eigensystem& chi, int branch) {
    chi.validate();
    if (chi.group != Group::GL2) throw error("sym3_lift: GL2 systems only");
    if (!chi.stabilized()) throw error("sym3_lift: system must be stabilized");
    if (branch < 1 || branch > 4) throw error("sym3_lift: branch must be 1..4");

    Eigensystem out;
    out.group = Group::GSp4;
    out.p = chi.p;
    out.tame_level = sym3_level(chi.tame_level);
    out.weight = {2 * chi.k() - 1, chi.k() + 1};
    if (chi.nebentypus) out.nebentypus = chi.nebentypus->cubed();

    for (const auto& [ell, vals] : chi.spherical) {
        std::array<Scalar, 3> x{vals[1], vals[0], Scalar(0)}; // (T_{l,0}, T_l)
        std::vector<Scalar> img(3, Scalar(0));
        for (int j = 0; j <= 2; ++j) img[j] = transfer_unramified(ell, j).eval(x);
        out.spherical[ell] = std::move(img);
    }

    TorusCharacter chi_p(Group::GL2, {(*chi.iwahori_p)[0], (*chi.iwahori_p)[1]});
    std::vector<Scalar> iw;
    for (int j = 0; j <= 2; ++j)
        iw.push_back(extend_character(chi_p, transfer_iwahori(branch, j, chi.p)));
    out.iwahori_p = std::move(iw);
    out.validate();
    return out;
}

/**
 * Twist of a GSp4 system by a finite-order character of conductor
 * prime to p. Spherical values scale by (eta(l^2), eta(l^2), eta(l));
 * at p the stabilization roots scale by eta(p), hence
 * (t_0, t_1, t_2) -> (eta(p)^2 t_0, eta(p)^2 t_1, eta(p) t_2). The tame
 * level moves to lcm(N, m0)^2 and primes dividing m0 leave the
 * spherical support. The slope is untouched.
 */
inline Eigensystem twist(const Eigensystem& chi, const DirichletCharacter& eta) {
    chi.validate();
    if (chi.group != Group::GSp4) throw error("twist: GSp4 systems only");
    if (eta.modulus() % chi.p == 0) throw error("twist: character modulus must be coprime to p");
    if (!eta.is_exact())
        throw error("twist: character values are not representable in the exact scalar field");

    Eigensystem out = chi;
    out.tame_level = std::lcm(chi.tame_level, eta.modulus());
    out.tame_level *= out.tame_level;
    out.spherical.clear();
    for (const auto& [ell, vals] : chi.spherical) {
        if (eta.modulus() % ell == 0) continue;
        Scalar e1 = eta.value(ell);
        Scalar e2 = e1 * e1; // eta(l^2)
        out.spherical[ell] = {e2 * vals[0], e2 * vals[1], e1 * vals[2]};
    }
    if (chi.stabilized()) {
        Scalar ep = eta.value(chi.p);
        Scalar ep2 = ep * ep;
        out.iwahori_p = std::vector<Scalar>{ep2 * (*chi.iwahori_p)[0], ep2 * (*chi.iwahori_p)[1],
                                            ep * (*chi.iwahori_p)[2]};
    }
    // exact mode means eta^2 is trivial, so the nebentypus is unchanged
    out.validate();
    return out;
}

// GL2 companion used by the compatibility checks: values scale by
// (eta(l), eta(l^2)) away from p and (eta(p)^2, eta(p)) on the torus.
inline Eigensystem twist_gl2(const Eigensystem& chi, const DirichletCharacter& eta) {
    chi.validate();
    if (chi.group != Group::GL2) throw error("twist_gl2: GL2 systems only");
    if (eta.modulus() % chi.p == 0) throw error("twist: character modulus must be coprime to p");
    if (!eta.is_exact())
        throw error("twist: character values are not representable in the exact scalar field");
    Eigensystem out = chi;
    out.tame_level = std::lcm(chi.tame_level, eta.modulus());
    out.tame_level *= out.tame_level;
    out.spherical.clear();
    for (const auto& [ell, vals] : chi.spherical) {
        if (eta.modulus() % ell == 0) continue;
        Scalar e1 = eta.value(ell);
        Scalar e2 = e1 * e1; // eta(l^2)
        out.spherical[ell] = {e1 * vals[0], e2 * vals[1]};
    }
    if (chi.stabilized()) {
        Scalar ep = eta.value(chi.p);
        out.iwahori_p = std::vector<Scalar>{ep * ep * (*chi.iwahori_p)[0], ep * (*chi.iwahori_p)[1]};
    }
    out.validate();
    return out;
}

} // namespace symcube
