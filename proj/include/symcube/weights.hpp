#pragma once

#include "hecke.hpp"

#include <optional>

namespace symcube {

/**
 * Weight-space coordinates: a point of the genus-g weight space in the
 * coordinates T (genus 1) or (T1, T2) (genus 2), optionally carrying a
 * classical label k with 1 + T_i = u^{k_i} exactly, u = 1 + p.
 */
struct WeightPoint {
    int genus = 1;
    std::vector<Rational> coords;
    std::optional<std::vector<long>> classical;

    static WeightPoint classical_point(long k, const PAdicContext& ctx) {
        ctx.require_standing_assumption();
        WeightPoint w;
        w.genus = 1;
        w.coords = {ctx.u().pow(k) - Rational(1)};
        w.classical = std::vector<long>{k};
        return w;
    }
    static WeightPoint classical_point(long k1, long k2, const PAdicContext& ctx) {
        ctx.require_standing_assumption();
        WeightPoint w;
        w.genus = 2;
        w.coords = {ctx.u().pow(k1) - Rational(1), ctx.u().pow(k2) - Rational(1)};
        w.classical = std::vector<long>{k1, k2};
        return w;
    }

    void validate(const PAdicContext& ctx) const {
        if (genus != 1 && genus != 2) throw error("WeightPoint: genus must be 1 or 2");
        if (coords.size() != static_cast<size_t>(genus))
            throw error("WeightPoint: wrong number of coordinates");
        if (classical) {
            if (classical->size() != coords.size())
                throw error("WeightPoint: wrong number of classical labels");
            for (size_t i = 0; i < coords.size(); ++i)
                if (Rational(1) + coords[i] != ctx.u().pow((*classical)[i]))
                    throw error("WeightPoint: classical label does not match the coordinate");
        }
    }
};

/**
 * The cube-transfer weight map on coordinates,
 * T -> (u^{-1}(1+T)^2 - 1, u(1+T) - 1); a classical k goes to
 * (2k-1, k+1).
 */
inline WeightPoint iota(const WeightPoint& w, const PAdicContext& ctx) {
    w.validate(ctx);
    if (w.genus != 1) throw error("iota: genus-1 points only");
    Rational u = ctx.u();
    Rational one_plus = Rational(1) + w.coords[0];
    WeightPoint out;
    out.genus = 2;
    out.coords = {one_plus * one_plus / u - Rational(1), u * one_plus - Rational(1)};
    if (w.classical)
        out.classical = std::vector<long>{2 * (*w.classical)[0] - 1, (*w.classical)[0] + 1};
    out.validate(ctx);
    return out;
}

// The image curve of iota inside the genus-2 coordinates:
// u^{-3} (1+T2)^2 - (1+T1) = 0. Returned as a polynomial over Q.
inline BiPoly iota_image_equation(const PAdicContext& ctx) {
    ctx.require_standing_assumption();
    Rational u = ctx.u();
    BiPoly one = BiPoly::constant(Rational(1));
    BiPoly t1 = BiPoly::variable(0), t2 = BiPoly::variable(1);
    return Rational(1) / u.pow(3) * ((one + t2) * (one + t2)) - (one + t1);
}

// iota in coordinates as univariate polynomials in T, for symbolic
// identities: T1(T) = u^{-1}(1+T)^2 - 1, T2(T) = u(1+T) - 1.
inline std::array<UniPoly, 2> iota_symbolic(const PAdicContext& ctx) {
    ctx.require_standing_assumption();
    Rational u = ctx.u();
    UniPoly one_plus({Scalar(Rational(1)), Scalar(Rational(1))}); // 1 + T
    UniPoly t1 = UniPoly::constant(Scalar(u.inverse())) * one_plus * one_plus -
                 UniPoly::constant(Scalar(Rational(1)));
    UniPoly t2 = UniPoly::constant(Scalar(u)) * one_plus - UniPoly::constant(Scalar(Rational(1)));
    return {t1, t2};
}

// Hodge-Tate weights of the classical representation attached to the
// given weight: (0, k-1) in genus 1, (0, k2-2, k1-1, k1+k2-3) in
// genus 2.
inline std::vector<long> hodge_tate_weights(const std::vector<long>& weight, Group group) {
    if (group == Group::GL2) {
        if (weight.size() != 1) throw error("hodge_tate_weights: GL2 takes one weight entry");
        return {0, weight[0] - 1};
    }
    if (weight.size() != 2) throw error("hodge_tate_weights: GSp4 takes two weight entries");
    long k1 = weight[0], k2 = weight[1];
    std::vector<long> w{0, k2 - 2, k1 - 1, k1 + k2 - 3};
    std::sort(w.begin(), w.end());
    return w;
}

// The four weight-space ideals along which the exponentiated Sen
// eigenvalue differences vanish.
inline std::vector<BiPoly> bad_weight_ideals(const PAdicContext& ctx) {
    ctx.require_standing_assumption();
    Rational u = ctx.u();
    BiPoly one = BiPoly::constant(Rational(1));
    BiPoly t1 = BiPoly::variable(0), t2 = BiPoly::variable(1);
    return {
        one + t1 - BiPoly::constant(u),
        one + t2 - BiPoly::constant(u * u),
        one + t2 - u * (one + t1),
        (one + t1) * (one + t2) - BiPoly::constant(u.pow(3)),
    };
}

// The eigenvalues of the exponentiated Sen operator over the genus-2
// weight coordinates.
inline std::vector<BiPoly> sen_exp_eigenvalues(const PAdicContext& ctx) {
    ctx.require_standing_assumption();
    Rational u = ctx.u();
    BiPoly one = BiPoly::constant(Rational(1));
    BiPoly t1 = BiPoly::variable(0), t2 = BiPoly::variable(1);
    return {
        one,
        u.pow(-2) * (one + t2),
        u.pow(-1) * (one + t1),
        u.pow(-3) * ((one + t1) * (one + t2)),
    };
}

/**
 * Pairwise differences of the exponentiated Sen eigenvalues, each
 * factored exactly as (member of the bad ideal set) * cofactor. Every
 * difference must factor this way; a miss is a structural failure.
 */
struct SenDifference {
    size_t i, j;     // eigenvalue indices, i < j
    BiPoly difference;
    BiPoly divisor;  // the bad-set member
    BiPoly cofactor; // difference = divisor * cofactor
};

inline std::vector<SenDifference> sen_eigenvalue_differences(const PAdicContext& ctx) {
    std::vector<BiPoly> ev = sen_exp_eigenvalues(ctx);
    std::vector<BiPoly> bad = bad_weight_ideals(ctx);
    std::vector<SenDifference> out;
    for (size_t i = 0; i < ev.size(); ++i)
        for (size_t j = i + 1; j < ev.size(); ++j) {
            BiPoly diff = ev[j] - ev[i];
            bool found = false;
            for (const BiPoly& b : bad) {
                if (auto q = divide_exact(diff, b)) {
                    out.push_back({i, j, diff, b, *q});
                    found = true;
                    break;
                }
            }
            if (!found)
                throw error("sen_eigenvalue_differences: a difference has no bad-set divisor");
        }
    return out;
}

/**
 * Membership of a classical weight in the disc of radius p^{-s_h}
 * around the fixed center: every coordinate k must satisfy
 * v_p(k) > s_h - 1.
 */
inline bool adapted_disc_contains(const std::vector<long>& weight, const Rational& s_h,
                                  const PAdicContext& ctx) {
    if (s_h.sign() < 0) throw error("adapted_disc_contains: s_h must be >= 0");
    for (long k : weight) {
        Valuation v = valuation(Rational(k), ctx.p);
        if (!(v > Valuation(s_h - Rational(1)))) return false;
    }
    return true;
}

} // namespace symcube
