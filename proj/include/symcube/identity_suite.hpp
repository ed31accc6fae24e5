#pragma once

#include "congruence.hpp"
#include "matrix.hpp"
#include "weights.hpp"

#include <functional>

namespace symcube {

/**
 * Cross-module identity checks on seeded random data. Each check is
 * deterministic given the seed; a failure carries a minimal
 * reproducer. The CLI exposes this as the oracle-suite verb and the
 * acceptance tests run the same code.
 */
struct IdentityResult {
    std::string name;
    bool pass = true;
    long trials = 0;
    std::string message; // reproducer on failure
};

enum class InjectedFault { None, TransferT1 };

inline InjectedFault fault_from_string(const std::string& s) {
    if (s.empty() || s == "none") return InjectedFault::None;
    if (s == "transfer-t1") return InjectedFault::TransferT1;
    throw error("unknown fault name: " + s + " (supported: transfer-t1)");
}

struct SuiteRng {
    uint64_t s;
    explicit SuiteRng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
    Rational rat(long m = 20) { return Rational(range(-m, m), range(1, m)); }
    Rational nonzero_rat(long m = 20) {
        Rational r = rat(m);
        while (r.is_zero()) r = rat(m);
        return r;
    }
    Mat2 invertible_mat2(long m = 20) {
        for (;;) {
            Mat2 g = mat2(range(-m, m), range(-m, m), range(-m, m), range(-m, m));
            if (!g.det().is_zero()) return g;
        }
    }
};

namespace detail {

inline void run_check(std::vector<IdentityResult>& out, const std::string& name, long trials,
                      const std::function<std::optional<std::string>(long)>& one_trial) {
    IdentityResult r;
    r.name = name;
    r.trials = trials;
    for (long i = 0; i < trials; ++i) {
        std::optional<std::string> failure = one_trial(i);
        if (failure) {
            r.pass = false;
            r.message = *failure;
            r.trials = i + 1;
            break;
        }
    }
    out.push_back(std::move(r));
}

inline std::string mat2_str(const Mat2& g) {
    return "[[" + g(0, 0).str() + "," + g(0, 1).str() + "],[" + g(1, 0).str() + "," +
           g(1, 1).str() + "]]";
}

} // namespace detail

inline std::vector<IdentityResult> run_identity_suite(uint64_t seed, long trials,
                                                      InjectedFault fault = InjectedFault::None) {
    if (trials < 1) throw error("identity suite: trials must be >= 1");
    std::vector<IdentityResult> results;
    const std::vector<long> small_primes{2, 3, 5, 7, 11};

    // 1. functoriality: char_poly(sym3_matrix(g)) = sym3_quadratic(tr g, det g)
    {
        SuiteRng rng(seed ^ 0x1);
        detail::run_check(results, "functoriality", trials, [&](long) -> std::optional<std::string> {
            Mat2 g = rng.invertible_mat2();
            if (char_poly(sym3_matrix(g)) != sym3_quadratic(Scalar(g.trace()), Scalar(g.det())))
                return "g = " + detail::mat2_str(g);
            return std::nullopt;
        });
    }

    // 2. similitude: t(Sym3 g) J (Sym3 g) = det(g)^3 J for the derived form
    {
        SuiteRng rng(seed ^ 0x2);
        Mat4 derived = derive_symplectic_form();
        detail::run_check(results, "similitude", trials, [&](long i) -> std::optional<std::string> {
            if (i == 0 && derived != sym3_form())
                return "derived form disagrees with the frozen antidiagonal (3,-1,1,-3)";
            Mat2 g = rng.invertible_mat2();
            if (!similitude_check(sym3_matrix(g), g.det().pow(3), derived))
                return "g = " + detail::mat2_str(g);
            return std::nullopt;
        });
    }

    // 3. transfer: the quartic assembled from the spherical images equals
    //    the symmetric cube of the degree-2 polynomial
    {
        SuiteRng rng(seed ^ 0x3);
        detail::run_check(results, "transfer", trials, [&](long i) -> std::optional<std::string> {
            long ell = small_primes[static_cast<size_t>(rng.range(0, 4))];
            Rational a = rng.rat(), c = rng.nonzero_rat();
            std::array<Scalar, 3> x{Scalar(c), Scalar(a), Scalar(0)};
            Scalar T0 = transfer_unramified(ell, 0).eval(x);
            Scalar T1 = transfer_unramified(ell, 1).eval(x);
            Scalar T2 = transfer_unramified(ell, 2).eval(x);
            if (fault == InjectedFault::TransferT1) {
                // test-only fault: flip one coefficient of the T1 image
                T1 = T1 + Scalar(Rational(ell * ell) * c * c * a * a);
            }
            Rational l(ell);
            UniPoly via({Scalar(l.pow(6)) * T0 * T0, Scalar(-l.pow(3)) * T2 * T0,
                         T2 * T2 - T1 - Scalar(l * l) * T0, -T2, Scalar(1)});
            if (via != sym3_quadratic(Scalar(a), Scalar(l * c)))
                return "(l,a,c) = (" + std::to_string(ell) + ", " + a.str() + ", " + c.str() +
                       ") at trial " + std::to_string(i);
            return std::nullopt;
        });
    }

    // 4. lift slopes over the (k, h) grid: {7h, k-1+5h, k-1+5h, 4(k-1)-h}
    {
        detail::run_check(results, "lift-slopes", 1, [&](long) -> std::optional<std::string> {
            long p = 5;
            for (long k = 2; k <= 12; ++k) {
                for (long twoh = 0; twoh <= 2 * (k - 1); ++twoh) {
                    Rational h(twoh, 2);
                    Eigensystem chi;
                    chi.group = Group::GL2;
                    chi.p = p;
                    chi.tame_level = 1;
                    chi.weight = {k};
                    Scalar t1 = (twoh % 2 == 0)
                                    ? Scalar(Rational(p).pow(twoh / 2))
                                    : Scalar(QuadExt::root(Rational(0), -pow_int(p, twoh), 0));
                    chi.iwahori_p = std::vector<Scalar>{Scalar(pow_int(p, k - 1)), t1};
                    std::vector<Rational> expected{Rational(7) * h,
                                                   Rational(k - 1) + Rational(5) * h,
                                                   Rational(k - 1) + Rational(5) * h,
                                                   Rational(4) * Rational(k - 1) - h};
                    for (int b = 1; b <= 4; ++b) {
                        Valuation got = slope(sym3_lift(chi, b));
                        if (got.is_infinite() || got.finite() != expected[b - 1])
                            return "k = " + std::to_string(k) + ", h = " + h.str() +
                                   ", branch " + std::to_string(b) + ": slope " + got.str() +
                                   " != " + expected[b - 1].str();
                    }
                }
            }
            return std::nullopt;
        });
    }

    // 5. branch separation: exactly one derived binomial vanishes per lift
    {
        SuiteRng rng(seed ^ 0x5);
        detail::run_check(results, "branch-separation", trials,
                          [&](long) -> std::optional<std::string> {
            long p = 7;
            PAdicContext ctx(p);
            auto unit = [&] {
                for (;;) {
                    Rational r = rng.nonzero_rat(9);
                    if (valuation(r, ctx) == Valuation(0)) return r;
                }
            };
            long va = rng.range(0, 2), vb = rng.range(3, 6);
            Rational alpha = pow_int(p, va) * unit();
            Rational beta = pow_int(p, vb) * unit();
            Eigensystem chi;
            chi.group = Group::GL2;
            chi.p = p;
            chi.tame_level = 1;
            chi.weight = {8};
            chi.iwahori_p = std::vector<Scalar>{Scalar(alpha * beta), Scalar(alpha)};
            for (int b = 1; b <= 4; ++b) {
                Eigensystem lift = sym3_lift(chi, b);
                std::array<Scalar, 3> u{(*lift.iwahori_p)[0], (*lift.iwahori_p)[1],
                                        (*lift.iwahori_p)[2]};
                for (const TransferBranch& tb : all_transfer_branches()) {
                    bool zero = tb.binomial_eval(u).is_zero();
                    if (zero != (tb.index == b))
                        return "alpha = " + alpha.str() + ", beta = " + beta.str() +
                               ", lift branch " + std::to_string(b) + ", binomial " +
                               tb.binomial_str();
                }
            }
            return std::nullopt;
        });
    }

    // 6. twist compatibility: lift of the twist = twist of the lift, and
    //    twisting preserves slopes
    {
        SuiteRng rng(seed ^ 0x6);
        detail::run_check(results, "twist-compatibility", trials,
                          [&](long) -> std::optional<std::string> {
            long p = 5;
            DirichletCharacter eta = DirichletCharacter::quadratic(3);
            Eigensystem chi;
            chi.group = Group::GL2;
            chi.p = p;
            chi.tame_level = 1;
            chi.weight = {4};
            chi.spherical[2] = {Scalar(rng.rat(9)), Scalar(rng.nonzero_rat(9))};
            chi.spherical[7] = {Scalar(rng.rat(9)), Scalar(rng.nonzero_rat(9))};
            chi.iwahori_p = std::vector<Scalar>{Scalar(pow_int(p, 3) * rng.nonzero_rat(9)),
                                                Scalar(pow_int(p, rng.range(0, 3)))};
            for (int b = 1; b <= 4; ++b) {
                Eigensystem lhs = sym3_lift(twist_gl2(chi, eta), b);
                Eigensystem rhs = twist(sym3_lift(chi, b), eta.cubed());
                for (long ell : {2L, 7L})
                    if (lhs.spherical.at(ell) != rhs.spherical.at(ell))
                        return "spherical mismatch at l = " + std::to_string(ell) + ", branch " +
                               std::to_string(b);
                if (*lhs.iwahori_p != *rhs.iwahori_p)
                    return "Iwahori mismatch at branch " + std::to_string(b);
                if (slope(twist(sym3_lift(chi, b), eta)) != slope(sym3_lift(chi, b)))
                    return "twist changed the slope at branch " + std::to_string(b);
            }
            return std::nullopt;
        });
    }

    // 7. Sen factorization: all six eigenvalue differences factor through
    //    the bad ideal set, exactly
    {
        detail::run_check(results, "sen-factorization", 1, [&](long) -> std::optional<std::string> {
            for (long p : {5L, 7L}) {
                PAdicContext ctx(p);
                auto diffs = sen_eigenvalue_differences(ctx);
                if (diffs.size() != 6) return "expected 6 differences at p = " + std::to_string(p);
                for (const auto& d : diffs)
                    if (!(d.difference == d.divisor * d.cofactor))
                        return "inexact factorization at p = " + std::to_string(p);
            }
            return std::nullopt;
        });
    }

    return results;
}

} // namespace symcube
