#include <catch2/catch_amalgamated.hpp>

#include <symcube/eigensystem.hpp>
#include <symcube/matrix.hpp>

using namespace symcube;

namespace {
Rational Q(long n, long d = 1) { return Rational(n, d); }

struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
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
};

// GL2 system of weight k, level 1, given spherical data at some primes
// plus (T_p, T_{p,0}) at p.
Eigensystem gl2_system(long p, long k, std::map<long, std::pair<Rational, Rational>> sph) {
    Eigensystem chi;
    chi.group = Group::GL2;
    chi.p = p;
    chi.tame_level = 1;
    chi.weight = {k};
    for (const auto& [ell, tc] : sph)
        chi.spherical[ell] = {Scalar(tc.first), Scalar(tc.second)};
    return chi;
}

// stabilized GL2 system with prescribed torus values at p
Eigensystem stabilized_gl2(long p, long k, const Scalar& t0, const Scalar& t1) {
    Eigensystem chi;
    chi.group = Group::GL2;
    chi.p = p;
    chi.tame_level = 1;
    chi.weight = {k};
    chi.iwahori_p = std::vector<Scalar>{t0, t1};
    return chi;
}
} // namespace

TEST_CASE("normalize") {
    SECTION("GL2 systems are unchanged") {
        Eigensystem chi = stabilized_gl2(5, 4, Scalar(Q(125)), Scalar(Q(5)));
        Eigensystem n = normalize(chi);
        REQUIRE(*n.iwahori_p == *chi.iwahori_p);
        REQUIRE(n.normalized());
    }
    SECTION("GSp4 weight (12,12): U1 = p^10 normalizes to 1") {
        Eigensystem chi;
        chi.group = Group::GSp4;
        chi.p = 5;
        chi.weight = {12, 12};
        chi.iwahori_p =
            std::vector<Scalar>{Scalar(Q(1)), Scalar(Q(5).pow(10)), Scalar(Q(1))};
        Eigensystem n = normalize(chi);
        REQUIRE((*n.iwahori_p)[1] == Scalar(Q(1)));
        REQUIRE((*n.iwahori_p)[0] == Scalar(Q(1)));
        REQUIRE((*n.iwahori_p)[2] == Scalar(Q(1)));
    }
    SECTION("GSp4 weight (3,3): unit values pick up p^-1") {
        Eigensystem chi;
        chi.group = Group::GSp4;
        chi.p = 5;
        chi.weight = {3, 3};
        chi.iwahori_p = std::vector<Scalar>{Scalar(Q(1)), Scalar(Q(1)), Scalar(Q(1))};
        Eigensystem n = normalize(chi);
        REQUIRE((*n.iwahori_p)[1] == Scalar(Q(1, 5)));
    }
    SECTION("double normalization is rejected") {
        Eigensystem chi = stabilized_gl2(5, 4, Scalar(Q(1)), Scalar(Q(1)));
        REQUIRE_THROWS_AS(normalize(normalize(chi)), error);
    }
}

TEST_CASE("stabilizations") {
    SECTION("rational roots: (T_p, T_p0) = (3,1) at p = 2 is out of context; use p = 5") {
        // X^2 - 6X + 5 has roots 1 and 5
        Eigensystem chi = gl2_system(5, 2, {{5, {Q(6), Q(1)}}, {2, {Q(3), Q(1)}}});
        auto st = stabilizations(chi);
        REQUIRE(st.size() == 2);
        REQUIRE((*st[0].iwahori_p)[0] == Scalar(Q(5)));
        REQUIRE((*st[0].iwahori_p)[1] == Scalar(Q(1))); // smaller slope first
        REQUIRE((*st[1].iwahori_p)[1] == Scalar(Q(5)));
        REQUIRE(st[0].spherical.count(5) == 0);
        REQUIRE(st[0].spherical.count(2) == 1);
        REQUIRE(slope(st[0]) == Valuation(0));
        REQUIRE(slope(st[1]) == Valuation(1));
    }
    SECTION("T_p = 0 gives two stabilizations of equal half valuation") {
        Eigensystem chi = gl2_system(5, 2, {{5, {Q(0), Q(1)}}});
        auto st = stabilizations(chi);
        REQUIRE(slope(st[0]) == Valuation(1, 2));
        REQUIRE(slope(st[1]) == Valuation(1, 2));
    }
    SECTION("double root flags degeneracy") {
        // X^2 - 10X + 25 = (X-5)^2: T_p = 10, p T_p0 = 25
        Eigensystem chi = gl2_system(5, 2, {{5, {Q(10), Q(5)}}});
        auto st = stabilizations(chi);
        REQUIRE(st[0] == st[1]);
        REQUIRE(st[0].flags.count("degenerate-stabilization") == 1);
    }
    SECTION("branch values multiply to p T_p0 and sum to T_p") {
        Rng rng(31);
        for (int i = 0; i < 40; ++i) {
            Rational tp = rng.rat(), tp0 = rng.nonzero_rat();
            Eigensystem chi = gl2_system(7, 3, {{7, {tp, tp0}}});
            auto st = stabilizations(chi);
            Scalar a = (*st[0].iwahori_p)[1], b = (*st[1].iwahori_p)[1];
            REQUIRE(a * b == Scalar(Q(7) * tp0));
            REQUIRE(a + b == Scalar(tp));
            REQUIRE((*st[0].iwahori_p)[0] == Scalar(Q(7) * tp0));
        }
    }
}

TEST_CASE("sym3_lift") {
    SECTION("weight (2k-1, k+1) and k = 2 gives (3,3)") {
        Eigensystem chi = stabilized_gl2(5, 2, Scalar(Q(5)), Scalar(Q(1)));
        Eigensystem lift = sym3_lift(chi, 1);
        REQUIRE(lift.weight == std::vector<long>{3, 3});
        REQUIRE(lift.group == Group::GSp4);
        Eigensystem lift12 = sym3_lift(stabilized_gl2(5, 12, Scalar(Q(5).pow(11)), Scalar(Q(1))), 1);
        REQUIRE(lift12.weight == std::vector<long>{23, 13});
    }
    SECTION("spherical anchor (l,a,c) = (2,3,1) -> (1, 151, 15)") {
        Eigensystem chi = stabilized_gl2(5, 2, Scalar(Q(5)), Scalar(Q(1)));
        chi.spherical[2] = {Scalar(Q(3)), Scalar(Q(1))};
        Eigensystem lift = sym3_lift(chi, 2);
        REQUIRE(lift.spherical[2] ==
                std::vector<Scalar>{Scalar(Q(1)), Scalar(Q(151)), Scalar(Q(15))});
    }
    SECTION("branch 1 torus values ((ab)^3, ab a^4, a^3)") {
        auto [alpha, beta] = quad_roots(Q(2), Q(5 * 3), 5); // X^2 - 2X + 15
        Eigensystem chi = stabilized_gl2(5, 2, alpha * beta, alpha);
        Eigensystem lift = sym3_lift(chi, 1);
        REQUIRE((*lift.iwahori_p)[0] == (alpha * beta).pow(3));
        REQUIRE((*lift.iwahori_p)[1] == alpha * beta * alpha.pow(4));
        REQUIRE((*lift.iwahori_p)[2] == alpha.pow(3));
    }
    SECTION("tame level through the cube-compatible level map") {
        Eigensystem chi = stabilized_gl2(5, 2, Scalar(Q(5)), Scalar(Q(1)));
        chi.tame_level = 12;
        REQUIRE(sym3_lift(chi, 1).tame_level == 192);
    }
    SECTION("lift-oracle equivalence: quartic at l from lift values equals the matrix route") {
        Rng rng(32);
        for (int i = 0; i < 30; ++i) {
            // companion matrix with trace a and determinant l*c
            Rational a = rng.rat(9), c = rng.nonzero_rat(9);
            long ell = std::array<long, 3>{2, 3, 7}[static_cast<size_t>(rng.range(0, 2))];
            Eigensystem chi = stabilized_gl2(5, 3, Scalar(Q(5)), Scalar(Q(1)));
            chi.spherical[ell] = {Scalar(a), Scalar(c)};
            Eigensystem lift = sym3_lift(chi, 1);
            const auto& v = lift.spherical[ell];
            Rational l(ell);
            UniPoly quartic({Scalar(l.pow(6)) * v[0] * v[0], Scalar(-l.pow(3)) * v[2] * v[0],
                             v[2] * v[2] - v[1] - Scalar(l * l) * v[0], -v[2], Scalar(Q(1))});
            Mat2 companion = mat2(Q(0), -(l * c), Q(1), a);
            REQUIRE(quartic == char_poly(sym3_matrix(companion)));
        }
    }
    SECTION("eight lifts of the two stabilizations are pairwise distinct generically") {
        Eigensystem chi = gl2_system(5, 4, {{5, {Q(6), Q(1)}}, {2, {Q(3), Q(1)}}});
        std::vector<Eigensystem> lifts;
        for (const Eigensystem& st : stabilizations(chi))
            for (int branch = 1; branch <= 4; ++branch) lifts.push_back(sym3_lift(st, branch));
        REQUIRE(lifts.size() == 8);
        for (size_t i = 0; i < lifts.size(); ++i)
            for (size_t j = i + 1; j < lifts.size(); ++j) REQUIRE(!(lifts[i] == lifts[j]));
    }
}

TEST_CASE("slope") {
    SECTION("ordinary stabilization has slope zero") {
        Eigensystem chi = stabilized_gl2(5, 12, Scalar(Q(5).pow(11)), Scalar(Q(3)));
        REQUIRE(slope(chi) == Valuation(0));
    }
    SECTION("slopes of the four lifts at (k,h) = (12,0): {0, 11, 11, 44}") {
        Eigensystem chi = stabilized_gl2(5, 12, Scalar(Q(5).pow(11)), Scalar(Q(1)));
        REQUIRE(slope(sym3_lift(chi, 1)) == Valuation(0));
        REQUIRE(slope(sym3_lift(chi, 2)) == Valuation(11));
        REQUIRE(slope(sym3_lift(chi, 3)) == Valuation(11));
        REQUIRE(slope(sym3_lift(chi, 4)) == Valuation(44));
    }
    SECTION("branch 1 lift of (k,h) = (2,1) has slope 7") {
        Eigensystem chi = stabilized_gl2(5, 2, Scalar(Q(5)), Scalar(Q(5)));
        REQUIRE(slope(chi) == Valuation(1));
        REQUIRE(slope(sym3_lift(chi, 1)) == Valuation(7));
    }
    SECTION("slope agrees with the normalized U-product valuation") {
        Eigensystem chi = stabilized_gl2(7, 5, Scalar(Q(7).pow(4)), Scalar(Q(7 * 7)));
        Eigensystem lift = sym3_lift(chi, 3);
        REQUIRE(slope(normalize(lift)) == slope(lift));
    }
}

TEST_CASE("classicality_guaranteed") {
    auto with_slope = [](long k1, long k2, long s) {
        Eigensystem chi;
        chi.group = Group::GSp4;
        chi.p = 5;
        chi.weight = {k1, k2};
        chi.iwahori_p = std::vector<Scalar>{Scalar(Q(1)), Scalar(Q(5).pow(k2 - 2)),
                                            Scalar(Q(5).pow(s))};
        return chi;
    };
    REQUIRE(slope(with_slope(12, 12, 8)) == Valuation(8));
    REQUIRE(classicality_guaranteed(with_slope(12, 12, 8)));       // 8 < 9
    REQUIRE(!classicality_guaranteed(with_slope(3, 3, 0)));        // 0 < 0 fails
    REQUIRE(!classicality_guaranteed(with_slope(12, 12, 9)));      // boundary
}

TEST_CASE("twist") {
    Eigensystem base;
    base.group = Group::GSp4;
    base.p = 5;
    base.tame_level = 1;
    base.weight = {3, 3};
    base.spherical[2] = {Scalar(Q(1)), Scalar(Q(151)), Scalar(Q(15))};
    base.iwahori_p = std::vector<Scalar>{Scalar(Q(25)), Scalar(Q(5)), Scalar(Q(5))};

    SECTION("trivial character only squares the level") {
        Eigensystem t = twist(base, DirichletCharacter::trivial(1));
        REQUIRE(t.spherical == base.spherical);
        REQUIRE(*t.iwahori_p == *base.iwahori_p);
        REQUIRE(t.tame_level == 1);
        Eigensystem b6 = base;
        b6.tame_level = 6;
        b6.spherical.clear();
        b6.spherical[7] = {Scalar(Q(1)), Scalar(Q(151)), Scalar(Q(15))};
        REQUIRE(twist(b6, DirichletCharacter::trivial(1)).tame_level == 36);
    }
    SECTION("quadratic character flips T2 where it is -1") {
        DirichletCharacter eta = DirichletCharacter::quadratic(3); // eta(2) = -1
        Eigensystem t = twist(base, eta);
        REQUIRE(t.spherical[2] ==
                std::vector<Scalar>{Scalar(Q(1)), Scalar(Q(151)), Scalar(Q(-15))});
        REQUIRE(t.tame_level == 9); // lcm(1,3)^2
    }
    SECTION("primes dividing the conductor leave the spherical support") {
        Eigensystem b = base;
        b.spherical[3] = {Scalar(Q(1)), Scalar(Q(1)), Scalar(Q(1))};
        DirichletCharacter eta = DirichletCharacter::quadratic(3);
        Eigensystem t = twist(b, eta);
        REQUIRE(t.spherical.count(3) == 0);
        REQUIRE(t.spherical.count(2) == 1);
    }
    SECTION("slope is preserved") {
        Rng rng(33);
        for (long q : {3L, 7L, 11L}) {
            DirichletCharacter eta = DirichletCharacter::quadratic(q);
            for (int i = 0; i < 20; ++i) {
                Eigensystem chi = base;
                long e0 = rng.range(0, 6), e1 = rng.range(0, 6), e2 = rng.range(0, 6);
                chi.iwahori_p = std::vector<Scalar>{Scalar(Q(5).pow(e0) * rng.nonzero_rat()),
                                                    Scalar(Q(5).pow(e1)), Scalar(Q(5).pow(e2))};
                if (q == 5) continue;
                REQUIRE(slope(twist(chi, eta)) == slope(chi));
            }
        }
    }
    SECTION("formal-unit mode characters are rejected") {
        // order 4 character mod 5: 2 is a generator of (Z/5)^*
        std::map<long, long> table{{1, 0}, {2, 1}, {4, 2}, {3, 3}};
        DirichletCharacter eta = DirichletCharacter::from_table(5, 4, table);
        Eigensystem b7 = base;
        b7.p = 7;
        b7.iwahori_p = std::nullopt;
        b7.spherical.clear();
        b7.spherical[2] = {Scalar(Q(1)), Scalar(Q(151)), Scalar(Q(15))};
        REQUIRE_THROWS_AS(twist(b7, eta), error);
    }
    SECTION("twist-lift compatibility at good primes") {
        Rng rng(34);
        DirichletCharacter eta = DirichletCharacter::quadratic(3);
        for (int i = 0; i < 25; ++i) {
            Eigensystem chi = stabilized_gl2(5, 3, Scalar(Q(5).pow(2) * rng.nonzero_rat(6)),
                                             Scalar(rng.nonzero_rat(6)));
            chi.spherical[2] = {Scalar(rng.rat(9)), Scalar(rng.nonzero_rat(9))};
            chi.spherical[7] = {Scalar(rng.rat(9)), Scalar(rng.nonzero_rat(9))};
            for (int branch = 1; branch <= 4; ++branch) {
                Eigensystem lhs = sym3_lift(twist_gl2(chi, eta), branch);
                Eigensystem rhs = twist(sym3_lift(chi, branch), eta.cubed());
                for (long ell : {2L, 7L}) REQUIRE(lhs.spherical[ell] == rhs.spherical[ell]);
                REQUIRE(*lhs.iwahori_p == *rhs.iwahori_p);
            }
        }
    }
}

TEST_CASE("dirichlet character structure") {
    SECTION("legendre table mod 5") {
        DirichletCharacter eta = DirichletCharacter::quadratic(5);
        REQUIRE(eta.value(1) == Scalar(Q(1)));
        REQUIRE(eta.value(4) == Scalar(Q(1)));
        REQUIRE(eta.value(2) == Scalar(Q(-1)));
        REQUIRE(eta.value(3) == Scalar(Q(-1)));
        REQUIRE(eta.value(7) == Scalar(Q(-1))); // reduces mod 5
    }
    SECTION("cubing a quadratic character is itself; its square is trivial") {
        DirichletCharacter eta = DirichletCharacter::quadratic(7);
        REQUIRE(eta.cubed() == eta);
        REQUIRE(eta.squared() == DirichletCharacter::trivial(7));
    }
    SECTION("products combine orders") {
        DirichletCharacter a = DirichletCharacter::quadratic(3);
        DirichletCharacter b = DirichletCharacter::quadratic(4);
        DirichletCharacter ab = a * b;
        REQUIRE(ab.modulus() == 12);
        REQUIRE(ab.order() == 2);
        REQUIRE(ab.value(5) == a.value(5) * b.value(5));
        REQUIRE(ab.value(7) == a.value(7) * b.value(7));
    }
    SECTION("non-multiplicative tables are rejected") {
        std::map<long, long> bad{{1, 0}, {2, 1}, {3, 1}, {4, 1}};
        REQUIRE_THROWS_AS(DirichletCharacter::from_table(5, 2, bad), error);
    }
    SECTION("character values are units") {
        DirichletCharacter eta = DirichletCharacter::quadratic(11);
        for (long k = 1; k < 11; ++k) REQUIRE(eta.value_valuation(k) == Valuation(0));
    }
}

TEST_CASE("validation rejects malformed systems") {
    Eigensystem chi = stabilized_gl2(5, 2, Scalar(Q(5)), Scalar(Q(1)));
    SECTION("p must be > 3") {
        Eigensystem bad = chi;
        bad.p = 3;
        REQUIRE_THROWS_AS(bad.validate(), error);
    }
    SECTION("level coprime to p") {
        Eigensystem bad = chi;
        bad.tame_level = 10;
        REQUIRE_THROWS_AS(bad.validate(), error);
    }
    SECTION("GSp4 weights ordered") {
        Eigensystem bad;
        bad.group = Group::GSp4;
        bad.p = 5;
        bad.weight = {3, 4};
        REQUIRE_THROWS_AS(bad.validate(), error);
    }
    SECTION("wrong arity") {
        Eigensystem bad = chi;
        bad.spherical[2] = {Scalar(Q(1))};
        REQUIRE_THROWS_AS(bad.validate(), error);
    }
}
