#include <catch2/catch_amalgamated.hpp>

#include <symcube/levels.hpp>
#include <symcube/weights.hpp>

using namespace symcube;

namespace {
Rational Q(long n, long d = 1) { return Rational(n, d); }
}

TEST_CASE("iota on classical weights") {
    for (long p : {5L, 7L}) {
        PAdicContext ctx(p);
        Rational u = ctx.u();
        for (long k = 2; k <= 20; ++k) {
            WeightPoint w = WeightPoint::classical_point(k, ctx);
            WeightPoint img = iota(w, ctx);
            REQUIRE(img.coords[0] == u.pow(2 * k - 1) - Q(1));
            REQUIRE(img.coords[1] == u.pow(k + 1) - Q(1));
            REQUIRE(*img.classical == std::vector<long>{2 * k - 1, k + 1});
        }
    }
}

TEST_CASE("iota at the formal point T = 0") {
    PAdicContext ctx(5);
    WeightPoint w;
    w.genus = 1;
    w.coords = {Q(0)};
    WeightPoint img = iota(w, ctx);
    REQUIRE(img.coords[0] == ctx.u().inverse() - Q(1));
    REQUIRE(img.coords[1] == ctx.u() - Q(1));
}

TEST_CASE("iota image equation") {
    PAdicContext ctx(5);
    SECTION("vanishes identically as a polynomial in T") {
        auto [t1, t2] = iota_symbolic(ctx);
        UniPoly img = iota_image_equation(ctx).substitute(std::array<UniPoly, 2>{t1, t2});
        REQUIRE(img.is_zero());
    }
    SECTION("vanishes at classical images and fails off the curve") {
        for (long k = 2; k <= 8; ++k) {
            WeightPoint img = iota(WeightPoint::classical_point(k, ctx), ctx);
            BiPoly eq = iota_image_equation(ctx);
            REQUIRE(eq.eval(std::array<Rational, 2>{img.coords[0], img.coords[1]}).is_zero());
            REQUIRE(!eq.eval(std::array<Rational, 2>{img.coords[0] + Q(1), img.coords[1]})
                         .is_zero());
        }
    }
    SECTION("injective on classical labels") {
        PAdicContext c7(7);
        std::set<std::pair<std::string, std::string>> images;
        for (long k = 2; k <= 30; ++k) {
            WeightPoint img = iota(WeightPoint::classical_point(k, c7), c7);
            images.insert({img.coords[0].str(), img.coords[1].str()});
        }
        REQUIRE(images.size() == 29);
    }
}

TEST_CASE("hodge-tate weights") {
    REQUIRE(hodge_tate_weights({2}, Group::GL2) == std::vector<long>{0, 1});
    REQUIRE(hodge_tate_weights({12, 12}, Group::GSp4) == std::vector<long>{0, 10, 11, 21});
    SECTION("cube lift weights are 0, h, 2h, 3h") {
        for (long k = 2; k <= 15; ++k) {
            long h = k - 1;
            REQUIRE(hodge_tate_weights({2 * k - 1, k + 1}, Group::GSp4) ==
                    std::vector<long>{0, h, 2 * h, 3 * h});
        }
    }
}

TEST_CASE("sen eigenvalue differences factor through the bad set") {
    PAdicContext ctx(5);
    Rational u = ctx.u();
    auto diffs = sen_eigenvalue_differences(ctx);
    REQUIRE(diffs.size() == 6);

    BiPoly one = BiPoly::constant(Q(1));
    BiPoly t1 = BiPoly::variable(0), t2 = BiPoly::variable(1);

    SECTION("every factorization is exact") {
        for (const auto& d : diffs) REQUIRE(d.difference == d.divisor * d.cofactor);
    }
    SECTION("anchors") {
        // u^-2 (1+T2) - 1 = u^-2 * (1+T2-u^2)
        const auto& d01 = diffs[0];
        REQUIRE(d01.i == 0);
        REQUIRE(d01.j == 1);
        REQUIRE(d01.divisor == one + t2 - BiPoly::constant(u * u));
        REQUIRE(d01.cofactor == BiPoly::constant(u.pow(-2)));
        // u^-3 (1+T1)(1+T2) - u^-1 (1+T1) = u^-3 (1+T1) (1+T2-u^2)
        bool found = false;
        for (const auto& d : diffs) {
            if (d.i == 2 && d.j == 3) {
                REQUIRE(d.divisor == one + t2 - BiPoly::constant(u * u));
                REQUIRE(d.cofactor == u.pow(-3) * (one + t1));
                found = true;
            }
        }
        REQUIRE(found);
        // u^-1 (1+T1) - u^-2 (1+T2) = -u^-2 (1+T2-u(1+T1))
        for (const auto& d : diffs) {
            if (d.i == 1 && d.j == 2) {
                REQUIRE(d.divisor == one + t2 - u * (one + t1));
                REQUIRE(d.cofactor == BiPoly::constant(-u.pow(-2)));
            }
        }
    }
    SECTION("each divisor really is in the bad set") {
        auto bad = bad_weight_ideals(ctx);
        for (const auto& d : diffs) {
            bool member = false;
            for (const auto& b : bad) member = member || b == d.divisor;
            REQUIRE(member);
        }
    }
}

TEST_CASE("adapted disc membership") {
    PAdicContext p5(5);
    SECTION("s_h = 1/2 admits every integer weight") {
        for (long k : {1L, 2L, 7L, 12L, 125L})
            REQUIRE(adapted_disc_contains({k}, Q(1, 2), p5));
    }
    SECTION("s_h = 3/2 separates by divisibility") {
        REQUIRE(adapted_disc_contains({10}, Q(3, 2), p5));
        REQUIRE(!adapted_disc_contains({12}, Q(3, 2), p5));
        REQUIRE(adapted_disc_contains({50, 25}, Q(3, 2), p5));
        REQUIRE(!adapted_disc_contains({50, 12}, Q(3, 2), p5));
    }
    SECTION("negative radius exponent is rejected") {
        REQUIRE_THROWS_AS(adapted_disc_contains({5}, Q(-1), p5), error);
    }
}

TEST_CASE("classical weight points validate their labels") {
    PAdicContext ctx(5);
    WeightPoint w = WeightPoint::classical_point(4, ctx);
    REQUIRE_NOTHROW(w.validate(ctx));
    w.coords[0] += Q(1);
    REQUIRE_THROWS_AS(w.validate(ctx), error);
}

TEST_CASE("sym3_level") {
    REQUIRE(sym3_level(1) == 1);
    REQUIRE(sym3_level(4) == 64);
    REQUIRE(sym3_level(11) == 11);
    REQUIRE(sym3_level(12) == 192);
    SECTION("divides N^3, equals N on squarefree N") {
        for (long n = 1; n <= 3000; ++n) {
            long m = sym3_level(n);
            REQUIRE((n * n * n) % m == 0);
            bool squarefree = true;
            for (long d = 2; d * d <= n; ++d)
                if (n % (d * d) == 0) squarefree = false;
            if (squarefree) REQUIRE(m == n);
        }
    }
}

TEST_CASE("conductor exponents") {
    SECTION("unramified") {
        REQUIRE(conductor_exponent(RamificationProfile{}) == Q(0));
    }
    SECTION("tame one-dimensional drop") {
        REQUIRE(conductor_exponent(RamificationProfile{1, {}}) == Q(1));
    }
    SECTION("wild step contributes d/index") {
        RamificationProfile pr{2, {{2, 1}}};
        REQUIRE(conductor_exponent(pr) == Q(5, 2));
    }
    SECTION("validation") {
        RamificationProfile bad{1, {{2, 1}, {2, 1}}};
        REQUIRE_THROWS_AS(conductor_exponent(bad), error);
        RamificationProfile growing{1, {{2, 2}}};
        REQUIRE_THROWS_AS(conductor_exponent(growing), error);
    }
    SECTION("cube bound on the tripled profile family") {
        std::vector<RamificationProfile> family = {
            {0, {}}, {1, {}}, {2, {}}, {1, {{2, 1}}}, {2, {{2, 1}}},
            {2, {{2, 2}, {4, 1}}}, {2, {{3, 1}, {9, 1}}}, {1, {{5, 1}, {25, 1}}},
        };
        for (const auto& pr : family) {
            Rational n = conductor_exponent(pr);
            Rational n3 = conductor_exponent(pr.tripled());
            REQUIRE(n3 <= Q(3) * n);
        }
    }
    SECTION("bound predicate") {
        REQUIRE(sym3_conductor_bound_check(1, 3));
        REQUIRE(sym3_conductor_bound_check(1, 1));
        REQUIRE(!sym3_conductor_bound_check(2, 7));
    }
}
