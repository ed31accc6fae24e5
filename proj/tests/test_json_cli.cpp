#include <catch2/catch_amalgamated.hpp>

#include <symcube/json_io.hpp>

using namespace symcube;

namespace {
Rational Q(long n, long d = 1) { return Rational(n, d); }

Eigensystem sample_gl2() {
    Eigensystem chi;
    chi.group = Group::GL2;
    chi.p = 5;
    chi.tame_level = 3;
    chi.weight = {4};
    chi.spherical[2] = {Scalar(Q(3)), Scalar(Q(1, 2))};
    chi.spherical[7] = {Scalar(QuadExt(Q(1), Q(-1), Q(2), Q(3, 4), 1)), Scalar(Q(-5))};
    chi.iwahori_p = std::vector<Scalar>{Scalar(Q(125)), Scalar(Q(5))};
    chi.nebentypus = DirichletCharacter::quadratic(3);
    chi.flags.insert("synthetic");
    return chi;
}
} // namespace

TEST_CASE("scalar wire encoding") {
    SECTION("rationals are num/den strings") {
        REQUIRE(encode_scalar(Scalar(Q(3))) == json("3/1"));
        REQUIRE(encode_scalar(Scalar(Q(-7, 2))) == json("-7/2"));
        REQUIRE(decode_scalar(json("50/3"), "/") == Scalar(Q(50, 3)));
        REQUIRE(decode_scalar(json(17), "/") == Scalar(Q(17)));
    }
    SECTION("quadratic elements carry t, d, a, b, branch") {
        Scalar s{QuadExt(Q(3), Q(3), Q(1, 2), Q(-2), 1)};
        json j = encode_scalar(s);
        REQUIRE(j["t"] == json("3/1"));
        REQUIRE(j["branch"] == json(1));
        REQUIRE(decode_scalar(j, "/") == s);
    }
    SECTION("bad scalars carry the JSON pointer") {
        REQUIRE_THROWS_MATCHES(
            decode_scalar(json::parse(R"({"t":"1","d":"1","a":"1","b":"x/y","branch":0})"),
                          "/iwahori_p/0"),
            schema_error,
            Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("/iwahori_p/0/b")));
        REQUIRE_THROWS_AS(decode_scalar(json(true), "/x"), schema_error);
    }
}

TEST_CASE("eigensystem round trip is bit-exact") {
    Eigensystem chi = sample_gl2();
    json j = encode_eigensystem(chi);
    Eigensystem back = decode_eigensystem(j);
    REQUIRE(back == chi);
    REQUIRE(encode_eigensystem(back).dump() == j.dump());

    Eigensystem lift = sym3_lift(sample_gl2(), 2);
    json jl = encode_eigensystem(lift);
    REQUIRE(decode_eigensystem(jl) == lift);
}

TEST_CASE("schema validation errors point at the offender") {
    json good = encode_eigensystem(sample_gl2());
    SECTION("missing keys") {
        json j = good;
        j.erase("weight");
        REQUIRE_THROWS_MATCHES(decode_eigensystem(j), schema_error,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("weight")));
    }
    SECTION("wrong schema version") {
        json j = good;
        j["schema"] = 2;
        REQUIRE_THROWS_MATCHES(decode_eigensystem(j), schema_error,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("/schema")));
    }
    SECTION("bad group") {
        json j = good;
        j["group"] = "SO5";
        REQUIRE_THROWS_MATCHES(decode_eigensystem(j), schema_error,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("/group")));
    }
    SECTION("wrong arity at a prime") {
        json j = good;
        j["spherical"]["2"] = json::array({"1/1"});
        REQUIRE_THROWS_MATCHES(decode_eigensystem(j), schema_error,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("/spherical/2")));
    }
    SECTION("semantic validation is surfaced as schema error") {
        json j = good;
        j["tame_level"] = 10; // divisible by p = 5
        REQUIRE_THROWS_AS(decode_eigensystem(j), schema_error);
    }
}

TEST_CASE("dataset decoding") {
    json sys = encode_eigensystem(sample_gl2());
    SECTION("entries with ids") {
        json data;
        data["entries"] = json::array({json{{"id", "x1"}, {"system", sys}},
                                       json{{"system", sys}}});
        auto entries = decode_dataset(data);
        REQUIRE(entries.size() == 2);
        REQUIRE(entries[0].id == "x1");
        REQUIRE(entries[1].id == "entry-1");
    }
    SECTION("bare arrays get positional ids") {
        auto entries = decode_dataset(json::array({sys, sys}));
        REQUIRE(entries.size() == 2);
        REQUIRE(entries[0].id == "entry-0");
    }
    SECTION("garbage is rejected") {
        REQUIRE_THROWS_AS(decode_dataset(json(3)), schema_error);
    }
}

TEST_CASE("character encoding round trip") {
    DirichletCharacter eta = DirichletCharacter::quadratic(7);
    json j = encode_character(eta);
    REQUIRE(decode_character(j, "/") == eta);
    SECTION("non-multiplicative tables rejected with location") {
        json bad = j;
        bad["values"]["3"] = 0;
        bad["values"]["5"] = 0;
        REQUIRE_THROWS_AS(decode_character(bad, "/nebentypus"), schema_error);
    }
}

TEST_CASE("congruence report encoding") {
    CongruenceReport rep;
    rep.p = 5;
    rep.max_depth = 4;
    rep.primes = {2, 3};
    CongruenceVerdict v;
    v.entry_id = "x";
    v.kind = CongruenceVerdict::Kind::CongruentToSym3;
    v.matched_id = "f";
    v.branch_set = {2};
    v.depth = 3;
    v.witness_primes = {0, 3};
    rep.verdicts.push_back(v);
    json j = encode_report(rep);
    REQUIRE(j["verdicts"][0]["verdict"] == json("congruent-to-sym3"));
    REQUIRE(j["verdicts"][0]["witnesses"] == json::array({"p", "3"}));
    REQUIRE(j["verdicts"][0]["depth"] == json(3));
}

TEST_CASE("identity suite is deterministic given the seed") {
    auto a = run_identity_suite(42, 10);
    auto b = run_identity_suite(42, 10);
    REQUIRE(encode_identity_results(a).dump() == encode_identity_results(b).dump());
    for (const auto& r : a) REQUIRE(r.pass);
}

TEST_CASE("fault injection produces a failing identity with a reproducer") {
    auto results = run_identity_suite(0, 20, InjectedFault::TransferT1);
    bool transfer_failed = false;
    for (const auto& r : results) {
        if (r.name == "transfer") {
            transfer_failed = !r.pass;
            REQUIRE(!r.message.empty());
        } else {
            REQUIRE(r.pass);
        }
    }
    REQUIRE(transfer_failed);
    REQUIRE_THROWS_AS(fault_from_string("bogus"), error);
}
