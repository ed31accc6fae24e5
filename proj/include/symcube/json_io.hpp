#pragma once

#include "congruence.hpp"
#include "identity_suite.hpp"

#include <json.hpp>

namespace symcube {

using json = nlohmann::json;

// Validation failures carry a JSON-pointer-style location.
struct schema_error : error {
    schema_error(const std::string& path, const std::string& what)
        : error(path + ": " + what) {}
};

inline json encode_scalar(const Scalar& s) {
    if (s.is_rational()) {
        const Rational& r = s.rational();
        return r.num().get_str() + "/" + r.den().get_str();
    }
    const QuadExt& q = s.quad();
    json out;
    out["t"] = encode_scalar(Scalar(q.t()));
    out["d"] = encode_scalar(Scalar(q.d()));
    out["a"] = encode_scalar(Scalar(q.a()));
    out["b"] = encode_scalar(Scalar(q.b()));
    out["branch"] = q.branch();
    return out;
}

inline Rational decode_rational(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw schema_error(path, "expected a rational encoded as \"num/den\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const error& e) {
        throw schema_error(path, e.what());
    }
}

inline Scalar decode_scalar(const json& j, const std::string& path) {
    if (j.is_string() || j.is_number_integer()) return Scalar(decode_rational(j, path));
    if (!j.is_object())
        throw schema_error(path, "expected a scalar (rational string or quadratic object)");
    for (const char* key : {"t", "d", "a", "b", "branch"})
        if (!j.contains(key)) throw schema_error(path, std::string("missing key \"") + key + "\"");
    if (!j["branch"].is_number_integer() ||
        (j["branch"].get<long>() != 0 && j["branch"].get<long>() != 1))
        throw schema_error(path + "/branch", "branch must be 0 or 1");
    return Scalar(QuadExt(decode_rational(j["t"], path + "/t"),
                          decode_rational(j["d"], path + "/d"),
                          decode_rational(j["a"], path + "/a"),
                          decode_rational(j["b"], path + "/b"), j["branch"].get<int>()));
}

inline json encode_character(const DirichletCharacter& chi) {
    json values = json::object();
    for (const auto& [k, e] : chi.table()) values[std::to_string(k)] = e;
    return json{{"modulus", chi.modulus()}, {"order", chi.order()}, {"values", values}};
}

inline DirichletCharacter decode_character(const json& j, const std::string& path) {
    if (!j.is_object()) throw schema_error(path, "expected a character object");
    for (const char* key : {"modulus", "order", "values"})
        if (!j.contains(key)) throw schema_error(path, std::string("missing key \"") + key + "\"");
    if (!j["modulus"].is_number_integer() || !j["order"].is_number_integer())
        throw schema_error(path, "modulus and order must be integers");
    std::map<long, long> table;
    if (!j["values"].is_object()) throw schema_error(path + "/values", "expected an object");
    for (const auto& [k, v] : j["values"].items()) {
        if (!v.is_number_integer())
            throw schema_error(path + "/values/" + k, "expected an integer exponent");
        try {
            table[std::stol(k)] = v.get<long>();
        } catch (const std::exception&) {
            throw schema_error(path + "/values/" + k, "key is not an integer residue");
        }
    }
    try {
        return DirichletCharacter::from_table(j["modulus"].get<long>(), j["order"].get<long>(),
                                              std::move(table));
    } catch (const error& e) {
        throw schema_error(path, e.what());
    }
}

inline json encode_eigensystem(const Eigensystem& chi) {
    json out;
    out["schema"] = 1;
    out["group"] = group_name(chi.group);
    out["p"] = chi.p;
    out["tame_level"] = chi.tame_level;
    if (chi.group == Group::GL2)
        out["weight"] = chi.weight[0];
    else
        out["weight"] = json::array({chi.weight[0], chi.weight[1]});
    json sph = json::object();
    for (const auto& [ell, vals] : chi.spherical) {
        json arr = json::array();
        for (const Scalar& v : vals) arr.push_back(encode_scalar(v));
        sph[std::to_string(ell)] = arr;
    }
    out["spherical"] = sph;
    if (chi.iwahori_p) {
        json arr = json::array();
        for (const Scalar& v : *chi.iwahori_p) arr.push_back(encode_scalar(v));
        out["iwahori_p"] = arr;
    }
    if (chi.nebentypus) out["nebentypus"] = encode_character(*chi.nebentypus);
    if (!chi.flags.empty()) out["flags"] = chi.flags;
    return out;
}

inline Eigensystem decode_eigensystem(const json& j, const std::string& path = "") {
    if (!j.is_object()) throw schema_error(path.empty() ? "/" : path, "expected an object");
    auto require = [&](const char* key) {
        if (!j.contains(key))
            throw schema_error(path.empty() ? "/" : path, std::string("missing key \"") + key + "\"");
    };
    require("schema");
    if (!j["schema"].is_number_integer() || j["schema"].get<long>() != 1)
        throw schema_error(path + "/schema", "unsupported schema version (expected 1)");
    for (const char* key : {"group", "p", "tame_level", "weight", "spherical"}) require(key);

    Eigensystem chi;
    std::string g = j["group"].is_string() ? j["group"].get<std::string>() : "";
    if (g == "GL2")
        chi.group = Group::GL2;
    else if (g == "GSp4")
        chi.group = Group::GSp4;
    else
        throw schema_error(path + "/group", "expected \"GL2\" or \"GSp4\"");
    if (!j["p"].is_number_integer()) throw schema_error(path + "/p", "expected an integer prime");
    chi.p = j["p"].get<long>();
    if (!j["tame_level"].is_number_integer())
        throw schema_error(path + "/tame_level", "expected an integer");
    chi.tame_level = j["tame_level"].get<long>();

    const json& w = j["weight"];
    if (chi.group == Group::GL2) {
        if (w.is_number_integer())
            chi.weight = {w.get<long>()};
        else if (w.is_array() && w.size() == 1 && w[0].is_number_integer())
            chi.weight = {w[0].get<long>()};
        else
            throw schema_error(path + "/weight", "expected an integer weight for GL2");
    } else {
        if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() ||
            !w[1].is_number_integer())
            throw schema_error(path + "/weight", "expected a pair [k1, k2] for GSp4");
        chi.weight = {w[0].get<long>(), w[1].get<long>()};
    }

    if (!j["spherical"].is_object())
        throw schema_error(path + "/spherical", "expected an object keyed by primes");
    size_t arity = chi.group == Group::GL2 ? 2 : 3;
    for (const auto& [key, arr] : j["spherical"].items()) {
        long ell;
        try {
            ell = std::stol(key);
        } catch (const std::exception&) {
            throw schema_error(path + "/spherical/" + key, "key is not a prime");
        }
        if (!arr.is_array() || arr.size() != arity)
            throw schema_error(path + "/spherical/" + key,
                               "expected an array of " + std::to_string(arity) + " scalars");
        std::vector<Scalar> vals;
        for (size_t i = 0; i < arr.size(); ++i)
            vals.push_back(decode_scalar(arr[i], path + "/spherical/" + key + "/" +
                                                     std::to_string(i)));
        chi.spherical[ell] = std::move(vals);
    }
    if (j.contains("iwahori_p")) {
        const json& arr = j["iwahori_p"];
        if (!arr.is_array() || arr.size() != arity)
            throw schema_error(path + "/iwahori_p",
                               "expected an array of " + std::to_string(arity) + " scalars");
        std::vector<Scalar> vals;
        for (size_t i = 0; i < arr.size(); ++i)
            vals.push_back(decode_scalar(arr[i], path + "/iwahori_p/" + std::to_string(i)));
        chi.iwahori_p = std::move(vals);
    }
    if (j.contains("nebentypus"))
        chi.nebentypus = decode_character(j["nebentypus"], path + "/nebentypus");
    if (j.contains("flags")) {
        if (!j["flags"].is_array()) throw schema_error(path + "/flags", "expected an array");
        for (const auto& f : j["flags"]) {
            if (!f.is_string()) throw schema_error(path + "/flags", "expected strings");
            chi.flags.insert(f.get<std::string>());
        }
    }
    try {
        chi.validate();
    } catch (const error& e) {
        throw schema_error(path.empty() ? "/" : path, e.what());
    }
    return chi;
}

// Dataset: {"entries": [{"id": ..., "system": {...}}, ...]} or a bare
// array of systems (ids become their positions).
inline std::vector<DatasetEntry> decode_dataset(const json& j) {
    std::vector<DatasetEntry> out;
    const json* arr = nullptr;
    if (j.is_array()) {
        arr = &j;
    } else if (j.is_object() && j.contains("entries") && j["entries"].is_array()) {
        arr = &j["entries"];
    } else {
        throw schema_error("/", "expected an array of systems or {\"entries\": [...]}");
    }
    for (size_t i = 0; i < arr->size(); ++i) {
        const json& e = (*arr)[i];
        std::string path = "/entries/" + std::to_string(i);
        if (e.is_object() && e.contains("system")) {
            std::string id = e.contains("id") && e["id"].is_string()
                                 ? e["id"].get<std::string>()
                                 : "entry-" + std::to_string(i);
            out.push_back({id, decode_eigensystem(e["system"], path + "/system")});
        } else {
            out.push_back({"entry-" + std::to_string(i), decode_eigensystem(e, path)});
        }
    }
    return out;
}

inline json encode_report(const CongruenceReport& report) {
    json out;
    out["p"] = report.p;
    out["max_depth"] = report.max_depth;
    out["primes"] = report.primes;
    json verdicts = json::array();
    for (const auto& v : report.verdicts) {
        json jv;
        jv["entry"] = v.entry_id;
        jv["verdict"] = v.kind == CongruenceVerdict::Kind::ExactSym3 ? "exact-sym3"
                        : v.kind == CongruenceVerdict::Kind::CongruentToSym3
                            ? "congruent-to-sym3"
                            : "not-congruent";
        if (!v.matched_id.empty()) jv["matched"] = v.matched_id;
        if (!v.branch_set.empty()) jv["branches"] = v.branch_set;
        jv["depth"] = v.depth;
        if (!v.witness_primes.empty()) {
            json w = json::array();
            for (long x : v.witness_primes) w.push_back(x == 0 ? "p" : std::to_string(x));
            jv["witnesses"] = w;
        }
        verdicts.push_back(jv);
    }
    out["verdicts"] = verdicts;
    return out;
}

inline json encode_candidate(const Sym3Candidate& c, long ell) {
    json out;
    if (!c.cubic_ext) {
        out["a"] = encode_scalar(Scalar(c.T));
        out["c"] = encode_scalar(Scalar(c.D / Rational(ell)));
    } else {
        out["cubic_ext"] = true;
        out["delta_cubed"] = encode_scalar(Scalar(c.dcube));
        out["a_coords"] = json::array({encode_scalar(Scalar(c.Tc[0])), encode_scalar(Scalar(c.Tc[1])),
                                       encode_scalar(Scalar(c.Tc[2]))});
        json dc = json::array({encode_scalar(Scalar(c.Dc[0])), encode_scalar(Scalar(c.Dc[1])),
                               encode_scalar(Scalar(c.Dc[2]))});
        out["lc_coords"] = dc;
    }
    return out;
}

inline json encode_classification(const ClassifyResult& res) {
    json out;
    out["is_sym3"] = res.is_sym3;
    if (res.witness_prime) out["witness_prime"] = *res.witness_prime;
    if (res.branches) out["branches"] = *res.branches;
    out["cubic_ambiguity"] = res.cubic_ambiguity;
    json rec = json::object();
    for (const auto& [ell, cands] : res.recovered) {
        json arr = json::array();
        for (const auto& c : cands) arr.push_back(encode_candidate(c, ell));
        rec[std::to_string(ell)] = arr;
    }
    out["recovered"] = rec;
    return out;
}

inline json encode_identity_results(const std::vector<IdentityResult>& results) {
    json arr = json::array();
    for (const auto& r : results) {
        json jr;
        jr["name"] = r.name;
        jr["pass"] = r.pass;
        jr["trials"] = r.trials;
        if (!r.message.empty()) jr["reproducer"] = r.message;
        arr.push_back(jr);
    }
    return arr;
}

} // namespace symcube
