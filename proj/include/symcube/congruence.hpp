#pragma once

#include "classify.hpp"

#include <iomanip>
#include <sstream>

namespace symcube {

struct ambiguous_branch_error : error {
    using error::error;
};

struct non_integral_value_error : error {
    using error::error;
};

struct DatasetEntry {
    std::string id;
    Eigensystem system;
};

/**
 * Desk-scale congruence semantics: two systems are congruent mod p^n
 * when every compared eigenvalue difference has valuation >= n. The
 * scan matches each GSp4 entry against the cube lifts of the supplied
 * GL2 entries over a finite prime set and reports the deepest
 * congruence found.
 */
struct CongruenceVerdict {
    enum class Kind { ExactSym3, CongruentToSym3, NotCongruent };
    std::string entry_id;
    Kind kind = Kind::NotCongruent;
    std::string matched_id;     // best-matching GL2 entry, when any depth > 0
    std::set<int> branch_set;   // branches achieving the best depth
    long depth = 0;             // largest n with congruence mod p^n (max_depth when exact)
    std::vector<long> witness_primes; // primes binding the depth (0 stands for p itself)
};

struct CongruenceReport {
    long p = 0;
    long max_depth = 0;
    std::vector<long> primes;
    std::vector<CongruenceVerdict> verdicts;
};

namespace detail {

// depth of the valuewise congruence between two scalar tuples; the
// returned witnesses collect the positions attaining the minimum.
struct DepthResult {
    bool exact = true;
    Valuation min = Valuation::infinity();
};

inline void update_depth(DepthResult& acc, const Scalar& x, const Scalar& y,
                         const PAdicContext& ctx) {
    Scalar diff = x - y;
    if (diff.is_zero()) return;
    acc.exact = false;
    Valuation v = diff.valuation(ctx);
    if (v < acc.min) acc.min = v;
}

} // namespace detail

/**
 * Quality of one (entry, lift candidate) comparison: the congruence
 * depth over the prime set, the finer valuation data used to break
 * ties, and the positions that bind the depth (0 stands for p itself).
 */
struct MatchQuality {
    bool exact = false;
    long depth = 0;
    Valuation overall = Valuation::infinity();
    Valuation iwahori = Valuation::infinity();
    std::vector<long> witnesses;

    // deeper congruence first, then better agreement at p, then overall
    bool better_than(const MatchQuality& o) const {
        if (exact != o.exact) return exact;
        if (depth != o.depth) return depth > o.depth;
        if (iwahori != o.iwahori) return o.iwahori < iwahori;
        return o.overall < overall;
    }
    bool same_rank(const MatchQuality& o) const {
        return exact == o.exact && depth == o.depth && iwahori == o.iwahori &&
               overall == o.overall;
    }
};

/**
 * Match one GSp4 entry against the branch-b lift of one GL2 entry over
 * the prime set (and at p itself when both sides carry Iwahori data).
 */
inline MatchQuality congruence_depth(const Eigensystem& x, const Eigensystem& f, int branch,
                                     const std::vector<long>& primes, long max_depth) {
    PAdicContext ctx(x.p);
    detail::DepthResult acc;
    std::map<long, Valuation> per_position;
    for (long ell : primes) {
        auto xi = x.spherical.find(ell);
        auto fi = f.spherical.find(ell);
        if (xi == x.spherical.end() || fi == f.spherical.end())
            throw error("congruence scan: missing spherical data at " + std::to_string(ell));
        std::array<Scalar, 3> gl2_vals{fi->second[1], fi->second[0], Scalar(0)};
        detail::DepthResult local;
        for (int i = 0; i < 3; ++i)
            detail::update_depth(local, xi->second[i], transfer_unramified(ell, i).eval(gl2_vals),
                                 ctx);
        if (!local.exact) {
            acc.exact = false;
            if (local.min < acc.min) acc.min = local.min;
            per_position.emplace(ell, local.min);
        }
    }
    MatchQuality q;
    if (x.stabilized() && f.stabilized()) {
        TorusCharacter chi_p(Group::GL2, {(*f.iwahori_p)[0], (*f.iwahori_p)[1]});
        detail::DepthResult local;
        for (int j = 0; j <= 2; ++j) {
            Scalar lift_j = extend_character(chi_p, transfer_iwahori(branch, j, x.p));
            detail::update_depth(local, (*x.iwahori_p)[j], lift_j, ctx);
        }
        if (!local.exact) {
            acc.exact = false;
            if (local.min < acc.min) acc.min = local.min;
            per_position.emplace(0L, local.min); // 0 encodes the prime p itself
            q.iwahori = local.min;
        }
    }
    q.overall = acc.min;
    if (acc.exact) {
        q.exact = true;
        q.depth = max_depth;
    } else if (acc.min.is_infinite()) {
        q.depth = max_depth;
    } else {
        Rational v = acc.min.finite();
        if (v.sign() < 0) {
            q.depth = 0;
        } else {
            mpz_class fl = v.num() / v.den();
            q.depth = std::min(max_depth, fl.get_si());
        }
    }
    for (const auto& [pos, v] : per_position)
        if (v == acc.min) q.witnesses.push_back(pos);
    return q;
}

inline CongruenceReport scan_congruences(const std::vector<DatasetEntry>& gsp4_entries,
                                         const std::vector<DatasetEntry>& gl2_entries,
                                         const std::vector<long>& primes, long max_depth) {
    if (max_depth < 1) throw error("scan_congruences: max_depth must be >= 1");
    if (gsp4_entries.empty()) throw error("scan_congruences: no GSp4 entries");
    long p = gsp4_entries.front().system.p;
    PAdicContext ctx(p);

    auto check_integral = [&](const DatasetEntry& e) {
        e.system.validate();
        if (e.system.p != p) throw error("scan_congruences: mixed primes p in dataset");
        for (long ell : primes) {
            auto it = e.system.spherical.find(ell);
            if (it == e.system.spherical.end())
                throw error("scan_congruences: entry " + e.id + " has no data at " +
                            std::to_string(ell));
            for (const Scalar& v : it->second)
                if (Valuation(0) > v.valuation(ctx))
                    throw non_integral_value_error("scan_congruences: entry " + e.id +
                                                   " has a non-p-integral value at " +
                                                   std::to_string(ell));
        }
        if (e.system.stabilized())
            for (const Scalar& v : *e.system.iwahori_p)
                if (Valuation(0) > v.valuation(ctx))
                    throw non_integral_value_error("scan_congruences: entry " + e.id +
                                                   " has a non-p-integral Iwahori value");
    };
    for (const auto& e : gsp4_entries) {
        if (e.system.group != Group::GSp4) throw error("scan_congruences: expected GSp4 entries");
        check_integral(e);
    }
    for (const auto& e : gl2_entries) {
        if (e.system.group != Group::GL2) throw error("scan_congruences: expected GL2 entries");
        check_integral(e);
    }

    CongruenceReport report;
    report.p = p;
    report.max_depth = max_depth;
    report.primes = primes;
    for (const auto& x : gsp4_entries) {
        CongruenceVerdict v;
        v.entry_id = x.id;
        std::optional<MatchQuality> best;
        for (const auto& f : gl2_entries) {
            bool use_branches = x.system.stabilized() && f.system.stabilized();
            std::vector<int> branches = use_branches ? std::vector<int>{1, 2, 3, 4}
                                                     : std::vector<int>{0};
            for (int b : branches) {
                MatchQuality q =
                    congruence_depth(x.system, f.system, std::max(b, 1), primes, max_depth);
                if (!best || q.better_than(*best)) {
                    best = q;
                    v.matched_id = f.id;
                    v.branch_set.clear();
                    if (b > 0) v.branch_set = {b};
                    v.witness_primes = q.witnesses;
                } else if (q.same_rank(*best) && f.id == v.matched_id && b > 0) {
                    v.branch_set.insert(b);
                }
            }
        }
        if (best && best->exact) {
            v.kind = CongruenceVerdict::Kind::ExactSym3;
            v.depth = max_depth;
            v.witness_primes.clear();
        } else if (best && best->depth >= 1) {
            v.kind = CongruenceVerdict::Kind::CongruentToSym3;
            v.depth = best->depth;
        } else {
            v.kind = CongruenceVerdict::Kind::NotCongruent;
            v.depth = 0;
            v.matched_id.clear();
            v.branch_set.clear();
            v.witness_primes.clear();
        }
        report.verdicts.push_back(std::move(v));
    }
    return report;
}

/**
 * Inversion of the lift: recover the GL2 data behind a GSp4 system
 * that classifies as a cube point. Spherical parameters come from the
 * per-prime quartic recovery; when the Iwahori data picks out a unique
 * branch, the GL2 torus values are reconstructed from the branch
 * monomials (one rational cube root plus exact monomial algebra).
 */
struct LiftReconstruction {
    std::map<long, std::vector<Sym3Candidate>> parameters; // ell -> (a_l, D = l c_l)
    std::optional<int> branch;
    std::optional<std::vector<Scalar>> gl2_iwahori; // (t0, t1)
    bool cube_root_ambiguity = false;
};

inline LiftReconstruction match_lift(const Eigensystem& x, const std::vector<long>& primes,
                                     bool allow_cubic_ext = false) {
    ClassifyResult cls = classify_sym3(x, primes, allow_cubic_ext);
    if (!cls.is_sym3)
        throw error("match_lift: input is not a sym3 candidate (witness prime " +
                    std::to_string(cls.witness_prime.value_or(0)) + ")");
    LiftReconstruction rec;
    rec.parameters = cls.recovered;
    rec.cube_root_ambiguity = cls.cubic_ambiguity;
    if (!x.stabilized()) return rec;

    const std::set<int>& branches = *cls.branches;
    if (branches.size() > 1)
        throw ambiguous_branch_error("match_lift: " + std::to_string(branches.size()) +
                                     " branch binomials vanish simultaneously");
    if (branches.empty())
        throw error("match_lift: no branch binomial vanishes on the Iwahori data");
    int b = *branches.begin();
    rec.branch = b;

    const auto& u = *x.iwahori_p;
    // g0 = t0 value needs one cube root; g1 then follows exactly from
    // integer combinations of the branch monomials.
    if (!u[0].is_rational()) {
        rec.cube_root_ambiguity = true;
        return rec;
    }
    Rational g0;
    if (!rational_cbrt(u[0].rational(), g0)) {
        rec.cube_root_ambiguity = true;
        return rec;
    }
    Scalar g0s{g0}, g1;
    switch (b) {
        case 1: g1 = u[1] / (g0s * u[2]); break;
        case 2: g1 = g0s * g0s * u[2] / u[1]; break;
        case 3:
        case 4: g1 = u[2] / g0s; break;
        default: throw error("match_lift: bad branch");
    }
    auto rows = branch_exponents(b);
    for (int j = 0; j <= 2; ++j) {
        Scalar expect = g0s.pow(rows[j][0]) * g1.pow(rows[j][1]);
        if (!(expect == u[j]))
            throw error("match_lift: Iwahori data is inconsistent with branch " +
                        std::to_string(b));
    }
    rec.gl2_iwahori = std::vector<Scalar>{g0s, g1};
    return rec;
}

/**
 * Aligned-column text rendering of a congruence report.
 */
inline std::string render_table(const CongruenceReport& report) {
    std::vector<std::array<std::string, 5>> rows;
    rows.push_back({"entry", "verdict", "matched", "branches", "depth/witnesses"});
    for (const auto& v : report.verdicts) {
        std::string kind = v.kind == CongruenceVerdict::Kind::ExactSym3 ? "exact-sym3"
                           : v.kind == CongruenceVerdict::Kind::CongruentToSym3
                               ? "congruent-to-sym3"
                               : "not-congruent";
        std::string branches;
        for (int b : v.branch_set) branches += (branches.empty() ? "" : ",") + std::to_string(b);
        std::string depth;
        if (v.kind == CongruenceVerdict::Kind::ExactSym3) {
            depth = ">=" + std::to_string(report.max_depth);
        } else if (v.kind == CongruenceVerdict::Kind::CongruentToSym3) {
            depth = std::to_string(v.depth) + " @";
            for (long w : v.witness_primes)
                depth += " " + (w == 0 ? "p" : std::to_string(w));
        } else {
            depth = "0";
        }
        rows.push_back({v.entry_id, kind, v.matched_id.empty() ? "-" : v.matched_id,
                        branches.empty() ? "-" : branches, depth});
    }
    std::array<size_t, 5> width{};
    for (const auto& r : rows)
        for (int i = 0; i < 5; ++i) width[i] = std::max(width[i], r[i].size());
    std::ostringstream os;
    for (const auto& r : rows) {
        for (int i = 0; i < 5; ++i)
            os << std::left << std::setw(static_cast<int>(width[i]) + 2) << r[i];
        os << "\n";
    }
    return os.str();
}

} // namespace symcube
