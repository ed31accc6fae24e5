#pragma once

#include "rational.hpp"

#include <utility>
#include <vector>

namespace symcube {

/**
 * Tame-level and conductor arithmetic for the cube transfer.
 */

// Level compatible with the symmetric cube lift: each prime power
// l^a of N contributes l if a = 1 and l^(3a) if a > 1.
inline long sym3_level(long n) {
    if (n < 1) throw error("sym3_level: level must be positive");
    long m = 1, rest = n;
    for (long l = 2; l * l <= rest; ++l) {
        if (rest % l != 0) continue;
        long a = 0;
        while (rest % l == 0) {
            rest /= l;
            ++a;
        }
        long aa = (a == 1) ? 1 : 3 * a;
        for (long i = 0; i < aa; ++i) m *= l;
    }
    if (rest > 1) m *= rest; // leftover prime appears to the first power
    return m;
}

/**
 * Local ramification data at one prime: the codimension of the
 * inertia-fixed space, then (index, codimension) pairs along the higher
 * ramification filtration. Indices are the [I : I_k], strictly
 * increasing; codimensions never increase along the filtration.
 */
struct RamificationProfile {
    long d_inertia = 0;
    std::vector<std::pair<long, long>> steps; // ([I:I_k], d_{I_k})

    void validate() const {
        if (d_inertia < 0) throw error("RamificationProfile: negative codimension");
        long last_index = 1, last_d = d_inertia;
        for (const auto& [idx, d] : steps) {
            if (idx <= last_index) throw error("RamificationProfile: indices must strictly increase");
            if (d < 0 || d > last_d)
                throw error("RamificationProfile: codimensions must not increase");
            last_index = idx;
            last_d = d;
        }
    }

    // d pointwise tripled and capped at the ambient dimension
    RamificationProfile tripled(long dim_cap = 4) const {
        RamificationProfile t;
        t.d_inertia = std::min(3 * d_inertia, dim_cap);
        for (const auto& [idx, d] : steps) t.steps.emplace_back(idx, std::min(3 * d, dim_cap));
        return t;
    }
};

// n = d_I + sum_k d_{I_k} / [I : I_k]; integral for honest Galois data,
// a non-integral result flags inconsistent input.
inline Rational conductor_exponent(const RamificationProfile& profile) {
    profile.validate();
    Rational n(profile.d_inertia);
    for (const auto& [idx, d] : profile.steps) n += Rational(d, idx);
    return n;
}

// conductor bound for the cube: exponent at most tripled
inline bool sym3_conductor_bound_check(long n, long n_sym3) {
    if (n < 0 || n_sym3 < 0) throw error("conductor exponents must be non-negative");
    return n_sym3 <= 3 * n;
}

} // namespace symcube
