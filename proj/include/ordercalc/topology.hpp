#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ordercalc/cardinals.hpp"
#include "ordercalc/finite_oracle.hpp"

namespace ordercalc {

/// A topology on [0, n): the family of open sets as sorted bit masks.
struct FinTop {
    unsigned n = 0;
    std::vector<std::uint32_t> opens;

    bool operator==(const FinTop& o) const { return n == o.n && opens == o.opens; }
    bool operator<(const FinTop& o) const { return opens < o.opens; }

    /// Family inclusion (coarser-than), the order the isomorphism transports.
    bool subset_of(const FinTop& o) const {
        for (auto s : opens)
            if (!std::binary_search(o.opens.begin(), o.opens.end(), s)) return false;
        return true;
    }
};

inline void canonicalize(FinTop& t) {
    std::sort(t.opens.begin(), t.opens.end());
    t.opens.erase(std::unique(t.opens.begin(), t.opens.end()), t.opens.end());
}

/// Exhaustive axiom check at this scale: closure under pairwise union and
/// intersection, with the empty and full sets present.
inline bool is_topology(const FinTop& t) {
    const std::uint32_t full = t.n == 0 ? 0 : (1u << t.n) - 1;
    auto has = [&](std::uint32_t s) {
        return std::binary_search(t.opens.begin(), t.opens.end(), s);
    };
    if (!has(0) || !has(full)) return false;
    for (auto x : t.opens)
        for (auto y : t.opens)
            if (!has(x | y) || !has(x & y)) return false;
    return true;
}

/// tau_S = P(S) plus the full set.  Requires a nonempty S strictly below
/// the ground set.
inline FinTop make_tau(unsigned n, std::uint32_t S) {
    if (n == 0 || n > 20) throw CapError("make_tau: ground size out of range");
    const std::uint32_t full = (1u << n) - 1;
    if (S == 0 || (S & ~full) || S == full)
        throw OrdercalcError("make_tau: need empty != S != ground set");
    FinTop t{n, {}};
    for (std::uint32_t sub = S;; sub = (sub - 1) & S) {
        t.opens.push_back(sub);
        if (sub == 0) break;
    }
    t.opens.push_back(full);
    canonicalize(t);
    if (!is_topology(t)) throw OrdercalcError("make_tau: axiom check failed");
    return t;
}

inline std::uint32_t image_set(const std::vector<unsigned>& f, std::uint32_t s) {
    std::uint32_t out = 0;
    for (unsigned i = 0; i < f.size(); ++i)
        if (s >> i & 1) out |= 1u << f[i];
    return out;
}

/// f*(t) = {f[O] : O open}; always a topology for a bijection f.
inline FinTop image_top(const std::vector<unsigned>& f, const FinTop& t) {
    FinTop r{t.n, {}};
    r.opens.reserve(t.opens.size());
    for (auto s : t.opens) r.opens.push_back(image_set(f, s));
    canonicalize(r);
    return r;
}

/// Orbit of t under all permutations of the ground set, deduplicated.
inline std::vector<FinTop> homeo_class(const FinTop& t) {
    if (t.n > 7) throw CapError("homeo_class: ground size capped at 7");
    std::vector<unsigned> perm(t.n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::vector<FinTop> orbit;
    do {
        orbit.push_back(image_top(perm, t));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
}

/**
 * Recover S from a topology of the shape P(S) plus the ground set: the
 * unique maximal proper open.  Validates the shape and the declared size;
 * anything else (the discrete topology, say) is rejected.
 */
inline std::uint32_t phi(const FinTop& t, unsigned n, unsigned s) {
    if (t.n != n) throw OrdercalcError("phi: ground size mismatch");
    const std::uint32_t full = (1u << n) - 1;
    std::uint32_t best = 0;
    bool found = false;
    for (auto o : t.opens) {
        if (o == full) continue;
        if (!found || std::popcount(o) > std::popcount(best)) {
            best = o;
            found = true;
        }
    }
    if (!found) throw OrdercalcError("phi: no proper open set");
    FinTop expected = make_tau(n, best);
    if (!(t == expected) || std::popcount(best) != static_cast<int>(s))
        throw OrdercalcError("phi: input is not of the tau_S shape");
    return best;
}

/**
 * Finite-scale check of the class-to-split-family isomorphism.  At a
 * finite ground set both sides of the inclusion equivalence degenerate to
 * equality (all images have the same size), which the note records; what
 * is genuinely checked is well-definedness, bijectivity onto the size-s
 * subsets, and the equivalence over every ordered pair.
 */
struct IsoReport {
    unsigned n = 0, s = 0;
    std::size_t class_size = 0;
    std::uint64_t expected_size = 0;
    bool bijective = false;
    std::size_t pairs_checked = 0;
    std::size_t pair_failures = 0;
    bool passed = false;
    std::string note;
    std::vector<std::uint32_t> images;
};

inline std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

inline IsoReport verify_iso(unsigned n, unsigned s) {
    if (!(0 < s && s < n && n <= 7)) throw CapError("verify_iso: need 0 < s < n <= 7");
    IsoReport rep;
    rep.n = n;
    rep.s = s;
    rep.expected_size = binomial(n, s);
    const std::uint32_t base = (1u << s) - 1;
    auto cls = homeo_class(make_tau(n, base));
    rep.class_size = cls.size();
    for (auto& t : cls) rep.images.push_back(phi(t, n, s));
    std::vector<std::uint32_t> sorted = rep.images;
    std::sort(sorted.begin(), sorted.end());
    bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    bool right_sizes = true;
    for (auto v : sorted)
        if (std::popcount(v) != static_cast<int>(s)) right_sizes = false;
    rep.bijective =
        distinct && right_sizes && sorted.size() == rep.expected_size;
    for (auto& t1 : cls)
        for (auto& t2 : cls) {
            ++rep.pairs_checked;
            std::uint32_t i1 = phi(t1, n, s), i2 = phi(t2, n, s);
            bool lhs = t1.subset_of(t2);
            bool rhs = (i1 & i2) == i1;
            if (lhs != rhs) ++rep.pair_failures;
        }
    rep.passed = rep.class_size == rep.expected_size && rep.bijective && rep.pair_failures == 0;
    rep.note =
        "at a finite ground set equal-size images make both sides of the "
        "inclusion equivalence degenerate to equality";
    return rep;
}

}  // namespace ordercalc
