#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "ordercalc/cardinals.hpp"

namespace ordercalc {

struct CapError : OrdercalcError {
    using OrdercalcError::OrdercalcError;
};

/// A strictly inclusion-increasing family of subsets of [0, n), subsets as
/// bit masks.
struct FiniteChain {
    unsigned n = 0;
    std::vector<std::uint32_t> sets;
};

inline bool chain_strictly_increasing(const FiniteChain& c) {
    for (std::size_t i = 0; i + 1 < c.sets.size(); ++i) {
        if ((c.sets[i] & c.sets[i + 1]) != c.sets[i]) return false;
        if (c.sets[i] == c.sets[i + 1]) return false;
    }
    return true;
}

/// True iff no subset of [0, n) outside c is comparable with every member.
inline bool is_maximal_chain(const FiniteChain& c) {
    if (c.n > 20) throw CapError("is_maximal_chain: ground set capped at 20");
    if (!chain_strictly_increasing(c)) return false;
    const std::uint32_t full = c.n == 32 ? ~0u : (1u << c.n) - 1;
    for (std::uint32_t s = 0;; ++s) {
        bool in_chain = false;
        for (auto m : c.sets)
            if (m == s) in_chain = true;
        if (!in_chain) {
            bool comparable_all = true;
            for (auto m : c.sets)
                if ((s & m) != s && (s & m) != m) comparable_all = false;
            if (comparable_all) return false;
        }
        if (s == full) break;
    }
    return true;
}

/**
 * All maximal chains of (P(n), subset), by exhaustive search: every
 * inclusion-increasing sequence rooted at the empty set is visited and
 * kept iff nothing outside is comparable with all of it.  Hard cap n <= 6.
 */
inline std::vector<FiniteChain> enumerate_max_chains(unsigned n) {
    if (n > 6) throw CapError("enumerate_max_chains: capped at n = 6");
    const std::uint32_t full = (1u << n) - 1;
    std::vector<FiniteChain> out;
    std::vector<std::uint32_t> cur{0};
    auto visit = [&](auto&& self) -> void {
        FiniteChain c{n, cur};
        if (is_maximal_chain(c)) out.push_back(std::move(c));
        for (std::uint32_t s = cur.back() + 1; s <= full; ++s) {
            if ((cur.back() & s) == cur.back()) {
                cur.push_back(s);
                self(self);
                cur.pop_back();
            }
        }
    };
    visit(visit);
    return out;
}

/// The chain of initial segments of the finite order p0 < p1 < ... ; always
/// a maximal chain of P(n).
inline FiniteChain init_of_finite_order(const std::vector<unsigned>& perm) {
    const unsigned n = static_cast<unsigned>(perm.size());
    if (n > 31) throw CapError("init_of_finite_order: too large");
    std::uint32_t seen = 0;
    for (unsigned p : perm) {
        if (p >= n || (seen >> p & 1))
            throw OrdercalcError("init_of_finite_order: not a permutation of [0, n)");
        seen |= 1u << p;
    }
    FiniteChain c{n, {0}};
    std::uint32_t acc = 0;
    for (unsigned p : perm) {
        acc |= 1u << p;
        c.sets.push_back(acc);
    }
    return c;
}

/**
 * The finite shadow of the one-point-growth identity: for every point in
 * the union but not the intersection, the largest member avoiding it and
 * the smallest member containing it sit in the chain and differ by exactly
 * that point, injectively.
 */
inline bool check_claim1(const FiniteChain& c) {
    if (c.sets.empty()) return false;
    std::uint32_t all = 0, common = ~0u;
    for (auto s : c.sets) {
        all |= s;
        common &= s;
    }
    auto in_chain = [&](std::uint32_t s) {
        for (auto m : c.sets)
            if (m == s) return true;
        return false;
    };
    std::vector<std::uint32_t> a_of;
    for (unsigned alpha = 0; alpha < c.n; ++alpha) {
        if (!(all >> alpha & 1) || (common >> alpha & 1)) continue;
        std::uint32_t a_alpha = 0, b_alpha = ~0u;
        for (auto s : c.sets) {
            if (s >> alpha & 1)
                b_alpha &= s;
            else
                a_alpha |= s;
        }
        if (!in_chain(a_alpha) || !in_chain(b_alpha)) return false;
        if (b_alpha != (a_alpha | (1u << alpha))) return false;
        for (auto prev : a_of)
            if (prev == a_alpha) return false;
        a_of.push_back(a_alpha);
    }
    return true;
}

/// Endpoints present and every adjacent pair a jump (one-point steps).
inline bool day_check(const FiniteChain& c) {
    if (c.sets.empty()) return false;
    const std::uint32_t full = c.n == 0 ? 0 : (1u << c.n) - 1;
    bool has_bottom = false, has_top = false;
    for (auto s : c.sets) {
        if (s == 0) has_bottom = true;
        if (s == full) has_top = true;
    }
    if (!has_bottom || !has_top) return false;
    for (std::size_t i = 0; i + 1 < c.sets.size(); ++i)
        if (std::popcount(c.sets[i + 1] ^ c.sets[i]) != 1) return false;
    return true;
}

inline std::string finite_chain_hex(const FiniteChain& c) {
    std::string out;
    for (std::size_t i = 0; i < c.sets.size(); ++i) {
        if (i) out.push_back(',');
        char buf[16];
        std::snprintf(buf, sizeof buf, "%x", c.sets[i]);
        out += buf;
    }
    return out;
}

}  // namespace ordercalc
