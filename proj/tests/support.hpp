#pragma once

// Shared generators and independent oracles for the test suites.  The
// oracles here deliberately avoid the library's own comparison paths:
// Cantor codes are mapped to exact rationals, and sampled orders are
// inspected element by element.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ordercalc/codes.hpp"
#include "ordercalc/props.hpp"
#include "ordercalc/terms.hpp"

namespace testsupport {

using ordercalc::CodePtr;
using ordercalc::ElementCode;
using ordercalc::OrderTerm;
using ordercalc::TermPtr;

using Rng = std::mt19937_64;

/// Exact value of a Cantor code under the classical map: bit sequence
/// b0 b1 ... goes to sum of 2*b_i / 3^(i+1).  Returned as (num, den) with
/// den = 3^|w|; exact for |w| <= 30.
inline std::pair<long long, long long> cantor_value(const CodePtr& c) {
    long long num = 0, den = 1;
    for (char ch : c->word) {
        num = num * 3 + 2 * (ch - '0');
        den *= 3;
    }
    // the constant tail contributes t * (1/3^|w|): sum 2*t/3^(i+1) = t/3^|w|
    num += c->tail;
    return {num, den};
}

inline int cmp_cantor_values(const CodePtr& a, const CodePtr& b) {
    auto [na, da] = cantor_value(a);
    auto [nb, db] = cantor_value(b);
    __int128 lhs = static_cast<__int128>(na) * db;
    __int128 rhs = static_cast<__int128>(nb) * da;
    return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

/// All canonical Cantor codes with |w| <= max_len.
inline std::vector<CodePtr> all_cantor_codes(std::size_t max_len) {
    std::vector<CodePtr> out{ElementCode::cantor_code("", 0), ElementCode::cantor_code("", 1)};
    for (std::size_t len = 1; len <= max_len; ++len) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
            std::string w(len, '0');
            for (std::size_t i = 0; i < len; ++i)
                if (bits >> (len - 1 - i) & 1) w[i] = '1';
            out.push_back(ElementCode::cantor_code(w, w.back() == '1' ? 0 : 1));
        }
    }
    return out;
}

/// The built-in order isomorphism between Z and w* + w: negatives reverse
/// into the left part, naturals form the right part.
inline CodePtr zset_as_sum_code(std::int64_t k) {
    if (k >= 0) return ElementCode::right(ElementCode::nat_code(static_cast<std::uint64_t>(k)));
    return ElementCode::left(ElementCode::nat_code(static_cast<std::uint64_t>(-k - 1)));
}

inline std::int64_t zset_from_sum_code(const CodePtr& c) {
    if (c->kind == ElementCode::Kind::Right) return static_cast<std::int64_t>(c->x->nat);
    return -static_cast<std::int64_t>(c->x->nat) - 1;
}

/// Random realizable term over the small atom pool.  Drop wrappers are
/// attached only where the endpoint exists.
inline TermPtr random_realizable_term(Rng& rng, int depth) {
    auto atom = [&]() -> TermPtr {
        switch (rng() % 6) {
            case 0: return OrderTerm::fin(1 + rng() % 3);
            case 1: return OrderTerm::omega();
            case 2: return OrderTerm::zset();
            case 3: return OrderTerm::rationals();
            default: return OrderTerm::cantor();
        }
    };
    if (depth <= 1) return atom();
    switch (rng() % 6) {
        case 0: return atom();
        case 1:
        case 2:
            return OrderTerm::sum(random_realizable_term(rng, depth - 1),
                                  random_realizable_term(rng, depth - 1));
        case 3: return OrderTerm::reverse(random_realizable_term(rng, depth - 1));
        case 4:
            return OrderTerm::sum_over(random_realizable_term(rng, depth - 1),
                                       random_realizable_term(rng, depth - 1));
        default: {
            TermPtr inner = random_realizable_term(rng, depth - 1);
            TermPtr t = rng() % 2 ? OrderTerm::drop_min(inner) : OrderTerm::drop_max(inner);
            try {
                auto n = ordercalc::normalize(t);
                if (!ordercalc::nf_is_empty(n)) return t;
            } catch (const ordercalc::TermError&) {
            }
            return inner;
        }
    }
}

/// A uniform-ish valid code for a realizable, nonempty term.
inline std::optional<CodePtr> random_code_for(const TermPtr& t, Rng& rng) {
    switch (t->kind) {
        case ordercalc::TermKind::Fin:
            if (t->n == 0) return std::nullopt;
            return ElementCode::nat_code(rng() % t->n);
        case ordercalc::TermKind::Omega: return ElementCode::nat_code(rng() % 40);
        case ordercalc::TermKind::Zset:
            return ElementCode::int_code(static_cast<std::int64_t>(rng() % 81) - 40);
        case ordercalc::TermKind::Q: {
            std::int64_t p = static_cast<std::int64_t>(rng() % 41) - 20;
            std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 12);
            return ElementCode::rat_code(p, q);
        }
        case ordercalc::TermKind::Cantor: {
            std::size_t len = rng() % 7;
            std::string w;
            for (std::size_t i = 0; i < len; ++i) w.push_back(rng() % 2 ? '1' : '0');
            int tail = w.empty() ? static_cast<int>(rng() % 2) : (w.back() == '1' ? 0 : 1);
            auto c = ElementCode::cantor_code(w, tail);
            if (!ordercalc::is_valid_code(t, c)) return std::nullopt;  // trimmed endpoint
            return c;
        }
        case ordercalc::TermKind::CardSym: return std::nullopt;
        case ordercalc::TermKind::Sum: {
            for (int tries = 0; tries < 8; ++tries) {
                bool left = rng() % 2 == 0;
                auto inner = random_code_for(left ? t->a : t->b, rng);
                if (inner)
                    return left ? ElementCode::left(*inner) : ElementCode::right(*inner);
            }
            return std::nullopt;
        }
        case ordercalc::TermKind::Reverse: return random_code_for(t->a, rng);
        case ordercalc::TermKind::SumOver: {
            auto i = random_code_for(t->a, rng);
            auto s = random_code_for(t->b, rng);
            if (!i || !s) return std::nullopt;
            return ElementCode::pair(*i, *s);
        }
        case ordercalc::TermKind::DropMin:
        case ordercalc::TermKind::DropMax: {
            for (int tries = 0; tries < 16; ++tries) {
                auto c = random_code_for(t->a, rng);
                if (c && ordercalc::is_valid_code(t, *c)) return c;
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

inline bool cards_equal(const std::optional<ordercalc::Card>& a,
                        const std::optional<ordercalc::Card>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || *a == *b;
}

inline bool attrs_equal(const ordercalc::Attrs& x, const ordercalc::Attrs& y) {
    auto ws_eq = [](const ordercalc::WeightSet& u, const ordercalc::WeightSet& v) {
        if (u.indeterminate() || v.indeterminate()) return u.indeterminate() == v.indeterminate();
        return u == v;
    };
    return x.is_empty == y.is_empty && x.has_min == y.has_min && x.has_max == y.has_max &&
           x.min_has_succ == y.min_has_succ && x.max_has_pred == y.max_has_pred &&
           x.left_complete == y.left_complete && x.right_complete == y.right_complete &&
           x.dedekind_complete == y.dedekind_complete && x.dense_jumps == y.dense_jumps &&
           x.jumps.infinite == y.jumps.infinite &&
           (x.jumps.infinite || x.jumps.n == y.jumps.n) && cards_equal(x.weight, y.weight) &&
           cards_equal(x.card, y.card) && x.finite_size == y.finite_size &&
           ws_eq(x.w_init, y.w_init) && ws_eq(x.w_fin, y.w_fin) &&
           ws_eq(x.card_init, y.card_init) && ws_eq(x.card_fin, y.card_fin) &&
           ws_eq(x.card_init_open, y.card_init_open) && ws_eq(x.card_fin_open, y.card_fin_open);
}

/// Reversal pushed structurally through the term, so the dual attributes
/// are computed along a genuinely different recursion path.
inline TermPtr reverse_push(const TermPtr& t) {
    using ordercalc::TermKind;
    switch (t->kind) {
        case TermKind::Sum: return OrderTerm::sum(reverse_push(t->b), reverse_push(t->a));
        case TermKind::SumOver:
            return OrderTerm::sum_over(reverse_push(t->a), reverse_push(t->b));
        case TermKind::Reverse: return t->a;
        case TermKind::DropMin: return OrderTerm::drop_max(reverse_push(t->a));
        case TermKind::DropMax: return OrderTerm::drop_min(reverse_push(t->a));
        default: return OrderTerm::reverse(t);
    }
}

inline std::optional<CodePtr> strictly_above(const TermPtr& t, const CodePtr& c);

/// Some element strictly below c in t, constructed structurally; nullopt
/// exactly when c is the minimum.
inline std::optional<CodePtr> strictly_below(const TermPtr& t, const CodePtr& c) {
    using ordercalc::TermKind;
    switch (t->kind) {
        case TermKind::Fin:
        case TermKind::Omega:
            if (c->nat == 0) return std::nullopt;
            return ElementCode::nat_code(c->nat - 1);
        case TermKind::Zset: return ElementCode::int_code(c->iv - 1);
        case TermKind::Q: return ElementCode::rat_code(c->num - c->den, c->den);
        case TermKind::Cantor: {
            if (c->word.empty() && c->tail == 0) return std::nullopt;  // the minimum
            return ElementCode::cantor_code("0" + c->word, c->tail);   // a third of the value
        }
        case TermKind::CardSym: return std::nullopt;
        case TermKind::Sum: {
            if (c->kind == ElementCode::Kind::Left) {
                auto r = strictly_below(t->a, c->x);
                if (!r) return std::nullopt;
                return ElementCode::left(*r);
            }
            if (auto r = strictly_below(t->b, c->x)) return ElementCode::right(*r);
            auto any = ordercalc::element_stream(t->a).take(1);
            if (any.empty()) return std::nullopt;
            return ElementCode::left(any[0]);
        }
        case TermKind::Reverse: return strictly_above(t->a, c);
        case TermKind::SumOver: {
            if (auto r = strictly_below(t->b, c->y)) return ElementCode::pair(c->x, *r);
            auto i = strictly_below(t->a, c->x);
            if (!i) return std::nullopt;
            auto any = ordercalc::element_stream(t->b).take(1);
            if (any.empty()) return std::nullopt;
            return ElementCode::pair(*i, any[0]);
        }
        case TermKind::DropMin: {
            auto r = strictly_below(t->a, c);
            if (!r) return std::nullopt;
            auto m = ordercalc::min_code(t->a);
            if (m && ordercalc::code_equal(*m, *r)) return strictly_below(t->a, *r);
            return r;
        }
        case TermKind::DropMax: return strictly_below(t->a, c);
    }
    return std::nullopt;
}

inline std::optional<CodePtr> strictly_above(const TermPtr& t, const CodePtr& c) {
    using ordercalc::TermKind;
    switch (t->kind) {
        case TermKind::Fin:
            if (c->nat + 1 >= t->n) return std::nullopt;
            return ElementCode::nat_code(c->nat + 1);
        case TermKind::Omega: return ElementCode::nat_code(c->nat + 1);
        case TermKind::Zset: return ElementCode::int_code(c->iv + 1);
        case TermKind::Q: return ElementCode::rat_code(c->num + c->den, c->den);
        case TermKind::Cantor: {
            if (c->word.empty() && c->tail == 1) return std::nullopt;  // the maximum
            return ElementCode::cantor_code("1" + c->word, c->tail);   // 2/3 plus a third of it
        }
        case TermKind::CardSym: return std::nullopt;
        case TermKind::Sum: {
            if (c->kind == ElementCode::Kind::Right) {
                auto r = strictly_above(t->b, c->x);
                if (!r) return std::nullopt;
                return ElementCode::right(*r);
            }
            if (auto r = strictly_above(t->a, c->x)) return ElementCode::left(*r);
            auto any = ordercalc::element_stream(t->b).take(1);
            if (any.empty()) return std::nullopt;
            return ElementCode::right(any[0]);
        }
        case TermKind::Reverse: return strictly_below(t->a, c);
        case TermKind::SumOver: {
            if (auto r = strictly_above(t->b, c->y)) return ElementCode::pair(c->x, *r);
            auto i = strictly_above(t->a, c->x);
            if (!i) return std::nullopt;
            auto any = ordercalc::element_stream(t->b).take(1);
            if (any.empty()) return std::nullopt;
            return ElementCode::pair(*i, any[0]);
        }
        case TermKind::DropMax: {
            auto r = strictly_above(t->a, c);
            if (!r) return std::nullopt;
            auto m = ordercalc::max_code(t->a);
            if (m && ordercalc::code_equal(*m, *r)) return strictly_above(t->a, *r);
            return r;
        }
        case TermKind::DropMin: return strictly_above(t->a, c);
    }
    return std::nullopt;
}

/**
 * Brute-force inspection of a realizable term's endpoints and jump
 * density against the claimed attribute values.  Finite terms are checked
 * exactly.  Infinite ones use structural probes: a claimed endpoint must
 * dominate the sample and admit nothing beyond it, a denied endpoint must
 * yield an explicit element past the sample's edge, and jump density is
 * checked per sampled interval with witnesses from the structural jump
 * predicates, an independent path from the attribute recursion.
 */
inline bool inspect_consistent(const TermPtr& t, bool has_min, bool has_max, bool dense_jumps,
                               std::string* why = nullptr, std::size_t pair_pool = 48,
                               std::size_t witness_take = 512) {
    using namespace ordercalc;
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    auto nt = normalize(t);
    if (nf_is_empty(nt)) return true;
    auto sz = nf_finite_size(nt);
    auto cmp = [&](const CodePtr& a, const CodePtr& b) { return compare(t, a, b) < 0; };

    if (sz && *sz <= 64) {
        auto codes = element_stream(t).take(static_cast<std::size_t>(*sz));
        if (codes.size() != *sz) return fail("finite enumeration came up short");
        std::sort(codes.begin(), codes.end(), cmp);
        if (!has_min || !has_max) return fail("finite nonempty order must have endpoints");
        if (!dense_jumps) return fail("finite order must have dense jumps");
        auto m = min_code(t);
        if (!m || !code_equal(*m, codes.front())) return fail("min_code disagrees with sample");
        auto M = max_code(t);
        if (!M || !code_equal(*M, codes.back())) return fail("max_code disagrees with sample");
        return true;
    }

    auto sample = element_stream(t).take(64);
    if (sample.empty()) return fail("no elements sampled from an infinite term");
    auto floor = *std::min_element(sample.begin(), sample.end(), cmp);
    auto ceil = *std::max_element(sample.begin(), sample.end(), cmp);

    if (has_min) {
        auto m = min_code(t);
        if (!m) return fail("claimed minimum has no code");
        if (!is_valid_code(t, *m)) return fail("claimed minimum is not a valid code");
        if (compare(t, floor, *m) < 0) return fail("sampled element below the claimed minimum");
        if (strictly_below(t, *m)) return fail("found an element below the claimed minimum");
    } else {
        auto below = strictly_below(t, floor);
        if (!below || !is_valid_code(t, *below) || compare(t, *below, floor) >= 0)
            return fail("denied minimum but nothing found below the sample floor");
    }
    if (has_max) {
        auto M = max_code(t);
        if (!M) return fail("claimed maximum has no code");
        if (!is_valid_code(t, *M)) return fail("claimed maximum is not a valid code");
        if (compare(t, ceil, *M) > 0) return fail("sampled element above the claimed maximum");
        if (strictly_above(t, *M)) return fail("found an element above the claimed maximum");
    } else {
        auto above = strictly_above(t, ceil);
        if (!above || !is_valid_code(t, *above) || compare(t, *above, ceil) <= 0)
            return fail("denied maximum but nothing found above the sample ceiling");
    }

    auto lefts = jump_left_stream(t).take(witness_take);
    auto witness_in = [&](const CodePtr& a, const CodePtr& b) {
        if (auto s = jump_succ_opt(t, a))
            if (compare(t, *s, b) <= 0) return true;
        for (auto& u : lefts) {
            if (compare(t, a, u) <= 0 && compare(t, u, b) <= 0) {
                auto s = jump_succ_opt(t, u);
                if (s && compare(t, *s, b) <= 0) return true;
            }
        }
        return false;
    };
    std::vector<CodePtr> pool(sample.begin(),
                              sample.begin() + std::min<std::size_t>(pair_pool, sample.size()));
    bool all_pairs_witnessed = true;
    bool some_pair_unwitnessed = false;
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = 0; j < pool.size(); ++j) {
            if (compare(t, pool[i], pool[j]) >= 0) continue;
            if (witness_in(pool[i], pool[j])) continue;
            all_pairs_witnessed = false;
            some_pair_unwitnessed = true;
        }
    if (dense_jumps && !all_pairs_witnessed)
        return fail("claimed dense jumps but a sampled interval has no jump witness");
    if (!dense_jumps && !some_pair_unwitnessed)
        return fail("denied dense jumps but every sampled interval had a witness");
    return true;
}

}  // namespace testsupport
