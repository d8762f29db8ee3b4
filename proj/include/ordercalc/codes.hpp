#pragma once

#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordercalc/terms.hpp"

namespace ordercalc {

struct CodeError : OrdercalcError {
    using OrdercalcError::OrdercalcError;
};

class ElementCode;
using CodePtr = std::shared_ptr<const ElementCode>;

/**
 * Canonical finitary code for a point of a realizable term.
 *
 * Cantor codes (w, t) denote the ternary-expansion bit sequence w t t t...
 * and are canonical: w never ends in t, so each eventually-constant
 * sequence has exactly one code.  Rationals are kept in lowest terms with
 * positive denominator.
 */
class ElementCode {
public:
    enum class Kind { Nat, Int, Rat, Cantor, Left, Right, Pair };

    Kind kind;
    std::uint64_t nat = 0;
    std::int64_t iv = 0;
    std::int64_t num = 0;
    std::int64_t den = 1;
    std::string word;
    int tail = 0;
    CodePtr x, y;

    static CodePtr nat_code(std::uint64_t v) {
        auto c = std::make_shared<ElementCode>();
        c->kind = Kind::Nat;
        c->nat = v;
        return c;
    }
    static CodePtr int_code(std::int64_t v) {
        auto c = std::make_shared<ElementCode>();
        c->kind = Kind::Int;
        c->iv = v;
        return c;
    }
    static CodePtr rat_code(std::int64_t p, std::int64_t q) {
        if (q == 0) throw CodeError("rational with zero denominator");
        if (q < 0) {
            p = -p;
            q = -q;
        }
        std::int64_t g = std::gcd(p < 0 ? -p : p, q);
        if (g == 0) g = 1;
        auto c = std::make_shared<ElementCode>();
        c->kind = Kind::Rat;
        c->num = p / g;
        c->den = q / g;
        return c;
    }
    static CodePtr cantor_code(std::string w, int t) {
        auto c = std::make_shared<ElementCode>();
        c->kind = Kind::Cantor;
        c->word = std::move(w);
        c->tail = t;
        return c;
    }
    static CodePtr left(CodePtr inner) { return wrap(Kind::Left, std::move(inner), nullptr); }
    static CodePtr right(CodePtr inner) { return wrap(Kind::Right, std::move(inner), nullptr); }
    static CodePtr pair(CodePtr i, CodePtr s) { return wrap(Kind::Pair, std::move(i), std::move(s)); }

private:
    static CodePtr wrap(Kind k, CodePtr a, CodePtr b) {
        auto c = std::make_shared<ElementCode>();
        c->kind = k;
        c->x = std::move(a);
        c->y = std::move(b);
        return c;
    }
};

inline bool code_equal(const CodePtr& a, const CodePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ElementCode::Kind::Nat: return a->nat == b->nat;
        case ElementCode::Kind::Int: return a->iv == b->iv;
        case ElementCode::Kind::Rat: return a->num == b->num && a->den == b->den;
        case ElementCode::Kind::Cantor: return a->word == b->word && a->tail == b->tail;
        case ElementCode::Kind::Left:
        case ElementCode::Kind::Right: return code_equal(a->x, b->x);
        case ElementCode::Kind::Pair: return code_equal(a->x, b->x) && code_equal(a->y, b->y);
    }
    return false;
}

/// Compact stable key, usable as a map index.
inline std::string code_key(const CodePtr& c) {
    switch (c->kind) {
        case ElementCode::Kind::Nat: return "n" + std::to_string(c->nat);
        case ElementCode::Kind::Int: return "i" + std::to_string(c->iv);
        case ElementCode::Kind::Rat: return "r" + std::to_string(c->num) + "/" + std::to_string(c->den);
        case ElementCode::Kind::Cantor: return "c" + c->word + ":" + std::to_string(c->tail);
        case ElementCode::Kind::Left: return "L(" + code_key(c->x) + ")";
        case ElementCode::Kind::Right: return "R(" + code_key(c->x) + ")";
        case ElementCode::Kind::Pair: return "P(" + code_key(c->x) + "," + code_key(c->y) + ")";
    }
    return "?";
}

inline bool term_is_empty(const TermPtr& t) { return nf_is_empty(normalize(t)); }
inline bool term_has_min(const TermPtr& t) {
    auto n = normalize(t);
    return !nf_is_empty(n) && nf_has_min(n);
}
inline bool term_has_max(const TermPtr& t) {
    auto n = normalize(t);
    return !nf_is_empty(n) && nf_has_max(n);
}

inline std::optional<CodePtr> min_code(const TermPtr& t);
inline std::optional<CodePtr> max_code(const TermPtr& t);
inline std::optional<CodePtr> jump_succ_opt(const TermPtr& t, const CodePtr& c);
inline std::optional<CodePtr> jump_pred_opt(const TermPtr& t, const CodePtr& c);

/// Structural validation, total.  Excludes dropped endpoints and enforces
/// Cantor and rational canonicity.
inline bool is_valid_code(const TermPtr& t, const CodePtr& c) {
    if (!c) return false;
    switch (t->kind) {
        case TermKind::Fin:
            return c->kind == ElementCode::Kind::Nat && c->nat < t->n;
        case TermKind::Omega:
            return c->kind == ElementCode::Kind::Nat;
        case TermKind::Zset:
            return c->kind == ElementCode::Kind::Int;
        case TermKind::Q: {
            if (c->kind != ElementCode::Kind::Rat || c->den <= 0) return false;
            std::int64_t p = c->num < 0 ? -c->num : c->num;
            return std::gcd(p, c->den) <= 1 || (p == 0 && c->den == 1);
        }
        case TermKind::Cantor: {
            if (c->kind != ElementCode::Kind::Cantor) return false;
            if (c->tail != 0 && c->tail != 1) return false;
            for (char ch : c->word)
                if (ch != '0' && ch != '1') return false;
            if (!c->word.empty() && c->word.back() == static_cast<char>('0' + c->tail))
                return false;  // non-canonical
            if (t->cantor_drop_min && c->word.empty() && c->tail == 0) return false;
            if (t->cantor_drop_max && c->word.empty() && c->tail == 1) return false;
            return true;
        }
        case TermKind::CardSym:
            return false;  // no finitary codes for points of a symbolic ordinal
        case TermKind::Sum:
            if (c->kind == ElementCode::Kind::Left) return is_valid_code(t->a, c->x);
            if (c->kind == ElementCode::Kind::Right) return is_valid_code(t->b, c->x);
            return false;
        case TermKind::Reverse:
            return is_valid_code(t->a, c);
        case TermKind::SumOver:
            return c->kind == ElementCode::Kind::Pair && is_valid_code(t->a, c->x) &&
                   is_valid_code(t->b, c->y);
        case TermKind::DropMin: {
            if (!is_valid_code(t->a, c)) return false;
            auto m = min_code(t->a);
            return !(m && code_equal(*m, c));
        }
        case TermKind::DropMax: {
            if (!is_valid_code(t->a, c)) return false;
            auto m = max_code(t->a);
            return !(m && code_equal(*m, c));
        }
    }
    return false;
}

inline std::optional<CodePtr> min_code(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Fin:
            if (t->n == 0) return std::nullopt;
            return ElementCode::nat_code(0);
        case TermKind::Omega: return ElementCode::nat_code(0);
        case TermKind::Zset:
        case TermKind::Q: return std::nullopt;
        case TermKind::Cantor:
            if (t->cantor_drop_min) return std::nullopt;
            return ElementCode::cantor_code("", 0);
        case TermKind::CardSym: return std::nullopt;  // exists, but has no code
        case TermKind::Sum: {
            if (term_is_empty(t->a)) {
                auto m = min_code(t->b);
                if (!m) return std::nullopt;
                return ElementCode::right(*m);
            }
            auto m = min_code(t->a);
            if (!m) return std::nullopt;
            return ElementCode::left(*m);
        }
        case TermKind::Reverse: return max_code(t->a);
        case TermKind::SumOver: {
            auto i = min_code(t->a);
            auto s = min_code(t->b);
            if (!i || !s) return std::nullopt;
            return ElementCode::pair(*i, *s);
        }
        case TermKind::DropMin: {
            auto m = min_code(t->a);
            if (!m) return std::nullopt;
            return jump_succ_opt(t->a, *m);  // new minimum iff the old one had a neighbour
        }
        case TermKind::DropMax: {
            auto sz = nf_finite_size(normalize(t));
            if (sz && *sz == 0) return std::nullopt;
            return min_code(t->a);
        }
    }
    return std::nullopt;
}

inline std::optional<CodePtr> max_code(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Fin:
            if (t->n == 0) return std::nullopt;
            return ElementCode::nat_code(t->n - 1);
        case TermKind::Omega:
        case TermKind::Zset:
        case TermKind::Q: return std::nullopt;
        case TermKind::Cantor:
            if (t->cantor_drop_max) return std::nullopt;
            return ElementCode::cantor_code("", 1);
        case TermKind::CardSym: return std::nullopt;
        case TermKind::Sum: {
            if (term_is_empty(t->b)) {
                auto m = max_code(t->a);
                if (!m) return std::nullopt;
                return ElementCode::left(*m);
            }
            auto m = max_code(t->b);
            if (!m) return std::nullopt;
            return ElementCode::right(*m);
        }
        case TermKind::Reverse: return min_code(t->a);
        case TermKind::SumOver: {
            auto i = max_code(t->a);
            auto s = max_code(t->b);
            if (!i || !s) return std::nullopt;
            return ElementCode::pair(*i, *s);
        }
        case TermKind::DropMax: {
            auto m = max_code(t->a);
            if (!m) return std::nullopt;
            return jump_pred_opt(t->a, *m);
        }
        case TermKind::DropMin: {
            auto sz = nf_finite_size(normalize(t));
            if (sz && *sz == 0) return std::nullopt;
            return max_code(t->a);
        }
    }
    return std::nullopt;
}

/// The element immediately above c, when (c, result) is a jump.
inline std::optional<CodePtr> jump_succ_opt(const TermPtr& t, const CodePtr& c) {
    switch (t->kind) {
        case TermKind::Fin:
            if (c->nat + 1 < t->n) return ElementCode::nat_code(c->nat + 1);
            return std::nullopt;
        case TermKind::Omega: return ElementCode::nat_code(c->nat + 1);
        case TermKind::Zset: return ElementCode::int_code(c->iv + 1);
        case TermKind::Q: return std::nullopt;
        case TermKind::Cantor:
            // left endpoints of removed intervals look like (w0, 1)
            if (c->tail == 1 && !c->word.empty())
                return ElementCode::cantor_code(c->word.substr(0, c->word.size() - 1) + "1", 0);
            return std::nullopt;
        case TermKind::CardSym: throw CodeError("jump structure of a symbolic ordinal has no codes");
        case TermKind::Sum: {
            if (c->kind == ElementCode::Kind::Left) {
                if (auto s = jump_succ_opt(t->a, c->x)) return ElementCode::left(*s);
                auto mx = max_code(t->a);
                if (mx && code_equal(*mx, c->x)) {
                    if (auto mb = min_code(t->b)) return ElementCode::right(*mb);
                }
                return std::nullopt;
            }
            if (auto s = jump_succ_opt(t->b, c->x)) return ElementCode::right(*s);
            return std::nullopt;
        }
        case TermKind::Reverse: return jump_pred_opt(t->a, c);
        case TermKind::SumOver: {
            if (auto s = jump_succ_opt(t->b, c->y)) return ElementCode::pair(c->x, *s);
            auto mx = max_code(t->b);
            if (mx && code_equal(*mx, c->y)) {
                auto inext = jump_succ_opt(t->a, c->x);
                auto mb = min_code(t->b);
                if (inext && mb) return ElementCode::pair(*inext, *mb);
            }
            return std::nullopt;
        }
        case TermKind::DropMin: return jump_succ_opt(t->a, c);
        case TermKind::DropMax: {
            auto s = jump_succ_opt(t->a, c);
            if (!s) return std::nullopt;
            auto mx = max_code(t->a);
            if (mx && code_equal(*mx, *s)) return std::nullopt;
            return s;
        }
    }
    return std::nullopt;
}

/// The element immediately below c, when (result, c) is a jump.
inline std::optional<CodePtr> jump_pred_opt(const TermPtr& t, const CodePtr& c) {
    switch (t->kind) {
        case TermKind::Fin:
        case TermKind::Omega:
            if (c->nat >= 1) return ElementCode::nat_code(c->nat - 1);
            return std::nullopt;
        case TermKind::Zset: return ElementCode::int_code(c->iv - 1);
        case TermKind::Q: return std::nullopt;
        case TermKind::Cantor:
            // right endpoints of removed intervals look like (w1, 0)
            if (c->tail == 0 && !c->word.empty())
                return ElementCode::cantor_code(c->word.substr(0, c->word.size() - 1) + "0", 1);
            return std::nullopt;
        case TermKind::CardSym: throw CodeError("jump structure of a symbolic ordinal has no codes");
        case TermKind::Sum: {
            if (c->kind == ElementCode::Kind::Right) {
                if (auto p = jump_pred_opt(t->b, c->x)) return ElementCode::right(*p);
                auto mn = min_code(t->b);
                if (mn && code_equal(*mn, c->x)) {
                    if (auto ma = max_code(t->a)) return ElementCode::left(*ma);
                }
                return std::nullopt;
            }
            if (auto p = jump_pred_opt(t->a, c->x)) return ElementCode::left(*p);
            return std::nullopt;
        }
        case TermKind::Reverse: return jump_succ_opt(t->a, c);
        case TermKind::SumOver: {
            if (auto p = jump_pred_opt(t->b, c->y)) return ElementCode::pair(c->x, *p);
            auto mn = min_code(t->b);
            if (mn && code_equal(*mn, c->y)) {
                auto iprev = jump_pred_opt(t->a, c->x);
                auto mx = max_code(t->b);
                if (iprev && mx) return ElementCode::pair(*iprev, *mx);
            }
            return std::nullopt;
        }
        case TermKind::DropMax: return jump_pred_opt(t->a, c);
        case TermKind::DropMin: {
            auto p = jump_pred_opt(t->a, c);
            if (!p) return std::nullopt;
            auto mn = min_code(t->a);
            if (mn && code_equal(*mn, *p)) return std::nullopt;
            return p;
        }
    }
    return std::nullopt;
}

namespace detail {
inline std::strong_ordering cmp_codes(const TermPtr& t, const CodePtr& a, const CodePtr& b) {
    switch (t->kind) {
        case TermKind::Fin:
        case TermKind::Omega: return a->nat <=> b->nat;
        case TermKind::Zset: return a->iv <=> b->iv;
        case TermKind::Q: {
            __int128 lhs = static_cast<__int128>(a->num) * b->den;
            __int128 rhs = static_cast<__int128>(b->num) * a->den;
            return lhs < rhs   ? std::strong_ordering::less
                   : lhs > rhs ? std::strong_ordering::greater
                               : std::strong_ordering::equal;
        }
        case TermKind::Cantor: {
            const std::size_t m = std::max(a->word.size(), b->word.size());
            for (std::size_t i = 0; i < m; ++i) {
                int ba = i < a->word.size() ? a->word[i] - '0' : a->tail;
                int bb = i < b->word.size() ? b->word[i] - '0' : b->tail;
                if (ba != bb) return ba <=> bb;
            }
            return a->tail <=> b->tail;
        }
        case TermKind::CardSym: throw CodeError("compare on a non-realizable term");
        case TermKind::Sum: {
            const bool la = a->kind == ElementCode::Kind::Left;
            const bool lb = b->kind == ElementCode::Kind::Left;
            if (la && !lb) return std::strong_ordering::less;
            if (!la && lb) return std::strong_ordering::greater;
            return cmp_codes(la ? t->a : t->b, a->x, b->x);
        }
        case TermKind::Reverse: {
            auto c = cmp_codes(t->a, a, b);
            if (c == std::strong_ordering::less) return std::strong_ordering::greater;
            if (c == std::strong_ordering::greater) return std::strong_ordering::less;
            return c;
        }
        case TermKind::SumOver: {
            auto ci = cmp_codes(t->a, a->x, b->x);
            if (ci != std::strong_ordering::equal) return ci;
            return cmp_codes(t->b, a->y, b->y);
        }
        case TermKind::DropMin:
        case TermKind::DropMax: return cmp_codes(t->a, a, b);
    }
    throw CodeError("compare: unknown kind");
}
}  // namespace detail

/// The linear order of t on valid codes.
inline std::strong_ordering compare(const TermPtr& t, const CodePtr& a, const CodePtr& b) {
    if (!realizable(t)) throw CodeError("compare on a non-realizable term");
    if (!is_valid_code(t, a) || !is_valid_code(t, b)) throw CodeError("invalid element code");
    return detail::cmp_codes(t, a, b);
}

// ---------------------------------------------------------------------------
// Lazy enumeration streams.  All enumerations are term-structural: stable,
// injective and independent of the order being enumerated.

class CodeStream {
public:
    CodeStream() : fn_([] { return std::nullopt; }) {}
    explicit CodeStream(std::function<std::optional<CodePtr>()> fn) : fn_(std::move(fn)) {}
    std::optional<CodePtr> next() { return fn_(); }

    /// Materialize the first n codes (fewer when the stream ends early).
    std::vector<CodePtr> take(std::size_t n) {
        std::vector<CodePtr> out;
        while (out.size() < n) {
            auto c = next();
            if (!c) break;
            out.push_back(*c);
        }
        return out;
    }

private:
    std::function<std::optional<CodePtr>()> fn_;
};

namespace detail {

inline CodeStream stream_empty() { return CodeStream(); }

inline CodeStream stream_range(std::uint64_t lo, std::optional<std::uint64_t> end) {
    auto k = std::make_shared<std::uint64_t>(lo);
    return CodeStream([k, end]() -> std::optional<CodePtr> {
        if (end && *k >= *end) return std::nullopt;
        return ElementCode::nat_code((*k)++);
    });
}

inline CodeStream stream_integers() {
    // 0, 1, -1, 2, -2, ...
    auto k = std::make_shared<std::uint64_t>(0);
    return CodeStream([k]() -> std::optional<CodePtr> {
        std::uint64_t i = (*k)++;
        if (i == 0) return ElementCode::int_code(0);
        std::int64_t v = static_cast<std::int64_t>((i + 1) / 2);
        return ElementCode::int_code(i % 2 == 1 ? v : -v);
    });
}

inline CodeStream stream_rationals() {
    // 0, then the Stern-Brocot positives interleaved with their negatives
    struct State {
        bool zero_done = false;
        bool neg_pending = false;
        std::int64_t p = 0, q = 1;
        std::deque<std::pair<std::int64_t, std::int64_t>> queue{{1, 1}};
    };
    auto st = std::make_shared<State>();
    return CodeStream([st]() -> std::optional<CodePtr> {
        if (!st->zero_done) {
            st->zero_done = true;
            return ElementCode::rat_code(0, 1);
        }
        if (st->neg_pending) {
            st->neg_pending = false;
            return ElementCode::rat_code(-st->p, st->q);
        }
        auto [p, q] = st->queue.front();
        st->queue.pop_front();
        st->queue.push_back({p, p + q});
        st->queue.push_back({p + q, q});
        st->p = p;
        st->q = q;
        st->neg_pending = true;
        return ElementCode::rat_code(p, q);
    });
}

/// All canonical Cantor codes, by word length then lexicographically.
inline CodeStream stream_cantor_all() {
    struct State {
        std::size_t len = 0;
        std::uint64_t idx = 0;
    };
    auto st = std::make_shared<State>();
    return CodeStream([st]() -> std::optional<CodePtr> {
        if (st->len == 0) {
            int t = static_cast<int>(st->idx);
            if (++st->idx == 2) {
                st->len = 1;
                st->idx = 0;
            }
            return ElementCode::cantor_code("", t);
        }
        std::string w(st->len, '0');
        for (std::size_t i = 0; i < st->len; ++i)
            if (st->idx >> (st->len - 1 - i) & 1) w[i] = '1';
        int t = w.back() == '1' ? 0 : 1;
        if (++st->idx == (std::uint64_t{1} << st->len)) {
            ++st->len;
            st->idx = 0;
        }
        return ElementCode::cantor_code(w, t);
    });
}

/// Cantor words of length >= 1 with a forced final bit; used for the jump
/// endpoint families (w1, 0) and (w0, 1).
inline CodeStream stream_cantor_forced(char last, int tail) {
    struct State {
        std::size_t plen = 0;
        std::uint64_t idx = 0;
    };
    auto st = std::make_shared<State>();
    return CodeStream([st, last, tail]() -> std::optional<CodePtr> {
        std::string w(st->plen, '0');
        for (std::size_t i = 0; i < st->plen; ++i)
            if (st->idx >> (st->plen - 1 - i) & 1) w[i] = '1';
        w.push_back(last);
        if (++st->idx == (std::uint64_t{1} << st->plen)) {
            ++st->plen;
            st->idx = 0;
        }
        return ElementCode::cantor_code(w, tail);
    });
}

inline CodeStream stream_map(CodeStream inner, std::function<CodePtr(const CodePtr&)> f) {
    auto in = std::make_shared<CodeStream>(std::move(inner));
    return CodeStream([in, f = std::move(f)]() -> std::optional<CodePtr> {
        auto c = in->next();
        if (!c) return std::nullopt;
        return f(*c);
    });
}

inline CodeStream stream_prepend(CodePtr head, CodeStream rest) {
    auto done = std::make_shared<bool>(false);
    auto in = std::make_shared<CodeStream>(std::move(rest));
    return CodeStream([done, head = std::move(head), in]() -> std::optional<CodePtr> {
        if (!*done) {
            *done = true;
            return head;
        }
        return in->next();
    });
}

inline CodeStream stream_filter(CodeStream inner, std::vector<CodePtr> excluded) {
    auto in = std::make_shared<CodeStream>(std::move(inner));
    return CodeStream([in, excluded = std::move(excluded)]() -> std::optional<CodePtr> {
        for (;;) {
            auto c = in->next();
            if (!c) return std::nullopt;
            bool skip = false;
            for (auto& e : excluded)
                if (code_equal(e, *c)) skip = true;
            if (!skip) return c;
        }
    });
}

inline CodeStream stream_interleave(CodeStream sa, CodeStream sb) {
    struct State {
        CodeStream a, b;
        bool turn_a = true;
        bool a_done = false, b_done = false;
    };
    auto st = std::make_shared<State>();
    st->a = std::move(sa);
    st->b = std::move(sb);
    return CodeStream([st]() -> std::optional<CodePtr> {
        for (int tries = 0; tries < 2; ++tries) {
            bool use_a = st->turn_a ? !st->a_done : st->b_done;
            st->turn_a = !st->turn_a;
            if (use_a) {
                if (auto c = st->a.next()) return c;
                st->a_done = true;
            } else {
                if (auto c = st->b.next()) return c;
                st->b_done = true;
            }
        }
        return std::nullopt;
    });
}

/// Breadth-first pairing: spawn one row per index element, then pull one
/// element from every live row per round.
inline CodeStream stream_pairs(CodeStream index, std::function<CodeStream()> make_row) {
    struct Row {
        CodePtr idx;
        CodeStream body;
        bool done = false;
    };
    struct State {
        CodeStream index;
        bool index_done = false;
        std::vector<std::shared_ptr<Row>> rows;
        std::deque<CodePtr> out;
    };
    auto st = std::make_shared<State>();
    st->index = std::move(index);
    return CodeStream([st, make_row]() -> std::optional<CodePtr> {
        for (;;) {
            if (!st->out.empty()) {
                auto c = st->out.front();
                st->out.pop_front();
                return c;
            }
            if (!st->index_done) {
                if (auto i = st->index.next()) {
                    auto r = std::make_shared<Row>();
                    r->idx = *i;
                    r->body = make_row();
                    st->rows.push_back(r);
                } else {
                    st->index_done = true;
                }
            }
            bool any_live = false;
            for (auto& r : st->rows) {
                if (r->done) continue;
                if (auto c = r->body.next()) {
                    st->out.push_back(ElementCode::pair(r->idx, *c));
                    any_live = true;
                } else {
                    r->done = true;
                }
            }
            std::erase_if(st->rows, [](const std::shared_ptr<Row>& r) { return r->done; });
            // Rows come from one factory, so they all produce the same
            // sequence; once a fresh row dies with no survivors, no later
            // row can ever emit.
            if (st->out.empty() && !any_live) return std::nullopt;
        }
    });
}

}  // namespace detail

/// Enumerate every element of a realizable term, term-structurally.
inline CodeStream element_stream(const TermPtr& t) {
    using namespace detail;
    switch (t->kind) {
        case TermKind::Fin: return stream_range(0, t->n);
        case TermKind::Omega: return stream_range(0, std::nullopt);
        case TermKind::Zset: return stream_integers();
        case TermKind::Q: return stream_rationals();
        case TermKind::Cantor: {
            std::vector<CodePtr> excl;
            if (t->cantor_drop_min) excl.push_back(ElementCode::cantor_code("", 0));
            if (t->cantor_drop_max) excl.push_back(ElementCode::cantor_code("", 1));
            auto s = stream_cantor_all();
            return excl.empty() ? s : stream_filter(std::move(s), std::move(excl));
        }
        case TermKind::CardSym: throw CodeError("cannot enumerate a non-realizable term");
        case TermKind::Sum:
            return stream_interleave(stream_map(element_stream(t->a), ElementCode::left),
                                     stream_map(element_stream(t->b), ElementCode::right));
        case TermKind::Reverse: return element_stream(t->a);
        case TermKind::SumOver: {
            TermPtr summand = t->b;
            return stream_pairs(element_stream(t->a),
                                [summand] { return element_stream(summand); });
        }
        case TermKind::DropMin: {
            std::vector<CodePtr> excl;
            if (auto m = min_code(t->a)) excl.push_back(*m);
            return stream_filter(element_stream(t->a), std::move(excl));
        }
        case TermKind::DropMax: {
            std::vector<CodePtr> excl;
            if (auto m = max_code(t->a)) excl.push_back(*m);
            return stream_filter(element_stream(t->a), std::move(excl));
        }
    }
    throw CodeError("element_stream: unknown kind");
}

inline CodeStream jump_left_stream(const TermPtr& t);

/// Enumerate D = the jump right-endpoints of t, term-structurally.
inline CodeStream jump_right_stream(const TermPtr& t) {
    using namespace detail;
    switch (t->kind) {
        case TermKind::Fin:
            return t->n >= 2 ? stream_range(1, t->n) : stream_empty();
        case TermKind::Omega: return stream_range(1, std::nullopt);
        case TermKind::Zset: return stream_integers();
        case TermKind::Q: return stream_empty();
        case TermKind::Cantor:
            // right endpoints of removed middle thirds: (w1, 0)
            return stream_cantor_forced('1', 0);
        case TermKind::CardSym: throw CodeError("cannot enumerate a non-realizable term");
        case TermKind::Sum: {
            CodeStream bside = stream_map(jump_right_stream(t->b), ElementCode::right);
            if (term_has_max(t->a) && term_has_min(t->b)) {
                auto mb = min_code(t->b);
                if (mb) bside = stream_prepend(ElementCode::right(*mb), std::move(bside));
            }
            return stream_interleave(stream_map(jump_right_stream(t->a), ElementCode::left),
                                     std::move(bside));
        }
        case TermKind::Reverse: return jump_left_stream(t->a);
        case TermKind::SumOver: {
            TermPtr summand = t->b;
            CodeStream per_copy =
                stream_pairs(element_stream(t->a), [summand] { return jump_right_stream(summand); });
            if (term_has_max(t->b) && term_has_min(t->b) && min_code(t->b)) {
                // junction between consecutive copies: the next copy's minimum
                CodePtr mn = *min_code(t->b);
                CodeStream junctions = stream_map(
                    jump_right_stream(t->a),
                    [mn](const CodePtr& i) { return ElementCode::pair(i, mn); });
                return stream_interleave(std::move(per_copy), std::move(junctions));
            }
            return per_copy;
        }
        case TermKind::DropMin: {
            // the old minimum's jump successor loses its partner
            std::vector<CodePtr> excl;
            if (auto m = min_code(t->a))
                if (auto s = jump_succ_opt(t->a, *m)) excl.push_back(*s);
            return stream_filter(jump_right_stream(t->a), std::move(excl));
        }
        case TermKind::DropMax: {
            std::vector<CodePtr> excl;
            if (auto m = max_code(t->a)) excl.push_back(*m);
            return stream_filter(jump_right_stream(t->a), std::move(excl));
        }
    }
    throw CodeError("jump_right_stream: unknown kind");
}

/// Enumerate the jump left-endpoints of t (= D of the reversed order).
inline CodeStream jump_left_stream(const TermPtr& t) {
    using namespace detail;
    switch (t->kind) {
        case TermKind::Fin:
            return t->n >= 2 ? stream_range(0, t->n - 1) : stream_empty();
        case TermKind::Omega: return stream_range(0, std::nullopt);
        case TermKind::Zset: return stream_integers();
        case TermKind::Q: return stream_empty();
        case TermKind::Cantor:
            return stream_cantor_forced('0', 1);
        case TermKind::CardSym: throw CodeError("cannot enumerate a non-realizable term");
        case TermKind::Sum: {
            CodeStream aside = stream_map(jump_left_stream(t->a), ElementCode::left);
            if (term_has_max(t->a) && term_has_min(t->b)) {
                auto ma = max_code(t->a);
                if (ma) aside = stream_prepend(ElementCode::left(*ma), std::move(aside));
            }
            return stream_interleave(std::move(aside),
                                     stream_map(jump_left_stream(t->b), ElementCode::right));
        }
        case TermKind::Reverse: return jump_right_stream(t->a);
        case TermKind::SumOver: {
            TermPtr summand = t->b;
            CodeStream per_copy =
                stream_pairs(element_stream(t->a), [summand] { return jump_left_stream(summand); });
            if (term_has_max(t->b) && term_has_min(t->b) && max_code(t->b)) {
                CodePtr mx = *max_code(t->b);
                CodeStream junctions = stream_map(
                    jump_left_stream(t->a),
                    [mx](const CodePtr& i) { return ElementCode::pair(i, mx); });
                return stream_interleave(std::move(per_copy), std::move(junctions));
            }
            return per_copy;
        }
        case TermKind::DropMax: {
            std::vector<CodePtr> excl;
            if (auto m = max_code(t->a))
                if (auto p = jump_pred_opt(t->a, *m)) excl.push_back(*p);
            return stream_filter(jump_left_stream(t->a), std::move(excl));
        }
        case TermKind::DropMin: {
            std::vector<CodePtr> excl;
            if (auto m = min_code(t->a)) excl.push_back(*m);
            return stream_filter(jump_left_stream(t->a), std::move(excl));
        }
    }
    throw CodeError("jump_left_stream: unknown kind");
}

}  // namespace ordercalc
