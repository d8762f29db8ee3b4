#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "ordercalc/cardinals.hpp"

namespace ordercalc {

struct TermError : OrdercalcError {
    using OrdercalcError::OrdercalcError;
};

enum class TermKind {
    Fin,      // finite order 0..n-1
    Omega,    // the natural numbers
    Zset,     // the integers
    Q,        // the rationals
    Cantor,   // order type of the Cantor ternary set (trim flags in normal form)
    CardSym,  // a declared cardinal, taken as an ordinal order type
    Sum,      // left part followed by right part
    Reverse,
    SumOver,  // SumOver(index, summand): one copy of summand per index point
    DropMin,
    DropMax,
};

class OrderTerm;
using TermPtr = std::shared_ptr<const OrderTerm>;

/**
 * Immutable order-type term.  Public ASTs are exactly what the grammar
 * produces; attribute computation first rewrites them into a normal form
 * (no DropMin/DropMax nodes except as trim flags on Cantor, no empty Sum
 * sides, no singleton SumOver).
 */
class OrderTerm : public std::enable_shared_from_this<OrderTerm> {
public:
    TermKind kind;
    std::uint64_t n = 0;                 // Fin
    bool cantor_drop_min = false;        // Cantor, normal form only
    bool cantor_drop_max = false;
    std::optional<Card> sym;             // CardSym
    TermPtr a, b;                        // children

    static TermPtr fin(std::uint64_t n) {
        auto t = std::make_shared<OrderTerm>();
        t->kind = TermKind::Fin;
        t->n = n;
        return t;
    }
    static TermPtr omega() { return atom(TermKind::Omega); }
    static TermPtr zset() { return atom(TermKind::Zset); }
    static TermPtr rationals() { return atom(TermKind::Q); }
    static TermPtr cantor(bool drop_min = false, bool drop_max = false) {
        auto t = std::make_shared<OrderTerm>();
        t->kind = TermKind::Cantor;
        t->cantor_drop_min = drop_min;
        t->cantor_drop_max = drop_max;
        return t;
    }
    static TermPtr card_sym(Card c) {
        if (c.is_fin()) throw TermError("fin is a size marker, not an order type");
        auto t = std::make_shared<OrderTerm>();
        t->kind = TermKind::CardSym;
        t->sym = std::move(c);
        return t;
    }
    static TermPtr sum(TermPtr lhs, TermPtr rhs) { return node(TermKind::Sum, std::move(lhs), std::move(rhs)); }
    static TermPtr reverse(TermPtr x) { return node(TermKind::Reverse, std::move(x), nullptr); }
    static TermPtr sum_over(TermPtr index, TermPtr summand) {
        return node(TermKind::SumOver, std::move(index), std::move(summand));
    }
    static TermPtr drop_min(TermPtr x) { return node(TermKind::DropMin, std::move(x), nullptr); }
    static TermPtr drop_max(TermPtr x) { return node(TermKind::DropMax, std::move(x), nullptr); }

private:
    static TermPtr atom(TermKind k) {
        auto t = std::make_shared<OrderTerm>();
        t->kind = k;
        return t;
    }
    static TermPtr node(TermKind k, TermPtr x, TermPtr y) {
        auto t = std::make_shared<OrderTerm>();
        t->kind = k;
        t->a = std::move(x);
        t->b = std::move(y);
        return t;
    }
};

inline bool term_equal(const TermPtr& s, const TermPtr& t) {
    if (s == t) return true;
    if (!s || !t) return false;
    if (s->kind != t->kind || s->n != t->n || s->cantor_drop_min != t->cantor_drop_min ||
        s->cantor_drop_max != t->cantor_drop_max)
        return false;
    if (s->sym.has_value() != t->sym.has_value()) return false;
    if (s->sym && !(*s->sym == *t->sym)) return false;
    return term_equal(s->a, t->a) && term_equal(s->b, t->b);
}

/// True when the term denotes the empty order (normal form: Fin(0)).
inline bool nf_is_empty(const TermPtr& t) { return t->kind == TermKind::Fin && t->n == 0; }

/// Exact size when finite, nullopt when infinite.  Normal-form terms only.
inline std::optional<std::uint64_t> nf_finite_size(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Fin: return t->n;
        case TermKind::Omega:
        case TermKind::Zset:
        case TermKind::Q:
        case TermKind::Cantor:
        case TermKind::CardSym: return std::nullopt;
        case TermKind::Sum: {
            auto x = nf_finite_size(t->a), y = nf_finite_size(t->b);
            if (x && y) return *x + *y;
            return std::nullopt;
        }
        case TermKind::Reverse: return nf_finite_size(t->a);
        case TermKind::SumOver: {
            auto x = nf_finite_size(t->a), y = nf_finite_size(t->b);
            if (x && y) return *x * *y;
            return std::nullopt;
        }
        default: throw TermError("nf_finite_size: term not in normal form");
    }
}

inline bool nf_has_max(const TermPtr& t);

inline bool nf_has_min(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Fin: return t->n > 0;
        case TermKind::Omega: return true;
        case TermKind::Zset:
        case TermKind::Q: return false;
        case TermKind::Cantor: return !t->cantor_drop_min;
        case TermKind::CardSym: return true;
        case TermKind::Sum: return nf_has_min(t->a);
        case TermKind::Reverse: return nf_has_max(t->a);
        case TermKind::SumOver: return nf_has_min(t->a) && nf_has_min(t->b);
        default: throw TermError("nf_has_min: term not in normal form");
    }
}

inline bool nf_has_max(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Fin: return t->n > 0;
        case TermKind::Omega: return false;
        case TermKind::Zset:
        case TermKind::Q: return false;
        case TermKind::Cantor: return !t->cantor_drop_max;
        case TermKind::CardSym: return false;
        case TermKind::Sum: return nf_has_max(t->b);
        case TermKind::Reverse: return nf_has_min(t->a);
        case TermKind::SumOver: return nf_has_max(t->a) && nf_has_max(t->b);
        default: throw TermError("nf_has_max: term not in normal form");
    }
}

namespace detail {
inline TermPtr normalize_drop_min(const TermPtr& t);
inline TermPtr normalize_drop_max(const TermPtr& t);
}  // namespace detail

/**
 * Rewrite into normal form: empty sides of Sum vanish, SumOver with a
 * singleton index or summand collapses to the other operand, and
 * DropMin/DropMax distribute down to atoms (on Cantor they become trim
 * flags; elsewhere the atom absorbs or rejects them).  Throws TermError
 * when a Drop is applied to an order without the corresponding endpoint.
 */
inline TermPtr normalize(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Fin:
        case TermKind::Omega:
        case TermKind::Zset:
        case TermKind::Q:
        case TermKind::Cantor:
        case TermKind::CardSym: return t;
        case TermKind::Sum: {
            auto x = normalize(t->a), y = normalize(t->b);
            if (nf_is_empty(x)) return y;
            if (nf_is_empty(y)) return x;
            return OrderTerm::sum(x, y);
        }
        case TermKind::Reverse: {
            auto x = normalize(t->a);
            if (nf_is_empty(x)) return x;
            if (x->kind == TermKind::Reverse) return x->a;
            return OrderTerm::reverse(x);
        }
        case TermKind::SumOver: {
            auto i = normalize(t->a), s = normalize(t->b);
            if (nf_is_empty(i) || nf_is_empty(s)) return OrderTerm::fin(0);
            auto szi = nf_finite_size(i), szs = nf_finite_size(s);
            if (szs && *szs == 1) return i;
            if (szi && *szi == 1) return s;
            return OrderTerm::sum_over(i, s);
        }
        case TermKind::DropMin: return detail::normalize_drop_min(normalize(t->a));
        case TermKind::DropMax: return detail::normalize_drop_max(normalize(t->a));
    }
    throw TermError("normalize: unknown kind");
}

namespace detail {

inline TermPtr normalize_drop_min(const TermPtr& t) {
    if (nf_is_empty(t)) throw TermError("dropmin on the empty order");
    if (!nf_has_min(t)) throw TermError("dropmin: operand has no minimum");
    switch (t->kind) {
        case TermKind::Fin: return OrderTerm::fin(t->n - 1);
        case TermKind::Omega: return t;
        case TermKind::CardSym: return t;  // x minus its least point is still of type x
        case TermKind::Cantor: return OrderTerm::cantor(true, t->cantor_drop_max);
        case TermKind::Sum: {
            auto da = normalize_drop_min(t->a);
            if (nf_is_empty(da)) return t->b;
            return OrderTerm::sum(da, t->b);
        }
        case TermKind::Reverse: {
            auto dx = normalize_drop_max(t->a);
            if (nf_is_empty(dx)) return dx;
            return normalize(OrderTerm::reverse(dx));
        }
        case TermKind::SumOver: {
            // remove the minimum of the first copy
            auto ds = normalize_drop_min(t->b);
            auto di = normalize_drop_min(t->a);
            auto rest = normalize(OrderTerm::sum_over(di, t->b));
            if (nf_is_empty(ds)) return rest;
            return OrderTerm::sum(ds, rest);
        }
        default: throw TermError("normalize_drop_min: unexpected kind");
    }
}

inline TermPtr normalize_drop_max(const TermPtr& t) {
    if (nf_is_empty(t)) throw TermError("dropmax on the empty order");
    if (!nf_has_max(t)) throw TermError("dropmax: operand has no maximum");
    switch (t->kind) {
        case TermKind::Fin: return OrderTerm::fin(t->n - 1);
        case TermKind::Cantor: return OrderTerm::cantor(t->cantor_drop_min, true);
        case TermKind::Sum: {
            auto db = normalize_drop_max(t->b);
            if (nf_is_empty(db)) return t->a;
            return OrderTerm::sum(t->a, db);
        }
        case TermKind::Reverse: {
            auto dx = normalize_drop_min(t->a);
            if (nf_is_empty(dx)) return dx;
            return normalize(OrderTerm::reverse(dx));
        }
        case TermKind::SumOver: {
            auto ds = normalize_drop_max(t->b);
            auto di = normalize_drop_max(t->a);
            auto rest = normalize(OrderTerm::sum_over(di, t->b));
            if (nf_is_empty(ds)) return rest;
            return OrderTerm::sum(rest, ds);
        }
        default: throw TermError("normalize_drop_max: unexpected kind");
    }
}

}  // namespace detail

/// A term is realizable when it mentions no cardinal symbol: every point
/// of it then has a finitary code.
inline bool realizable(const TermPtr& t) {
    if (!t) return true;
    if (t->kind == TermKind::CardSym) return false;
    return realizable(t->a) && realizable(t->b);
}

/// Every CardSym in t must live in `chain`.
inline void validate_term_chain(const TermPtr& t, const ChainPtr& chain) {
    if (!t) return;
    if (t->kind == TermKind::CardSym && t->sym->chain() != chain)
        throw ChainMismatchError("term mentions a symbol from another cardinal chain");
    validate_term_chain(t->a, chain);
    validate_term_chain(t->b, chain);
}

/// Symbolic cardinality.  nullopt when the value mixes the continuum with
/// declared symbols and the chain does not order them.
inline std::optional<Card> card_of(const TermPtr& term, const ChainPtr& chain) {
    validate_term_chain(term, chain);
    auto rec = [&chain](auto&& self, const TermPtr& t) -> std::optional<Card> {
        switch (t->kind) {
            case TermKind::Fin: return Card::fin(chain);
            case TermKind::Omega:
            case TermKind::Zset:
            case TermKind::Q: return Card::aleph0(chain);
            case TermKind::Cantor: return Card::continuum(chain);
            case TermKind::CardSym: return *t->sym;
            case TermKind::Sum:
            case TermKind::SumOver: return max_card(self(self, t->a), self(self, t->b));
            case TermKind::Reverse:
            case TermKind::DropMin:
            case TermKind::DropMax: return self(self, t->a);
        }
        throw TermError("card_of: unknown kind");
    };
    return rec(rec, normalize(term));
}

namespace detail {
inline std::string render_factor(const TermPtr& t);
}

/// Print in the concrete grammar; parse(render(t)) reproduces t.
inline std::string render(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Sum: {
            // '+' is left-associative, so a right-nested sum needs parens
            std::string lhs = render(t->a);
            std::string rhs = t->b->kind == TermKind::Sum ? "(" + render(t->b) + ")" : render(t->b);
            return lhs + " + " + rhs;
        }
        case TermKind::Reverse: return detail::render_factor(t->a) + "*";
        default: return detail::render_factor(t);
    }
}

namespace detail {
inline std::string render_factor(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Fin: return std::to_string(t->n);
        case TermKind::Omega: return "w";
        case TermKind::Zset: return "Z";
        case TermKind::Q: return "Q";
        case TermKind::Cantor: {
            std::string s = "C";
            if (t->cantor_drop_max) s = "dropmax(" + s + ")";
            if (t->cantor_drop_min) s = "dropmin(" + s + ")";
            return s;
        }
        case TermKind::CardSym: return t->sym->name();
        case TermKind::SumOver: return "Sum[" + render(t->a) + "; " + render(t->b) + "]";
        case TermKind::DropMin: return "dropmin(" + render(t->a) + ")";
        case TermKind::DropMax: return "dropmax(" + render(t->a) + ")";
        case TermKind::Sum:
        case TermKind::Reverse: return "(" + render(t) + ")";
    }
    throw TermError("render: unknown kind");
}
}  // namespace detail

}  // namespace ordercalc
