#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ordercalc/cardinals.hpp"
#include "ordercalc/terms.hpp"

namespace ordercalc {

struct InvalidTargetError : OrdercalcError {
    using OrdercalcError::OrdercalcError;
};

/// Saturating jump counter: exact while finite, else "infinitely many".
struct JumpCount {
    bool infinite = false;
    std::uint64_t n = 0;

    static JumpCount inf() { return {true, 0}; }
    static JumpCount of(std::uint64_t k) { return {false, k}; }
    bool any() const { return infinite || n > 0; }

    JumpCount operator+(const JumpCount& o) const {
        if (infinite || o.infinite) return inf();
        if (n > std::numeric_limits<std::uint64_t>::max() - o.n) return inf();
        return of(n + o.n);
    }
};

/**
 * Computed order attributes.
 *
 * left_complete: every cut's lower part has a maximum.  right_complete:
 * every cut's upper part has a minimum.  dedekind_complete tracks the
 * per-cut disjunction and is weaker than either (the Cantor order is
 * Dedekind-complete with both one-sided flags false).
 *
 * Four segment profiles are kept beyond the two weight profiles: the
 * cardinalities of all proper nonempty downward/upward closed subsets
 * (card_init / card_fin, which is what the initial-segment chain Init(L)
 * meets), and of the open point-cuts (-inf,a) / (a,inf), which the
 * indexed-sum recursion consumes.
 */
struct Attrs {
    ChainPtr chain;
    bool is_empty = true;
    bool has_min = false, has_max = false;
    bool min_has_succ = false, max_has_pred = false;
    bool left_complete = true, right_complete = true;
    bool dedekind_complete = true;
    bool dense_jumps = true;
    JumpCount jumps;
    std::optional<Card> weight;  // nullopt: incomparable mix of continuum and symbols
    std::optional<Card> card;
    std::optional<std::uint64_t> finite_size;
    WeightSet w_init, w_fin;
    WeightSet card_init, card_fin;
    WeightSet card_init_open, card_fin_open;

    bool weakly_boolean() const { return dedekind_complete && dense_jumps; }
    bool boolean() const { return weakly_boolean() && has_min && has_max; }
};

namespace detail {

inline WeightSet lift_opt(const std::optional<Card>& c, const WeightSet& v, const ChainPtr& chain) {
    if (!c) return WeightSet::indeterminate_set(chain);
    return ws_lift_max(*c, v);
}

inline WeightSet point_opt(const std::optional<Card>& c, const ChainPtr& chain) {
    if (!c) return WeightSet::indeterminate_set(chain);
    return WeightSet::point(*c);
}

inline Attrs attrs_empty(const ChainPtr& chain) {
    Attrs r;
    r.chain = chain;
    r.weight = Card::fin(chain);
    r.card = Card::fin(chain);
    r.finite_size = 0;
    r.w_init = r.w_fin = r.card_init = r.card_fin = WeightSet::empty(chain);
    r.card_init_open = r.card_fin_open = WeightSet::empty(chain);
    return r;
}

inline Attrs attrs_reverse(Attrs a) {
    std::swap(a.has_min, a.has_max);
    std::swap(a.min_has_succ, a.max_has_pred);
    std::swap(a.left_complete, a.right_complete);
    std::swap(a.w_init, a.w_fin);
    std::swap(a.card_init, a.card_fin);
    std::swap(a.card_init_open, a.card_fin_open);
    return a;
}

inline Attrs attrs_sum(const Attrs& a, const Attrs& b, const ChainPtr& chain) {
    Attrs r;
    r.chain = chain;
    r.is_empty = false;
    r.has_min = a.has_min;
    r.min_has_succ = (a.finite_size && *a.finite_size == 1) ? b.has_min : a.min_has_succ;
    r.has_max = b.has_max;
    r.max_has_pred = (b.finite_size && *b.finite_size == 1) ? a.has_max : b.max_has_pred;
    r.left_complete = a.left_complete && b.left_complete && a.has_max;
    r.right_complete = a.right_complete && b.right_complete && b.has_min;
    r.dedekind_complete = a.dedekind_complete && b.dedekind_complete && (a.has_max || b.has_min);
    // The junction never breaks jump density: a crossing interval [x,y]
    // either contains a second point on one side (a jump there by the
    // side's own density) or is exactly the junction pair, itself a jump.
    r.dense_jumps = a.dense_jumps && b.dense_jumps;
    r.jumps = a.jumps + b.jumps + JumpCount::of(a.has_max && b.has_min ? 1 : 0);
    r.weight = max_card(a.weight, b.weight);
    r.card = max_card(a.card, b.card);
    if (a.finite_size && b.finite_size) r.finite_size = *a.finite_size + *b.finite_size;
    r.w_init = ws_join(a.w_init, lift_opt(a.weight, b.w_init, chain));
    r.w_fin = ws_join(lift_opt(b.weight, a.w_fin, chain), b.w_fin);
    r.card_init =
        ws_join(ws_join(a.card_init, point_opt(a.card, chain)), lift_opt(a.card, b.card_init, chain));
    r.card_fin =
        ws_join(ws_join(lift_opt(b.card, a.card_fin, chain), point_opt(b.card, chain)), b.card_fin);
    r.card_init_open = ws_join(a.card_init_open, lift_opt(a.card, b.card_init_open, chain));
    if (b.has_min) r.card_init_open = ws_join(r.card_init_open, point_opt(a.card, chain));
    r.card_fin_open = ws_join(b.card_fin_open, lift_opt(b.card, a.card_fin_open, chain));
    if (a.has_max) r.card_fin_open = ws_join(r.card_fin_open, point_opt(b.card, chain));
    return r;
}

/// Indexed sum with a constant summand; normal form guarantees at least
/// two index points and a summand with at least two points.
inline Attrs attrs_sum_over(const Attrs& i, const Attrs& t, const ChainPtr& chain) {
    Attrs r;
    r.chain = chain;
    r.is_empty = false;
    r.has_min = i.has_min && t.has_min;
    r.min_has_succ = t.min_has_succ;
    r.has_max = i.has_max && t.has_max;
    r.max_has_pred = t.max_has_pred;
    r.dense_jumps = t.dense_jumps;
    // Index-level cuts survive as cuts between copies; which endpoint the
    // summand offers decides whether they stay resolved.
    r.dedekind_complete = i.dedekind_complete && t.dedekind_complete &&
                          (i.left_complete || t.has_min) && (i.right_complete || t.has_max) &&
                          (!i.jumps.any() || t.has_max || t.has_min);
    r.left_complete = t.left_complete && i.left_complete && t.has_max;
    r.right_complete = t.right_complete && i.right_complete && t.has_min;
    if (i.finite_size) {
        JumpCount per_copy = t.jumps;
        JumpCount total = JumpCount::of(0);
        for (std::uint64_t k = 0; k < *i.finite_size && !total.infinite; ++k)
            total = total + per_copy;
        r.jumps = total;
    } else {
        r.jumps = t.jumps.any() ? JumpCount::inf() : JumpCount::of(0);
    }
    if (t.has_max && t.has_min) r.jumps = r.jumps + i.jumps;
    r.weight = max_card(i.card, t.weight);
    r.card = max_card(i.card, t.card);
    if (i.finite_size && t.finite_size) r.finite_size = *i.finite_size * *t.finite_size;
    r.w_init = lift_opt(t.weight, i.card_init_open, chain);
    if (i.has_min) r.w_init = ws_join(r.w_init, t.w_init);
    r.w_fin = lift_opt(t.weight, i.card_fin_open, chain);
    if (i.has_max) r.w_fin = ws_join(r.w_fin, t.w_fin);
    r.card_init = lift_opt(t.card, i.card_init, chain);
    if (i.has_min) r.card_init = ws_join(r.card_init, t.card_init);
    r.card_fin = lift_opt(t.card, i.card_fin, chain);
    if (i.has_max) r.card_fin = ws_join(r.card_fin, t.card_fin);
    r.card_init_open = lift_opt(t.card, i.card_init_open, chain);
    if (i.has_min) r.card_init_open = ws_join(r.card_init_open, t.card_init_open);
    r.card_fin_open = lift_opt(t.card, i.card_fin_open, chain);
    if (i.has_max) r.card_fin_open = ws_join(r.card_fin_open, t.card_fin_open);
    return r;
}

inline Attrs attrs_atom(const TermPtr& t, const ChainPtr& chain) {
    Attrs r;
    r.chain = chain;
    r.is_empty = false;
    auto fin = Card::fin(chain);
    auto aleph0 = Card::aleph0(chain);
    switch (t->kind) {
        case TermKind::Fin: {
            r.has_min = r.has_max = true;
            r.min_has_succ = r.max_has_pred = t->n >= 2;
            r.jumps = JumpCount::of(t->n - 1);
            r.weight = r.card = fin;
            r.finite_size = t->n;
            r.w_init = r.w_fin = WeightSet::point(fin);
            r.card_init = r.card_fin = t->n >= 2 ? WeightSet::point(fin) : WeightSet::empty(chain);
            r.card_init_open = r.card_fin_open = r.card_init;
            return r;
        }
        case TermKind::Omega: {
            r.has_min = true;
            r.min_has_succ = true;
            r.jumps = JumpCount::inf();
            r.weight = r.card = aleph0;
            r.w_init = WeightSet::point(fin);
            r.w_fin = WeightSet::point(aleph0);
            r.card_init = r.card_init_open = WeightSet::point(fin);
            r.card_fin = r.card_fin_open = WeightSet::point(aleph0);
            return r;
        }
        case TermKind::Zset: {
            r.jumps = JumpCount::inf();
            r.weight = r.card = aleph0;
            r.w_init = r.w_fin = WeightSet::point(aleph0);
            r.card_init = r.card_fin = WeightSet::point(aleph0);
            r.card_init_open = r.card_fin_open = WeightSet::point(aleph0);
            return r;
        }
        case TermKind::Q: {
            r.left_complete = r.right_complete = r.dedekind_complete = false;
            r.dense_jumps = false;
            r.jumps = JumpCount::of(0);
            r.weight = r.card = aleph0;
            r.w_init = r.w_fin = WeightSet::point(aleph0);
            r.card_init = r.card_fin = WeightSet::point(aleph0);
            r.card_init_open = r.card_fin_open = WeightSet::point(aleph0);
            return r;
        }
        case TermKind::Cantor: {
            auto continuum = Card::continuum(chain);
            r.has_min = !t->cantor_drop_min;
            r.has_max = !t->cantor_drop_max;
            r.min_has_succ = false;  // 0 is approached from the right inside C
            r.max_has_pred = false;
            r.left_complete = r.right_complete = false;
            r.dedekind_complete = true;  // every cut of a trimmed C stays resolved
            r.jumps = JumpCount::inf();
            r.weight = aleph0;
            r.card = continuum;
            r.w_init = t->cantor_drop_min
                           ? WeightSet::point(aleph0)
                           : ws_join(WeightSet::point(fin), WeightSet::point(aleph0));
            r.w_fin = t->cantor_drop_max
                          ? WeightSet::point(aleph0)
                          : ws_join(WeightSet::point(fin), WeightSet::point(aleph0));
            r.card_init = t->cantor_drop_min
                              ? WeightSet::point(continuum)
                              : ws_join(WeightSet::point(fin), WeightSet::point(continuum));
            r.card_fin = t->cantor_drop_max
                             ? WeightSet::point(continuum)
                             : ws_join(WeightSet::point(fin), WeightSet::point(continuum));
            r.card_init_open = r.card_fin_open = WeightSet::point(continuum);
            return r;
        }
        case TermKind::CardSym: {
            const Card& x = *t->sym;
            r.has_min = true;
            r.min_has_succ = true;
            // only the cut below a limit ordinal lacks a lower maximum, and
            // those exist exactly above aleph0
            r.left_complete = x.pos() == CardinalChain::kAleph0;
            r.jumps = JumpCount::inf();
            r.weight = r.card = x;
            r.w_init = WeightSet::below(x);
            r.w_fin = WeightSet::point(x);
            r.card_init = r.card_init_open = WeightSet::below(x);
            r.card_fin = r.card_fin_open = WeightSet::point(x);
            return r;
        }
        default: throw TermError("attrs_atom: not an atom");
    }
}

inline Attrs attrs_rec(const TermPtr& t, const ChainPtr& chain) {
    switch (t->kind) {
        case TermKind::Fin:
            if (t->n == 0) return attrs_empty(chain);
            [[fallthrough]];
        case TermKind::Omega:
        case TermKind::Zset:
        case TermKind::Q:
        case TermKind::Cantor:
        case TermKind::CardSym: return attrs_atom(t, chain);
        case TermKind::Sum: return attrs_sum(attrs_rec(t->a, chain), attrs_rec(t->b, chain), chain);
        case TermKind::Reverse: return attrs_reverse(attrs_rec(t->a, chain));
        case TermKind::SumOver:
            return attrs_sum_over(attrs_rec(t->a, chain), attrs_rec(t->b, chain), chain);
        default: throw TermError("attrs_rec: term not in normal form");
    }
}

}  // namespace detail

/// Full attribute computation.  Throws TermError when a DropMin/DropMax is
/// applied to an operand without the corresponding endpoint.
inline Attrs attrs(const TermPtr& t, const ChainPtr& chain) {
    validate_term_chain(t, chain);
    return detail::attrs_rec(normalize(t), chain);
}

struct VerdictFailure {
    std::string condition;
    std::string expected;
    std::string actual;
};

/**
 * Outcome of measuring a term against one of the characterization
 * theorems.  case_matched is "a", "b", "c" (split-family cases), "omega"
 * (countable family) or "none".
 */
struct Verdict {
    std::string case_matched = "none";
    bool passed = false;
    std::vector<VerdictFailure> failures;
};

namespace detail {

inline void check_weakly_boolean(const Attrs& a, std::vector<VerdictFailure>& fails) {
    if (!a.dedekind_complete)
        fails.push_back({"dedekind_complete", "true", "false"});
    if (!a.dense_jumps) fails.push_back({"dense_jumps", "true", "false"});
}

inline void check_profile(const char* cond, const WeightSet& actual, const Card& required,
                          std::vector<VerdictFailure>& fails) {
    // exact singleton equality: the theorems demand the weight at *every*
    // point, so a profile merely containing the value is not enough
    if (!actual.is_singleton(required)) {
        fails.push_back({cond, WeightSet::point(required).to_string(), actual.to_string()});
    }
}

}  // namespace detail

/**
 * Decide which of the three split-family cases (kappa, lambda, mu) selects
 * and whether t matches it: weakly Boolean with the exact required
 * initial/final weight profiles.  Preconditions on the target are hard
 * errors, not verdict failures.
 */
inline Verdict characterize(const TermPtr& t, const ChainPtr& chain, const Card& kappa,
                            const Card& lambda, const Card& mu) {
    for (const Card* c : {&kappa, &lambda, &mu}) {
        if (c->chain() != chain) throw ChainMismatchError("target cards from another chain");
        if (c->is_fin()) throw InvalidTargetError("target cardinals must be infinite");
    }
    auto cl = compare_cards(lambda, kappa);
    auto cm = compare_cards(mu, kappa);
    if (cl == std::partial_ordering::unordered || cm == std::partial_ordering::unordered)
        throw InvalidTargetError("target cardinals are incomparable");
    if (cl == std::partial_ordering::greater || cm == std::partial_ordering::greater)
        throw InvalidTargetError("kappa must be the maximum of lambda and mu");
    const bool l_eq = cl == std::partial_ordering::equivalent;
    const bool m_eq = cm == std::partial_ordering::equivalent;
    if (!l_eq && !m_eq)
        throw InvalidTargetError("lambda or mu must equal kappa when kappa = lambda + mu");

    Attrs a = attrs(t, chain);
    Verdict v;
    detail::check_weakly_boolean(a, v.failures);
    if (l_eq && m_eq) {
        v.case_matched = "a";
        detail::check_profile("w_init", a.w_init, kappa, v.failures);
        detail::check_profile("w_fin", a.w_fin, kappa, v.failures);
    } else if (!l_eq) {
        v.case_matched = "b";
        detail::check_profile("w_init", a.w_init, lambda, v.failures);
        detail::check_profile("w_fin", a.w_fin, successor_card(lambda), v.failures);
    } else {
        v.case_matched = "c";
        detail::check_profile("w_init", a.w_init, successor_card(mu), v.failures);
        detail::check_profile("w_fin", a.w_fin, mu, v.failures);
    }
    v.passed = v.failures.empty();
    return v;
}

/**
 * The countable-family criterion: weakly Boolean, no end-points, and
 * real-embeddable, the last being equivalent to weight <= aleph0.
 */
inline Verdict characterize_omega(const TermPtr& t, const ChainPtr& chain) {
    Attrs a = attrs(t, chain);
    Verdict v;
    v.case_matched = "omega";
    detail::check_weakly_boolean(a, v.failures);
    if (a.has_min) v.failures.push_back({"has_min", "false", "true"});
    if (a.has_max) v.failures.push_back({"has_max", "false", "true"});
    if (!a.weight) {
        v.failures.push_back({"r_embeddable", "weight <= aleph0", "indeterminate weight"});
    } else {
        auto c = compare_cards(*a.weight, Card::aleph0(chain));
        if (c == std::partial_ordering::greater || c == std::partial_ordering::unordered)
            v.failures.push_back({"r_embeddable", "weight <= aleph0", a.weight->name()});
    }
    v.passed = v.failures.empty();
    return v;
}

/// Does some downward-closed set split t into two pieces of full cardinality?
inline bool has_bisection(const TermPtr& term, const ChainPtr& chain) {
    TermPtr nt = normalize(term);
    auto eq = [](const std::optional<Card>& a, const std::optional<Card>& b) {
        if (!a || !b) throw InvalidTargetError("indeterminate cardinality");
        return compare_cards(*a, *b) == std::partial_ordering::equivalent;
    };
    auto rec = [&](auto&& self, const TermPtr& t) -> bool {
        switch (t->kind) {
            case TermKind::Fin: return t->n >= 2;
            case TermKind::Omega: return false;
            case TermKind::Zset:
            case TermKind::Q:
            case TermKind::Cantor: return true;
            case TermKind::CardSym: return false;  // proper initial segments are smaller
            case TermKind::Reverse: return self(self, t->a);
            case TermKind::Sum: {
                Attrs aa = detail::attrs_rec(t->a, chain);
                Attrs ab = detail::attrs_rec(t->b, chain);
                auto cardL = max_card(aa.card, ab.card);
                if (!cardL) throw InvalidTargetError("indeterminate cardinality");
                bool a_full = eq(aa.card, cardL);
                bool b_full = eq(ab.card, cardL);
                if (a_full && ((aa.card_init.contains(*cardL) && b_full) || self(self, t->a)))
                    return true;
                if (a_full && b_full) return true;
                if (b_full && ((a_full && ab.card_fin.contains(*cardL)) || self(self, t->b)))
                    return true;
                return false;
            }
            case TermKind::SumOver: {
                Attrs ai = detail::attrs_rec(t->a, chain);
                Attrs at = detail::attrs_rec(t->b, chain);
                auto cardL = max_card(ai.card, at.card);
                if (!cardL) throw InvalidTargetError("indeterminate cardinality");
                if (eq(at.card, cardL)) return true;  // cut anywhere between copies
                return self(self, t->a);
            }
            default: throw TermError("has_bisection: term not in normal form");
        }
    };
    if (nf_is_empty(nt)) return false;
    return rec(rec, nt);
}

/**
 * Which split classes the chain of all initial segments of t meets, after
 * relabeling t onto kappa by a bijection.  Labels: "[c]" for segments
 * smaller than kappa (complement automatically full), "[k|c]" for full
 * segments with complement c, with fin rendered "<w" and aleph0 "w".
 */
inline std::vector<std::string> init_class_profile(const TermPtr& t, const ChainPtr& chain,
                                                   const Card& kappa) {
    if (kappa.is_fin()) throw InvalidTargetError("kappa must be infinite");
    auto c = card_of(t, chain);
    if (!c || compare_cards(*c, kappa) != std::partial_ordering::equivalent)
        throw InvalidTargetError("term cardinality does not match kappa");

    Attrs a = attrs(t, chain);
    auto label_of = [&](const Card& c) -> std::string {
        if (c.is_continuum_side()) return "continuum";
        if (c.pos() == CardinalChain::kFin) return "<w";
        if (c.pos() == CardinalChain::kAleph0) return "w";
        return c.name();
    };
    const std::string klabel = label_of(kappa);
    std::vector<std::string> out;
    auto add = [&](const std::string& s) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    };
    auto side = [&](const WeightSet& ws, bool init_side) {
        if (ws.indeterminate()) throw InvalidTargetError("indeterminate segment profile");
        auto emit_below = [&](const Card& c) {
            auto cmp = compare_cards(c, kappa);
            if (cmp == std::partial_ordering::unordered)
                throw InvalidTargetError("profile value incomparable with kappa");
            if (cmp != std::partial_ordering::less) return;
            add(init_side ? "[" + label_of(c) + "]" : "[" + klabel + "|" + label_of(c) + "]");
        };
        for (int p : ws.exact()) emit_below(Card(chain, p));
        for (auto& [lo, hi] : ws.ranges())
            for (int p = lo; p < hi; ++p) emit_below(Card(chain, p));
        if (ws.has_continuum_side()) emit_below(Card::continuum(chain));
    };
    side(a.card_init, true);
    side(a.card_fin, false);
    if (has_bisection(t, chain)) add("[" + klabel + "|" + klabel + "]");
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ordercalc
