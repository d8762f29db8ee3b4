#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ordercalc {

struct OrdercalcError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operation was handed values living in two different cardinal chains.
struct ChainMismatchError : OrdercalcError {
    using OrdercalcError::OrdercalcError;
};

/// successor_card asked for a successor the chain never declared.
struct SuccessorUnknownError : OrdercalcError {
    using OrdercalcError::OrdercalcError;
};

struct ChainDeclError : OrdercalcError {
    using OrdercalcError::OrdercalcError;
};

/**
 * A finite, strictly increasing chain of cardinal symbols.
 *
 * Positions 0 and 1 are always the builtins `fin` (a marker collapsing all
 * finite cardinals) and `aleph0`.  Declared symbols sit above them.  An
 * adjacent pair may be flagged as a successor step (`l`, `l+`), which
 * promises that no cardinal lies strictly between the two symbols.
 *
 * The cardinality of the Cantor atom, `continuum`, is special: unless the
 * user declares a symbol literally named "continuum", it lives beside the
 * chain and compares only against fin and aleph0 (it is bigger than both);
 * against declared symbols it is incomparable, never silently ordered.
 */
class CardinalChain {
public:
    static constexpr int kFin = 0;
    static constexpr int kAleph0 = 1;

    /// Parse a declaration like "fin<aleph0<l<+l+<k".  A leading '+' marks
    /// the symbol as the successor of its left neighbour.  The fin/aleph0
    /// prefix may be omitted; it is implied.
    static std::shared_ptr<const CardinalChain> parse(const std::string& decl);

    /// Chain containing only the builtins.
    static std::shared_ptr<const CardinalChain> builtins() { return parse(""); }

    std::size_t size() const { return names_.size(); }
    const std::string& name(int pos) const { return names_.at(static_cast<std::size_t>(pos)); }

    std::optional<int> find(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        return std::nullopt;
    }

    /// True when no cardinal can hide strictly between positions pos and
    /// pos+1.  The fin->aleph0 step is always gap-free: every finite value
    /// is already collapsed into the fin marker.
    bool gap_free(int pos) const {
        if (pos == kFin) return true;
        return succ_flag_.at(static_cast<std::size_t>(pos));
    }

    /// Whether names_[pos+1] was declared as names_[pos]^+.
    bool successor_flag(int pos) const { return succ_flag_.at(static_cast<std::size_t>(pos)); }

    /// Position of a declared "continuum" symbol, if any.
    std::optional<int> continuum_pos() const { return continuum_pos_; }

    std::string to_string() const;

private:
    CardinalChain() = default;
    std::vector<std::string> names_;
    std::vector<bool> succ_flag_;  // size() - 1 entries, succ_flag_[i] between i and i+1
    std::optional<int> continuum_pos_;
};

using ChainPtr = std::shared_ptr<const CardinalChain>;

/**
 * One value of a cardinal chain.  pos >= 0 indexes the chain; the sentinel
 * kContinuumSide is the undeclared continuum living beside it.
 */
class Card {
public:
    static constexpr int kContinuumSide = -1;

    Card(ChainPtr chain, int pos) : chain_(std::move(chain)), pos_(pos) {
        if (!chain_) throw OrdercalcError("Card: null chain");
        if (pos_ != kContinuumSide &&
            (pos_ < 0 || static_cast<std::size_t>(pos_) >= chain_->size()))
            throw OrdercalcError("Card: position out of range");
    }

    static Card fin(const ChainPtr& c) { return Card(c, CardinalChain::kFin); }
    static Card aleph0(const ChainPtr& c) { return Card(c, CardinalChain::kAleph0); }
    static Card continuum(const ChainPtr& c) {
        if (auto p = c->continuum_pos()) return Card(c, *p);
        return Card(c, kContinuumSide);
    }

    const ChainPtr& chain() const { return chain_; }
    int pos() const { return pos_; }
    bool is_continuum_side() const { return pos_ == kContinuumSide; }
    bool is_fin() const { return pos_ == CardinalChain::kFin; }
    bool is_infinite() const { return pos_ != CardinalChain::kFin; }

    std::string name() const {
        return is_continuum_side() ? std::string("continuum") : chain_->name(pos_);
    }

    bool operator==(const Card& o) const { return chain_ == o.chain_ && pos_ == o.pos_; }

private:
    ChainPtr chain_;
    int pos_;
};

inline void require_same_chain(const Card& a, const Card& b) {
    if (a.chain() != b.chain())
        throw ChainMismatchError("cards from different cardinal chains");
}

/// Total on chain positions; unordered only between the undeclared
/// continuum and a declared symbol (never guessed, see CardinalChain).
inline std::partial_ordering compare_cards(const Card& a, const Card& b) {
    require_same_chain(a, b);
    if (a.pos() == b.pos()) return std::partial_ordering::equivalent;
    if (a.is_continuum_side()) {
        if (b.pos() <= CardinalChain::kAleph0) return std::partial_ordering::greater;
        return std::partial_ordering::unordered;
    }
    if (b.is_continuum_side()) {
        if (a.pos() <= CardinalChain::kAleph0) return std::partial_ordering::less;
        return std::partial_ordering::unordered;
    }
    return a.pos() < b.pos() ? std::partial_ordering::less : std::partial_ordering::greater;
}

/// The declared successor of a.  Declared means flagged; anything else is
/// a hard SuccessorUnknownError, never a guess at the next symbol.
inline Card successor_card(const Card& a) {
    if (a.is_continuum_side())
        throw SuccessorUnknownError("successor unknown: continuum has no declared successor");
    const auto& chain = *a.chain();
    const int next = a.pos() + 1;
    if (static_cast<std::size_t>(next) >= chain.size() || !chain.successor_flag(a.pos()))
        throw SuccessorUnknownError("successor unknown for '" + a.name() + "'");
    return Card(a.chain(), next);
}

/// max of two cards; nullopt when they are incomparable.
inline std::optional<Card> max_card(const Card& a, const Card& b) {
    auto c = compare_cards(a, b);
    if (c == std::partial_ordering::unordered) return std::nullopt;
    return c == std::partial_ordering::less ? b : a;
}

inline std::optional<Card> max_card(const std::optional<Card>& a, const std::optional<Card>& b) {
    if (!a || !b) return std::nullopt;
    return max_card(*a, *b);
}

/**
 * Abstract set of chain values: finitely many exact points plus disjoint
 * half-open ranges [lo, hi).  A range stands for *every* cardinal >= lo
 * and < hi, including ones the chain never names, so a range only
 * collapses to its declared points across successor-flagged steps.
 *
 * The undeclared continuum is carried as a separate flag.  Lifting a
 * declared symbol over a set containing it poisons the set
 * (indeterminate): the verdicts report that honestly instead of ordering
 * the incomparable pair.
 */
class WeightSet {
public:
    WeightSet() = default;
    explicit WeightSet(ChainPtr chain) : chain_(std::move(chain)) {}

    static WeightSet empty(const ChainPtr& c) { return WeightSet(c); }

    static WeightSet point(const Card& c) {
        WeightSet w(c.chain());
        if (c.is_continuum_side())
            w.has_continuum_ = true;
        else
            w.exact_.push_back(c.pos());
        w.normalize();
        return w;
    }

    /// All chain values strictly below c (the profile of an ordinal atom).
    static WeightSet below(const Card& c) {
        if (c.is_continuum_side())
            throw OrdercalcError("below(continuum) undefined without a declared position");
        WeightSet w(c.chain());
        if (c.pos() > 0) w.ivls_.push_back({0, c.pos()});
        w.normalize();
        return w;
    }

    const ChainPtr& chain() const { return chain_; }
    bool is_empty() const { return !indeterminate_ && exact_.empty() && ivls_.empty() && !has_continuum_; }
    bool indeterminate() const { return indeterminate_; }
    bool has_continuum_side() const { return has_continuum_; }
    const std::vector<int>& exact() const { return exact_; }
    const std::vector<std::pair<int, int>>& ranges() const { return ivls_; }

    static WeightSet indeterminate_set(const ChainPtr& c) {
        WeightSet w(c);
        w.indeterminate_ = true;
        return w;
    }

    bool contains(const Card& c) const {
        if (indeterminate_) return false;
        if (c.is_continuum_side()) return has_continuum_;
        if (std::find(exact_.begin(), exact_.end(), c.pos()) != exact_.end()) return true;
        for (auto& [lo, hi] : ivls_)
            if (lo <= c.pos() && c.pos() < hi) return true;
        return false;
    }

    /// Exactly the single value c, with nothing hidden in a range.
    bool is_singleton(const Card& c) const {
        if (indeterminate_) return false;
        if (c.is_continuum_side())
            return has_continuum_ && exact_.empty() && ivls_.empty();
        return !has_continuum_ && ivls_.empty() && exact_.size() == 1 && exact_[0] == c.pos();
    }

    bool operator==(const WeightSet& o) const {
        if (indeterminate_ || o.indeterminate_) return false;  // never trusted equal
        return chain_ == o.chain_ && exact_ == o.exact_ && ivls_ == o.ivls_ &&
               has_continuum_ == o.has_continuum_;
    }

    std::string to_string() const;

    friend WeightSet ws_join(const WeightSet& u, const WeightSet& v);
    friend WeightSet ws_lift_max(const Card& c, const WeightSet& v);

private:
    void normalize();

    ChainPtr chain_;
    std::vector<int> exact_;
    std::vector<std::pair<int, int>> ivls_;
    bool has_continuum_ = false;
    bool indeterminate_ = false;
};

/// Union of two profiles over the same chain.
inline WeightSet ws_join(const WeightSet& u, const WeightSet& v) {
    if (u.chain_ != v.chain_) throw ChainMismatchError("ws_join: different chains");
    WeightSet r(u.chain_);
    if (u.indeterminate_ || v.indeterminate_) return WeightSet::indeterminate_set(u.chain_);
    r.exact_ = u.exact_;
    r.exact_.insert(r.exact_.end(), v.exact_.begin(), v.exact_.end());
    r.ivls_ = u.ivls_;
    r.ivls_.insert(r.ivls_.end(), v.ivls_.begin(), v.ivls_.end());
    r.has_continuum_ = u.has_continuum_ || v.has_continuum_;
    r.normalize();
    return r;
}

/// Pointwise max(c, .) over the set.  A range [lo, hi) maps to {c} when
/// c >= hi, stays put when c < lo, and truncates to [c, hi) in between.
inline WeightSet ws_lift_max(const Card& c, const WeightSet& v) {
    if (c.chain() != v.chain_) throw ChainMismatchError("ws_lift_max: different chains");
    if (v.indeterminate_) return WeightSet::indeterminate_set(v.chain_);
    WeightSet r(v.chain_);
    if (c.is_continuum_side()) {
        // max(continuum, x): known for x <= aleph0, incomparable above.
        for (int p : v.exact_) {
            if (p <= CardinalChain::kAleph0)
                r.has_continuum_ = true;
            else
                return WeightSet::indeterminate_set(v.chain_);
        }
        for (auto& [lo, hi] : v.ivls_) {
            (void)lo;
            if (hi <= CardinalChain::kAleph0 + 1)
                r.has_continuum_ = true;
            else
                return WeightSet::indeterminate_set(v.chain_);
        }
        if (v.has_continuum_) r.has_continuum_ = true;
        r.normalize();
        return r;
    }
    if (v.has_continuum_) {
        if (c.pos() <= CardinalChain::kAleph0)
            r.has_continuum_ = true;
        else
            return WeightSet::indeterminate_set(v.chain_);
    }
    for (int p : v.exact_) r.exact_.push_back(std::max(p, c.pos()));
    for (auto [lo, hi] : v.ivls_) {
        if (c.pos() >= hi)
            r.exact_.push_back(c.pos());
        else
            r.ivls_.push_back({std::max(lo, c.pos()), hi});
    }
    r.normalize();
    return r;
}

inline void WeightSet::normalize() {
    std::sort(ivls_.begin(), ivls_.end());
    std::vector<std::pair<int, int>> merged;
    for (auto& iv : ivls_) {
        if (iv.first >= iv.second) continue;
        if (!merged.empty() && iv.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    // Peel declared points off the bottom of each range while no cardinal
    // can hide in the step; what remains is genuinely indefinite.
    ivls_.clear();
    for (auto [lo, hi] : merged) {
        while (lo < hi && chain_->gap_free(lo)) {
            exact_.push_back(lo);
            ++lo;
        }
        if (lo < hi) ivls_.push_back({lo, hi});
    }
    std::sort(exact_.begin(), exact_.end());
    exact_.erase(std::unique(exact_.begin(), exact_.end()), exact_.end());
    std::erase_if(exact_, [&](int p) {
        for (auto& [lo, hi] : ivls_)
            if (lo <= p && p < hi) return true;
        return false;
    });
}

inline std::string WeightSet::to_string() const {
    if (indeterminate_) return "{indeterminate}";
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int p : exact_) {
        if (!first) os << ",";
        os << chain_->name(p);
        first = false;
    }
    for (auto& [lo, hi] : ivls_) {
        if (!first) os << ",";
        os << "[" << chain_->name(lo) << ".." << chain_->name(hi) << ")";
        first = false;
    }
    if (has_continuum_) {
        if (!first) os << ",";
        os << "continuum";
        first = false;
    }
    os << "}";
    return os.str();
}

inline std::shared_ptr<const CardinalChain> CardinalChain::parse(const std::string& decl) {
    auto chain = std::shared_ptr<CardinalChain>(new CardinalChain());
    std::vector<std::pair<std::string, bool>> items;  // name, successor-of-previous
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) return;
        bool succ = cur.front() == '+';
        std::string name = succ ? cur.substr(1) : cur;
        if (name.empty()) throw ChainDeclError("empty symbol name in chain declaration");
        items.push_back({name, succ});
        cur.clear();
    };
    for (char ch : decl) {
        if (ch == '<') {
            flush();
            if (cur.empty() && items.empty() && decl.front() == '<')
                throw ChainDeclError("chain declaration starts with '<'");
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    flush();

    chain->names_ = {"fin", "aleph0"};
    chain->succ_flag_ = {false};
    std::size_t start = 0;
    if (!items.empty() && items[0].first == "fin") {
        if (items.size() < 2 || items[1].first != "aleph0")
            throw ChainDeclError("chain starting with fin must continue with aleph0");
        if (items[1].second) throw ChainDeclError("aleph0 cannot be a declared successor of fin");
        start = 2;
    } else if (!items.empty() && items[0].first == "aleph0") {
        start = 1;
    }
    static const char* kReserved[] = {"fin", "aleph0", "w", "Z", "Q", "C"};
    for (std::size_t i = start; i < items.size(); ++i) {
        const auto& [name, succ] = items[i];
        for (const char* r : kReserved)
            if (name == r) throw ChainDeclError("reserved name in chain declaration: " + name);
        if (chain->find(name)) throw ChainDeclError("duplicate symbol: " + name);
        chain->names_.push_back(name);
        chain->succ_flag_.push_back(succ);
        if (name == "continuum") chain->continuum_pos_ = static_cast<int>(chain->names_.size()) - 1;
    }
    return chain;
}

inline std::string CardinalChain::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (i) os << "<";
        if (i && succ_flag_[i - 1]) os << "+";
        os << names_[i];
    }
    return os.str();
}

}  // namespace ordercalc
