#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ordercalc/codes.hpp"
#include "ordercalc/parser.hpp"
#include "ordercalc/props.hpp"
#include "ordercalc/terms.hpp"

namespace ordercalc {

using Bitset = boost::dynamic_bitset<>;

/// build_chain ran the verdict and it failed; the verdict rides along.
struct BuildRefusedError : OrdercalcError {
    Verdict verdict;
    explicit BuildRefusedError(Verdict v)
        : OrdercalcError("chain construction refused: verdict failed"), verdict(std::move(v)) {}
};

/// Verdict passed but the term mentions cardinal symbols, so its points
/// have no finitary codes; the symbolic verdict is the deliverable.
struct NotRealizableError : OrdercalcError {
    using OrdercalcError::OrdercalcError;
};

/// The unique c < d with (c, d) empty.  Throws when d is not a jump
/// right-endpoint of t.
inline CodePtr jump_partner(const TermPtr& t, const CodePtr& d) {
    if (!is_valid_code(t, d)) throw CodeError("jump_partner: invalid code");
    auto p = jump_pred_opt(t, d);
    if (!p) throw CodeError("jump_partner: code is not a jump right-endpoint");
    return *p;
}

/**
 * Memoized, stable enumeration of D = {b : some a < b has (a,b) empty}.
 * The order of enumeration is term-structural (component streams
 * interleaved breadth-first), not the order of the term, so indices are
 * reproducible.  Memoization is not synchronized; use from one thread.
 */
class JumpEnum {
public:
    explicit JumpEnum(TermPtr term) : term_(std::move(term)), stream_(jump_right_stream(term_)) {
        if (!realizable(term_)) throw NotRealizableError("jump enumeration needs a realizable term");
    }

    const TermPtr& term() const { return term_; }

    /// First n codes of D; fewer when D has fewer elements.
    const std::vector<CodePtr>& enumerate(std::size_t n) {
        while (memo_.size() < n && !exhausted_) {
            auto c = stream_.next();
            if (!c) {
                exhausted_ = true;
                break;
            }
            index_[code_key(*c)] = memo_.size();
            memo_.push_back(*c);
        }
        return memo_;
    }

    /// Position of a D-point in the enumeration.
    std::size_t index(const CodePtr& code, std::size_t limit = 1u << 20) {
        if (!jump_pred_opt(term_, code)) throw CodeError("index: code is not in D");
        auto key = code_key(code);
        while (true) {
            auto it = index_.find(key);
            if (it != index_.end()) return it->second;
            if (exhausted_ || memo_.size() >= limit)
                throw CodeError("index: D-point not reached within enumeration limit");
            enumerate(memo_.size() + 64);
        }
    }

private:
    TermPtr term_;
    CodeStream stream_;
    std::vector<CodePtr> memo_;
    std::map<std::string, std::size_t> index_;
    bool exhausted_ = false;
};

/**
 * The constructed chain as a trace oracle: a maps to D intersected with
 * (-inf, a], reported against a fixed D-prefix.
 */
class ChainHandle {
public:
    ChainHandle(TermPtr term, Verdict verdict)
        : term_(std::move(term)),
          verdict_(std::move(verdict)),
          denum_(std::make_shared<JumpEnum>(term_)) {}

    const TermPtr& term() const { return term_; }
    const Verdict& verdict() const { return verdict_; }
    JumpEnum& denum() const { return *denum_; }

    /// Bitset over prefix indices {i < n : d_i <= a}.
    Bitset trace(const CodePtr& a, std::size_t n) const {
        if (!is_valid_code(term_, a)) throw CodeError("trace: invalid code");
        const auto& ds = denum_->enumerate(n);
        Bitset bs(n);
        for (std::size_t i = 0; i < ds.size() && i < n; ++i)
            if (compare(term_, ds[i], a) <= 0) bs.set(i);
        return bs;
    }

private:
    TermPtr term_;
    Verdict verdict_;
    std::shared_ptr<JumpEnum> denum_;  // lazily grown; handle itself stays logically const
};

/// Traces re-expressed as subsets of the naturals through the enumeration
/// index bijection; preserves strict inclusion by construction.
class RelabeledChain {
public:
    explicit RelabeledChain(ChainHandle handle) : handle_(std::move(handle)) {}

    const ChainHandle& base() const { return handle_; }

    std::vector<std::size_t> trace_set(const CodePtr& a, std::size_t n) const {
        Bitset bs = handle_.trace(a, n);
        std::vector<std::size_t> out;
        for (std::size_t i = bs.find_first(); i != Bitset::npos; i = bs.find_next(i))
            out.push_back(i);
        return out;
    }

private:
    ChainHandle handle_;
};

inline RelabeledChain relabel(const ChainHandle& h) { return RelabeledChain(h); }

/**
 * Verify the target characterization, then hand out the trace oracle.
 * Fails with the verdict embedded when the characterization fails, and
 * with NotRealizableError when the term is symbolic (cases b/c with
 * declared cardinals): there the verdict alone is checkable.
 */
inline ChainHandle build_chain(const TermPtr& t, const ChainPtr& chain, const PosetTarget& target) {
    const Card a0 = Card::aleph0(chain);
    Verdict v;
    if (target.kappa == a0 && target.lambda == a0 && target.mu == a0)
        v = characterize_omega(t, chain);
    else
        v = characterize(t, chain, target.kappa, target.lambda, target.mu);
    if (!v.passed) throw BuildRefusedError(std::move(v));
    if (!realizable(t))
        throw NotRealizableError("term is symbolic; the verdict is the checkable deliverable");
    return ChainHandle(t, std::move(v));
}

struct CertStep {
    CodePtr d;
    CodePtr partner;
    bool step_ok = false;      // trace(d) equals trace(partner) plus {index of d}
    bool boundary_ok = false;  // index absent below the jump, present at it
};

/**
 * Finite-prefix maximality certificate.  Each step checks the one-point
 * growth across a jump; the boundary checks pin every enumerated d inside
 * the prefix family.  Limit cuts are covered symbolically by the verdict's
 * dedekind_complete flag, recorded here by reference.
 */
struct Certificate {
    std::size_t n = 0;
    std::vector<CertStep> steps;
    bool boundary_ok = true;
    bool pass = false;
    Verdict verdict;
};

using TraceFn = std::function<Bitset(const CodePtr&, std::size_t)>;

/// Core of certify with an injectable trace, so tests can corrupt it.
inline Certificate certify_with(const TraceFn& trace, JumpEnum& denum, const TermPtr& term,
                                std::size_t n, Verdict verdict = {}) {
    Certificate cert;
    cert.verdict = std::move(verdict);
    const auto& ds = denum.enumerate(n);
    cert.n = std::min(n, ds.size());
    bool all_ok = true;
    for (std::size_t i = 0; i < cert.n; ++i) {
        CertStep step;
        step.d = ds[i];
        step.partner = jump_partner(term, ds[i]);
        Bitset td = trace(step.d, cert.n);
        Bitset tp = trace(step.partner, cert.n);
        Bitset expected = tp;
        expected.resize(cert.n);
        expected.set(i);
        step.step_ok = td == expected;
        step.boundary_ok = !tp.test(i) && td.test(i);
        all_ok = all_ok && step.step_ok && step.boundary_ok;
        if (!step.boundary_ok) cert.boundary_ok = false;
        cert.steps.push_back(std::move(step));
    }
    cert.pass = all_ok;
    return cert;
}

inline Certificate certify(const ChainHandle& h, std::size_t n) {
    TraceFn tf = [&h](const CodePtr& a, std::size_t m) { return h.trace(a, m); };
    return certify_with(tf, h.denum(), h.term(), n, h.verdict());
}

inline std::string bitset_hex(const Bitset& bs) {
    std::string out;
    for (std::size_t nib = 0; nib * 4 < bs.size(); ++nib) {
        unsigned v = 0;
        for (unsigned b = 0; b < 4; ++b) {
            std::size_t i = nib * 4 + b;
            if (i < bs.size() && bs.test(i)) v |= 1u << b;
        }
        out.push_back("0123456789abcdef"[v]);
    }
    if (out.empty()) out = "0";
    return out;  // nibble 0 holds indices 0..3
}

}  // namespace ordercalc
