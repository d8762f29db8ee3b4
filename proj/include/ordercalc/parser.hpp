#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ordercalc/cardinals.hpp"
#include "ordercalc/terms.hpp"

namespace ordercalc {

struct ParseError : OrdercalcError {
    std::size_t position;
    std::string expected;
    ParseError(std::size_t pos, std::string exp)
        : OrdercalcError("parse error at " + std::to_string(pos) + ": expected " + exp),
          position(pos),
          expected(std::move(exp)) {}
};

namespace detail {

enum class Tok { Nat, Ident, Plus, Star, LParen, RParen, LBracket, RBracket, Semi, Sum, DropMin, DropMax, End };

struct Token {
    Tok kind;
    std::size_t pos;
    std::uint64_t nat = 0;
    std::string text;
};

/**
 * Tokenizer.  Identifiers greedily absorb trailing '+' characters while
 * the extended name is a declared chain symbol, so "l+ + k" reads as the
 * symbol l+, the sum operator, then k.
 */
class Lexer {
public:
    Lexer(const std::string& src, const ChainPtr& chain) : src_(src), chain_(chain) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= src_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        char c = src_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_])))
                v = v * 10 + static_cast<std::uint64_t>(src_[i_++] - '0');
            tok_.kind = Tok::Nat;
            tok_.nat = v;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (i_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
                name.push_back(src_[i_++]);
            while (i_ < src_.size() && src_[i_] == '+' && chain_ && chain_->find(name + "+")) {
                name.push_back('+');
                ++i_;
            }
            if (name == "Sum")
                tok_.kind = Tok::Sum;
            else if (name == "dropmin")
                tok_.kind = Tok::DropMin;
            else if (name == "dropmax")
                tok_.kind = Tok::DropMax;
            else {
                tok_.kind = Tok::Ident;
                tok_.text = name;
            }
            return;
        }
        ++i_;
        switch (c) {
            case '+': tok_.kind = Tok::Plus; return;
            case '*': tok_.kind = Tok::Star; return;
            case '(': tok_.kind = Tok::LParen; return;
            case ')': tok_.kind = Tok::RParen; return;
            case '[': tok_.kind = Tok::LBracket; return;
            case ']': tok_.kind = Tok::RBracket; return;
            case ';': tok_.kind = Tok::Semi; return;
            default: throw ParseError(tok_.pos, "a term token, got '" + std::string(1, c) + "'");
        }
    }

    const std::string& src_;
    ChainPtr chain_;
    std::size_t i_ = 0;
    Token tok_;
};

class TermParser {
public:
    TermParser(const std::string& src, ChainPtr chain) : lex_(src, chain), chain_(std::move(chain)) {}

    TermPtr run() {
        TermPtr t = term();
        if (lex_.peek().kind != Tok::End) throw ParseError(lex_.peek().pos, "end of input");
        return t;
    }

private:
    TermPtr term() {
        TermPtr t = item();
        while (lex_.peek().kind == Tok::Plus) {
            lex_.take();
            t = OrderTerm::sum(t, item());  // '+' associates to the left
        }
        return t;
    }

    TermPtr item() {
        TermPtr t = factor();
        if (lex_.peek().kind == Tok::Star) {
            lex_.take();
            t = OrderTerm::reverse(t);
        }
        return t;
    }

    void expect(Tok k, const char* what) {
        if (lex_.peek().kind != k) throw ParseError(lex_.peek().pos, what);
        lex_.take();
    }

    TermPtr factor() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::Nat: return OrderTerm::fin(t.nat);
            case Tok::Ident: {
                if (t.text == "w") return OrderTerm::omega();
                if (t.text == "Z") return OrderTerm::zset();
                if (t.text == "Q") return OrderTerm::rationals();
                if (t.text == "C") return OrderTerm::cantor();
                if (t.text == "fin")
                    throw ParseError(t.pos, "an order type (fin is a size marker)");
                std::optional<int> pos = chain_ ? chain_->find(t.text) : std::optional<int>{};
                if (pos) return OrderTerm::card_sym(Card(chain_, *pos));
                throw ParseError(t.pos, "a declared cardinal symbol, got '" + t.text + "'");
            }
            case Tok::LParen: {
                TermPtr inner = term();
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Sum: {
                expect(Tok::LBracket, "'[' after Sum");
                TermPtr index = term();
                expect(Tok::Semi, "';'");
                TermPtr summand = term();
                expect(Tok::RBracket, "']'");
                return OrderTerm::sum_over(index, summand);
            }
            case Tok::DropMin: {
                expect(Tok::LParen, "'('");
                TermPtr inner = term();
                expect(Tok::RParen, "')'");
                return OrderTerm::drop_min(inner);
            }
            case Tok::DropMax: {
                expect(Tok::LParen, "'('");
                TermPtr inner = term();
                expect(Tok::RParen, "')'");
                return OrderTerm::drop_max(inner);
            }
            default: throw ParseError(t.pos, "a factor");
        }
    }

    Lexer lex_;
    ChainPtr chain_;
};

}  // namespace detail

/// Parse a term; cardinal identifiers are resolved against the chain.
inline TermPtr parse(const std::string& text, const ChainPtr& chain) {
    return detail::TermParser(text, chain).run();
}

/// Poset descriptor [k]^{l|m}: which split family a chain is measured against.
struct PosetTarget {
    Card kappa;
    Card lambda;
    Card mu;
};

/// Parse "[k]^{l|m}"; "w" stands for aleph0.
inline PosetTarget parse_target(const std::string& text, const ChainPtr& chain) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto expect_char = [&](char c) {
        skip_ws();
        if (i >= text.size() || text[i] != c)
            throw ParseError(i, std::string("'") + c + "' in target descriptor");
        ++i;
    };
    auto name = [&]() -> Card {
        skip_ws();
        std::string n;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                   text[i] == '_' || text[i] == '+'))
            n.push_back(text[i++]);
        if (n.empty()) throw ParseError(i, "a cardinal name in target descriptor");
        if (n == "w") return Card::aleph0(chain);
        if (auto pos = chain->find(n)) return Card(chain, *pos);
        throw ParseError(i, "a declared cardinal, got '" + n + "'");
    };
    expect_char('[');
    Card kappa = name();
    expect_char(']');
    expect_char('^');
    expect_char('{');
    Card lambda = name();
    expect_char('|');
    Card mu = name();
    expect_char('}');
    skip_ws();
    if (i != text.size()) throw ParseError(i, "end of target descriptor");
    return PosetTarget{kappa, lambda, mu};
}

}  // namespace ordercalc
