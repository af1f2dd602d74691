#pragma once

#include <cctype>
#include <string>

#include "towercert/poly.hpp"

namespace towercert {

// Recursive-descent parser for the canonical polynomial grammar:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' digits)?
//   base   := digits ['/' digits] | 'L' | identifier | '(' expr ')'
//
// 'L' is the field constant; identifiers must be ring variables.
class PolyParser {
public:
    PolyParser(std::string text, RingPtr ring) : text_(std::move(text)), ring_(std::move(ring)) {}

    Poly parse() {
        Poly p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return p;
    }

private:
    Poly expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (take() == '-');
        Poly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            take();
            Poly t = term();
            acc = (c == '+') ? acc + t : acc - t;
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') break;
            take();
            acc = acc * factor();
        }
        return acc;
    }

    Poly factor() {
        Poly b = base();
        skip_ws();
        if (peek() == '^') {
            take();
            skip_ws();
            std::size_t start = pos_;
            unsigned long e = 0;
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw SyntaxError("expected exponent digits", pos_);
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                e = e * 10 + (unsigned long)(take() - '0');
                if (e > 100000) throw SyntaxError("exponent too large", start);
            }
            return b.pow((unsigned)e);
        }
        return b;
    }

    Poly base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            take();
            Poly p = expr();
            skip_ws();
            if (peek() != ')') throw SyntaxError("expected ')'", pos_);
            take();
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer n = digits();
            Integer d = 1;
            if (peek() == '/') {
                take();
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    throw SyntaxError("expected denominator digits", pos_);
                d = digits();
                if (d == 0) throw SyntaxError("zero denominator", pos_);
            }
            return Poly::constant(ring_, Rational(n, d));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            std::string name;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') name += take();
            if (name == "L") return Poly::lambda(ring_);
            if (!ring_->has_var(name))
                throw UnknownVariable("unknown variable '" + name + "' at position " +
                                      std::to_string(start));
            return Poly::variable(ring_, name);
        }
        throw SyntaxError(c ? std::string("unexpected character '") + c + "'"
                            : std::string("unexpected end of input"),
                          pos_);
    }

    Integer digits() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) take();
        return Integer(text_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char take() { return text_[pos_++]; }

    std::string text_;
    RingPtr ring_;
    std::size_t pos_ = 0;
};

inline Poly parse_poly(const std::string& text, const RingPtr& ring) {
    return PolyParser(text, ring).parse();
}

} // namespace towercert
