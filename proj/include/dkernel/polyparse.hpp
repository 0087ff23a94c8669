#pragma once

#include <cctype>
#include <string>

#include "error.hpp"
#include "poly.hpp"

namespace dk {

// Infix polynomial expressions over a fixed variable table.
//
//   expr   := term (('+' | '-') term)*
//   term   := signed (('*' | '/') signed)*
//   signed := '-' signed | power
//   power  := atom ('^' uint)*
//   atom   := uint | name | '(' expr ')'
//
// Names follow [A-Za-z_][A-Za-z0-9_@']* so tensor-slot vars (x@2) and primed vars (x')
// parse as single tokens.  '/' is exact division and only allowed when the divisor is a
// nonzero rational constant; everything else is reported as a ParseError with the 1-based
// column of the offending token.  `line` is only used to decorate errors.
class PolyParser {
public:
    PolyParser(std::string text, VarTablePtr table, int line)
        : text_(std::move(text)), table_(std::move(table)), line_(line) {}

    Poly parse() {
        Poly p = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    Poly expr() {
        Poly acc = term();
        for (;;) {
            skip_space();
            if (take('+')) acc = acc + term();
            else if (take('-')) acc = acc - term();
            else return acc;
        }
    }

    Poly term() {
        Poly acc = signed_factor();
        for (;;) {
            skip_space();
            if (take('*')) {
                acc = acc * signed_factor();
            } else if (peek('/')) {
                std::size_t at = pos_;
                ++pos_;
                Poly d = signed_factor();
                if (!d.is_constant()) fail("division by a non-constant expression", at);
                Rational c = d.constant_value();
                if (c == 0) fail("division by zero", at);
                acc = acc * Poly::constant(table_, Rational(1) / c);
            } else {
                return acc;
            }
        }
    }

    Poly signed_factor() {
        skip_space();
        if (take('-')) return Poly::constant(table_, -1) * signed_factor();
        return power();
    }

    Poly power() {
        Poly base = atom();
        for (;;) {
            skip_space();
            if (!take('^')) return base;
            skip_space();
            std::size_t at = pos_;
            if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected an integer exponent", at);
            unsigned e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + static_cast<unsigned>(text_[pos_] - '0');
                if (e > 100000) fail("exponent too large", at);
                ++pos_;
            }
            Poly acc = Poly::constant(table_, 1);
            for (unsigned i = 0; i < e; ++i) acc = acc * base;
            base = acc;
        }
    }

    Poly atom() {
        skip_space();
        if (pos_ == text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            skip_space();
            if (!take(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                digits += text_[pos_++];
            return Poly::constant(table_, Rational(mpz_class(digits, 10)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = pos_;
            std::string name;
            auto name_char = [](char ch) {
                return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '@' ||
                       ch == '\'';
            };
            while (pos_ < text_.size() && name_char(text_[pos_])) name += text_[pos_++];
            auto v = table_->find(name);
            if (!v) fail("unknown variable '" + name + "'", at);
            return Poly::variable(table_, *v);
        }
        fail("unexpected '" + std::string(1, c) + "'");
        return Poly::constant(table_, 0); // unreachable
    }

    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

    bool take(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, line_, static_cast<int>(at) + 1);
    }

    std::string text_;
    VarTablePtr table_;
    int line_;
    std::size_t pos_ = 0;
};

inline Poly parse_poly(const std::string& text, const VarTablePtr& table, int line = 0) {
    return PolyParser(text, table, line).parse();
}

} // namespace dk
