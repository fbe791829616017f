#ifndef GFW_PLACES_EXPR_HPP
#define GFW_PLACES_EXPR_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "gfw/error.hpp"
#include "gfw/exactnum/integer.hpp"

namespace gfw::detail {

/// Recursive-descent parser for arithmetic expressions
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary | unary)*      juxtaposition multiplies
///   unary  := ('+' | '-') unary | power
///   power  := atom ('^' ['-'] integer)?
///   atom   := number | identifier | '(' expr ')'
/// Semantics come from Algebra, which provides number, variable, add, sub,
/// mul, div and pow; positions are byte offsets into the input.
template <class Algebra>
class ExprParser {
  public:
    using value = typename Algebra::value;

    ExprParser(const Algebra& alg, std::string_view text) : alg_(alg), s_(text) {}

    value parse_all() {
        value v = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return v;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++i_;
        return true;
    }
    bool atom_starts() {
        skip();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return c == '(' || c == '.' || std::isalnum(static_cast<unsigned char>(c));
    }

    value expr() {
        value v = term();
        for (;;) {
            if (eat('+'))
                v = alg_.add(v, term());
            else if (eat('-'))
                v = alg_.sub(v, term());
            else
                return v;
        }
    }

    value term() {
        value v = unary();
        for (;;) {
            if (eat('*')) {
                v = alg_.mul(v, unary());
            } else if (peek('/')) {
                std::size_t at = i_++;
                value d = unary();
                v = alg_.div(v, d, at);
            } else if (atom_starts()) {
                v = alg_.mul(v, power());
            } else {
                return v;
            }
        }
    }

    value unary() {
        if (eat('-')) return alg_.sub(alg_.number(Rational(0), i_), unary());
        if (eat('+')) return unary();
        return power();
    }

    value power() {
        value base = atom();
        if (!eat('^')) return base;
        skip();
        std::size_t at = i_;
        bool neg = eat('-');
        skip();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected an integer exponent");
        if (i_ - start > 9) fail("exponent too large");
        long e = std::stol(std::string(s_.substr(start, i_ - start)));
        return alg_.pow(base, neg ? -e : e, at);
    }

    value atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of input");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            value v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        std::size_t start = i_;
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
            // Exponent suffix like 1e-3, only when followed by a digit.
            if (i_ + 1 < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
                std::size_t j = i_ + 1;
                if (j < s_.size() && (s_[j] == '-' || s_[j] == '+')) ++j;
                if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
                    i_ = j;
                    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
                }
            }
            try {
                return alg_.number(parse_rational(s_.substr(start, i_ - start)), start);
            } catch (const ParseError&) {
                throw ParseError("malformed number", start);
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            std::string_view name = s_.substr(start, i_ - start);
            if constexpr (requires { alg_.call(name, name, start); }) {
                if (peek('(')) {
                    std::size_t open = i_++;
                    int depth = 1;
                    while (i_ < s_.size() && depth > 0) {
                        if (s_[i_] == '(') ++depth;
                        if (s_[i_] == ')') --depth;
                        ++i_;
                    }
                    if (depth != 0) throw ParseError("unbalanced '('", open);
                    return alg_.call(name, s_.substr(open + 1, i_ - open - 2), open + 1);
                }
            }
            return alg_.variable(name, start);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const Algebra& alg_;
    std::string_view s_;
    std::size_t i_ = 0;
};

template <class Algebra>
typename Algebra::value parse_expression(const Algebra& alg, std::string_view text) {
    return ExprParser<Algebra>(alg, text).parse_all();
}

}  // namespace gfw::detail

#endif
