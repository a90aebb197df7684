#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "clsym/expr.hpp"

namespace clsym {

using Alphabet = std::set<std::string>;

// z, u and u' plus any declared parameter names.
inline Alphabet complex_alphabet(const std::vector<std::string>& params = {}) {
    Alphabet a{"z", "u", "up"};
    for (const auto& p : params) a.insert(p);
    return a;
}

// Realified coordinates for source and target systems.
inline Alphabet real_alphabet(const std::vector<std::string>& params = {}) {
    Alphabet a{"x", "y", "f", "g", "h", "l", "X", "Y", "F", "G", "H", "L"};
    for (const auto& p : params) a.insert(p);
    return a;
}

namespace detail {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    double number = 0.0;
    std::string text;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : src_(s) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        Token t;
        t.pos = pos_;
        if (pos_ >= src_.size()) {
            t.kind = Token::End;
            return t;
        }
        char c = src_[pos_];
        switch (c) {
            case '+': ++pos_; t.kind = Token::Plus; return t;
            case '-': ++pos_; t.kind = Token::Minus; return t;
            case '*': ++pos_; t.kind = Token::Star; return t;
            case '/': ++pos_; t.kind = Token::Slash; return t;
            case '^': ++pos_; t.kind = Token::Caret; return t;
            case '(': ++pos_; t.kind = Token::LParen; return t;
            case ')': ++pos_; t.kind = Token::RParen; return t;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
            if (end < src_.size() && src_[end] == '.') {
                ++end;
                while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
            }
            if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
                std::size_t mark = end + 1;
                if (mark < src_.size() && (src_[mark] == '+' || src_[mark] == '-')) ++mark;
                if (mark < src_.size() && std::isdigit(static_cast<unsigned char>(src_[mark]))) {
                    ++mark;
                    while (mark < src_.size() && std::isdigit(static_cast<unsigned char>(src_[mark]))) ++mark;
                    end = mark;
                }
            }
            double v = 0.0;
            auto res = std::from_chars(src_.data() + pos_, src_.data() + end, v);
            if (res.ec != std::errc()) throw SyntaxError(pos_, "a numeric literal");
            t.kind = Token::Number;
            t.number = v;
            pos_ = end;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
                ++end;
            t.kind = Token::Ident;
            t.text = src_.substr(pos_, end - pos_);
            pos_ = end;
            return t;
        }
        throw SyntaxError(pos_, "an operator, literal, or identifier");
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;
};

inline bool builtin_from_name(const std::string& s, Builtin& out) {
    static const std::pair<const char*, Builtin> table[] = {
        {"sin", Builtin::Sin},   {"cos", Builtin::Cos},   {"tan", Builtin::Tan},
        {"sinh", Builtin::Sinh}, {"cosh", Builtin::Cosh}, {"exp", Builtin::Exp},
        {"log", Builtin::Log},   {"sqrt", Builtin::Sqrt}, {"atan", Builtin::Atan},
    };
    for (const auto& [name, fn] : table) {
        if (s == name) {
            out = fn;
            return true;
        }
    }
    return false;
}

class Parser {
public:
    Parser(const std::string& s, const Alphabet& alphabet) : lex_(s), alphabet_(alphabet) { advance(); }

    Expr parse() {
        Expr e = parse_sum();
        if (tok_.kind != Token::End) throw SyntaxError(tok_.pos, "end of input");
        return e;
    }

private:
    void advance() { tok_ = lex_.next(); }

    Expr parse_sum() {
        std::vector<Expr> terms;
        terms.push_back(parse_term());
        while (tok_.kind == Token::Plus || tok_.kind == Token::Minus) {
            bool minus = tok_.kind == Token::Minus;
            advance();
            Expr t = parse_term();
            terms.push_back(minus ? neg(std::move(t)) : std::move(t));
        }
        return sum(std::move(terms));
    }

    Expr parse_term() {
        Expr acc = parse_unary();
        while (tok_.kind == Token::Star || tok_.kind == Token::Slash) {
            bool divide = tok_.kind == Token::Slash;
            advance();
            Expr rhs = parse_unary();
            acc = divide ? quotient(std::move(acc), std::move(rhs)) : product({std::move(acc), std::move(rhs)});
        }
        return acc;
    }

    Expr parse_unary() {
        if (tok_.kind == Token::Minus) {
            advance();
            return neg(parse_unary());
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (tok_.kind == Token::Caret) {
            advance();
            Expr e = parse_exponent();
            return make_power(std::move(base), std::move(e));
        }
        return base;
    }

    // '^' is right-associative and binds tighter than unary minus, but a unary
    // minus is allowed in exponent position: u^-2 is u^(-2).
    Expr parse_exponent() {
        if (tok_.kind == Token::Minus) {
            advance();
            return neg(parse_exponent());
        }
        return parse_power();
    }

    static Expr make_power(Expr base, Expr expo) {
        if (is_constant(expo) && expo->value.imag() == 0.0) {
            double r = expo->value.real();
            if (r == std::floor(r) && std::abs(r) <= 4096.0) {
                return pow_int(std::move(base), static_cast<long long>(r));
            }
        }
        // Non-integer powers use the principal branch throughout.
        return apply(Builtin::Exp, product({std::move(expo), apply(Builtin::Log, std::move(base))}));
    }

    Expr parse_primary() {
        if (tok_.kind == Token::Number) {
            Expr e = num(tok_.number);
            advance();
            return e;
        }
        if (tok_.kind == Token::LParen) {
            advance();
            Expr e = parse_sum();
            expect(Token::RParen, "')'");
            return e;
        }
        if (tok_.kind == Token::Ident) {
            std::string name = tok_.text;
            std::size_t pos = tok_.pos;
            advance();
            if (tok_.kind == Token::LParen) {
                Builtin fn;
                if (!builtin_from_name(name, fn)) throw UnknownFunctionError(name);
                advance();
                Expr arg = parse_sum();
                expect(Token::RParen, "')'");
                return apply(fn, std::move(arg));
            }
            if (name == "i") return imaginary_unit();
            if (!alphabet_.count(name)) throw UnknownSymbolError(name);
            (void)pos;
            return var(name);
        }
        throw SyntaxError(tok_.pos, "a literal, identifier, or '('");
    }

    void expect(Token::Kind k, const char* what) {
        if (tok_.kind != k) throw SyntaxError(tok_.pos, what);
        advance();
    }

    Lexer lex_;
    const Alphabet& alphabet_;
    Token tok_;
};

}  // namespace detail

inline Expr parse(const std::string& text, const Alphabet& alphabet) {
    return detail::Parser(text, alphabet).parse();
}

}  // namespace clsym
