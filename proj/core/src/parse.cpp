#include "dulac/expr.hpp"

#include <cctype>

namespace dulac {

namespace {

// expr   := term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*
// factor := base ('^' integer)?  |  '-' factor
// base   := number | identifier | '(' expr ')' | ('exp'|'log') '(' expr ')'

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr run() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            fail(pos_, "unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::size_t off, const std::string& msg) {
        throw ParseError(off, msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Expr parse_sum() {
        Expr e = parse_term();
        for (;;) {
            skip_ws();
            if (eat('+')) e = add(e, parse_term());
            else if (eat('-')) e = sub(e, parse_term());
            else return e;
        }
    }

    Expr parse_term() {
        Expr e = parse_factor();
        for (;;) {
            skip_ws();
            if (eat('*')) e = mul(e, parse_factor());
            else if (eat('/')) {
                std::size_t at = pos_;
                Expr d = parse_factor();
                try {
                    e = div(e, d);
                } catch (const DomainError&) {
                    fail(at, "division by the constant zero");
                }
            } else {
                return e;
            }
        }
    }

    Expr parse_factor() {
        skip_ws();
        if (eat('-')) return neg(parse_factor());
        Expr b = parse_base();
        skip_ws();
        if (eat('^')) {
            std::size_t at = pos_;
            long n = parse_integer();
            try {
                return power(b, n);
            } catch (const DomainError&) {
                fail(at, "zero raised to a negative power");
            }
        }
        return b;
    }

    long parse_integer() {
        skip_ws();
        std::size_t start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail(pos_, "expected an integer exponent");
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000) fail(start, "exponent out of range");
            ++pos_;
        }
        return negative ? -v : v;
    }

    Expr parse_base() {
        skip_ws();
        if (pos_ >= text_.size()) fail(pos_, "unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            if (!eat(')')) fail(pos_, "expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        fail(pos_, std::string("unexpected character '") + c + "'");
    }

    Expr parse_number() {
        std::size_t start = pos_;
        bool dot = false;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '.' && !dot) {
                dot = true;
                ++pos_;
            } else {
                break;
            }
        }
        std::string_view tok = text_.substr(start, pos_ - start);
        if (tok == ".") fail(start, "malformed number");
        auto v = parse_rational(tok);
        if (!v) fail(start, "malformed number '" + std::string(tok) + "'");
        return constant(*v);
    }

    Expr parse_name() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "exp" || name == "log") {
            if (!eat('(')) fail(pos_, "expected '(' after '" + name + "'");
            Expr arg = parse_sum();
            if (!eat(')')) fail(pos_, "expected ')'");
            return name == "exp" ? make_exp(arg) : make_log(arg);
        }
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(')
            fail(start, "unknown function '" + name + "'");
        if (name == "x1" || name == "x2") return variable(name);
        return parameter(name);
    }
};

} // namespace

Expr parse_expr(std::string_view text) { return Parser(text).run(); }

} // namespace dulac
