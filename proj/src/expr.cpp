#include "formlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "formlab/errors.hpp"

namespace formlab {

namespace {

/// Recursive-descent parser that compiles straight to a closure tree;
/// the grammar is small enough that a separate AST buys nothing.
struct Parser {
    const std::string& src;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw SpecParseError(what + " at offset " + std::to_string(pos) +
                             " in expression '" + src + "'");
    }

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string peek_word() {
        skip_ws();
        std::size_t end = pos;
        while (end < src.size() && std::isalpha(static_cast<unsigned char>(src[end]))) ++end;
        return src.substr(pos, end - pos);
    }

    ExprFn parse_expr() {
        ExprFn acc = parse_term();
        for (;;) {
            if (eat('+')) {
                ExprFn rhs = parse_term();
                acc = [lhs = std::move(acc), rhs](double u, int o) { return lhs(u, o) + rhs(u, o); };
            } else if (eat('-')) {
                ExprFn rhs = parse_term();
                acc = [lhs = std::move(acc), rhs](double u, int o) { return lhs(u, o) - rhs(u, o); };
            } else {
                return acc;
            }
        }
    }

    ExprFn parse_term() {
        ExprFn acc = parse_unary();
        for (;;) {
            if (eat('*')) {
                ExprFn rhs = parse_unary();
                acc = [lhs = std::move(acc), rhs](double u, int o) { return lhs(u, o) * rhs(u, o); };
            } else if (eat('/')) {
                ExprFn rhs = parse_unary();
                acc = [lhs = std::move(acc), rhs](double u, int o) { return lhs(u, o) / rhs(u, o); };
            } else {
                return acc;
            }
        }
    }

    ExprFn parse_unary() {
        if (eat('-')) {
            ExprFn inner = parse_unary();
            return [inner](double u, int o) { return -inner(u, o); };
        }
        return parse_atom();
    }

    ExprFn parse_atom() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of expression");

        if (eat('(')) {
            ExprFn inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }

        const char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src.c_str() + pos;
            char* end = nullptr;
            const double val = std::strtod(begin, &end);
            if (end == begin || !std::isfinite(val)) fail("bad numeric literal");
            pos += static_cast<std::size_t>(end - begin);
            return [val](double, int o) { return Jet2::constant(val, o); };
        }

        const std::string word = peek_word();
        if (word.empty()) fail("unexpected character");
        pos += word.size();
        if (word == "u") return [](double u, int o) { return Jet2::variable(Var::U, u, o); };
        if (word == "pi") return [](double, int o) { return Jet2::constant(M_PI, o); };
        if (word == "sin" || word == "cos") {
            if (!eat('(')) fail("expected '(' after '" + word + "'");
            ExprFn inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            if (word == "sin")
                return [inner](double u, int o) { return sin(inner(u, o)); };
            return [inner](double u, int o) { return cos(inner(u, o)); };
        }
        pos -= word.size();
        fail("unknown name '" + word + "'");
    }
};

} // namespace

ExprFn compile_expr(const std::string& src) {
    Parser p{src};
    ExprFn fn = p.parse_expr();
    p.skip_ws();
    if (p.pos != src.size()) p.fail("trailing input");
    return fn;
}

} // namespace formlab
