#include <cstdlib>

#include "lipdyn/dsl.hpp"

namespace lipdyn::dsl {

namespace {

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    MapDefinition parse_map_definition() {
        expect_keyword("map");
        MapDefinition def;
        def.name = expect(TokenKind::Identifier, "map name").lexeme;
        expect_punct("(");
        def.variable = expect(TokenKind::Identifier, "variable name").lexeme;
        expect_punct(")");
        expect_op("=");
        def.body = parse_expr();
        expect_end();
        collect_guard_bounds(*def.body, def.breakpoints);
        def.breakpoints = dedup_sorted(std::move(def.breakpoints));
        def.derivative = simplify(differentiate(*def.body, def.variable));
        return def;
    }

    ExprPtr parse_bare_expr() {
        ExprPtr e = parse_expr();
        expect_end();
        return e;
    }

  private:
    ExprPtr parse_expr() {
        if (peek().kind == TokenKind::Keyword && peek().lexeme == "piecewise") {
            return parse_piecewise();
        }
        return parse_sum();
    }

    ExprPtr parse_piecewise() {
        next();  // "piecewise"
        expect_punct("{");
        std::vector<Branch> branches;
        while (true) {
            if (peek().kind == TokenKind::Keyword && peek().lexeme == "else") {
                next();
                expect_op("=>");
                ExprPtr otherwise = parse_sum();
                if (peek().kind == TokenKind::Punctuation && peek().lexeme == ";") next();
                expect_punct("}");
                if (branches.empty()) {
                    throw ParseError("piecewise needs at least one guarded branch", peek().line,
                                     peek().column, "guard");
                }
                return piecewise(std::move(branches), std::move(otherwise));
            }
            Guard g = parse_guard();
            expect_op("=>");
            ExprPtr value = parse_sum();
            expect_punct(";");
            branches.push_back({std::move(g), std::move(value)});
        }
    }

    Guard parse_guard() {
        Token id = expect(TokenKind::Identifier, "guard variable");
        Token op = expect(TokenKind::Operator, "comparison operator");
        CmpOp cmp;
        if (op.lexeme == "<")
            cmp = CmpOp::Lt;
        else if (op.lexeme == "<=")
            cmp = CmpOp::Le;
        else if (op.lexeme == ">")
            cmp = CmpOp::Gt;
        else if (op.lexeme == ">=")
            cmp = CmpOp::Ge;
        else
            throw ParseError("expected comparison operator, got '" + op.lexeme + "'", op.line,
                             op.column, "< <= > >=");
        bool negate = false;
        if (peek().kind == TokenKind::Operator && peek().lexeme == "-") {
            next();
            negate = true;
        }
        Token num = expect(TokenKind::Number, "guard bound");
        double bound = std::strtod(num.lexeme.c_str(), nullptr);
        return Guard{id.lexeme, cmp, negate ? -bound : bound, nullptr};
    }

    ExprPtr parse_sum() {
        ExprPtr e = parse_prod();
        while (peek().kind == TokenKind::Operator &&
               (peek().lexeme == "+" || peek().lexeme == "-")) {
            bool plus = next().lexeme == "+";
            ExprPtr rhs = parse_prod();
            e = plus ? add(std::move(e), std::move(rhs)) : sub(std::move(e), std::move(rhs));
        }
        return e;
    }

    ExprPtr parse_prod() {
        ExprPtr e = parse_unary();
        while (peek().kind == TokenKind::Operator &&
               (peek().lexeme == "*" || peek().lexeme == "/")) {
            bool times = next().lexeme == "*";
            ExprPtr rhs = parse_unary();
            e = times ? mul(std::move(e), std::move(rhs)) : div(std::move(e), std::move(rhs));
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (peek().kind == TokenKind::Operator && peek().lexeme == "-") {
            next();
            return neg(parse_unary());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (peek().kind == TokenKind::Operator && peek().lexeme == "^") {
            next();
            Token num = expect(TokenKind::Number, "integer exponent");
            char* end = nullptr;
            long exp = std::strtol(num.lexeme.c_str(), &end, 10);
            if (*end != '\0' || exp < 0) {
                throw ParseError("exponent must be a non-negative integer", num.line, num.column,
                                 "integer >= 0");
            }
            return pow(std::move(base), static_cast<int>(exp));
        }
        return base;
    }

    ExprPtr parse_atom() {
        const Token& t = peek();
        if (t.kind == TokenKind::Number) {
            next();
            return constant(std::strtod(t.lexeme.c_str(), nullptr));
        }
        if (t.kind == TokenKind::Keyword && t.lexeme == "abs") {
            next();
            expect_punct("(");
            ExprPtr inner = parse_expr();
            expect_punct(")");
            return abs(std::move(inner));
        }
        if (t.kind == TokenKind::Identifier) {
            next();
            return var(t.lexeme);
        }
        if (t.kind == TokenKind::Punctuation && t.lexeme == "(") {
            next();
            ExprPtr inner = parse_expr();
            expect_punct(")");
            return inner;
        }
        throw ParseError("unexpected token '" + t.lexeme + "'", t.line, t.column,
                         "number, identifier, abs(...), or (...)");
    }

    void collect_guard_bounds(const Expr& e, std::vector<double>& out) {
        switch (e.kind) {
            case ExprKind::Piecewise:
                for (const Branch& b : e.branches) {
                    if (!b.guard.lhs_expr) out.push_back(b.guard.bound);
                    collect_guard_bounds(*b.value, out);
                }
                collect_guard_bounds(*e.otherwise, out);
                break;
            case ExprKind::Neg:
            case ExprKind::Abs:
            case ExprKind::Pow:
                collect_guard_bounds(*e.lhs, out);
                break;
            case ExprKind::Add:
            case ExprKind::Sub:
            case ExprKind::Mul:
            case ExprKind::Div:
                collect_guard_bounds(*e.lhs, out);
                collect_guard_bounds(*e.rhs, out);
                break;
            default:
                break;
        }
    }

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    Token expect(TokenKind kind, const std::string& what) {
        const Token& t = peek();
        if (t.kind != kind) {
            throw ParseError("expected " + what + ", got '" + t.lexeme + "'", t.line, t.column,
                             what);
        }
        return next();
    }
    void expect_op(const std::string& op) {
        const Token& t = peek();
        if (t.kind != TokenKind::Operator || t.lexeme != op) {
            throw ParseError("expected '" + op + "', got '" + t.lexeme + "'", t.line, t.column, op);
        }
        next();
    }
    void expect_punct(const std::string& p) {
        const Token& t = peek();
        if (t.kind != TokenKind::Punctuation || t.lexeme != p) {
            throw ParseError("expected '" + p + "', got '" + t.lexeme + "'", t.line, t.column, p);
        }
        next();
    }
    void expect_keyword(const std::string& kw) {
        const Token& t = peek();
        if (t.kind != TokenKind::Keyword || t.lexeme != kw) {
            throw ParseError("expected '" + kw + "', got '" + t.lexeme + "'", t.line, t.column, kw);
        }
        next();
    }
    void expect_end() {
        const Token& t = peek();
        if (t.kind != TokenKind::End) {
            throw ParseError("trailing input '" + t.lexeme + "'", t.line, t.column,
                             "end of input");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

MapDefinition parse_map(const std::string& source) {
    return Parser(tokenize(source)).parse_map_definition();
}

ExprPtr parse_expr_string(const std::string& source, const std::string&) {
    return Parser(tokenize(source)).parse_bare_expr();
}

}  // namespace lipdyn::dsl
