#include <cmath>

#include "lipdyn/dsl.hpp"

namespace lipdyn::dsl {

namespace {

bool is_const(const ExprPtr& e, double v) {
    return e->kind == ExprKind::Constant && e->value == v;
}

}  // namespace

ExprPtr simplify(const ExprPtr& expr) {
    const Expr& e = *expr;
    switch (e.kind) {
        case ExprKind::Constant:
        case ExprKind::Var:
            return expr;
        case ExprKind::Neg: {
            ExprPtr c = simplify(e.lhs);
            if (c->kind == ExprKind::Constant) return constant(-c->value);
            if (c->kind == ExprKind::Neg) return c->lhs;
            return neg(std::move(c));
        }
        case ExprKind::Abs: {
            ExprPtr c = simplify(e.lhs);
            if (c->kind == ExprKind::Constant) return constant(std::fabs(c->value));
            return abs(std::move(c));
        }
        case ExprKind::Add: {
            ExprPtr a = simplify(e.lhs), b = simplify(e.rhs);
            if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant)
                return constant(a->value + b->value);
            if (is_const(a, 0.0)) return b;
            if (is_const(b, 0.0)) return a;
            return add(std::move(a), std::move(b));
        }
        case ExprKind::Sub: {
            ExprPtr a = simplify(e.lhs), b = simplify(e.rhs);
            if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant)
                return constant(a->value - b->value);
            if (is_const(b, 0.0)) return a;
            return sub(std::move(a), std::move(b));
        }
        case ExprKind::Mul: {
            ExprPtr a = simplify(e.lhs), b = simplify(e.rhs);
            if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant)
                return constant(a->value * b->value);
            if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
            if (is_const(a, 1.0)) return b;
            if (is_const(b, 1.0)) return a;
            return mul(std::move(a), std::move(b));
        }
        case ExprKind::Div: {
            ExprPtr a = simplify(e.lhs), b = simplify(e.rhs);
            if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant &&
                b->value != 0.0)
                return constant(a->value / b->value);
            if (is_const(b, 1.0)) return a;
            return div(std::move(a), std::move(b));
        }
        case ExprKind::Pow: {
            ExprPtr base = simplify(e.lhs);
            if (e.exponent == 0) return constant(1.0);
            if (e.exponent == 1) return base;
            if (base->kind == ExprKind::Constant) {
                double r = 1.0;
                for (int i = 0; i < e.exponent; ++i) r *= base->value;
                return constant(r);
            }
            return pow(std::move(base), e.exponent);
        }
        case ExprKind::Piecewise: {
            std::vector<Branch> branches;
            branches.reserve(e.branches.size());
            for (const Branch& b : e.branches) {
                Guard g = b.guard;
                if (g.lhs_expr) g.lhs_expr = simplify(g.lhs_expr);
                branches.push_back({std::move(g), simplify(b.value)});
            }
            return piecewise(std::move(branches), simplify(e.otherwise));
        }
    }
    return expr;
}

}  // namespace lipdyn::dsl
