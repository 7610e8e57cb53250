#include <cmath>

#include "lipdyn/dsl.hpp"

namespace lipdyn::dsl {

namespace {

bool guard_holds(const Guard& g, double x) {
    double lhs = g.lhs_expr ? evaluate(*g.lhs_expr, x) : x;
    switch (g.op) {
        case CmpOp::Lt: return lhs < g.bound;
        case CmpOp::Le: return lhs <= g.bound;
        case CmpOp::Gt: return lhs > g.bound;
        case CmpOp::Ge: return lhs >= g.bound;
    }
    return false;
}

}  // namespace

double evaluate(const Expr& expr, double x) {
    switch (expr.kind) {
        case ExprKind::Constant:
            return expr.value;
        case ExprKind::Var:
            return x;
        case ExprKind::Neg:
            return -evaluate(*expr.lhs, x);
        case ExprKind::Abs:
            return std::fabs(evaluate(*expr.lhs, x));
        case ExprKind::Add:
            return evaluate(*expr.lhs, x) + evaluate(*expr.rhs, x);
        case ExprKind::Sub:
            return evaluate(*expr.lhs, x) - evaluate(*expr.rhs, x);
        case ExprKind::Mul:
            return evaluate(*expr.lhs, x) * evaluate(*expr.rhs, x);
        case ExprKind::Div: {
            double den = evaluate(*expr.rhs, x);
            if (den == 0.0) throw EvalError("division by zero");
            return evaluate(*expr.lhs, x) / den;
        }
        case ExprKind::Pow: {
            // x^0 = 1 by convention, including at x = 0.
            double base = evaluate(*expr.lhs, x);
            double r = 1.0;
            for (int i = 0; i < expr.exponent; ++i) r *= base;
            return r;
        }
        case ExprKind::Piecewise: {
            for (const Branch& b : expr.branches) {
                if (guard_holds(b.guard, x)) return evaluate(*b.value, x);
            }
            return evaluate(*expr.otherwise, x);
        }
    }
    throw EvalError("malformed expression");
}

}  // namespace lipdyn::dsl
