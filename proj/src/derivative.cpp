#include "lipdyn/dsl.hpp"

namespace lipdyn::dsl {

ExprPtr differentiate(const Expr& expr, const std::string& variable) {
    switch (expr.kind) {
        case ExprKind::Constant:
            return constant(0.0);
        case ExprKind::Var:
            return constant(expr.name == variable ? 1.0 : 0.0);
        case ExprKind::Neg:
            return neg(differentiate(*expr.lhs, variable));
        case ExprKind::Abs: {
            // abs(u)' = sign(u) * u', split on the sign of u. The value at
            // u = 0 comes from the else-branch; the kink itself is surfaced
            // through breakpoints, not through this expression.
            ExprPtr du = differentiate(*expr.lhs, variable);
            Guard g;
            g.op = CmpOp::Lt;
            g.bound = 0.0;
            if (expr.lhs->kind == ExprKind::Var) {
                g.var = expr.lhs->name;
            } else {
                g.lhs_expr = expr.lhs;
            }
            std::vector<Branch> branches;
            branches.push_back({std::move(g), neg(du)});
            return piecewise(std::move(branches), du);
        }
        case ExprKind::Add:
            return add(differentiate(*expr.lhs, variable), differentiate(*expr.rhs, variable));
        case ExprKind::Sub:
            return sub(differentiate(*expr.lhs, variable), differentiate(*expr.rhs, variable));
        case ExprKind::Mul:
            return add(mul(differentiate(*expr.lhs, variable), expr.rhs),
                       mul(expr.lhs, differentiate(*expr.rhs, variable)));
        case ExprKind::Div:
            // (u/v)' = (u'v - uv') / v^2
            return div(sub(mul(differentiate(*expr.lhs, variable), expr.rhs),
                           mul(expr.lhs, differentiate(*expr.rhs, variable))),
                       pow(expr.rhs, 2));
        case ExprKind::Pow: {
            if (expr.exponent == 0) return constant(0.0);
            ExprPtr du = differentiate(*expr.lhs, variable);
            if (expr.exponent == 1) return du;
            return mul(mul(constant(static_cast<double>(expr.exponent)),
                           pow(expr.lhs, expr.exponent - 1)),
                       du);
        }
        case ExprKind::Piecewise: {
            std::vector<Branch> branches;
            branches.reserve(expr.branches.size());
            for (const Branch& b : expr.branches) {
                branches.push_back({b.guard, differentiate(*b.value, variable)});
            }
            return piecewise(std::move(branches), differentiate(*expr.otherwise, variable));
        }
    }
    return constant(0.0);
}

}  // namespace lipdyn::dsl
