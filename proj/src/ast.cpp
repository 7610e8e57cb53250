#include <algorithm>
#include <cmath>

#include "lipdyn/dsl.hpp"

namespace lipdyn::dsl {

namespace {
ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
}  // namespace

ExprPtr constant(double v) {
    Expr e;
    e.kind = ExprKind::Constant;
    e.value = v;
    return make(std::move(e));
}

ExprPtr var(std::string name) {
    Expr e;
    e.kind = ExprKind::Var;
    e.name = std::move(name);
    return make(std::move(e));
}

namespace {
ExprPtr unary(ExprKind kind, ExprPtr child) {
    Expr e;
    e.kind = kind;
    e.lhs = std::move(child);
    return make(std::move(e));
}
ExprPtr binary(ExprKind kind, ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = kind;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    return make(std::move(e));
}
}  // namespace

ExprPtr neg(ExprPtr e) { return unary(ExprKind::Neg, std::move(e)); }
ExprPtr abs(ExprPtr e) { return unary(ExprKind::Abs, std::move(e)); }
ExprPtr add(ExprPtr a, ExprPtr b) { return binary(ExprKind::Add, std::move(a), std::move(b)); }
ExprPtr sub(ExprPtr a, ExprPtr b) { return binary(ExprKind::Sub, std::move(a), std::move(b)); }
ExprPtr mul(ExprPtr a, ExprPtr b) { return binary(ExprKind::Mul, std::move(a), std::move(b)); }
ExprPtr div(ExprPtr a, ExprPtr b) { return binary(ExprKind::Div, std::move(a), std::move(b)); }

ExprPtr pow(ExprPtr base, int exponent) {
    Expr e;
    e.kind = ExprKind::Pow;
    e.lhs = std::move(base);
    e.exponent = exponent;
    return make(std::move(e));
}

ExprPtr piecewise(std::vector<Branch> branches, ExprPtr otherwise) {
    Expr e;
    e.kind = ExprKind::Piecewise;
    e.branches = std::move(branches);
    e.otherwise = std::move(otherwise);
    return make(std::move(e));
}

namespace {
bool guard_equal(const Guard& a, const Guard& b) {
    if (a.op != b.op || a.bound != b.bound) return false;
    if (static_cast<bool>(a.lhs_expr) != static_cast<bool>(b.lhs_expr)) return false;
    if (a.lhs_expr) return structurally_equal(*a.lhs_expr, *b.lhs_expr);
    return a.var == b.var;
}
}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Constant:
            return a.value == b.value;
        case ExprKind::Var:
            return a.name == b.name;
        case ExprKind::Neg:
        case ExprKind::Abs:
            return structurally_equal(*a.lhs, *b.lhs);
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div:
            return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
        case ExprKind::Pow:
            return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
        case ExprKind::Piecewise: {
            if (a.branches.size() != b.branches.size()) return false;
            for (std::size_t i = 0; i < a.branches.size(); ++i) {
                if (!guard_equal(a.branches[i].guard, b.branches[i].guard)) return false;
                if (!structurally_equal(*a.branches[i].value, *b.branches[i].value)) return false;
            }
            return structurally_equal(*a.otherwise, *b.otherwise);
        }
    }
    return false;
}

std::vector<double> dedup_sorted(std::vector<double> xs, double tol) {
    std::sort(xs.begin(), xs.end());
    std::vector<double> out;
    for (double x : xs) {
        if (out.empty() || std::fabs(x - out.back()) > tol) out.push_back(x);
    }
    return out;
}

}  // namespace lipdyn::dsl
