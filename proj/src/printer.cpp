#include <cstdio>
#include <sstream>

#include "lipdyn/dsl.hpp"

namespace lipdyn::dsl {

namespace {

// Precedence: piecewise 0, add/sub 1, mul/div 2, neg 3, pow 4, atoms 5.
int precedence(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Piecewise: return 0;
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::Pow: return 4;
        case ExprKind::Constant:
            // A negative literal reparses as a unary minus, so give it that
            // same binding strength.
            return e.value < 0 ? 3 : 5;
        default: return 5;
    }
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* cmp_text(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

void print(const Expr& e, int min_prec, std::ostream& os);

void print_wrapped(const Expr& e, int min_prec, std::ostream& os) {
    if (precedence(e) < min_prec) {
        os << "(";
        print(e, 0, os);
        os << ")";
    } else {
        print(e, min_prec, os);
    }
}

void print(const Expr& e, int, std::ostream& os) {
    switch (e.kind) {
        case ExprKind::Constant:
            os << format_number(e.value);
            return;
        case ExprKind::Var:
            os << e.name;
            return;
        case ExprKind::Neg:
            os << "-";
            print_wrapped(*e.lhs, 3, os);
            return;
        case ExprKind::Abs:
            os << "abs(";
            print(*e.lhs, 0, os);
            os << ")";
            return;
        case ExprKind::Add:
            print_wrapped(*e.lhs, 1, os);
            os << " + ";
            print_wrapped(*e.rhs, 2, os);
            return;
        case ExprKind::Sub:
            print_wrapped(*e.lhs, 1, os);
            os << " - ";
            print_wrapped(*e.rhs, 2, os);
            return;
        case ExprKind::Mul:
            print_wrapped(*e.lhs, 2, os);
            os << " * ";
            print_wrapped(*e.rhs, 3, os);
            return;
        case ExprKind::Div:
            print_wrapped(*e.lhs, 2, os);
            os << " / ";
            print_wrapped(*e.rhs, 3, os);
            return;
        case ExprKind::Pow:
            print_wrapped(*e.lhs, 5, os);
            os << "^" << e.exponent;
            return;
        case ExprKind::Piecewise: {
            os << "piecewise { ";
            for (const Branch& b : e.branches) {
                if (b.guard.lhs_expr) {
                    print(*b.guard.lhs_expr, 0, os);
                } else {
                    os << b.guard.var;
                }
                os << " " << cmp_text(b.guard.op) << " " << format_number(b.guard.bound)
                   << " => ";
                print_wrapped(*b.value, 1, os);
                os << "; ";
            }
            os << "else => ";
            print_wrapped(*e.otherwise, 1, os);
            os << " }";
            return;
        }
    }
}

}  // namespace

std::string pretty_print(const Expr& expr) {
    std::ostringstream os;
    print(expr, 0, os);
    return os.str();
}

}  // namespace lipdyn::dsl
