#include <cmath>

#include "lipdyn/dsl.hpp"

namespace lipdyn::dsl {

namespace {

void collect_abs_args(const Expr& e, std::vector<ExprPtr>& out) {
    switch (e.kind) {
        case ExprKind::Abs:
            out.push_back(e.lhs);
            collect_abs_args(*e.lhs, out);
            break;
        case ExprKind::Neg:
        case ExprKind::Pow:
            collect_abs_args(*e.lhs, out);
            break;
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div:
            collect_abs_args(*e.lhs, out);
            collect_abs_args(*e.rhs, out);
            break;
        case ExprKind::Piecewise:
            for (const Branch& b : e.branches) collect_abs_args(*b.value, out);
            collect_abs_args(*e.otherwise, out);
            break;
        default:
            break;
    }
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

double bisect_root(const Expr& u, double a, double b, double fa) {
    // fa and f(b) have opposite signs (or one endpoint is an exact zero).
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        if (b - a <= 1e-12) return mid;
        double fm = evaluate(u, mid);
        if (fm == 0.0) return mid;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<double> nondifferentiable_points(const MapDefinition& def, double lo, double hi,
                                             int grid_n) {
    std::vector<double> points;

    std::vector<double> bounds;
    collect_guard_bounds(*def.body, bounds);
    for (double b : bounds) {
        if (b >= lo && b <= hi) points.push_back(b);
    }

    std::vector<ExprPtr> abs_args;
    collect_abs_args(*def.body, abs_args);
    for (const ExprPtr& u : abs_args) {
        double prev_x = lo;
        double prev_v = evaluate(*u, lo);
        if (prev_v == 0.0) points.push_back(lo);
        for (int i = 1; i < grid_n; ++i) {
            double x = lo + (hi - lo) * static_cast<double>(i) / (grid_n - 1);
            double v = evaluate(*u, x);
            if (v == 0.0) {
                points.push_back(x);
            } else if ((prev_v < 0.0) != (v < 0.0) && prev_v != 0.0) {
                points.push_back(bisect_root(*u, prev_x, x, prev_v));
            }
            prev_x = x;
            prev_v = v;
        }
    }

    return dedup_sorted(std::move(points));
}

}  // namespace lipdyn::dsl
