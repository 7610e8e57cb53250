#include <cmath>

#include "lipdyn/maps.hpp"

namespace lipdyn {

bool ScalarMap::near_breakpoint(double x, double eta) const {
    if (proximity) return proximity(x, eta);
    for (double b : breakpoints) {
        if (std::fabs(x - b) <= eta) return true;
        if (b > x + eta) break;
    }
    return false;
}

Family family_from_name(const std::string& name) {
    if (name == "logistic") return Family::Logistic;
    if (name == "tent_ab") return Family::TentAb;
    if (name == "piecewise_example") return Family::PiecewiseExample;
    if (name == "affine") return Family::Affine;
    throw UnknownFamily("unknown map family '" + name + "'");
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Logistic: return "logistic";
        case Family::TentAb: return "tent_ab";
        case Family::PiecewiseExample: return "piecewise_example";
        case Family::Affine: return "affine";
    }
    return "?";
}

namespace {
double require_param(const ParamFamily& spec, const std::string& key) {
    auto it = spec.params.find(key);
    if (it == spec.params.end()) {
        throw MissingParameter("family '" + family_name(spec.family) + "' needs parameter '" +
                               key + "'");
    }
    return it->second;
}
}  // namespace

ScalarMap logistic_map(double a) {
    ScalarMap m;
    // Fixed operation order (a*x)*(1-x).
    m.eval = [a](double x) { return (a * x) * (1.0 - x); };
    m.deriv = [a](double x) { return a - 2.0 * a * x; };
    m.label = "logistic(a=" + std::to_string(a) + ")";
    if (!(a > 0.0 && a < 4.0)) m.note = "outside paper domain 0 < a < 4";
    return m;
}

ScalarMap tent_map(double a, double b) {
    ScalarMap m;
    m.eval = [a, b](double x) { return a * std::fabs(x) + b; };
    m.deriv = [a](double x) { return x < 0.0 ? -a : a; };
    if (a != 0.0) m.breakpoints = {0.0};
    m.label = "tent_ab(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
    return m;
}

ScalarMap piecewise_example_map() {
    ScalarMap m;
    m.eval = [](double x) {
        if (x < 0.0) return 2.0 * x;
        if (x < 1.0) return x * x;
        return 0.5 * x + 0.5;
    };
    m.deriv = [](double x) {
        if (x < 0.0) return 2.0;
        if (x < 1.0) return 2.0 * x;
        return 0.5;
    };
    m.breakpoints = {0.0, 1.0};
    m.label = "piecewise_example";
    return m;
}

ScalarMap affine_map(double c, double d) {
    ScalarMap m;
    m.eval = [c, d](double x) { return c * x + d; };
    m.deriv = [c](double) { return c; };
    m.label = "affine(c=" + std::to_string(c) + ",d=" + std::to_string(d) + ")";
    return m;
}

ScalarMap builtin(const ParamFamily& spec) {
    switch (spec.family) {
        case Family::Logistic:
            return logistic_map(require_param(spec, "a"));
        case Family::TentAb:
            return tent_map(require_param(spec, "a"), require_param(spec, "b"));
        case Family::PiecewiseExample:
            return piecewise_example_map();
        case Family::Affine:
            return affine_map(require_param(spec, "c"), require_param(spec, "d"));
    }
    throw UnknownFamily("unhandled family");
}

ScalarMap from_dsl(const dsl::MapDefinition& def, double scan_lo, double scan_hi, int scan_grid) {
    ScalarMap m;
    dsl::ExprPtr body = def.body;
    dsl::ExprPtr deriv = def.derivative ? def.derivative
                                        : dsl::simplify(dsl::differentiate(*def.body, def.variable));
    m.eval = [body](double x) { return dsl::evaluate(*body, x); };
    m.deriv = [deriv](double x) { return dsl::evaluate(*deriv, x); };
    m.breakpoints = dsl::nondifferentiable_points(def, scan_lo, scan_hi, scan_grid);
    m.label = def.name;
    return m;
}

ScalarMap compose_k(const ScalarMap& map, int k) {
    if (k == 1) return map;
    ScalarMap m;
    auto eval = map.eval;
    m.eval = [eval, k](double x) {
        for (int i = 0; i < k; ++i) x = eval(x);
        return x;
    };
    if (map.has_deriv()) {
        auto deriv = map.deriv;
        m.deriv = [eval, deriv, k](double x) {
            double prod = 1.0;
            for (int i = 0; i < k; ++i) {
                prod *= deriv(x);
                x = eval(x);
            }
            return prod;
        };
    }
    // Breakpoint preimages are countable and potentially dense; flag
    // proximity of any intermediate iterate instead of enumerating them.
    ScalarMap base = map;
    m.proximity = [base, k](double x, double eta) {
        for (int i = 0; i < k; ++i) {
            if (base.near_breakpoint(x, eta)) return true;
            x = base.eval(x);
        }
        return false;
    };
    m.label = map.label + "^" + std::to_string(k);
    return m;
}

VectorMap linear_vector_map(const std::vector<double>& diagonal) {
    VectorMap m;
    m.dimension = static_cast<int>(diagonal.size());
    m.eval = [diagonal](const Vec& v) {
        Vec out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = diagonal[i] * v[i];
        return out;
    };
    m.label = "diag";
    return m;
}

double euclidean_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace lipdyn
