#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lipdyn/dsl.hpp"

namespace lipdyn {

/// A scalar map f with an optional analytic derivative and its known
/// candidate non-differentiability points.
struct ScalarMap {
    std::function<double(double)> eval;
    std::function<double(double)> deriv;  // null when unavailable
    std::vector<double> breakpoints;      // sorted, deduplicated
    std::string label;
    std::string note;  // e.g. "outside paper domain" for flagged constructions

    // Composed maps cannot enumerate breakpoint preimages; they install a
    // proximity predicate over their intermediate iterates instead.
    std::function<bool(double, double)> proximity;

    bool has_deriv() const { return static_cast<bool>(deriv); }

    /// True when x is within eta of a candidate non-differentiability point.
    bool near_breakpoint(double x, double eta) const;
};

using Vec = std::vector<double>;

struct VectorMap {
    int dimension = 1;
    std::function<Vec(const Vec&)> eval;
    std::string label;
};

enum class Family { Logistic, TentAb, PiecewiseExample, Affine };

struct ParamFamily {
    Family family;
    std::map<std::string, double> params;
};

Family family_from_name(const std::string& name);
std::string family_name(Family f);

/// Builtin families with exact analytic derivatives and exact breakpoints.
ScalarMap builtin(const ParamFamily& spec);

ScalarMap logistic_map(double a);
ScalarMap tent_map(double a, double b);
ScalarMap piecewise_example_map();
ScalarMap affine_map(double c, double d);

/// Wrap a parsed DSL definition. Breakpoints are the guard bounds plus abs
/// kinks located on the scan interval.
ScalarMap from_dsl(const dsl::MapDefinition& def, double scan_lo = -1e6, double scan_hi = 1e6,
                   int scan_grid = 65537);

/// k-fold iterate f^k. The derivative is the chain-rule product along the
/// intermediate orbit; breakpoint proximity is flagged when any intermediate
/// iterate comes within eta of a breakpoint of f.
ScalarMap compose_k(const ScalarMap& map, int k);

/// Componentwise linear map v_i -> d_i * v_i. In the Euclidean norm its exact
/// Lipschitz constant is max|d_i| and its reverse constant min|d_i|.
VectorMap linear_vector_map(const std::vector<double>& diagonal);

double euclidean_norm(const Vec& v);

}  // namespace lipdyn
