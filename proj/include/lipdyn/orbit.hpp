#pragma once

#include <optional>
#include <vector>

#include "lipdyn/maps.hpp"

namespace lipdyn {

struct Orbit {
    double x1 = 0.0;
    long burn_in = 0;
    std::vector<double> samples;  // post-burn-in iterates
    long total_n = 0;             // iterates actually computed (burn-in + samples)
    bool escaped = false;
};

struct FixedPointCandidate {
    double p = 0.0;
    double residual = 0.0;  // |f(p) - p|
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

struct PeriodDetection {
    int period = 0;
    std::vector<double> cycle;  // canonical rotation: starts at the smallest value
    double residual = 0.0;      // max |f(y_i) - y_{i+1 mod k}|
    double tail_error = 0.0;    // max over trailing window of |x_{n+k} - x_n|
};

/// Iterate the map from x0. Computes burn_in + n iterates; stops early with
/// escaped=true once |x| exceeds escape_radius.
Orbit iterate(const ScalarMap& map, double x0, long n, long burn_in,
              double escape_radius = 1e12);

/// Scan f(x) - x on a uniform grid for exact zeros and sign changes, bisect
/// each bracket to |f(p) - p| <= tol. Breakpoints inside [lo, hi] are probed
/// explicitly since f(x) - x may jump across them without a grid sign change.
std::vector<FixedPointCandidate> find_fixed_points(const ScalarMap& map, double lo, double hi,
                                                   int grid_n, double tol = 1e-10);

/// Smallest k <= max_period with |x_{n+k} - x_n| <= tol over the trailing
/// window (default 10*max_period samples). Throws InsufficientSamples if the
/// orbit is shorter than 2*max_period + window.
std::optional<PeriodDetection> detect_periodicity(const ScalarMap& map, const Orbit& orbit,
                                                  int max_period, double tol = 1e-8,
                                                  int window = -1);

/// Polish a k-cycle seed by bisection on f^k(x) - x. The seed bracket
/// +/- 10*tol is widened until a sign change appears (up to half-width 1e-2);
/// throws NoBracket past that. Returns {y, f(y), ..., f^{k-1}(y)}.
std::vector<double> refine_periodic_orbit(const ScalarMap& map, int k, double seed,
                                          double tol = 1e-12);

}  // namespace lipdyn
