#include <algorithm>
#include <cmath>

#include "lipdyn/orbit.hpp"

namespace lipdyn {

Orbit iterate(const ScalarMap& map, double x0, long n, long burn_in, double escape_radius) {
    Orbit orbit;
    orbit.x1 = x0;
    orbit.burn_in = burn_in;
    double x = x0;
    for (long i = 0; i < burn_in + n; ++i) {
        if (std::fabs(x) > escape_radius) {
            orbit.escaped = true;
            return orbit;
        }
        if (i >= burn_in) orbit.samples.push_back(x);
        x = map.eval(x);
        ++orbit.total_n;
    }
    if (std::fabs(x) > escape_radius) orbit.escaped = true;
    return orbit;
}

namespace {

double bisect_to_tol(const ScalarMap& map, double lo, double hi, double glo, double tol,
                     double* residual) {
    auto g = [&](double x) { return map.eval(x) - x; };
    double mid = lo, gm = glo;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        gm = g(mid);
        if (std::fabs(gm) <= tol || hi - lo <= 4e-16 * std::max(1.0, std::fabs(mid))) break;
        if ((glo < 0.0) == (gm < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    *residual = std::fabs(gm);
    return mid;
}

}  // namespace

std::vector<FixedPointCandidate> find_fixed_points(const ScalarMap& map, double lo, double hi,
                                                   int grid_n, double tol) {
    std::vector<FixedPointCandidate> found;
    auto g = [&](double x) { return map.eval(x) - x; };
    auto add = [&](double p, double residual, double blo, double bhi) {
        for (const auto& c : found) {
            if (std::fabs(c.p - p) <= 1e-9) return;
        }
        found.push_back({p, residual, blo, bhi});
    };

    double prev_x = lo, prev_g = g(lo);
    if (prev_g == 0.0) add(lo, 0.0, lo, lo);
    for (int i = 1; i < grid_n; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / (grid_n - 1);
        double gx = g(x);
        if (gx == 0.0) {
            add(x, 0.0, x, x);
        } else if (prev_g != 0.0 && (prev_g < 0.0) != (gx < 0.0)) {
            double residual;
            double p = bisect_to_tol(map, prev_x, x, prev_g, tol, &residual);
            if (residual <= tol) add(p, residual, prev_x, x);
        }
        prev_x = x;
        prev_g = gx;
    }

    // f(x) - x can jump across a breakpoint without a grid sign change.
    for (double b : map.breakpoints) {
        if (b < lo || b > hi) continue;
        double r = std::fabs(g(b));
        if (r <= tol) add(b, r, b, b);
    }

    std::sort(found.begin(), found.end(),
              [](const FixedPointCandidate& a, const FixedPointCandidate& b) { return a.p < b.p; });
    return found;
}

std::optional<PeriodDetection> detect_periodicity(const ScalarMap& map, const Orbit& orbit,
                                                  int max_period, double tol, int window) {
    if (window <= 0) window = 10 * max_period;
    const std::vector<double>& s = orbit.samples;
    long n = static_cast<long>(s.size());
    if (n < 2L * max_period + window) {
        throw InsufficientSamples("need at least " + std::to_string(2L * max_period + window) +
                                  " samples, have " + std::to_string(n));
    }
    for (int k = 1; k <= max_period; ++k) {
        double tail_error = 0.0;
        bool ok = true;
        for (long m = n - window; m < n; ++m) {
            double d = std::fabs(s[m] - s[m - k]);
            tail_error = std::max(tail_error, d);
            if (d > tol) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        PeriodDetection det;
        det.period = k;
        det.tail_error = tail_error;
        det.cycle.assign(s.end() - k, s.end());
        auto min_it = std::min_element(det.cycle.begin(), det.cycle.end());
        std::rotate(det.cycle.begin(), min_it, det.cycle.end());
        for (int i = 0; i < k; ++i) {
            double r = std::fabs(map.eval(det.cycle[i]) - det.cycle[(i + 1) % k]);
            det.residual = std::max(det.residual, r);
        }
        return det;
    }
    return std::nullopt;
}

std::vector<double> refine_periodic_orbit(const ScalarMap& map, int k, double seed, double tol) {
    ScalarMap gmap = compose_k(map, k);
    auto g = [&](double x) { return gmap.eval(x) - x; };

    double y = seed;
    if (g(seed) != 0.0) {
        double width = 10.0 * tol;
        double glo = 0.0, ghi = 0.0;
        bool bracketed = false;
        while (width <= 1e-2) {
            glo = g(seed - width);
            ghi = g(seed + width);
            if (glo == 0.0) {
                y = seed - width;
                bracketed = true;
                break;
            }
            if (ghi == 0.0) {
                y = seed + width;
                bracketed = true;
                break;
            }
            if ((glo < 0.0) != (ghi < 0.0)) {
                double residual;
                y = bisect_to_tol(gmap, seed - width, seed + width, glo, tol, &residual);
                if (residual > tol) throw NoBracket("bisection stalled above tolerance");
                bracketed = true;
                break;
            }
            width *= 2.0;
        }
        if (!bracketed) {
            throw NoBracket("no sign change of f^k(x) - x within +/- 1e-2 of seed");
        }
    }

    std::vector<double> cycle(k);
    for (int i = 0; i < k; ++i) {
        cycle[i] = y;
        y = map.eval(y);
    }
    return cycle;
}

}  // namespace lipdyn
