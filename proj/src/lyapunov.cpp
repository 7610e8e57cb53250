#include <cmath>
#include <limits>

#include "lipdyn/lyapunov.hpp"

namespace lipdyn {

namespace {

constexpr double kDerivFloor = 1e-300;
constexpr double kInf = std::numeric_limits<double>::infinity();

double central_difference(const ScalarMap& map, double x) {
    double h = std::sqrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::fabs(x));
    return (map.eval(x + h) - map.eval(x - h)) / (2.0 * h);
}

}  // namespace

LyapunovEstimate lyapunov_exponent(const ScalarMap& map, double x1, long n, long burn_in,
                                   const SkipPolicy& policy, double escape_radius) {
    LyapunovEstimate est;
    double x = x1;
    for (long i = 0; i < burn_in; ++i) {
        if (std::fabs(x) > escape_radius) {
            est.status = LyapStatus::OrbitEscaped;
            return est;
        }
        x = map.eval(x);
    }

    const long window = std::max<long>(1, n / 10);
    double sum = 0.0;
    bool floored = false;

    for (long i = 0; i < n; ++i) {
        if (std::fabs(x) > escape_radius) {
            est.status = LyapStatus::OrbitEscaped;
            return est;
        }
        double x_eval = x;
        bool skip_term = false;
        if (map.near_breakpoint(x, policy.eta)) {
            switch (policy.mode) {
                case SkipMode::Skip:
                    skip_term = true;
                    break;
                case SkipMode::Perturb:
                    if (map.has_deriv()) {
                        x_eval = x + policy.perturbation;
                    } else {
                        skip_term = true;  // finite differences straddle the kink
                    }
                    break;
                case SkipMode::Fail:
                    if (map.has_deriv()) {
                        throw BreakpointHit("orbit point within eta of a breakpoint at step " +
                                            std::to_string(i));
                    }
                    skip_term = true;
                    break;
            }
        }
        if (skip_term) {
            ++est.skipped;
        } else {
            double d = map.has_deriv() ? map.deriv(x_eval) : central_difference(map, x_eval);
            double mag = std::fabs(d);
            if (mag < kDerivFloor) {
                floored = true;
            } else {
                sum += std::log(mag);
                ++est.n_used;
            }
        }
        if ((i + 1) % window == 0 && est.n_used > 0) {
            est.partials.push_back(sum / static_cast<double>(est.n_used));
        }
        x = map.eval(x);
    }

    if (floored) {
        est.h_n = -kInf;
        est.status = LyapStatus::DivergedMinusInf;
        return est;
    }
    est.h_n = est.n_used > 0 ? sum / static_cast<double>(est.n_used) : 0.0;

    if (est.partials.size() >= 2) {
        double a = est.partials[est.partials.size() - 2];
        double b = est.partials.back();
        double scale = std::max(std::fabs(a), std::fabs(b));
        est.status = (scale == 0.0 || std::fabs(a - b) < 1e-3 * scale) ? LyapStatus::Converged
                                                                       : LyapStatus::NotConverged;
    } else {
        est.status = LyapStatus::NotConverged;
    }
    return est;
}

double lyapunov_number(const LyapunovEstimate& estimate) {
    if (estimate.status == LyapStatus::DivergedMinusInf) return 0.0;
    return std::exp(estimate.h_n);
}

double periodic_orbit_exponent(const ScalarMap& map, const std::vector<double>& cycle,
                               double eta) {
    if (!map.has_deriv()) throw DerivativeUnavailable("map has no derivative");
    const int k = static_cast<int>(cycle.size());
    if (k < 1) throw BreakpointOnCycle("empty cycle");
    for (int i = 0; i < k; ++i) {
        if (std::fabs(map.eval(cycle[i]) - cycle[(i + 1) % k]) > 1e-8) {
            throw NotAPeriodicOrbit("cycle residual exceeds 1e-8");
        }
    }
    double sum = 0.0;
    for (double y : cycle) {
        if (map.near_breakpoint(y, eta)) {
            throw BreakpointOnCycle("cycle point within eta of a breakpoint");
        }
        double mag = std::fabs(map.deriv(y));
        if (mag < kDerivFloor) return -kInf;
        sum += std::log(mag);
    }
    return sum / static_cast<double>(k);
}

ShadowingReport check_shadowing_consistency(const ScalarMap& map, double x1,
                                            const std::vector<double>& cycle, long n) {
    ShadowingReport report;
    LyapunovEstimate est = lyapunov_exponent(map, x1, n, 0);
    report.h_orbit = est.h_n;
    report.orbit_diverged_minus_inf = est.status == LyapStatus::DivergedMinusInf;
    report.h_cycle = periodic_orbit_exponent(map, cycle);
    report.cycle_minus_inf = std::isinf(report.h_cycle) && report.h_cycle < 0;
    if (report.orbit_diverged_minus_inf && report.cycle_minus_inf) {
        report.gap = 0.0;
    } else {
        report.gap = std::fabs(report.h_orbit - report.h_cycle);
    }
    return report;
}

ChaosReport classify_chaos(const ScalarMap& map, double x1, long n, long burn_in, int max_period,
                           const SkipPolicy& policy, double escape_radius, double period_tol) {
    ChaosReport report;
    Orbit orbit = iterate(map, x1, n, burn_in, escape_radius);
    if (orbit.escaped) {
        report.bounded = false;
        report.exponent.status = LyapStatus::OrbitEscaped;
        report.chaotic = false;
        return report;
    }
    long window = 10L * max_period;
    if (static_cast<long>(orbit.samples.size()) >= 2L * max_period + window) {
        report.asymptotically_periodic = detect_periodicity(map, orbit, max_period, period_tol);
    }
    report.exponent = lyapunov_exponent(map, x1, n, burn_in, policy, escape_radius);
    report.chaotic = report.bounded && !report.asymptotically_periodic.has_value() &&
                     report.exponent.status == LyapStatus::Converged && report.exponent.h_n > 0.0;
    if (report.asymptotically_periodic && !map.breakpoints.empty()) {
        // Doubles collapsing onto an exact cycle through a kink-adjacent
        // orbit is a floating-point artifact for slope-|a|>1 tent-like maps.
        report.note = "periodicity detected on a map with breakpoints; may be a "
                      "floating-point collapse artifact";
    }
    return report;
}

}  // namespace lipdyn
