#pragma once

#include <optional>
#include <vector>

#include "lipdyn/maps.hpp"
#include "lipdyn/orbit.hpp"

namespace lipdyn {

enum class SkipMode { Skip, Perturb, Fail };

/// Policy for orbit points that land within eta of a candidate
/// non-differentiability point. The bad set has Lebesgue measure zero, but
/// floating-point orbits can still land on it.
struct SkipPolicy {
    SkipMode mode = SkipMode::Skip;
    double eta = 1e-9;
    double perturbation = 1e-9;  // mode == Perturb only
};

enum class LyapStatus { Converged, NotConverged, DivergedMinusInf, OrbitEscaped };

struct LyapunovEstimate {
    double h_n = 0.0;  // -inf when diverged
    long n_used = 0;
    long skipped = 0;
    LyapStatus status = LyapStatus::NotConverged;
    std::vector<double> partials;  // running averages at each window boundary
};

struct ChaosReport {
    bool bounded = true;
    std::optional<PeriodDetection> asymptotically_periodic;
    LyapunovEstimate exponent;
    bool chaotic = false;
    std::string note;  // e.g. floating-point collapse artifacts
};

struct ShadowingReport {
    double h_orbit = 0.0;
    double h_cycle = 0.0;
    double gap = 0.0;
    bool orbit_diverged_minus_inf = false;
    bool cycle_minus_inf = false;
};

/// Finite-n Lyapunov exponent: mean of ln|f'(x_i)| over the orbit, applying
/// the skip policy near breakpoints. Any |f'| below 1e-300 forces status
/// DivergedMinusInf. Convergence signal: the last two per-window averages
/// (windows of n/10) agree to 1e-3 relative.
LyapunovEstimate lyapunov_exponent(const ScalarMap& map, double x1, long n, long burn_in,
                                   const SkipPolicy& policy = {}, double escape_radius = 1e12);

/// L = e^h. Returns 0 for a DivergedMinusInf estimate (flagged by status).
double lyapunov_number(const LyapunovEstimate& estimate);

/// Exact exponent of a k-cycle: (1/k) * sum ln|f'(y_i)|; -inf when any
/// |f'(y_i)| < 1e-300.
double periodic_orbit_exponent(const ScalarMap& map, const std::vector<double>& cycle,
                               double eta = 1e-9);

/// Compares the finite-n orbit exponent against the cycle exponent. Reports
/// both and the gap; makes no pass/fail judgment.
ShadowingReport check_shadowing_consistency(const ScalarMap& map, double x1,
                                            const std::vector<double>& cycle, long n);

/// Full orbit characterization: bounded + not asymptotically periodic +
/// positive converged exponent <=> chaotic.
ChaosReport classify_chaos(const ScalarMap& map, double x1, long n, long burn_in,
                           int max_period = 64, const SkipPolicy& policy = {},
                           double escape_radius = 1e12, double period_tol = 1e-8);

}  // namespace lipdyn
