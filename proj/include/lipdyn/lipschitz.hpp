#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lipdyn/maps.hpp"
#include "lipdyn/orbit.hpp"

namespace lipdyn {

struct NeighborhoodSpec {
    double center = 0.0;
    double radius = 1e-2;
    int pair_samples = 2000;
    int grid_n = 512;
    std::uint64_t rng_seed = 0;
};

/// Empirical Lipschitz data over a neighborhood. c_hat is the max sampled
/// pair quotient (a lower bound on the true Lipschitz constant c), r_hat the
/// min (an upper bound on the true reverse constant r). deriv_sup/inf are
/// grid extrema of |f'| away from breakpoints, when a derivative exists.
struct LipschitzEstimate {
    double c_hat = 0.0;
    double r_hat = 0.0;
    std::optional<double> deriv_sup;
    std::optional<double> deriv_inf;
    long pairs_used = 0;
};

enum class Verdict { Sink, Source, Inconclusive };
enum class Method { LipschitzTest, SmoothOracle };

struct Classification {
    Verdict verdict = Verdict::Inconclusive;
    LipschitzEstimate evidence;
    double c_evidence = 0.0;  // the c-estimate the verdict was judged on
    double r_evidence = 0.0;  // the r-estimate the verdict was judged on
    double margin = 0.05;
    Method method = Method::LipschitzTest;
    std::string detail;
    // One-sided |slope| ranges around a breakpoint fixed point.
    std::optional<std::pair<double, double>> left_slope_range;
    std::optional<std::pair<double, double>> right_slope_range;
    // Smooth-oracle multiplier |f'(p)|, or the cycle product for orbits.
    std::optional<double> multiplier;
};

std::string verdict_name(Verdict v);

/// Random pair quotients plus all adjacent grid pairs on
/// [center - radius, center + radius]. Reproducible from (rng_seed, spec);
/// extending pair_samples keeps the already-drawn prefix.
LipschitzEstimate estimate_lipschitz(const ScalarMap& map, const NeighborhoodSpec& nbhd);

/// Stability test at a verified fixed point. Sink evidence prefers the grid
/// sup of |f'| (pair quotients only lower-bound c); source evidence uses the
/// grid inf of |f'| only when f is monotone on the neighborhood, else the
/// necessary-but-not-sufficient r_hat.
Classification classify_fixed_point(const ScalarMap& map, double p, const NeighborhoodSpec& nbhd,
                                    double margin = 0.05);

/// Classical derivative test |f'(p)| vs 1; used as a cross-check oracle.
Classification classify_fixed_point_smooth(const ScalarMap& map, double p);

/// Applies classify_fixed_point to f^k at cycle[0]. multiplier carries the
/// smooth product |f'(y_1) ... f'(y_k)| when the derivative exists.
Classification classify_periodic_orbit(const ScalarMap& map, const std::vector<double>& cycle,
                                       double nbhd_radius = 1e-2, double margin = 0.05);

/// Fixed-point iteration for a (presumed) global contraction. Any observed
/// step ratio >= 1 aborts with NotAContraction.
FixedPointCandidate contraction_fixed_point(const ScalarMap& map, double x0, double tol = 1e-12,
                                            int max_iter = 1000);

/// Pair-quotient stability test in the Euclidean ball of radius nbhd.radius
/// around p. A Sink verdict requires a 4x denser confirmation pass to agree.
Classification classify_fixed_point_vector(const VectorMap& vmap, const Vec& p,
                                           const NeighborhoodSpec& nbhd, double margin = 0.05);

}  // namespace lipdyn
