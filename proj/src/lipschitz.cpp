#include <algorithm>
#include <cmath>
#include <limits>

#include "lipdyn/lipschitz.hpp"
#include "lipdyn/rng.hpp"

namespace lipdyn {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Sink: return "Sink";
        case Verdict::Source: return "Source";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

LipschitzEstimate estimate_lipschitz(const ScalarMap& map, const NeighborhoodSpec& nbhd) {
    if (nbhd.radius < 1e-14) {
        throw DegenerateNeighborhood("neighborhood radius below 1e-14");
    }
    const double lo = nbhd.center - nbhd.radius;
    const double hi = nbhd.center + nbhd.radius;

    LipschitzEstimate est;
    est.c_hat = 0.0;
    est.r_hat = std::numeric_limits<double>::infinity();

    auto feed = [&](double x, double y) {
        if (x == y) return;
        double q = std::fabs(map.eval(x) - map.eval(y)) / std::fabs(x - y);
        est.c_hat = std::max(est.c_hat, q);
        est.r_hat = std::min(est.r_hat, q);
        ++est.pairs_used;
    };

    std::vector<double> grid(nbhd.grid_n);
    for (int i = 0; i < nbhd.grid_n; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / (nbhd.grid_n - 1);
    }
    for (int i = 0; i + 1 < nbhd.grid_n; ++i) feed(grid[i], grid[i + 1]);

    // Pairs closer than the grid spacing resolve no slope the grid pairs
    // don't, but amplify the rounding of f into the quotient.
    const double min_sep = (hi - lo) / (nbhd.grid_n - 1);
    CounterRng rng(nbhd.rng_seed);
    for (int i = 0; i < nbhd.pair_samples; ++i) {
        double x = rng.uniform(2 * static_cast<std::uint64_t>(i), lo, hi);
        double y = rng.uniform(2 * static_cast<std::uint64_t>(i) + 1, lo, hi);
        if (std::fabs(x - y) < min_sep) continue;
        feed(x, y);
    }

    if (map.has_deriv()) {
        double sup = -std::numeric_limits<double>::infinity();
        double inf = std::numeric_limits<double>::infinity();
        for (double x : grid) {
            if (map.near_breakpoint(x, 1e-9)) continue;
            double d = std::fabs(map.deriv(x));
            sup = std::max(sup, d);
            inf = std::min(inf, d);
        }
        if (std::isfinite(sup)) {
            est.deriv_sup = sup;
            est.deriv_inf = inf;
        }
    }
    return est;
}

namespace {

bool monotone_on_grid(const ScalarMap& map, double lo, double hi, int grid_n) {
    bool up = true, down = true;
    double prev = map.eval(lo);
    for (int i = 1; i < grid_n; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / (grid_n - 1);
        double v = map.eval(x);
        if (v < prev) up = false;
        if (v > prev) down = false;
        prev = v;
    }
    return up || down;
}

// |slope| range from adjacent grid pairs strictly on one side of p.
std::optional<std::pair<double, double>> side_slope_range(const ScalarMap& map, double a, double b,
                                                          int grid_n) {
    if (b - a < 1e-13) return std::nullopt;
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    double prev_x = a, prev_v = map.eval(a);
    for (int i = 1; i < grid_n; ++i) {
        double x = a + (b - a) * static_cast<double>(i) / (grid_n - 1);
        double v = map.eval(x);
        double q = std::fabs(v - prev_v) / (x - prev_x);
        mn = std::min(mn, q);
        mx = std::max(mx, q);
        prev_x = x;
        prev_v = v;
    }
    return std::make_pair(mn, mx);
}

}  // namespace

Classification classify_fixed_point(const ScalarMap& map, double p, const NeighborhoodSpec& nbhd,
                                    double margin) {
    if (std::fabs(map.eval(p) - p) > 1e-8) {
        throw NotAFixedPoint("|f(p) - p| > 1e-8 at p = " + std::to_string(p));
    }
    NeighborhoodSpec spec = nbhd;
    spec.center = p;
    const double lo = p - spec.radius, hi = p + spec.radius;

    LipschitzEstimate est = estimate_lipschitz(map, spec);

    const bool p_is_break = map.near_breakpoint(p, 1e-9);

    // The grid sup/inf of |f'| are trustworthy only when the derivative
    // exists on the whole punctured neighborhood.
    bool other_break_inside = false;
    for (double b : map.breakpoints) {
        if (b > lo && b < hi && std::fabs(b - p) > 1e-9) other_break_inside = true;
    }
    if (map.proximity) {
        for (int i = 0; i < spec.grid_n; ++i) {
            double x = lo + (hi - lo) * static_cast<double>(i) / (spec.grid_n - 1);
            if (std::fabs(x - p) > 1e-9 && map.near_breakpoint(x, 1e-9)) other_break_inside = true;
        }
    }
    const bool deriv_trusted =
        map.has_deriv() && est.deriv_sup.has_value() && !p_is_break && !other_break_inside;

    const bool monotone = monotone_on_grid(map, lo, hi, spec.grid_n);

    Classification cls;
    cls.evidence = est;
    cls.margin = margin;
    cls.method = Method::LipschitzTest;

    double c_ev = deriv_trusted ? *est.deriv_sup : est.c_hat;
    bool r_from_deriv = deriv_trusted && monotone;
    double r_ev = r_from_deriv ? *est.deriv_inf : est.r_hat;
    cls.c_evidence = c_ev;
    cls.r_evidence = r_ev;

    if (c_ev <= 1.0 - margin) {
        cls.verdict = Verdict::Sink;
        cls.detail = deriv_trusted ? "c from grid sup |f'|" : "c from pair quotients (lower bound)";
    } else if (r_ev >= 1.0 + margin) {
        cls.verdict = Verdict::Source;
        cls.detail = r_from_deriv ? "r from grid inf |f'| (monotone neighborhood)"
                                  : "r from pair quotients (upper bound, necessary evidence only)";
    } else {
        cls.verdict = Verdict::Inconclusive;
        cls.detail = "neither criterion met with margin";
    }

    if (p_is_break) {
        cls.left_slope_range = side_slope_range(map, lo, p - 1e-12, spec.grid_n);
        cls.right_slope_range = side_slope_range(map, p + 1e-12, hi, spec.grid_n);
    }
    return cls;
}

Classification classify_fixed_point_smooth(const ScalarMap& map, double p) {
    if (!map.has_deriv()) throw DerivativeUnavailable("map has no derivative");
    if (map.near_breakpoint(p, 1e-9)) {
        throw DerivativeUnavailable("p is within 1e-9 of a breakpoint");
    }
    double d = std::fabs(map.deriv(p));
    Classification cls;
    cls.method = Method::SmoothOracle;
    cls.multiplier = d;
    cls.c_evidence = d;
    cls.r_evidence = d;
    if (std::fabs(d - 1.0) <= 1e-12) {
        cls.verdict = Verdict::Inconclusive;
        cls.detail = "|f'(p)| = 1 within 1e-12";
    } else if (d < 1.0) {
        cls.verdict = Verdict::Sink;
        cls.detail = "|f'(p)| < 1";
    } else {
        cls.verdict = Verdict::Source;
        cls.detail = "|f'(p)| > 1";
    }
    return cls;
}

Classification classify_periodic_orbit(const ScalarMap& map, const std::vector<double>& cycle,
                                       double nbhd_radius, double margin) {
    const int k = static_cast<int>(cycle.size());
    if (k < 1) throw NotAPeriodicOrbit("empty cycle");
    for (int i = 0; i < k; ++i) {
        if (std::fabs(map.eval(cycle[i]) - cycle[(i + 1) % k]) > 1e-8) {
            throw NotAPeriodicOrbit("cycle residual exceeds 1e-8");
        }
    }
    ScalarMap g = compose_k(map, k);
    NeighborhoodSpec spec;
    spec.radius = nbhd_radius;
    Classification cls = classify_fixed_point(g, cycle[0], spec, margin);
    if (map.has_deriv()) {
        double prod = 1.0;
        for (double y : cycle) prod *= std::fabs(map.deriv(y));
        cls.multiplier = prod;
    }
    return cls;
}

FixedPointCandidate contraction_fixed_point(const ScalarMap& map, double x0, double tol,
                                            int max_iter) {
    double x = x0;
    double fx = map.eval(x);
    double delta_prev = std::fabs(fx - x);
    double c_hat = 0.0;
    for (int i = 0; i < max_iter; ++i) {
        if (delta_prev == 0.0) {
            return {x, 0.0, x, x};
        }
        double x_next = fx;
        fx = map.eval(x_next);
        double delta = std::fabs(fx - x_next);
        double q = delta / delta_prev;
        if (q >= 1.0) {
            throw NotAContraction("observed step ratio " + std::to_string(q) + " >= 1");
        }
        c_hat = std::max(c_hat, q);
        if (delta <= tol * (1.0 - c_hat) / c_hat) {
            double p = fx;
            double residual = std::fabs(map.eval(p) - p);
            return {p, residual, x_next, x_next};
        }
        x = x_next;
        delta_prev = delta;
    }
    throw MaxIterExceeded("no convergence within " + std::to_string(max_iter) + " iterations");
}

namespace {

// Deterministic point in the Euclidean ball of radius eps around p.
// Consumes 2*m + 1 counters starting at base.
Vec ball_point(const CounterRng& rng, std::uint64_t base, const Vec& p, double eps) {
    const std::size_t m = p.size();
    Vec v(m);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double u1 = (static_cast<double>(rng.bits(base + 2 * i) >> 11) + 1.0) * 0x1.0p-53;
        double u2 = rng.uniform(base + 2 * i + 1);
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        v[i] = z;
        norm2 += z * z;
    }
    double norm = std::sqrt(norm2);
    if (norm == 0.0) norm = 1.0;
    double u = rng.uniform(base + 2 * m);
    double radius = eps * std::pow(u, 1.0 / static_cast<double>(m));
    Vec out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = p[i] + radius * v[i] / norm;
    return out;
}

// Max/min pair quotient over `pairs` sampled pairs, counters starting at base.
void sample_vector_quotients(const VectorMap& vmap, const Vec& p, double eps,
                             const CounterRng& rng, std::uint64_t base, int pairs, double* c_hat,
                             double* r_hat) {
    const std::uint64_t stride = 2 * (2 * static_cast<std::uint64_t>(p.size()) + 1);
    *c_hat = 0.0;
    *r_hat = std::numeric_limits<double>::infinity();
    for (int i = 0; i < pairs; ++i) {
        std::uint64_t at = base + i * stride;
        Vec v = ball_point(rng, at, p, eps);
        Vec w = ball_point(rng, at + stride / 2, p, eps);
        Vec dv(v.size()), df(v.size());
        Vec fv = vmap.eval(v), fw = vmap.eval(w);
        for (std::size_t j = 0; j < v.size(); ++j) {
            dv[j] = v[j] - w[j];
            df[j] = fv[j] - fw[j];
        }
        double den = euclidean_norm(dv);
        if (den == 0.0) continue;
        double q = euclidean_norm(df) / den;
        *c_hat = std::max(*c_hat, q);
        *r_hat = std::min(*r_hat, q);
    }
}

}  // namespace

Classification classify_fixed_point_vector(const VectorMap& vmap, const Vec& p,
                                           const NeighborhoodSpec& nbhd, double margin) {
    Vec fp = vmap.eval(p);
    Vec res(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) res[i] = fp[i] - p[i];
    if (euclidean_norm(res) > 1e-8) {
        throw NotAFixedPoint("||f(p) - p|| > 1e-8");
    }

    CounterRng rng(nbhd.rng_seed);
    const std::uint64_t stride = 2 * (2 * static_cast<std::uint64_t>(p.size()) + 1);

    Classification cls;
    cls.margin = margin;
    cls.method = Method::LipschitzTest;

    double c_hat, r_hat;
    sample_vector_quotients(vmap, p, nbhd.radius, rng, 0, nbhd.pair_samples, &c_hat, &r_hat);
    cls.evidence.c_hat = c_hat;
    cls.evidence.r_hat = r_hat;
    cls.evidence.pairs_used = nbhd.pair_samples;
    cls.c_evidence = c_hat;
    cls.r_evidence = r_hat;

    if (c_hat <= 1.0 - margin) {
        // Confirmation pass at 4x density over a fresh counter range.
        double c4, r4;
        sample_vector_quotients(vmap, p, nbhd.radius, rng,
                                static_cast<std::uint64_t>(nbhd.pair_samples) * stride,
                                4 * nbhd.pair_samples, &c4, &r4);
        if (c4 <= 1.0 - margin) {
            cls.verdict = Verdict::Sink;
            cls.detail = "c_hat below 1 - margin, confirmed at 4x samples";
            return cls;
        }
        cls.evidence.c_hat = std::max(c_hat, c4);
        cls.evidence.r_hat = std::min(r_hat, r4);
    }
    if (cls.evidence.r_hat >= 1.0 + margin) {
        cls.verdict = Verdict::Source;
        cls.detail = "r_hat above 1 + margin";
    } else {
        cls.verdict = Verdict::Inconclusive;
        cls.detail = "pair quotients straddle 1";
    }
    return cls;
}

}  // namespace lipdyn
