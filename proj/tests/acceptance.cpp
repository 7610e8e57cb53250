// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lipdyn/dsl.hpp"
#include "lipdyn/lipschitz.hpp"
#include "lipdyn/lyapunov.hpp"
#include "lipdyn/rng.hpp"

using namespace lipdyn;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool tent_exponent() {
    auto t0 = std::chrono::steady_clock::now();
    ScalarMap tent = tent_map(-2.0, 1.0);
    LyapunovEstimate est = lyapunov_exponent(tent, 0.2, 10000, 100);
    double elapsed = seconds_since(t0);
    return std::fabs(est.h_n - std::log(2.0)) <= 1e-6 && elapsed < 0.1;
}

bool logistic4_chaos() {
    auto t0 = std::chrono::steady_clock::now();
    ChaosReport rep = classify_chaos(logistic_map(4.0), 0.3, 100000, 1000);
    double elapsed = seconds_since(t0);
    return rep.chaotic && !rep.asymptotically_periodic.has_value() &&
           rep.exponent.h_n >= 0.67 && rep.exponent.h_n <= 0.72 && elapsed < 1.0;
}

bool exponent_equality() {
    double a = 3.2;
    double root = std::sqrt((a + 1.0) * (a - 3.0));
    std::vector<double> cycle{((a + 1.0) - root) / (2.0 * a), ((a + 1.0) + root) / (2.0 * a)};
    ShadowingReport rep = check_shadowing_consistency(logistic_map(a), 0.3, cycle, 100000);
    return std::fabs(rep.h_cycle - (-0.916290731874155)) <= 1e-6 && rep.gap <= 5e-3;
}

bool classify_at(const ScalarMap& map, double p, Verdict want) {
    NeighborhoodSpec nbhd;
    nbhd.center = p;
    return classify_fixed_point(map, p, nbhd).verdict == want;
}

bool stability_fixtures() {
    bool ok = true;
    ok = ok && classify_at(logistic_map(2.0), 0.5, Verdict::Sink);
    ok = ok && classify_at(logistic_map(2.0), 0.0, Verdict::Source);
    ok = ok && classify_at(logistic_map(3.0), 0.0, Verdict::Source);
    ok = ok && classify_at(logistic_map(3.0), 2.0 / 3.0, Verdict::Inconclusive);
    ok = ok && classify_at(tent_map(-2.0, 1.0), -1.0, Verdict::Source);
    ok = ok && classify_at(tent_map(-2.0, 1.0), 1.0 / 3.0, Verdict::Source);

    ScalarMap pw = piecewise_example_map();
    NeighborhoodSpec nbhd;
    Classification p0 = classify_fixed_point(pw, 0.0, nbhd);
    ok = ok && p0.verdict == Verdict::Inconclusive;
    ok = ok && p0.left_slope_range && std::fabs(p0.left_slope_range->second - 2.0) <= 1e-6;
    ok = ok && p0.right_slope_range && p0.right_slope_range->first <= 1e-3;
    Classification p1 = classify_fixed_point(pw, 1.0, nbhd);
    ok = ok && p1.verdict == Verdict::Inconclusive;
    ok = ok && p1.left_slope_range && std::fabs(p1.left_slope_range->second - 2.0) <= 0.05;
    ok = ok && p1.right_slope_range && std::fabs(p1.right_slope_range->second - 0.5) <= 1e-9;

    // Lipschitz-test verdicts agree with the smooth oracle where it applies.
    struct OracleCase {
        ScalarMap map;
        double p;
    };
    const OracleCase cases[] = {
        {logistic_map(2.0), 0.5}, {logistic_map(2.0), 0.0}, {logistic_map(3.0), 0.0},
        {tent_map(-2.0, 1.0), -1.0}, {tent_map(-2.0, 1.0), 1.0 / 3.0},
    };
    for (const OracleCase& c : cases) {
        NeighborhoodSpec n;
        n.center = c.p;
        ok = ok && classify_fixed_point(c.map, c.p, n).verdict ==
                       classify_fixed_point_smooth(c.map, c.p).verdict;
    }
    return ok;
}

bool banach_contraction() {
    FixedPointCandidate fp = contraction_fixed_point(affine_map(0.5, 1.0), 100.0, 1e-12, 60);
    if (std::fabs(fp.p - 2.0) > 1e-12) return false;
    try {
        contraction_fixed_point(affine_map(2.0, 0.0), 1.0);
        return false;
    } catch (const NotAContraction&) {
        return true;
    }
}

bool vector_classification() {
    NeighborhoodSpec nbhd;
    nbhd.pair_samples = 2000;
    bool ok = true;
    ok = ok && classify_fixed_point_vector(linear_vector_map({0.5, 0.25}), {0.0, 0.0},
                                           nbhd).verdict == Verdict::Sink;
    ok = ok && classify_fixed_point_vector(linear_vector_map({2.0, 3.0}), {0.0, 0.0},
                                           nbhd).verdict == Verdict::Source;
    ok = ok && classify_fixed_point_vector(linear_vector_map({0.5, 2.0}), {0.0, 0.0},
                                           nbhd).verdict == Verdict::Inconclusive;
    Classification a = classify_fixed_point_vector(linear_vector_map({0.5, 0.25}), {0.0, 0.0},
                                                   nbhd);
    Classification b = classify_fixed_point_vector(linear_vector_map({0.5, 0.25}), {0.0, 0.0},
                                                   nbhd);
    return ok && a.c_evidence == b.c_evidence && a.r_evidence == b.r_evidence;
}

dsl::ExprPtr random_expr(const CounterRng& rng, std::uint64_t& ctr, int depth) {
    using namespace dsl;
    auto u = [&] { return rng.uniform(ctr++); };
    if (depth <= 0 || u() < 0.25) {
        if (u() < 0.5) return var("x");
        return constant(std::floor(u() * 1000.0) / 16.0);
    }
    double pick = u();
    if (pick < 0.12) return neg(random_expr(rng, ctr, depth - 1));
    if (pick < 0.24) return dsl::abs(random_expr(rng, ctr, depth - 1));
    if (pick < 0.40) return add(random_expr(rng, ctr, depth - 1), random_expr(rng, ctr, depth - 1));
    if (pick < 0.56) return sub(random_expr(rng, ctr, depth - 1), random_expr(rng, ctr, depth - 1));
    if (pick < 0.72) return mul(random_expr(rng, ctr, depth - 1), random_expr(rng, ctr, depth - 1));
    if (pick < 0.80)
        return dsl::div(random_expr(rng, ctr, depth - 1), random_expr(rng, ctr, depth - 1));
    if (pick < 0.90)
        return dsl::pow(random_expr(rng, ctr, depth - 1), static_cast<int>(u() * 5.0));
    int nbranches = 1 + static_cast<int>(u() * 2.0);
    std::vector<Branch> branches;
    for (int i = 0; i < nbranches; ++i) {
        Guard g;
        g.var = "x";
        g.op = static_cast<CmpOp>(static_cast<int>(u() * 4.0));
        g.bound = std::floor(u() * 100.0) / 8.0;
        branches.push_back({g, random_expr(rng, ctr, depth - 1)});
    }
    return piecewise(std::move(branches), random_expr(rng, ctr, depth - 1));
}

bool parser_suite() {
    const char* files[] = {"/maps/logistic.map", "/maps/piecewise.map", "/maps/tent.map"};
    for (const char* rel : files) {
        std::ifstream in(std::string(LIPDYN_SOURCE_DIR) + rel);
        if (!in) return false;
        std::ostringstream buf;
        buf << in.rdbuf();
        dsl::MapDefinition def = dsl::parse_map(buf.str());

        // Symbolic derivative vs central finite differences, 100 points.
        std::vector<double> breaks = dsl::nondifferentiable_points(def, -3.0, 3.0, 2048);
        CounterRng rng(17);
        std::uint64_t ctr = 0;
        int checked = 0;
        while (checked < 100) {
            double x = rng.uniform(ctr++, -2.0, 2.0);
            bool near = false;
            for (double b : breaks) near = near || std::fabs(x - b) <= 1e-3;
            if (near) continue;
            double h = 1e-6 * std::max(1.0, std::fabs(x));
            double sym = dsl::evaluate(*def.derivative, x);
            double num = (dsl::evaluate(*def.body, x + h) - dsl::evaluate(*def.body, x - h)) /
                         (2.0 * h);
            if (std::fabs(sym - num) > 1e-5 * std::max(1.0, std::fabs(sym))) return false;
            ++checked;
        }
    }

    CounterRng rng(2024);
    std::uint64_t ctr = 0;
    for (int i = 0; i < 500; ++i) {
        dsl::ExprPtr e = random_expr(rng, ctr, 4);
        dsl::ExprPtr back = dsl::parse_expr_string(dsl::pretty_print(*e));
        if (!dsl::structurally_equal(*e, *back)) return false;
    }
    return true;
}

bool estimator_properties() {
    // Exactness on an affine map.
    ScalarMap aff = affine_map(0.5, 1.0);
    NeighborhoodSpec nbhd;
    nbhd.center = 2.0;
    nbhd.radius = 1.0;
    LipschitzEstimate est = estimate_lipschitz(aff, nbhd);
    if (std::fabs(est.c_hat - 0.5) > 1e-12 || std::fabs(est.r_hat - 0.5) > 1e-12) return false;

    // Monotone refinement under a fixed seed.
    ScalarMap f = logistic_map(3.7);
    NeighborhoodSpec spec;
    spec.center = 0.4;
    double prev_c = 0.0, prev_r = 1e300;
    for (int n : {200, 500, 2000, 8000}) {
        spec.pair_samples = n;
        LipschitzEstimate e = estimate_lipschitz(f, spec);
        if (e.c_hat < prev_c || e.r_hat > prev_r) return false;
        prev_c = e.c_hat;
        prev_r = e.r_hat;
    }

    // Chain rule on the logistic 2-cycle: the exponent of the cycle under f
    // equals half the exponent of its point as a fixed point of f^2.
    double a = 3.2;
    double root = std::sqrt((a + 1.0) * (a - 3.0));
    std::vector<double> cycle{((a + 1.0) - root) / (2.0 * a), ((a + 1.0) + root) / (2.0 * a)};
    ScalarMap f32 = logistic_map(a);
    double h_cycle = periodic_orbit_exponent(f32, cycle);
    double h_squared = periodic_orbit_exponent(compose_k(f32, 2), {cycle[0]});
    return std::fabs(h_squared - 2.0 * h_cycle) <= 1e-10 * std::fabs(h_squared);
}

std::string run_capture(const std::string& args) {
    std::string cmd = std::string(LIPDYN_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {};
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    return out;
}

bool cli_determinism() {
    const std::string cmds[] = {
        "analyze --map builtin:tent_ab:a=-2,b=1 --x0 0.2 --iters 10000",
        "analyze --map builtin:logistic:a=4 --x0 0.3 --iters 20000 --burn-in 1000",
        "classify --map builtin:logistic:a=2 --auto --interval=-0.2,0.8",
        "sweep --family logistic --param a --from 2.8 --to 3.6 --steps 5 --iters 2000",
    };
    for (const std::string& cmd : cmds) {
        std::string a = run_capture(cmd);
        std::string b = run_capture(cmd);
        if (a.empty() || a != b) return false;
    }
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool()> check;
    };
    const Criterion criteria[] = {
        {"tent exponent ln 2 within 1e-6 in under 0.1 s", tent_exponent},
        {"logistic a=4 chaotic with h in [0.67, 0.72] in under 1 s", logistic4_chaos},
        {"cycle exponent -0.916291 within 1e-6, orbit gap <= 5e-3", exponent_equality},
        {"fixed-point stability fixtures", stability_fixtures},
        {"Banach contraction: 2 within 1e-12 in <= 60 iterations", banach_contraction},
        {"vector classification on diagonal maps, deterministic", vector_classification},
        {"parser: 3 map files, FD agreement 1e-5, 500 round-trips", parser_suite},
        {"estimators: affine exact 1e-12, monotone refinement, chain rule 1e-10",
         estimator_properties},
        {"CLI byte-identical repeated runs", cli_determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        bool ok = false;
        try {
            ok = c.check();
        } catch (const std::exception& e) {
            std::printf("FAIL  %s (exception: %s)\n", c.name, e.what());
            ++failures;
            continue;
        }
        std::printf("%s  %s\n", ok ? "PASS" : "FAIL", c.name);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
