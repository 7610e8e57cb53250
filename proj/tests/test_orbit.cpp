#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lipdyn/orbit.hpp"

using namespace lipdyn;

namespace {
double cycle2_point(double a, int sign) {
    double root = std::sqrt((a + 1.0) * (a - 3.0));
    return ((a + 1.0) + sign * root) / (2.0 * a);
}
}  // namespace

TEST_CASE("iterate the tent map by hand") {
    ScalarMap tent = tent_map(-2.0, 1.0);
    Orbit orbit = iterate(tent, 0.25, 6, 0);
    REQUIRE(orbit.samples.size() == 6);
    CHECK(orbit.samples[0] == 0.25);
    CHECK(orbit.samples[1] == 0.5);
    CHECK(orbit.samples[2] == 0.0);
    CHECK(orbit.samples[3] == 1.0);
    CHECK(orbit.samples[4] == -1.0);
    CHECK(orbit.samples[5] == -1.0);
    CHECK_FALSE(orbit.escaped);
}

TEST_CASE("fixed point gives a constant orbit") {
    ScalarMap aff = affine_map(0.5, 1.0);
    Orbit orbit = iterate(aff, 2.0, 10, 0);
    for (double x : orbit.samples) CHECK(x == 2.0);
}

TEST_CASE("escape stops iteration") {
    ScalarMap doubling = affine_map(2.0, 0.0);
    Orbit orbit = iterate(doubling, 1.0, 100, 0, 100.0);
    CHECK(orbit.escaped);
    CHECK(orbit.samples.size() <= 7);  // 2^7 > 100
}

TEST_CASE("shift property: starting at f(x0) shifts samples by one") {
    ScalarMap f = logistic_map(3.7);
    Orbit a = iterate(f, 0.3, 50, 0);
    Orbit b = iterate(f, f.eval(0.3), 49, 0);
    for (int i = 0; i < 49; ++i) CHECK(a.samples[i + 1] == b.samples[i]);
}

TEST_CASE("find_fixed_points matches the closed-form roots") {
    ScalarMap logi = logistic_map(3.0);
    auto fps = find_fixed_points(logi, 0.0, 1.0, 1000);
    REQUIRE(fps.size() == 2);
    CHECK(std::fabs(fps[0].p - 0.0) <= 1e-9);
    CHECK(std::fabs(fps[1].p - 2.0 / 3.0) <= 1e-9);
    for (const auto& c : fps) CHECK(std::fabs(logi.eval(c.p) - c.p) <= 1e-10);

    // Both fixed points sit on breakpoints where f(x) - x never changes sign.
    ScalarMap pw = piecewise_example_map();
    auto pfps = find_fixed_points(pw, -2.0, 3.0, 1000);
    REQUIRE(pfps.size() == 2);
    CHECK(pfps[0].p == 0.0);
    CHECK(pfps[1].p == 1.0);

    ScalarMap tent = tent_map(-2.0, 1.0);
    auto tfps = find_fixed_points(tent, -2.0, 2.0, 1000);
    REQUIRE(tfps.size() == 2);
    CHECK(std::fabs(tfps[0].p + 1.0) <= 1e-9);
    CHECK(std::fabs(tfps[1].p - 1.0 / 3.0) <= 1e-9);
}

TEST_CASE("detect_periodicity finds the logistic 2-cycle") {
    ScalarMap f = logistic_map(3.2);
    Orbit orbit = iterate(f, 0.3, 2000, 1000);
    auto det = detect_periodicity(f, orbit, 64);
    REQUIRE(det.has_value());
    CHECK(det->period == 2);
    REQUIRE(det->cycle.size() == 2);
    CHECK(det->cycle[0] == doctest::Approx(cycle2_point(3.2, -1)).epsilon(1e-6));
    CHECK(det->cycle[1] == doctest::Approx(cycle2_point(3.2, +1)).epsilon(1e-6));
    CHECK(det->residual <= 1e-7);
}

TEST_CASE("detect_periodicity finds period 1 at a = 2") {
    ScalarMap f = logistic_map(2.0);
    Orbit orbit = iterate(f, 0.3, 2000, 1000);
    auto det = detect_periodicity(f, orbit, 64);
    REQUIRE(det.has_value());
    CHECK(det->period == 1);
    CHECK(det->cycle[0] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("detect_periodicity reports none for chaotic a = 4") {
    ScalarMap f = logistic_map(4.0);
    Orbit orbit = iterate(f, 0.3, 2000, 1000);
    CHECK_FALSE(detect_periodicity(f, orbit, 64).has_value());
}

TEST_CASE("orbit seeded exactly on a cycle has zero tail error") {
    ScalarMap f = logistic_map(3.2);
    auto cycle = refine_periodic_orbit(f, 2, 0.51, 1e-13);
    // Land exactly on the numeric cycle of the map: iterate until periodic.
    double y = cycle[0];
    for (int i = 0; i < 200; ++i) y = f.eval(f.eval(y));
    Orbit orbit = iterate(f, y, 2000, 0);
    auto det = detect_periodicity(f, orbit, 8);
    REQUIRE(det.has_value());
    CHECK(det->period == 2);
    CHECK(det->tail_error == 0.0);
}

TEST_CASE("detect_periodicity minimality") {
    ScalarMap f = logistic_map(3.2);
    Orbit orbit = iterate(f, 0.3, 2000, 1000);
    // Restricting the search below the true period finds nothing.
    CHECK_FALSE(detect_periodicity(f, orbit, 1).has_value());
}

TEST_CASE("detect_periodicity demands enough samples") {
    ScalarMap f = logistic_map(3.2);
    Orbit orbit = iterate(f, 0.3, 10, 0);
    CHECK_THROWS_AS(detect_periodicity(f, orbit, 64), InsufficientSamples);
}

TEST_CASE("refine_periodic_orbit polishes the 2-cycle seed") {
    ScalarMap f = logistic_map(3.2);
    auto cycle = refine_periodic_orbit(f, 2, 0.51, 1e-12);
    REQUIRE(cycle.size() == 2);
    ScalarMap g = compose_k(f, 2);
    CHECK(std::fabs(g.eval(cycle[0]) - cycle[0]) <= 1e-12);
    CHECK(cycle[0] == doctest::Approx(cycle2_point(3.2, -1)).epsilon(1e-9));
}

TEST_CASE("refine_periodic_orbit keeps an exact fixed point") {
    ScalarMap aff = affine_map(0.5, 1.0);
    auto cycle = refine_periodic_orbit(aff, 1, 2.0, 1e-12);
    REQUIRE(cycle.size() == 1);
    CHECK(cycle[0] == 2.0);
}

TEST_CASE("refine_periodic_orbit throws without a nearby root") {
    ScalarMap f = logistic_map(3.2);
    CHECK_THROWS_AS(refine_periodic_orbit(f, 2, 0.05, 1e-12), NoBracket);
}
