#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lipdyn/maps.hpp"

using namespace lipdyn;

TEST_CASE("builtin values match the analytic families") {
    ScalarMap logi = logistic_map(3.0);
    CHECK(logi.eval(0.5) == 0.75);
    CHECK(logi.breakpoints.empty());
    CHECK(logi.note.empty());

    ScalarMap tent = tent_map(-2.0, 1.0);
    CHECK(tent.eval(0.25) == 0.5);
    REQUIRE(tent.breakpoints.size() == 1);
    CHECK(tent.breakpoints[0] == 0.0);

    ScalarMap pw = piecewise_example_map();
    CHECK(pw.eval(-1.0) == -2.0);
    CHECK(pw.eval(0.5) == 0.25);
    CHECK(pw.eval(1.0) == 1.0);
    CHECK(pw.breakpoints == std::vector<double>{0.0, 1.0});
}

TEST_CASE("builtin dispatch and parameter validation") {
    ParamFamily spec{Family::Logistic, {{"a", 2.0}}};
    CHECK(builtin(spec).eval(0.5) == 0.5);
    CHECK_THROWS_AS(builtin({Family::Logistic, {}}), MissingParameter);
    CHECK_THROWS_AS(family_from_name("nope"), UnknownFamily);

    // Sweeps may cross a = 4; flagged, not rejected.
    CHECK(logistic_map(4.5).note == "outside paper domain 0 < a < 4");
}

TEST_CASE("logistic uses the fixed operation order (a*x)*(1-x)") {
    double a = 3.9999;
    ScalarMap m = logistic_map(a);
    for (double x : {0.1, 0.3333333333333333, 0.7, 0.9999}) {
        CHECK(m.eval(x) == (a * x) * (1.0 - x));
    }
}

TEST_CASE("from_dsl agrees with the builtin piecewise example") {
    dsl::MapDefinition def = dsl::parse_map(
        "map f(x) = piecewise { x < 0 => 2*x; x < 1 => x^2; else => 0.5*x + 0.5 }");
    ScalarMap parsed = from_dsl(def, -10.0, 10.0, 4097);
    ScalarMap built = piecewise_example_map();
    for (int i = 0; i <= 1000; ++i) {
        double x = -2.0 + 5.0 * i / 1000.0;
        CHECK(parsed.eval(x) == built.eval(x));
    }
    REQUIRE(parsed.breakpoints.size() == 2);
}

TEST_CASE("from_dsl simple maps") {
    ScalarMap affine = from_dsl(dsl::parse_map("map f(x) = 0.5*x + 1"));
    CHECK(affine.eval(2.0) == 2.0);  // fixed point

    ScalarMap tent = from_dsl(dsl::parse_map("map g(x) = -2*abs(x) + 1"), -10.0, 10.0, 4097);
    CHECK(tent.eval(-1.0) == -1.0);
    REQUIRE(tent.breakpoints.size() == 1);
    CHECK(std::fabs(tent.breakpoints[0]) <= 1e-10);
    CHECK(tent.deriv(0.5) == -2.0);
}

TEST_CASE("compose_k evaluates by repeated application, bit for bit") {
    ScalarMap f = logistic_map(3.7);
    ScalarMap g = compose_k(f, 5);
    for (double x : {0.1, 0.3, 0.77}) {
        double manual = x;
        for (int i = 0; i < 5; ++i) manual = f.eval(manual);
        CHECK(g.eval(x) == manual);
    }
    // k = 1 is the identity of composition.
    ScalarMap g1 = compose_k(f, 1);
    CHECK(g1.eval(0.3) == f.eval(0.3));
}

TEST_CASE("compose_k derivative is the chain-rule product") {
    ScalarMap f = logistic_map(3.2);
    ScalarMap g = compose_k(f, 3);
    for (double x : {0.21, 0.4, 0.62}) {
        double prod = 1.0, xi = x;
        for (int i = 0; i < 3; ++i) {
            prod *= f.deriv(xi);
            xi = f.eval(xi);
        }
        CHECK(g.deriv(x) == doctest::Approx(prod).epsilon(1e-12));
    }
}

TEST_CASE("compose_k hits the known affine and 2-cycle values") {
    ScalarMap aff = affine_map(0.5, 1.0);
    CHECK(compose_k(aff, 3).eval(0.0) == 1.75);  // 0 -> 1 -> 1.5 -> 1.75

    double a = 3.2;
    double y = ((a + 1.0) - std::sqrt((a + 1.0) * (a - 3.0))) / (2.0 * a);
    ScalarMap g2 = compose_k(logistic_map(a), 2);
    CHECK(g2.eval(y) == doctest::Approx(y).epsilon(1e-12));
}

TEST_CASE("compose_k flags breakpoint proximity of intermediate iterates") {
    ScalarMap tent = tent_map(-2.0, 1.0);
    ScalarMap g = compose_k(tent, 2);
    // 0.5 maps to 0, the kink.
    CHECK(g.near_breakpoint(0.5, 1e-9));
    CHECK(g.near_breakpoint(0.0, 1e-9));
    CHECK_FALSE(g.near_breakpoint(0.6, 1e-9));
}

TEST_CASE("linear vector map") {
    VectorMap m = linear_vector_map({0.5, 0.25});
    Vec out = m.eval({1.0, 1.0});
    CHECK(out == Vec{0.5, 0.25});

    VectorMap id1 = linear_vector_map({1.0});
    CHECK(id1.eval({3.7}) == Vec{3.7});

    // diag(2,3) fixes only the origin.
    VectorMap m2 = linear_vector_map({2.0, 3.0});
    CHECK(m2.eval({0.0, 0.0}) == Vec{0.0, 0.0});
    Vec moved = m2.eval({0.1, 0.1});
    CHECK(moved[0] != 0.1);
    CHECK(moved[1] != 0.1);
}
