#include <doctest.h>

#include <cmath>
#include <random>

#include "atlas/cubic_map.hpp"
#include "atlas/errors.hpp"

using namespace atlas;

TEST_CASE("orbit") {
    CubicMap cube({0, 0}, {0, 0});
    auto o = orbit(cube, {0, 0}, 3);
    CHECK(o == std::vector<Complex>{{0, 0}, {0, 0}, {0, 0}, {0, 0}});

    CubicMap m({0.5, 0.25}, {-0.3, 0.1});
    auto o1 = orbit(m, m.a(), 1);
    CHECK(std::abs(o1[1] - m.v()) < 1e-15);

    auto o2 = orbit(m, 2.0 * m.a(), 1);
    Complex a = m.a();
    CHECK(std::abs(o2[1] - (4.0 * a * a * a + m.v())) < 1e-14);

    CHECK_THROWS_AS(orbit(CubicMap({0, 0}, {0, 0}), {1e200, 0}, 3), NumericError);
}

TEST_CASE("green is log|z| for the pure cube") {
    CubicMap cube({0, 0}, {0, 0});
    for (double r : {10.0, 100.0, 5.5}) {
        GreenValue g = green(cube, {r, 0.0});
        CHECK(g.escaped());
        CHECK(std::abs(g.value - std::log(r)) < 1e-12);
    }
}

TEST_CASE("green functional equation and cocritical identity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int checked = 0;
    for (int t = 0; t < 200 && checked < 60; ++t) {
        CubicMap m({u(rng), u(rng)}, {u(rng), u(rng)});
        Complex z{u(rng) * 3.0, u(rng) * 3.0};
        GreenValue gz = green(m, z, 1e-13);
        if (!gz.escaped()) continue;
        GreenValue gfz = green(m, m.apply(z), 1e-13);
        REQUIRE(gfz.escaped());
        CHECK(std::abs(gfz.value - 3.0 * gz.value) <=
              gfz.error_bound + 3.0 * gz.error_bound + 1e-10);

        GreenValue gc = green(m, m.free_critical(), 1e-13);
        GreenValue gcc = green(m, m.cocritical_of_free(), 1e-13);
        if (gc.escaped()) {
            REQUIRE(gcc.escaped());
            CHECK(std::abs(gc.value - gcc.value) <= gc.error_bound + gcc.error_bound + 1e-10);
        }
        ++checked;
    }
    CHECK(checked >= 30);
}

TEST_CASE("classify_escape") {
    CHECK(classify_escape(CubicMap({0, 0}, {0, 0})) == EscapeClass::Bounded);
    // Slowly escaping free critical orbit, one-iteration budget.
    CHECK(classify_escape(CubicMap({0, 0}, {1.2, 0}), kDefaultTol, 1) ==
          EscapeClass::Undetermined);
    // Large |a| on the period-2 curve: v^2 + av + 1 - 2a^2 = 0 at a = 10.
    double a = 10.0;
    double v = (-a + std::sqrt(9.0 * a * a - 4.0)) / 2.0;
    CHECK(classify_escape(CubicMap({a, 0}, {v, 0})) == EscapeClass::EscapeLocus);
}

TEST_CASE("exact_period") {
    CHECK(exact_period(CubicMap({0, 0}, {0, 0}), 3).status == PeriodStatus::Found);
    CHECK(exact_period(CubicMap({0, 0}, {0, 0}), 3).period == 1);

    double v = (-1.0 + std::sqrt(5.0)) / 2.0;  // root of v^2 + v - 1 (a = 1)
    PeriodResult pr = exact_period(CubicMap({1, 0}, {v, 0}), 4, 1e-9);
    CHECK(pr.status == PeriodStatus::Found);
    CHECK(pr.period == 2);

    CHECK(exact_period(CubicMap({0.31, 0.17}, {0.23, -0.41}), 6).status == PeriodStatus::None);
}

TEST_CASE("bottcher") {
    CubicMap cube({0, 0}, {0, 0});
    BottcherResult b = bottcher(cube, {10, 0});
    CHECK_FALSE(b.branch_error);
    CHECK(std::abs(b.phi - Complex(10, 0)) < 1e-12);

    CubicMap m({0.4, 0.1}, {0.2, -0.3});
    Complex z{9.0, 4.0};
    GreenValue g = green(m, z, 1e-13);
    REQUIRE(g.escaped());
    BottcherResult bz = bottcher(m, z);
    REQUIRE_FALSE(bz.branch_error);
    CHECK(std::abs(std::abs(bz.phi) - std::exp(g.value)) < 1e-8 * std::exp(g.value));

    BottcherResult bfz = bottcher(m, m.apply(z));
    REQUIRE_FALSE(bfz.branch_error);
    Complex cube_phi = bz.phi * bz.phi * bz.phi;
    CHECK(std::abs(bfz.phi - cube_phi) < 1e-6 * std::abs(cube_phi));
}
