#include <doctest.h>

#include <random>

#include "atlas/bivariate_poly.hpp"
#include "atlas/green_grid.hpp"

using namespace atlas;

TEST_CASE("green grid serial and omp agree") {
    CubicMap m({0.8, 0.3}, {0.2, -0.4});
    GreenGrid gs = green_grid_serial(m, {0.1, -0.2}, 3.0, 96);
    GreenGrid go = green_grid_omp(m, {0.1, -0.2}, 3.0, 96);
    CHECK(gs.values == go.values);
    CHECK(gs.resolution == 96);
    CHECK(gs.cell() == doctest::Approx(6.0 / 96));
}

TEST_CASE("green grid geometry") {
    CubicMap m({0, 0}, {0, 0});
    GreenGrid g = green_grid_serial(m, {0, 0}, 2.0, 8);
    CHECK(g.contains({1.9, -1.9}));
    CHECK_FALSE(g.contains({2.1, 0}));
    CHECK(g.cell_x({-2.0 + 0.25, 0}) == 0);
    CHECK(g.cell_y({0, 2.0 - 0.25}) == 7);
    // Cells well outside the unit disk escape under z^3.
    CHECK(g.at(0, 0) > 0.0);
    // The fixed bounded center cell stays at 0.
    CHECK(g.at(4, 4) == 0.0);
}

TEST_CASE("polynomial multiply serial and omp agree") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 4; ++trial) {
        BivariatePoly p, q;
        for (int t = 0; t < 200; ++t) {
            p.add_term(int(rng() % 30), int(rng() % 30), mpz_class(long(rng() % 201) - 100));
            q.add_term(int(rng() % 30), int(rng() % 30), mpz_class(long(rng() % 201) - 100));
        }
        CHECK(BivariatePoly::multiply_serial(p, q) == BivariatePoly::multiply_omp(p, q));
    }
}
