#include <doctest.h>

#include <cmath>

#include "atlas/thurston.hpp"

using namespace atlas;

TEST_CASE("enumerate_partitions") {
    auto p2 = enumerate_partitions(2);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].p == 1);
    CHECK(p2[0].blocks == std::vector<std::vector<int>>{{0, 1}});

    auto p4 = enumerate_partitions(4);
    REQUIRE(p4.size() == 2);
    CHECK(p4[0].p == 1);
    CHECK(p4[1].p == 2);
    CHECK(p4[1].blocks == std::vector<std::vector<int>>{{0, 2}, {1, 3}});

    auto p5 = enumerate_partitions(5);
    REQUIRE(p5.size() == 1);
    CHECK(p5[0].p == 1);

    for (const auto& part : enumerate_partitions(8)) {
        CHECK(part.valid());
        CHECK(part.serialize() == "n=8 p=" + std::to_string(part.p) + " critical=0");
    }
}

TEST_CASE("transition_matrix") {
    Matrix m1 = transition_matrix(enumerate_partitions(2)[0]);
    REQUIRE(m1.dim == 1);
    CHECK(m1.at(0, 0) == 0.5);

    Matrix m2 = transition_matrix(enumerate_partitions(4)[1]);
    REQUIRE(m2.dim == 2);
    CHECK(m2.at(0, 0) == 0.0);
    CHECK(m2.at(0, 1) == 0.5);
    CHECK(m2.at(1, 0) == 1.0);
    CHECK(m2.at(1, 1) == 0.0);

    for (const auto& part : enumerate_partitions(6)) {
        Matrix m = transition_matrix(part);
        for (int i = 0; i < m.dim; ++i) {
            double row = 0.0;
            for (int j = 0; j < m.dim; ++j) row += m.at(i, j);
            CHECK(row <= 1.0);
        }
    }
}

TEST_CASE("leading_eigenvalue") {
    Matrix id = Matrix::zero(3);
    for (int i = 0; i < 3; ++i) id.at(i, i) = 1.0;
    CHECK(leading_eigenvalue(id) == doctest::Approx(1.0).epsilon(1e-10));

    Matrix nil = Matrix::zero(2);
    nil.at(0, 1) = 2.0;
    CHECK(leading_eigenvalue(nil) == doctest::Approx(0.0).epsilon(1e-10));

    for (int n = 2; n <= 8; ++n)
        for (const auto& part : enumerate_partitions(n)) {
            double lambda = leading_eigenvalue(transition_matrix(part));
            CHECK(std::abs(lambda - std::pow(2.0, -1.0 / part.p)) < 1e-9);
        }
}

TEST_CASE("obstruction_check") {
    for (int n = 2; n <= 8; ++n)
        for (const auto& part : enumerate_partitions(n)) CHECK_FALSE(obstruction_check(part));

    Matrix one = Matrix::zero(1);
    one.at(0, 0) = 1.0;
    CHECK(obstruction_check(one));
}
