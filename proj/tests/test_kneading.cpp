#include <doctest.h>

#include <cmath>

#include "atlas/errors.hpp"
#include "atlas/kneading.hpp"

using namespace atlas;

namespace {

// A point of V(Phi_2) with real a, deep in the escape locus.
CubicMap period2_map(double a, int sign) {
    double v = (-a + sign * std::sqrt(9.0 * a * a - 4.0)) / 2.0;
    return CubicMap({a, 0}, {v, 0});
}

}  // namespace

TEST_CASE("locate_component anchors") {
    CubicMap m = period2_map(5.0, +1);
    REQUIRE(classify_escape(m) == EscapeClass::EscapeLocus);
    double margin = 0.1 * green(m, m.free_critical()).value;
    CHECK(locate_component(m, m.marked_critical(), margin, 512) == ComponentLabel::D0);
    CHECK(locate_component(m, m.cocritical_of_marked(), margin, 512) == ComponentLabel::D1);
    // Far outside the sublevel set.
    CHECK(locate_component(m, {1e6, 1e6}, margin, 512) == ComponentLabel::Outside);
}

TEST_CASE("kneading word basics") {
    CubicMap m = period2_map(40.0, +1);
    REQUIRE(exact_period(m, 2, 1e-6).period == 2);
    KneadingWord w = kneading_word(m, 2);
    CHECK(w.length() == 2);
    CHECK(w.symbols.back() == 0);
    // Stable under one resolution doubling.
    KneadingOptions fine;
    fine.initial_resolution = 1024;
    CHECK(kneading_word(m, 2, fine) == w);
}

TEST_CASE("kneading word string round trip") {
    KneadingWord w = KneadingWord::from_string("1010");
    CHECK(w.symbols == std::vector<int>{1, 0, 1, 0});
    CHECK(w.to_string() == "1010");
    CHECK_THROWS_AS(KneadingWord::from_string("10x"), std::invalid_argument);
}

TEST_CASE("twist_flip") {
    CHECK(twist_flip(KneadingWord::from_string("1000"), 1) == KneadingWord::from_string("0000"));
    CHECK(twist_flip(KneadingWord::from_string("0000"), 3) == KneadingWord::from_string("0010"));
    KneadingWord w = KneadingWord::from_string("1100");
    CHECK(twist_flip(twist_flip(w, 2), 2) == w);
    CHECK_THROWS_AS(twist_flip(w, 4), std::invalid_argument);
    CHECK_THROWS_AS(twist_flip(w, 0), std::invalid_argument);
}

TEST_CASE("distinguished word") {
    CHECK(distinguished_word(2).to_string() == "10");
    CHECK(distinguished_word(4).to_string() == "1110");
    for (int n = 2; n <= 8; ++n) CHECK(distinguished_word(n).symbols.back() == 0);
}

TEST_CASE("flip path") {
    CHECK(flip_path_to_distinguished(KneadingWord::from_string("1000")) ==
          std::vector<int>{2, 3});
    CHECK(flip_path_to_distinguished(KneadingWord::from_string("10")).empty());
    CHECK(flip_path_to_distinguished(KneadingWord::from_string("0000")) ==
          std::vector<int>{1, 2, 3});
    // Applying the path reaches the distinguished word.
    KneadingWord w = KneadingWord::from_string("01010");
    for (int m : flip_path_to_distinguished(w)) w = twist_flip(w, m);
    CHECK(w == distinguished_word(5));
}
