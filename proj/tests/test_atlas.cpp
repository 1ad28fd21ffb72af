#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "atlas/atlas_report.hpp"

using namespace atlas;

TEST_CASE("scaled_period_tol grows with |a|") {
    CHECK(scaled_period_tol({0, 0}, 1e-12) == doctest::Approx(1e-12));
    CHECK(scaled_period_tol({9, 0}, 1e-12) == doctest::Approx(1e-9));
    CHECK(scaled_period_tol({0, 9}, 1e-12) > scaled_period_tol({0, 1}, 1e-12));
}

TEST_CASE("atlas for n=2") {
    AtlasOptions opts;
    opts.seed = 3;
    AtlasReport rep = run_atlas(2, opts);

    REQUIRE(rep.regions.size() == 2);
    CHECK(rep.distinguished_unique);
    std::vector<std::string> words;
    for (const auto& r : rep.regions) {
        REQUIRE_FALSE(r.unresolved);
        CHECK(r.kneading.symbols.back() == 0);
        CHECK(r.samples_checked >= 8);
        words.push_back(r.kneading.to_string());
    }
    std::sort(words.begin(), words.end());
    CHECK(words == std::vector<std::string>{"00", "10"});

    // Flip paths terminate at the distinguished word.
    for (const auto& r : rep.regions) {
        KneadingWord w = r.kneading;
        for (int m : r.flip_path) w = twist_flip(w, m);
        CHECK(w == distinguished_word(2));
    }

    // Total regions equal the cycle count at infinity.
    std::size_t cycles = 0;
    for (int len : rep.infinity_cycle_type) {
        (void)len;
        ++cycles;
    }
    CHECK(cycles == rep.regions.size());

    // Deterministic serialization.
    AtlasReport rep2 = run_atlas(2, opts);
    CHECK(atlas_report_json(rep) == atlas_report_json(rep2));

    // One CSV row per sample plus the header.
    std::istringstream csv(atlas_plot_csv(rep));
    std::string line;
    std::size_t rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == rep.samples.size() + 1);
}
