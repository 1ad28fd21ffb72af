#ifndef ATLAS_ATLAS_REPORT_HPP
#define ATLAS_ATLAS_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "atlas/dynatomic.hpp"
#include "atlas/kneading.hpp"
#include "atlas/monodromy.hpp"

namespace atlas {

// Period-detection tolerance scaled to the parameter magnitude, between the
// shifted-orbit rounding floor (~eps |a|) and the branch separations at
// infinity (~1/|a|).
double scaled_period_tol(Complex a, double tol = kDefaultTol);

struct EscapeRegionRecord {
    int region_id = 0;             // index of the infinity cycle
    Complex representative_a;
    Complex representative_v;
    KneadingWord kneading;
    int cycle_length = 0;          // branch multiplicity at infinity
    int samples_checked = 0;
    bool unresolved = false;       // kneading indeterminate after retries
    std::vector<int> flip_path;    // to the distinguished word
};

struct AtlasOptions {
    std::uint64_t seed = 1;
    double tol = kDefaultTol;
    int budget = kDefaultCurveBudget;
    double radius = 0.0;           // 0: default 1e3 * (1 + max |branch point|)
    int samples_per_region = 8;
    KneadingOptions kneading;
};

struct AtlasSample {
    Complex a;
    Complex v;
    int region_id = 0;
    std::string word;
};

struct AtlasReport {
    int n = 0;
    int deg_v = 0;
    int branch_point_count = 0;
    int orbit_count = 0;                  // from connected_components
    std::vector<int> infinity_cycle_type;
    std::vector<EscapeRegionRecord> regions;
    std::vector<AtlasSample> samples;
    bool distinguished_unique = false;
    std::uint64_t seed = 0;
    double tol = 0.0;
    double radius = 0.0;
};

// Full pipeline for one period: cycles of the infinity permutation (read off
// a small circle enclosing the branch locus, homotopic to the loop at
// infinity, cycle type checked under radius doubling), fiber continuation
// outward to |a| = R through geometric sample stations, one kneading word per
// escape region (constancy checked across the stations), flip paths,
// uniqueness of the distinguished word.
// Does not run the branch-point monodromy; orbit_count is filled by the
// caller when available (cmd_atlas runs both).
AtlasReport run_atlas(int n, const AtlasOptions& opts = {});

// Deterministic JSON bytes (no timings; see SCHEMA.md).
std::string atlas_report_json(const AtlasReport& report);
std::string monodromy_report_json(const MonodromyResult& result);

// Plot data: one row per region sample, "re_a,im_a,re_v,im_v,region_id,word".
std::string atlas_plot_csv(const AtlasReport& report);

}  // namespace atlas

#endif
