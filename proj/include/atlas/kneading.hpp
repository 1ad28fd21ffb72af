#ifndef ATLAS_KNEADING_HPP
#define ATLAS_KNEADING_HPP

#include <string>
#include <vector>

#include "atlas/cubic_map.hpp"
#include "atlas/green_grid.hpp"

namespace atlas {

// Length-n binary itinerary of the periodic critical orbit through the two
// preimage disks D_0 (containing +a) and D_1 (containing -2a).  The last
// symbol is always 0 because f^n(c) = c lies in D_0.
struct KneadingWord {
    std::vector<int> symbols;  // kappa_1 .. kappa_n

    int length() const { return int(symbols.size()); }
    std::string to_string() const;
    static KneadingWord from_string(const std::string& bits);
    bool operator==(const KneadingWord&) const = default;
};

enum class ComponentLabel { D0, D1, Outside, Indeterminate };

// Sublevel-set decomposition of {g < g(-a) - margin} at one grid resolution,
// flood-filled from the anchors +a (D_0) and -2a (D_1).  When the anchors are
// far apart the components are small against their separation and sublevel
// points are labeled by the nearest anchor instead of a grid.
class ComponentField {
public:
    ComponentField(const CubicMap& map, double margin, int resolution);

    ComponentLabel locate(Complex w) const;
    double free_green() const { return g_free_; }
    int resolution() const { return grid_.resolution; }

private:
    CubicMap map_;
    double margin_;
    double g_free_;
    double anchor_gap_ = 0.0;
    GreenGrid grid_;
    std::vector<signed char> labels_;  // -1 unlabeled, 0 -> D0, 1 -> D1
};

// One-shot component query.  Requires the map to lie in the escape locus and
// margin > 0; throws InternalError if the two flood fills touch (resolution
// leakage across the pinch point).
ComponentLabel locate_component(const CubicMap& map, Complex w, double margin, int resolution);

struct KneadingOptions {
    double margin_fraction = 0.1;  // margin = fraction * g(-a)
    int initial_resolution = 512;
    int max_resolution = 4096;
    double green_tol = 1e-12;
    int iter_budget = kDefaultIterBudget;
};

// Kneading word of an escape-locus parameter whose marked critical point has
// exact period n.  Retries with doubled resolution while any orbit symbol is
// Indeterminate; throws NumericError ("KneadingUnresolved") when the ladder
// is exhausted.
KneadingWord kneading_word(const CubicMap& map, int n, const KneadingOptions& opts = {});

// Same, with precomputed orbit points z_0 .. z_n.  The plain overload iterates
// in doubles, which is fine at moderate |a|; callers at large |a| should pass
// a CurveFamily::critical_orbit_at orbit instead.
KneadingWord kneading_word(const CubicMap& map, int n, const std::vector<Complex>& pts,
                           const KneadingOptions& opts = {});

// Flip of symbol m (1-based, m < n); m = n is pinned and rejected.
KneadingWord twist_flip(const KneadingWord& word, int m);

// 1^(n-1) 0
KneadingWord distinguished_word(int n);

// Positions m < n with kappa_m = 0 in increasing order; flipping them in
// order yields the distinguished word.
std::vector<int> flip_path_to_distinguished(const KneadingWord& word);

}  // namespace atlas

#endif
