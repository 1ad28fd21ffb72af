#ifndef ATLAS_GREEN_GRID_HPP
#define ATLAS_GREEN_GRID_HPP

#include <vector>

#include "atlas/cubic_map.hpp"

namespace atlas {

// Square grid of Green's function values, the data-parallel kernel behind
// component location.  Cell (ix, iy) is centered at
//   center + (-half + (ix+0.5)*cell, -half + (iy+0.5)*cell).
struct GreenGrid {
    Complex center;
    double half = 0.0;       // half-width of the box
    int resolution = 0;      // cells per side
    std::vector<double> values;  // green value, 0 for bounded cells

    double cell() const { return 2.0 * half / resolution; }
    int cell_x(Complex z) const;
    int cell_y(Complex z) const;
    bool contains(Complex z) const;
    double at(int ix, int iy) const { return values[std::size_t(iy) * resolution + ix]; }
};

GreenGrid green_grid_serial(const CubicMap& map, Complex center, double half, int resolution,
                            double tol = kDefaultTol, int budget = kDefaultIterBudget);

GreenGrid green_grid_omp(const CubicMap& map, Complex center, double half, int resolution,
                         double tol = kDefaultTol, int budget = kDefaultIterBudget);

}  // namespace atlas

#endif
