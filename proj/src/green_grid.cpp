#include "atlas/green_grid.hpp"

#include <cmath>

namespace atlas {

int GreenGrid::cell_x(Complex z) const {
    return int(std::floor((z.real() - (center.real() - half)) / cell()));
}

int GreenGrid::cell_y(Complex z) const {
    return int(std::floor((z.imag() - (center.imag() - half)) / cell()));
}

bool GreenGrid::contains(Complex z) const {
    int ix = cell_x(z), iy = cell_y(z);
    return ix >= 0 && ix < resolution && iy >= 0 && iy < resolution;
}

namespace {

GreenGrid make_grid(const CubicMap& map, Complex center, double half, int resolution,
                    double tol, int budget, bool parallel) {
    GreenGrid g;
    g.center = center;
    g.half = half;
    g.resolution = resolution;
    g.values.assign(std::size_t(resolution) * resolution, 0.0);
    const double cell = g.cell();
    const double x0 = center.real() - half + 0.5 * cell;
    const double y0 = center.imag() - half + 0.5 * cell;

#pragma omp parallel for schedule(dynamic, 8) if (parallel)
    for (int iy = 0; iy < resolution; ++iy) {
        for (int ix = 0; ix < resolution; ++ix) {
            Complex z(x0 + ix * cell, y0 + iy * cell);
            GreenValue gv = green(map, z, tol, budget);
            g.values[std::size_t(iy) * resolution + ix] = gv.escaped() ? gv.value : 0.0;
        }
    }
    return g;
}

}  // namespace

GreenGrid green_grid_serial(const CubicMap& map, Complex center, double half, int resolution,
                            double tol, int budget) {
    return make_grid(map, center, half, resolution, tol, budget, false);
}

GreenGrid green_grid_omp(const CubicMap& map, Complex center, double half, int resolution,
                         double tol, int budget) {
    return make_grid(map, center, half, resolution, tol, budget, true);
}

}  // namespace atlas
