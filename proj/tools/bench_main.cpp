// Compares the serial reference kernels against the OpenMP ones and checks
// that both produce identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "atlas/bivariate_poly.hpp"
#include "atlas/dynatomic.hpp"
#include "atlas/green_grid.hpp"

using Clock = std::chrono::steady_clock;

static double seconds(Clock::time_point t0, Clock::time_point t1) {
    return std::chrono::duration<double>(t1 - t0).count();
}

static void bench_green_grid() {
    atlas::CubicMap map({0.9, 0.2}, {0.3, -0.1});
    const int res = 768;
    auto t0 = Clock::now();
    atlas::GreenGrid gs = atlas::green_grid_serial(map, {0.0, 0.0}, 4.0, res);
    auto t1 = Clock::now();
    atlas::GreenGrid go = atlas::green_grid_omp(map, {0.0, 0.0}, 4.0, res);
    auto t2 = Clock::now();
    bool equal = gs.values == go.values;
    std::printf("green_grid %dx%d: serial %.3fs  omp %.3fs  speedup %.2fx  equal=%s\n", res, res,
                seconds(t0, t1), seconds(t1, t2), seconds(t0, t1) / seconds(t1, t2),
                equal ? "yes" : "NO");
}

static void bench_multiply() {
    std::mt19937_64 rng(7);
    atlas::BivariatePoly p, q;
    for (int i = 0; i < 900; ++i) {
        p.add_term(int(rng() % 60), int(rng() % 60), mpz_class(long(rng() % 2001) - 1000));
        q.add_term(int(rng() % 60), int(rng() % 60), mpz_class(long(rng() % 2001) - 1000));
    }
    auto t0 = Clock::now();
    auto rs = atlas::BivariatePoly::multiply_serial(p, q);
    auto t1 = Clock::now();
    auto ro = atlas::BivariatePoly::multiply_omp(p, q);
    auto t2 = Clock::now();
    std::printf("poly_multiply %zux%zu terms: serial %.3fs  omp %.3fs  speedup %.2fx  equal=%s\n",
                p.term_count(), q.term_count(), seconds(t0, t1), seconds(t1, t2),
                seconds(t0, t1) / seconds(t1, t2), rs == ro ? "yes" : "NO");
}

static void bench_dynatomic() {
    auto t0 = Clock::now();
    const atlas::BivariatePoly& phi = atlas::build_Phin(6, 8);
    auto t1 = Clock::now();
    std::printf("build_Phin(6): %.3fs  (%zu terms, degv=%d)\n", seconds(t0, t1), phi.term_count(),
                phi.degree_v());
}

int main() {
    bench_green_grid();
    bench_multiply();
    bench_dynatomic();
    return 0;
}
