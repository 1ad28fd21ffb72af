// Acceptance gate: one pass/fail line per criterion, exit 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "atlas/atlas_report.hpp"
#include "atlas/dynatomic.hpp"
#include "atlas/errors.hpp"
#include "atlas/resultant.hpp"
#include "atlas/roots.hpp"
#include "atlas/thurston.hpp"

using namespace atlas;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int k, bool pass, const std::string& detail) {
    std::cout << "criterion " << k << ": " << (pass ? "PASS" : "FAIL") << " (" << detail << ")"
              << std::endl;
    if (!pass) ++failures;
}

template <typename F>
void criterion(int k, F body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(k, false, std::string("exception: ") + e.what());
    }
}

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::map<int, AtlasReport>& atlas_cache() {
    static std::map<int, AtlasReport> cache;
    return cache;
}

const AtlasReport& atlas_for(int n) {
    auto& cache = atlas_cache();
    auto it = cache.find(n);
    if (it == cache.end()) {
        AtlasOptions opts;
        opts.seed = 7;
        it = cache.emplace(n, run_atlas(n, opts)).first;
    }
    return it->second;
}

void criterion1() {
    auto t0 = Clock::now();
    for (int n = 1; n <= 6; ++n) {
        BivariatePoly prod = BivariatePoly::constant(1);
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * build_Phin(d);
        if (!(prod == build_Qn(n)))
            throw InternalError("product of Phi_d differs from Q_" + std::to_string(n));
    }
    double dt = elapsed(t0);
    std::ostringstream os;
    os << "prod_{d|n} Phi_d = Q_n exactly for n=1..6 in " << dt << " s";
    report(1, dt < 30.0, os.str());
}

void criterion2() {
    BivariatePoly q1;
    q1.add_term(0, 1, 1);
    q1.add_term(1, 0, -1);
    bool ok = build_Qn(1) == q1;

    BivariatePoly phi2;
    phi2.add_term(0, 2, 1);
    phi2.add_term(1, 1, 1);
    phi2.add_term(0, 0, 1);
    phi2.add_term(2, 0, -2);
    ok = ok && build_Phin(2) == phi2;

    UnivariatePoly disc = discriminant_v(build_Phin(2)).primitive_part();
    UnivariatePoly target({-4, 0, 9});
    ok = ok && (disc == target || disc == -target);

    CurveFamily fam(2);
    BranchPointSet bp = branch_points(fam);
    ok = ok && bp.points.size() == 2 && std::abs(bp.points[0] + Complex(2.0 / 3.0, 0)) < 1e-10 &&
         std::abs(bp.points[1] - Complex(2.0 / 3.0, 0)) < 1e-10;
    report(2, ok, "Q_1, Phi_2, disc_v(Phi_2) ~ 9a^2-4, branch points +-2/3 within 1e-10");
}

void criterion3() {
    std::ostringstream os;
    bool ok = true;
    for (int n : {2, 3, 4}) {
        auto t0 = Clock::now();
        MonodromyResult res = connected_components(CurveFamily(n));
        double dt = elapsed(t0);
        os << "n=" << n << " orbits=" << res.orbit_count << " (" << dt << " s) ";
        ok = ok && res.orbit_count == 1;
        ok = ok && dt < (n <= 3 ? 60.0 : 900.0);
    }
    if (std::getenv("ATLAS_ACCEPT_N5")) {
        try {
            auto t0 = Clock::now();
            MonodromyResult res = connected_components(CurveFamily(5));
            os << "n=5 orbits=" << res.orbit_count << " (" << elapsed(t0) << " s)";
        } catch (const std::exception& e) {
            os << "n=5 attempt failed: " << e.what();
        }
    } else {
        os << "n=5 not attempted (set ATLAS_ACCEPT_N5=1)";
    }
    report(3, ok, os.str());
}

void criterion4() {
    CubicMap cube({0, 0}, {0, 0});
    for (double r : {1.5, 10.0, 1e4})
        if (std::abs(green(cube, {r, 0}).value - std::log(r)) > 1e-12)
            throw NumericError("pure-cube Green mismatch");

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    int maps = 0, samples = 0;
    while (maps < 50) {
        CubicMap m({u(rng), u(rng)}, {u(rng), u(rng)});
        ++maps;
        GreenValue gc = green(m, m.free_critical(), 1e-13);
        GreenValue gcc = green(m, m.cocritical_of_free(), 1e-13);
        if (gc.escaped() != gcc.escaped())
            throw NumericError("cocritical escape classification differs");
        if (gc.escaped() &&
            std::abs(gc.value - gcc.value) > gc.error_bound + gcc.error_bound + 1e-10)
            throw NumericError("g(2a) != g(-a) beyond combined bounds");
        for (int t = 0; t < 40; ++t) {
            Complex z{u(rng) * 2.0, u(rng) * 2.0};
            GreenValue gz = green(m, z, 1e-13);
            if (!gz.escaped()) continue;
            GreenValue gfz = green(m, m.apply(z), 1e-13);
            if (std::abs(gfz.value - 3.0 * gz.value) >
                gfz.error_bound + 3.0 * gz.error_bound + 1e-10)
                throw NumericError("functional equation violated");
            ++samples;
        }
    }
    std::ostringstream os;
    os << samples << " escaping samples over " << maps
       << " maps satisfy g(f(z))=3g(z) and g(2a)=g(-a) within bounds";
    report(4, samples >= 1000, os.str());
}

void criterion5() {
    bool ok = true;
    std::ostringstream os;
    for (int n : {2, 3, 4}) {
        const AtlasReport& rep = atlas_for(n);
        CurveFamily fam(n);
        int distinguished = 0;
        for (const auto& reg : rep.regions) {
            if (reg.unresolved) {
                ok = false;
                continue;
            }
            ok = ok && reg.samples_checked >= 8;
            ok = ok && reg.kneading.symbols.back() == 0;
            if (reg.kneading == distinguished_word(n)) ++distinguished;
            // Constancy across samples is enforced inside run_atlas; recheck
            // the innermost sample (where the component grid is actually in
            // play) under one resolution doubling, with the orbit computed at
            // working precision.
            const AtlasSample* inner = nullptr;
            for (const auto& s : rep.samples)
                if (s.region_id == reg.region_id) {
                    inner = &s;
                    break;
                }
            if (!inner) {
                ok = false;
                continue;
            }
            KneadingOptions fine;
            fine.initial_resolution = 1024;
            fine.max_resolution = 8192;
            AccurateOrbit ao = fam.critical_orbit_at(inner->a, inner->v, n);
            CubicMap m(inner->a, ao.v);
            ok = ok && kneading_word(m, n, ao.points, fine) == reg.kneading;
        }
        ok = ok && distinguished == 1;
        os << "n=" << n << " regions=" << rep.regions.size() << " distinguished=" << distinguished
           << " ";
    }
    report(5, ok, os.str() + "words constant over >=8 samples and a resolution doubling");
}

void criterion6() {
    auto t0 = Clock::now();
    bool ok = true;
    for (int n = 2; n <= 8; ++n)
        for (const auto& part : enumerate_partitions(n)) {
            double lambda = leading_eigenvalue(transition_matrix(part));
            ok = ok && std::abs(lambda - std::pow(2.0, -1.0 / part.p)) < 1e-9;
            ok = ok && !obstruction_check(part);
        }
    double dt = elapsed(t0);
    std::ostringstream os;
    os << "lambda = 2^(-1/p) within 1e-9, no obstruction, n<=8, in " << dt << " s";
    report(6, ok && dt < 1.0, os.str());
}

void criterion7() {
    bool ok = true;
    for (int n = 1; n <= 6; ++n) ok = ok && build_Phin(n).involution_symmetry_sign().has_value();

    std::ostringstream os;
    os << "symmetry signs exact for n<=6; ";
    int squared_checked = 0;
    for (int n : {2, 3}) {
        try {
            CurveFamily fam(n);
            Fiber f = fam.fiber_at({1.0, 0.3});
            Permutation tau = involution_on_fiber(fam, f);
            ok = ok && tau.then(tau).is_identity();
            // A fixed point of the involution needs v = -v, so any zero root
            // would sit on the symmetry locus.
            for (Complex v : f.roots) ok = ok && std::abs(v) > 1e-8;
            ++squared_checked;
        } catch (const NumericError&) {
            // Base circle unusable for this n (branch point too close); the
            // n=2 instance must still succeed.
        }
    }
    ok = ok && squared_checked >= 1;
    os << "involution squared = id on " << squared_checked
       << " curves; no fixed fiber points off the symmetry locus";
    report(7, ok, os.str());
}

void criterion8() {
    bool ok = true;
    int words = 0;
    for (int n : {2, 3, 4}) {
        for (const auto& reg : atlas_for(n).regions) {
            if (reg.unresolved) continue;
            KneadingWord w = reg.kneading;
            int zeros = 0;
            for (int j = 0; j + 1 < w.length(); ++j)
                if (w.symbols[j] == 0) ++zeros;
            ok = ok && int(reg.flip_path.size()) == zeros;
            for (int m : reg.flip_path) w = twist_flip(w, m);
            ok = ok && w == distinguished_word(n);
            ++words;
        }
    }
    std::ostringstream os;
    os << words << " realized words at n<=4 reach 1^(n-1)0 with flip count = zero count";
    report(8, ok && words > 0, os.str());
}

void criterion9(const char* cli) {
    if (cli == nullptr) {
        AtlasOptions opts;
        opts.seed = 7;
        std::string one = atlas_report_json(run_atlas(3, opts));
        std::string two = atlas_report_json(run_atlas(3, opts));
        report(9, one == two, "library-level double run byte-identical (CLI path not given)");
        return;
    }
    fs::path base = fs::temp_directory_path() / "atlas_accept9";
    fs::remove_all(base);
    std::string files[2];
    for (int run = 0; run < 2; ++run) {
        fs::path dir = base / ("run" + std::to_string(run));
        fs::create_directories(dir);
        std::string cmd = std::string("\"") + cli + "\" --seed 7 --cache-dir \"" + dir.string() +
                          "\" atlas 3 > /dev/null";
        if (std::system(cmd.c_str()) != 0) throw NumericError("CLI run failed: " + cmd);
        std::ifstream is(dir / "atlas_3.json", std::ios::binary);
        std::stringstream ss;
        ss << is.rdbuf();
        files[run] = ss.str();
    }
    report(9, !files[0].empty() && files[0] == files[1],
           "two runs of `atlas 3 --seed 7` produced byte-identical atlas_3.json");
}

}  // namespace

int main(int argc, char** argv) {
    const char* cli = argc > 1 ? argv[1] : nullptr;
    criterion(1, criterion1);
    criterion(2, criterion2);
    criterion(3, criterion3);
    criterion(4, criterion4);
    criterion(5, criterion5);
    criterion(6, criterion6);
    criterion(7, criterion7);
    criterion(8, criterion8);
    criterion(9, [&] { criterion9(cli); });
    if (failures) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
}
