#include "atlas/atlas_report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "atlas/errors.hpp"

namespace atlas {

using json = nlohmann::ordered_json;

double scaled_period_tol(Complex a, double tol) {
    // The shifted period iteration keeps rounding near eps * |a|; the power
    // 1.5 leaves headroom below the O(1/|a|) branch separations at infinity.
    return tol * std::pow(1.0 + std::abs(a), 1.5);
}

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::vector<std::vector<int>> ordered_cycles(const Permutation& p) {
    auto cycles = p.cycles();
    // cycles() walks labels in increasing order, so each cycle starts at its
    // smallest label and the list is ordered by that label already.
    return cycles;
}

}  // namespace

AtlasReport run_atlas(int n, const AtlasOptions& opts) {
    if (n < 2) throw std::invalid_argument("run_atlas: n must be >= 2");
    CurveFamily fam(n, opts.budget);
    BranchPointSet bps = branch_points(fam);

    double maxb = 0.0;
    for (const auto& b : bps.points) maxb = std::max(maxb, std::abs(b));
    const double R = opts.radius > 0.0 ? opts.radius : 1e3 * (1.0 + maxb);
    // The infinity permutation is read off a small circle just outside every
    // branch point: homotopic to the loop at infinity, and the fiber there is
    // still resolvable (at the default R the branches collapse to separations
    // far below any working precision).  Samples then continue outward to R.
    const double R0 = std::min(std::max(1.5, 1.3 * maxb + 0.2), R / 8.0);

    AtlasReport report;
    report.n = n;
    report.deg_v = fam.degree();
    report.branch_point_count = int(bps.points.size());
    report.seed = opts.seed;
    report.tol = opts.tol;
    report.radius = R;

    Fiber start = fam.fiber_at(Complex(R0, 0.0));
    auto loop_once = [&fam](const Fiber& s) {
        const double r = std::abs(s.base);
        std::vector<Complex> path;
        const int m = 64;
        for (int k = 0; k <= m; ++k)
            path.push_back(std::polar(r, 2.0 * std::numbers::pi * k / m));
        return match_to_fiber(s, track_fiber(fam, path, s).end.roots);
    };
    Permutation sigma = loop_once(start);

    // Cycle-type stability under radius doubling.
    if (loop_once(fam.fiber_at(Complex(2.0 * R0, 0.0))).cycle_type() != sigma.cycle_type())
        throw NumericError("UnstableAtInfinity: atlas cycle type changed under R doubling");
    report.infinity_cycle_type = sigma.cycle_type();

    // Continue the fiber outward along the positive real axis through
    // geometrically spaced stations up to |a| = R.  Word-distinct branches
    // separate by only ~10 double ulps at R, so the continuation holds the
    // roots at working precision the whole way.
    const int nstations = std::max(opts.samples_per_region, 4);
    const double Rin = std::max(2.0 * R0, R / 128.0);
    std::vector<double> radii;
    for (int k = 0; k < nstations; ++k)
        radii.push_back(nstations == 1 ? R
                                       : Rin * std::pow(R / Rin, double(k) / (nstations - 1)));
    TrackOptions loose;
    loose.newton_iters = 12;
    std::vector<Fiber> stations = continue_to_radii(fam, start, radii, loose);

    int region_id = 0;
    for (const auto& cycle : ordered_cycles(sigma)) {
        EscapeRegionRecord rec;
        rec.region_id = region_id;
        rec.cycle_length = int(cycle.size());
        int label = cycle[0];
        rec.representative_a = stations.back().base;
        rec.representative_v = stations.back().roots[label];

        std::vector<KneadingWord> words;
        bool unresolved = false;
        for (int s = 0; s < nstations; ++s) {
            Complex a = stations[s].base;
            // High-precision orbit: in doubles the late orbit points (and with
            // them the period certificate) are destroyed at large |a|.
            AccurateOrbit ao = fam.critical_orbit_at(a, stations[s].roots[label], n);
            Complex v = ao.v;
            CubicMap map(a, v);
            if (classify_escape(map, opts.tol) != EscapeClass::EscapeLocus)
                throw NumericError("run_atlas: sample not in the escape locus");
            if (ao.period != n)
                throw NumericError("run_atlas: sample fails the exact-period check");
            try {
                KneadingWord w = kneading_word(map, n, ao.points, opts.kneading);
                words.push_back(w);
                report.samples.push_back({a, v, region_id, w.to_string()});
            } catch (const NumericError&) {
                unresolved = true;
                report.samples.push_back({a, v, region_id, ""});
            }
        }
        rec.samples_checked = nstations;
        rec.unresolved = unresolved || words.empty();
        if (!words.empty()) {
            for (const auto& w : words)
                if (!(w == words.front()))
                    throw NumericError("run_atlas: kneading word not constant across samples "
                                       "of region " +
                                       std::to_string(region_id) + " (" + words.front().to_string() +
                                       " vs " + w.to_string() + ")");
            rec.kneading = words.front();
            rec.flip_path = flip_path_to_distinguished(rec.kneading);
        }
        report.regions.push_back(std::move(rec));
        ++region_id;
    }

    int distinguished = 0;
    for (const auto& r : report.regions)
        if (!r.unresolved && r.kneading == distinguished_word(n)) ++distinguished;
    report.distinguished_unique = (distinguished == 1);
    report.orbit_count = 0;  // filled by callers that also run monodromy
    return report;
}

std::string atlas_report_json(const AtlasReport& r) {
    json j;
    j["n"] = r.n;
    j["deg_v"] = r.deg_v;
    j["branch_point_count"] = r.branch_point_count;
    j["orbit_count"] = r.orbit_count;
    j["infinity_cycle_type"] = r.infinity_cycle_type;
    j["radius"] = r.radius;
    j["seed"] = r.seed;
    j["tol"] = r.tol;
    j["distinguished_unique"] = r.distinguished_unique;
    j["regions"] = json::array();
    for (const auto& reg : r.regions) {
        json e;
        e["region_id"] = reg.region_id;
        e["representative_a"] = complex_json(reg.representative_a);
        e["representative_v"] = complex_json(reg.representative_v);
        e["cycle_length"] = reg.cycle_length;
        e["samples_checked"] = reg.samples_checked;
        e["unresolved"] = reg.unresolved;
        e["kneading"] = reg.unresolved ? "" : reg.kneading.to_string();
        e["flip_path"] = reg.flip_path;
        j["regions"].push_back(std::move(e));
    }
    j["samples"] = json::array();
    for (const auto& s : r.samples) {
        json e;
        e["a"] = complex_json(s.a);
        e["v"] = complex_json(s.v);
        e["region_id"] = s.region_id;
        e["word"] = s.word;
        j["samples"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::string monodromy_report_json(const MonodromyResult& m) {
    json j;
    j["n"] = m.n;
    j["degree"] = m.degree;
    j["base"] = complex_json(m.base);
    j["seed"] = m.seed;
    j["branch_points"] = json::array();
    for (std::size_t i = 0; i < m.branch_points.size(); ++i) {
        json e;
        e["location"] = complex_json(m.branch_points[i]);
        e["residual"] = m.branch_residuals[i];
        e["generator"] = m.generators[i].cycle_notation();
        j["branch_points"].push_back(std::move(e));
    }
    j["infinity_cycle_notation"] = m.infinity.cycle_notation();
    j["infinity_cycle_type"] = m.infinity.cycle_type();
    j["orbit_count"] = m.orbit_count;
    j["orbit_sizes"] = m.orbit_sizes;
    return j.dump(2) + "\n";
}

std::string atlas_plot_csv(const AtlasReport& r) {
    std::ostringstream os;
    os << "re_a,im_a,re_v,im_v,region_id,word\n";
    os.precision(17);
    for (const auto& s : r.samples)
        os << s.a.real() << "," << s.a.imag() << "," << s.v.real() << "," << s.v.imag() << ","
           << s.region_id << "," << s.word << "\n";
    return os.str();
}

}  // namespace atlas
