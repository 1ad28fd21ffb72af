#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "atlas/atlas_report.hpp"
#include "atlas/dynatomic.hpp"
#include "atlas/errors.hpp"
#include "atlas/kneading.hpp"
#include "atlas/monodromy.hpp"
#include "atlas/thurston.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 1;
    double tol = atlas::kDefaultTol;
    int budget = atlas::kDefaultCurveBudget;
    int monodromy_budget = 5;
    std::string cache_dir = "cache";
};

fs::path cache_path(const GlobalOpts& g, const std::string& name) {
    fs::create_directories(g.cache_dir);
    return fs::path(g.cache_dir) / name;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    os << text;
    std::cout << "wrote " << p.string() << "\n";
}

int cmd_curve(const GlobalOpts& g, int n) {
    const atlas::BivariatePoly& phi = atlas::build_Phin(n, g.budget);
    write_text(cache_path(g, "phin_" + std::to_string(n) + ".txt"),
               atlas::serialize_phin(phi, n));
    auto sign = phi.involution_symmetry_sign();
    std::cout << "Phi_" << n << ": degv=" << phi.degree_v() << " dega=" << phi.degree_a()
              << " terms=" << phi.term_count() << " symmetry="
              << (sign ? (*sign > 0 ? "+1" : "-1") : "none") << "\n";
    return atlas::EXIT_OK;
}

int cmd_components(const GlobalOpts& g, int n) {
    if (n > g.monodromy_budget)
        throw atlas::BudgetError("components: n exceeds the monodromy budget (" +
                                 std::to_string(g.monodromy_budget) + ")");
    atlas::CurveFamily fam(n, g.budget);
    atlas::MonodromyOptions opts;
    opts.seed = g.seed;
    atlas::MonodromyResult res = atlas::connected_components(fam, opts);
    write_text(cache_path(g, "monodromy_" + std::to_string(n) + ".json"),
               atlas::monodromy_report_json(res));
    std::cout << "S_" << n << ": deg_v=" << res.degree << " branch_points="
              << res.branch_points.size() << " orbit_count=" << res.orbit_count << "\n";
    return atlas::EXIT_OK;
}

atlas::AtlasReport make_atlas(const GlobalOpts& g, int n, double radius, bool with_monodromy) {
    atlas::AtlasOptions opts;
    opts.seed = g.seed;
    opts.tol = g.tol;
    opts.budget = g.budget;
    opts.radius = radius;
    atlas::AtlasReport report = atlas::run_atlas(n, opts);
    if (with_monodromy && n <= g.monodromy_budget) {
        atlas::CurveFamily fam(n, g.budget);
        atlas::MonodromyOptions mopts;
        mopts.seed = g.seed;
        report.orbit_count = atlas::connected_components(fam, mopts).orbit_count;
    }
    return report;
}

int cmd_atlas(const GlobalOpts& g, int n, double radius) {
    atlas::AtlasReport report = make_atlas(g, n, radius, true);
    write_text(cache_path(g, "atlas_" + std::to_string(n) + ".json"),
               atlas::atlas_report_json(report));
    std::cout << "n=" << n << " regions=" << report.regions.size() << " distinguished_unique="
              << (report.distinguished_unique ? "yes" : "no") << "\n";
    for (const auto& r : report.regions)
        std::cout << "  region " << r.region_id << ": cycle_length=" << r.cycle_length
                  << " word=" << (r.unresolved ? "unresolved" : r.kneading.to_string()) << "\n";
    if (!report.distinguished_unique)
        throw atlas::InternalError("atlas: distinguished word is not carried by exactly one region");
    for (const auto& r : report.regions)
        if (r.unresolved) return atlas::EXIT_NUMERIC;
    return atlas::EXIT_OK;
}

ordered_json thurston_table(int n) {
    ordered_json rows = ordered_json::array();
    for (const auto& part : atlas::enumerate_partitions(n)) {
        double lambda = atlas::leading_eigenvalue(atlas::transition_matrix(part));
        ordered_json row;
        row["partition"] = part.serialize();
        row["p"] = part.p;
        row["lambda"] = lambda;
        row["expected"] = std::pow(2.0, -1.0 / part.p);
        row["obstruction"] = atlas::obstruction_check(part);
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_thurston(int n) {
    std::cout << "p  lambda            2^(-1/p)          obstruction\n";
    for (const auto& row : thurston_table(n))
        std::cout << row["p"].get<int>() << "  " << row["lambda"].get<double>() << "  "
                  << row["expected"].get<double>() << "  "
                  << (row["obstruction"].get<bool>() ? "yes" : "no") << "\n";
    return atlas::EXIT_OK;
}

int cmd_kneading(const GlobalOpts& g, int n, double are, double aim, double vre, double vim) {
    atlas::CubicMap map({are, aim}, {vre, vim});
    if (atlas::classify_escape(map, g.tol) != atlas::EscapeClass::EscapeLocus)
        throw atlas::NumericError("kneading: parameter is not in the escape locus");
    auto pr = atlas::exact_period(map, n, atlas::scaled_period_tol(map.a(), g.tol));
    if (pr.status != atlas::PeriodStatus::Found || pr.period != n)
        throw atlas::NumericError("kneading: marked critical point does not have exact period n");
    atlas::KneadingWord w = atlas::kneading_word(map, n);
    std::cout << "word=" << w.to_string() << "\n";
    auto flips = atlas::flip_path_to_distinguished(w);
    std::cout << "flip_path=[";
    for (std::size_t i = 0; i < flips.size(); ++i) std::cout << (i ? "," : "") << flips[i];
    std::cout << "] -> " << atlas::distinguished_word(n).to_string() << "\n";
    return atlas::EXIT_OK;
}

int cmd_report(const GlobalOpts& g, int n, double radius) {
    const atlas::BivariatePoly& phi = atlas::build_Phin(n, g.budget);
    atlas::AtlasReport ar = make_atlas(g, n, radius, true);

    atlas::CurveFamily fam(n, g.budget);
    atlas::MonodromyOptions mopts;
    mopts.seed = g.seed;
    atlas::MonodromyResult mr = atlas::connected_components(fam, mopts);
    ar.orbit_count = mr.orbit_count;

    ordered_json j;
    j["n"] = n;
    j["curve"] = {{"deg_v", phi.degree_v()},
                  {"deg_a", phi.degree_a()},
                  {"terms", phi.term_count()},
                  {"symmetry", phi.involution_symmetry_sign().value_or(0)}};
    j["monodromy"] = ordered_json::parse(atlas::monodromy_report_json(mr));
    j["atlas"] = ordered_json::parse(atlas::atlas_report_json(ar));
    j["thurston"] = thurston_table(n);
    write_text(cache_path(g, "report_" + std::to_string(n) + ".json"), j.dump(2) + "\n");
    write_text(cache_path(g, "atlas_" + std::to_string(n) + "_plot.csv"), atlas::atlas_plot_csv(ar));
    return atlas::EXIT_OK;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynatomic curve atlas for the critically marked cubic family"};
    app.set_config("--config", "", "key=value config file overriding defaults");

    GlobalOpts g;
    app.add_option("--seed", g.seed, "random seed for base-point selection");
    app.add_option("--tol", g.tol, "floating tolerance");
    app.add_option("--budget", g.budget, "symbolic degree budget (max n)");
    app.add_option("--monodromy-budget", g.monodromy_budget, "max n for monodromy runs");
    app.add_option("--cache-dir", g.cache_dir, "cache directory");
    app.require_subcommand(1);

    int n = 2;
    double radius = 0.0;
    auto* curve = app.add_subcommand("curve", "build Phi_n and write the cache file");
    curve->add_option("n", n)->required();
    auto* comps = app.add_subcommand("components", "monodromy connectedness certificate");
    comps->add_option("n", n)->required();
    auto* atl = app.add_subcommand("atlas", "escape-region atlas with kneading words");
    atl->add_option("n", n)->required();
    atl->add_option("--radius", radius, "sampling radius (default 1e3*(1+max branch point))");
    auto* thu = app.add_subcommand("thurston", "transition-matrix eigenvalue table");
    thu->add_option("n", n)->required();
    double are = 0, aim = 0, vre = 0, vim = 0;
    auto* kne = app.add_subcommand("kneading", "kneading word of one escape parameter");
    kne->add_option("n", n)->required();
    kne->add_option("a_re", are)->required();
    kne->add_option("a_im", aim)->required();
    kne->add_option("v_re", vre)->required();
    kne->add_option("v_im", vim)->required();
    auto* rep = app.add_subcommand("report", "consolidated JSON report and plot CSV");
    rep->add_option("n", n)->required();
    rep->add_option("--radius", radius, "sampling radius");

    CLI11_PARSE(app, argc, argv);

    try {
        if (curve->parsed()) return cmd_curve(g, n);
        if (comps->parsed()) return cmd_components(g, n);
        if (atl->parsed()) return cmd_atlas(g, n, radius);
        if (thu->parsed()) return cmd_thurston(n);
        if (kne->parsed()) return cmd_kneading(g, n, are, aim, vre, vim);
        if (rep->parsed()) return cmd_report(g, n, radius);
    } catch (const atlas::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return atlas::EXIT_BUDGET;
    } catch (const atlas::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return atlas::EXIT_NUMERIC;
    } catch (const atlas::InternalError& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return atlas::EXIT_INTERNAL;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
