#include "atlas/kneading.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <stdexcept>

#include "atlas/errors.hpp"

namespace atlas {

std::string KneadingWord::to_string() const {
    std::string s;
    for (int b : symbols) s += char('0' + b);
    return s;
}

KneadingWord KneadingWord::from_string(const std::string& bits) {
    KneadingWord w;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("KneadingWord: symbols must be 0 or 1");
        w.symbols.push_back(c - '0');
    }
    return w;
}

ComponentField::ComponentField(const CubicMap& map, double margin, int resolution)
    : map_(map), margin_(margin) {
    if (margin <= 0) throw std::invalid_argument("ComponentField: margin must be positive");
    GreenValue gf = green(map, map.free_critical());
    if (!gf.escaped())
        throw std::invalid_argument("ComponentField: map is not in the escape locus");
    g_free_ = gf.value;

    // Far-apart anchors: D_0 and D_1 are tiny compared to |a - (-2a)| (their
    // extents grow like sqrt|a| against a 3|a| separation), so sublevel points
    // are classified by the nearest anchor and no grid is needed.  A shared
    // grid would be useless here anyway: its cells outgrow the components.
    anchor_gap_ = std::abs(map.marked_critical() - map.cocritical_of_marked());
    if (anchor_gap_ >= 90.0) return;

    // The sublevel set {g < g(-a)} lives inside |z| <~ exp(g(-a)) in the far
    // field; the box also has to hold both anchors.
    double half = std::min(map.escape_radius(), 4.0 * std::exp(g_free_));
    half = std::max(half, 3.0 * std::abs(map.a()) + 1.0);
    double gridtol = std::max(1e-14, margin / 100.0);
    grid_ = green_grid_omp(map, Complex(0.0, 0.0), half, resolution, gridtol);

    const int res = resolution;
    const double threshold = g_free_ - margin_;
    labels_.assign(std::size_t(res) * res, -1);

    auto inside = [&](int ix, int iy) {
        return ix >= 0 && ix < res && iy >= 0 && iy < res &&
               grid_.at(ix, iy) < threshold;
    };
    auto flood = [&](Complex anchor, signed char label) {
        int ax = grid_.cell_x(anchor), ay = grid_.cell_y(anchor);
        if (!inside(ax, ay)) return;  // discretization miss; leave unlabeled
        std::deque<std::pair<int, int>> queue{{ax, ay}};
        labels_[std::size_t(ay) * res + ax] = label;
        while (!queue.empty()) {
            auto [x, y] = queue.front();
            queue.pop_front();
            const int dx[4] = {1, -1, 0, 0};
            const int dy[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                int nx = x + dx[k], ny = y + dy[k];
                if (!inside(nx, ny)) continue;
                signed char& cell = labels_[std::size_t(ny) * res + nx];
                if (cell == label) continue;
                if (cell >= 0)
                    throw InternalError(
                        "ComponentField: flood fills from both anchors touched; the two "
                        "Jordan domains are disjoint, so this resolution leaks across the "
                        "pinch point");
                cell = label;
                queue.push_back({nx, ny});
            }
        }
    };
    flood(map.marked_critical(), 0);
    flood(map.cocritical_of_marked(), 1);
}

ComponentLabel ComponentField::locate(Complex w) const {
    GreenValue g = green(map_, w);
    double gw = g.escaped() ? g.value : 0.0;
    if (gw >= g_free_ - margin_) return ComponentLabel::Outside;
    if (anchor_gap_ >= 90.0) {
        double rho = 0.02 * anchor_gap_;
        if (std::abs(w - map_.marked_critical()) <= rho) return ComponentLabel::D0;
        if (std::abs(w - map_.cocritical_of_marked()) <= rho) return ComponentLabel::D1;
        return ComponentLabel::Indeterminate;
    }
    if (!grid_.contains(w)) return ComponentLabel::Indeterminate;
    signed char label = labels_[std::size_t(grid_.cell_y(w)) * grid_.resolution + grid_.cell_x(w)];
    if (label == 0) return ComponentLabel::D0;
    if (label == 1) return ComponentLabel::D1;
    return ComponentLabel::Indeterminate;
}

ComponentLabel locate_component(const CubicMap& map, Complex w, double margin, int resolution) {
    return ComponentField(map, margin, resolution).locate(w);
}

KneadingWord kneading_word(const CubicMap& map, int n, const std::vector<Complex>& pts,
                           const KneadingOptions& opts) {
    if (n < 2) throw std::invalid_argument("kneading_word: n must be >= 2");
    if (int(pts.size()) < n + 1)
        throw std::invalid_argument("kneading_word: orbit must hold z_0 .. z_n");
    GreenValue gf = green(map, map.free_critical(), opts.green_tol, opts.iter_budget);
    if (!gf.escaped())
        throw std::invalid_argument("kneading_word: map is not in the escape locus");
    double margin = opts.margin_fraction * gf.value;

    int bad_index = -1;
    for (int res = opts.initial_resolution; res <= opts.max_resolution; res *= 2) {
        bad_index = -1;
        std::optional<ComponentField> field;
        try {
            field.emplace(map, margin, res);
        } catch (const InternalError&) {
            // Both anchors touched: the grid leaked across the pinch; retry finer.
            bad_index = 0;
            continue;
        }
        KneadingWord word;
        for (int j = 1; j <= n; ++j) {
            ComponentLabel lab = field->locate(pts[j]);
            if (lab == ComponentLabel::D0) {
                word.symbols.push_back(0);
            } else if (lab == ComponentLabel::D1) {
                word.symbols.push_back(1);
            } else {
                bad_index = j;
                break;
            }
        }
        if (bad_index < 0) {
            if (word.symbols.back() != 0)
                throw InternalError("kneading_word: kappa_n != 0 for a period-n orbit");
            return word;
        }
    }
    throw NumericError("KneadingUnresolved: symbol " + std::to_string(bad_index) +
                       " still indeterminate at resolution " +
                       std::to_string(opts.max_resolution));
}

KneadingWord kneading_word(const CubicMap& map, int n, const KneadingOptions& opts) {
    if (n < 2) throw std::invalid_argument("kneading_word: n must be >= 2");
    return kneading_word(map, n, orbit(map, map.marked_critical(), n), opts);
}

KneadingWord twist_flip(const KneadingWord& word, int m) {
    const int n = word.length();
    if (m < 1 || m >= n)
        throw std::invalid_argument("twist_flip: position must satisfy 1 <= m <= n-1 "
                                    "(kappa_n is pinned to 0)");
    KneadingWord out = word;
    out.symbols[m - 1] = 1 - out.symbols[m - 1];
    return out;
}

KneadingWord distinguished_word(int n) {
    if (n < 2) throw std::invalid_argument("distinguished_word: n must be >= 2");
    KneadingWord w;
    w.symbols.assign(n, 1);
    w.symbols.back() = 0;
    return w;
}

std::vector<int> flip_path_to_distinguished(const KneadingWord& word) {
    std::vector<int> flips;
    for (int m = 1; m < word.length(); ++m)
        if (word.symbols[m - 1] == 0) flips.push_back(m);
    return flips;
}

}  // namespace atlas
