#include "atlas/dynatomic.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "atlas/errors.hpp"

namespace atlas {

namespace {

// One application of P_{a,v} to a polynomial iterate w(a,v).
BivariatePoly apply_map(const BivariatePoly& w) {
    BivariatePoly w2 = w * w;
    BivariatePoly w3 = w2 * w;
    BivariatePoly out = w3;
    // -3a^2 w
    for (const auto& [m, c] : w.terms()) out.add_term(m.deg_a + 2, m.deg_v, -3 * c);
    out.add_term(3, 0, 2);  // +2a^3
    out.add_term(0, 1, 1);  // +v
    return out;
}

std::mutex g_cache_mutex;
std::map<int, BivariatePoly> g_phin_cache;

}  // namespace

BivariatePoly build_Qn(int n, int budget) {
    if (n < 1) throw BudgetError("build_Qn: n must be >= 1");
    if (n > budget)
        throw BudgetError("build_Qn: degree budget exceeded (n=" + std::to_string(n) +
                          " > budget " + std::to_string(budget) + ")");
    BivariatePoly w = BivariatePoly::var_a();
    for (int k = 0; k < n; ++k) w = apply_map(w);
    return w - BivariatePoly::var_a();
}

const BivariatePoly& build_Phin(int n, int budget) {
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_phin_cache.find(n);
        if (it != g_phin_cache.end()) return it->second;
    }

    BivariatePoly qn = build_Qn(n, budget);
    BivariatePoly phi = qn;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const BivariatePoly& phid = build_Phin(d, budget);
        auto [quo, rem] = phi.divide_v(phid);
        if (!rem.is_zero())
            throw InternalError("build_Phin: nonzero remainder dividing Q_" + std::to_string(n) +
                                " by Phi_" + std::to_string(d));
        phi = std::move(quo);
    }

    // Re-verify the defining identity by exact multiplication.
    BivariatePoly prod = phi;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) prod = prod * build_Phin(d, budget);
    if (!(prod == qn))
        throw InternalError("build_Phin: product of Phi_d over d|n does not equal Q_n");

    // Write-once cache: concurrent builders compute the same value, the
    // first store wins.
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto [it, inserted] = g_phin_cache.emplace(n, std::move(phi));
    return it->second;
}

void clear_phin_cache() {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_phin_cache.clear();
}

std::string serialize_phin(const BivariatePoly& p, int n) {
    std::ostringstream os;
    os << "PHIN n=" << n << " degv=" << p.degree_v() << "\n";
    // Monomial ordering is already lexicographic in (deg_a, deg_v).
    for (const auto& [m, c] : p.terms())
        os << m.deg_a << " " << m.deg_v << " " << c.get_str() << "\n";
    return os.str();
}

BivariatePoly parse_phin(const std::string& text, int* n_out) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header) || header.rfind("PHIN ", 0) != 0)
        throw InternalError("parse_phin: bad header");
    int n = 0, degv = 0;
    if (std::sscanf(header.c_str(), "PHIN n=%d degv=%d", &n, &degv) != 2)
        throw InternalError("parse_phin: malformed header: " + header);
    if (n_out) *n_out = n;
    BivariatePoly p;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int i = 0, j = 0;
        std::string coeff;
        if (!(ls >> i >> j >> coeff)) throw InternalError("parse_phin: bad term line: " + line);
        p.add_term(i, j, mpz_class(coeff));
    }
    if (p.degree_v() != degv) throw InternalError("parse_phin: degv mismatch with header");
    return p;
}

void write_phin_file(const std::filesystem::path& path, const BivariatePoly& p, int n) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InternalError("write_phin_file: cannot open " + path.string());
    os << serialize_phin(p, n);
}

BivariatePoly read_phin_file(const std::filesystem::path& path, int* n_out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InternalError("read_phin_file: cannot open " + path.string());
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_phin(buf.str(), n_out);
}

}  // namespace atlas
