#include "crackwake/mapgen.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "crackwake/error.hpp"
#include "crackwake/unperturbed_field.hpp"

namespace crackwake {

using std::numbers::pi;

char region_code(Region r) {
    switch (r) {
        case Region::shielding: return 'S';
        case Region::amplification: return 'A';
        case Region::neutral: return 'N';
        case Region::invalid: return 'X';
    }
    return 'X';
}

Region classify(double ratio, double delta) {
    if (!(delta > 0.0)) throw ValidationError("classify: delta must be positive");
    if (std::isnan(ratio)) return Region::invalid;
    if (ratio < -delta) return Region::shielding;
    if (ratio > delta) return Region::amplification;
    return Region::neutral;
}

std::string_view to_string(PairKind p) { return p == PairKind::a ? "a" : "b"; }

std::optional<PairKind> parse_pair_kind(std::string_view name) {
    if (name == "a") return PairKind::a;
    if (name == "b") return PairKind::b;
    return std::nullopt;
}

std::vector<Defect> arrangement_defects(const Arrangement& arr, double phi1, double alpha1,
                                        const Bimaterial& bimaterial) {
    Defect mc;
    mc.kind = DefectKind::microcrack;
    mc.center = Eigen::Vector2d(std::cos(phi1), std::sin(phi1)) * arr.d1;
    mc.alpha = alpha1;
    mc.la = arr.l1;
    const Defect line = arr.pair == PairKind::a ? neutral_pair_a(mc, arr.d2)
                                                : neutral_pair_b(mc, bimaterial, arr.d2);
    return {mc, line};
}

std::size_t RegionMap::count(Region r) const {
    return std::size_t(std::count_if(cells.begin(), cells.end(),
                                     [r](const RegionCell& c) { return c.region == r; }));
}

double cell_phi(int i, int n_phi) { return -pi + (i + 0.5) * 2.0 * pi / n_phi; }

double cell_alpha(int j, int n_alpha) { return (j + 0.5) * pi / n_alpha; }

unsigned resolve_thread_count(unsigned requested) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CRACKWAKE_THREADS")) {
        unsigned cap = 0;
        const auto [end, ec] = std::from_chars(env, env + std::strlen(env), cap);
        if (ec == std::errc() && *end == '\0' && cap > 0) n = std::min(n, cap);
    }
    return n;
}

RegionMap scan_map(const Arrangement& arr, const Loading& loading, const Bimaterial& bimaterial,
                   const ScanOptions& opts) {
    if (opts.n_phi < 2 || opts.n_alpha < 2)
        throw ValidationError("scan_map: grid needs at least 2 x 2 cells");
    if (!(opts.delta > 0.0)) throw ValidationError("scan_map: delta must be positive");
    if (!(arr.l1 > 0.0 && arr.d1 > 0.0)) throw ValidationError("scan_map: l1 and d1 must be positive");
    validate(bimaterial);
    check_balance(loading);

    const double k0 = sif_k0(loading, bimaterial, opts.quadrature);
    if (k0 == 0.0) throw ValidationError("scan_map: K0 vanishes for this loading");

    RegionMap map;
    map.n_phi = opts.n_phi;
    map.n_alpha = opts.n_alpha;
    map.cells.resize(std::size_t(opts.n_phi) * opts.n_alpha);

    const auto evaluate = [&](std::size_t k) {
        RegionCell& cell = map.cells[k];
        cell.phi1 = cell_phi(int(k / opts.n_alpha), opts.n_phi);
        cell.alpha1 = cell_alpha(int(k % opts.n_alpha), opts.n_alpha);
        try {
            const auto defects = arrangement_defects(arr, cell.phi1, cell.alpha1, bimaterial);
            cell.ratio = delta_k_defects(defects, loading, bimaterial, opts.quadrature).total / k0;
            cell.region = classify(cell.ratio, opts.delta);
        } catch (const NumericalError&) {
            cell.ratio = std::numeric_limits<double>::quiet_NaN();
            cell.region = Region::invalid;
        }
    };

    const unsigned n_threads =
        std::min<std::size_t>(resolve_thread_count(opts.threads), map.cells.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < map.cells.size(); k = next++) evaluate(k);
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }
    return map;
}

void write_map_csv(std::ostream& os, const RegionMap& map) {
    os << "phi1,alpha1,ratio,region\n";
    char buf[128];
    for (const auto& c : map.cells) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%c\n", c.phi1, c.alpha1, c.ratio,
                      region_code(c.region));
        os << buf;
    }
}

void write_map_pgm(std::ostream& os, const RegionMap& map) {
    const auto level = [](Region r) {
        switch (r) {
            case Region::shielding: return 170;
            case Region::amplification: return 85;
            case Region::neutral: return 40;
            case Region::invalid: return 0;
        }
        return 0;
    };
    os << "P2\n" << map.n_phi << ' ' << map.n_alpha << "\n255\n";
    for (int j = map.n_alpha - 1; j >= 0; --j) {
        for (int i = 0; i < map.n_phi; ++i) {
            if (i) os << ' ';
            os << level(map.at(i, j).region);
        }
        os << '\n';
    }
}

}  // namespace crackwake
