#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "crackwake/dipole.hpp"
#include "crackwake/loading.hpp"
#include "crackwake/perturbation.hpp"

namespace crackwake {

enum class Region { shielding, amplification, neutral, invalid };

// S, A, N; X marks a cell whose evaluation failed.
char region_code(Region r);

// Boundaries |ratio| = delta are neutral. Throws ValidationError unless delta > 0.
Region classify(double ratio, double delta);

enum class PairKind { a, b };

std::string_view to_string(PairKind p);
std::optional<PairKind> parse_pair_kind(std::string_view name);

// Microcrack at (d1, phi1) with orientation alpha1 plus the rigid-line
// companion of the chosen neutral pair.
struct Arrangement {
    PairKind pair = PairKind::a;
    double l1 = 0.1;
    double d1 = 1.0;
    std::optional<double> d2;

    bool operator==(const Arrangement&) const = default;
};

std::vector<Defect> arrangement_defects(const Arrangement& arr, double phi1, double alpha1,
                                        const Bimaterial& bimaterial);

struct RegionCell {
    double phi1 = 0.0;
    double alpha1 = 0.0;
    double ratio = 0.0;  // Delta K total / K0; NaN when invalid
    Region region = Region::invalid;
};

struct ScanOptions {
    int n_phi = 128;
    int n_alpha = 64;
    double delta = 1e-6;
    // 0 picks the hardware concurrency. CRACKWAKE_THREADS caps either choice.
    unsigned threads = 0;
    quadrature::Options quadrature = kScanQuadrature;
};

// Row-major: cell (i, j) at index i * n_alpha + j, with phi1 at the centre of
// the i-th slice of (-pi, pi) and alpha1 at the centre of the j-th slice of (0, pi).
struct RegionMap {
    int n_phi = 0;
    int n_alpha = 0;
    std::vector<RegionCell> cells;

    const RegionCell& at(int i, int j) const { return cells[std::size_t(i) * n_alpha + j]; }
    std::size_t count(Region r) const;
};

double cell_phi(int i, int n_phi);
double cell_alpha(int j, int n_alpha);

unsigned resolve_thread_count(unsigned requested);

RegionMap scan_map(const Arrangement& arr, const Loading& loading, const Bimaterial& bimaterial,
                   const ScanOptions& opts = {});

// Columns: phi1,alpha1,ratio,region
void write_map_csv(std::ostream& os, const RegionMap& map);

// Plain PGM, phi1 along the width, alpha1 increasing upwards.
void write_map_pgm(std::ostream& os, const RegionMap& map);

}  // namespace crackwake
