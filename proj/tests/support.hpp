#pragma once

#include <cmath>
#include <random>

#include "crackwake/loading.hpp"

namespace testing {

inline double rel_err(double got, double want) {
    const double scale = std::max(std::abs(want), std::abs(got));
    return scale == 0.0 ? 0.0 : std::abs(got - want) / scale;
}

// p+ = p- = P at x1 = -a.
inline crackwake::Loading pair_load(double P = -1.0, double a = 1.0) {
    return crackwake::symmetric_pair(P, a);
}

// Fixed-seed generator so failures reproduce.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace testing
