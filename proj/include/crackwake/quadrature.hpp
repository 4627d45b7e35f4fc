#pragma once

#include <functional>
#include <span>

namespace crackwake::quadrature {

struct Options {
    double rel_tol = 1e-10;
    // Floor for integrals that vanish; error <= max(rel_tol * L1, abs_tol).
    double abs_tol = 0.0;
    unsigned max_depth = 24;
};

using Integrand = std::function<double(double)>;

// Adaptive 15-point Gauss-Kronrod on [a, b]; b may be +infinity.
// Throws QuadratureFailure when the error estimate stays above tolerance.
double integrate(const Integrand& f, double a, double b, const Options& opts = {});

// Sum of integrate() over consecutive pieces of a sorted breakpoint list.
double integrate_pieces(const Integrand& f, std::span<const double> breakpoints,
                        const Options& opts = {});

}  // namespace crackwake::quadrature
