#pragma once

#include <Eigen/Core>
#include <optional>

#include "crackwake/loading.hpp"
#include "crackwake/quadrature.hpp"

namespace crackwake {

// Leading and second-order coefficients of the traction ahead of the tip,
// sigma(r, 0) = (k3 r^-1/2 + a3 r^1/2) / sqrt(2 pi) + O(r^3/2).
struct TipFieldCoefficients {
    double k3 = 0.0;
    double a3 = 0.0;
};

// Polar position relative to the crack tip; phi > 0 is the upper half-plane.
struct FieldPoint {
    double d = 1.0;
    double phi = 0.0;

    Eigen::Vector2d cartesian() const;
    static FieldPoint from_cartesian(const Eigen::Vector2d& x);
};

enum class HalfPlane { upper, lower };

// phi >= 0 maps to the upper half-plane.
HalfPlane half_plane_of(double phi);

inline constexpr quadrature::Options kFieldQuadrature{1e-10, 0.0, 24};

double sif_k0(const Loading& loading, const Bimaterial& bimaterial,
              const quadrature::Options& opts = kFieldQuadrature);

double coeff_a0(const Loading& loading, const Bimaterial& bimaterial,
                const quadrature::Options& opts = kFieldQuadrature);

TipFieldCoefficients tip_coefficients(const Loading& loading, const Bimaterial& bimaterial,
                                      const quadrature::Options& opts = kFieldQuadrature);

// (du/dx1, du/dx2) of the defect-free solution at `point`. The modulus of
// `side` (default: half_plane_of(point.phi)) selects the branch, which only
// matters on the interface phi = 0.
Eigen::Vector2d grad_u0(const Loading& loading, const Bimaterial& bimaterial,
                        const FieldPoint& point, std::optional<HalfPlane> side = std::nullopt,
                        const quadrature::Options& opts = kFieldQuadrature);

struct MellinOptions {
    double omega = 0.25;
    double rel_tol = 1e-8;
    double initial_cutoff = 8.0;
    double max_cutoff = 8192.0;
};

// Defect-free displacement by numerical inversion of its Mellin transform
// along Re(s) = omega. Intended as an independent check of grad_u0.
double displacement_u0(const Loading& loading, const Bimaterial& bimaterial, double r,
                       double theta, std::optional<HalfPlane> side = std::nullopt,
                       const MellinOptions& opts = {});

}  // namespace crackwake
