#pragma once

#include <Eigen/Core>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "crackwake/dipole.hpp"
#include "crackwake/loading.hpp"
#include "crackwake/unperturbed_field.hpp"

namespace crackwake {

// Defect positions passed to this module are relative to the current tip.

// Tractions along x2 = 0 that cancel the defect's dipole field.
class EffectiveTraction {
public:
    EffectiveTraction(const Eigen::Vector2d& center, const Eigen::Vector2d& gradient,
                      const DipoleMatrix& dipole, const Bimaterial& bimaterial);

    // d w / d x2 at (x1, 0), w the far-field dipole correction.
    double dw_dx2(double x1) const;
    // <sigma>(x1) = -(mu+ + mu-)/2 dw/dx2
    double avg(double x1) const;
    // [sigma](x1) = -(mu+ - mu-) dw/dx2
    double jump(double x1) const;

private:
    Eigen::Vector2d center_;
    Eigen::RowVector2d gm_;  // gradient^T M
    double mu_plus_;
    double mu_minus_;
};

EffectiveTraction effective_tractions(const Defect& defect, const Eigen::Vector2d& grad_at_center,
                                      const Bimaterial& bimaterial);

// c = (-sin(3 phi/2), cos(3 phi/2)) / (2 d^(3/2))
template <typename Scalar>
Vector2<Scalar> tip_vector(Scalar d, Scalar phi) {
    using std::cos;
    using std::sin;
    using std::sqrt;
    const Scalar w = Scalar(1) / (Scalar(2) * d * sqrt(d));
    return Vector2<Scalar>(-sin(Scalar(3) * phi / Scalar(2)), cos(Scalar(3) * phi / Scalar(2))) * w;
}

inline constexpr quadrature::Options kOracleQuadrature{1e-9, 0.0, 24};
inline constexpr quadrature::Options kScanQuadrature{1e-7, 0.0, 24};

// Closed-form SIF change from one defect:
// -sqrt(2/pi) mu+ mu- / (mu+ + mu-) grad u0(Y) . M c.
double delta_k_defect(const Defect& defect, const Loading& loading, const Bimaterial& bimaterial,
                      const quadrature::Options& opts = kFieldQuadrature);

struct DeltaKBreakdown {
    std::vector<double> per_defect;
    double total = 0.0;
};

// Dilute superposition: per-defect values and their plain sum.
DeltaKBreakdown delta_k_defects(std::span<const Defect> defects, const Loading& loading,
                                const Bimaterial& bimaterial,
                                const quadrature::Options& opts = kFieldQuadrature);

// Same quantity from the weight-function integral of the effective
// tractions over the crack faces; independent of the closed form.
double delta_k_defect_quadrature(const Defect& defect, const Loading& loading,
                                 const Bimaterial& bimaterial,
                                 const quadrature::Options& opts = kOracleQuadrature);

// SIF change for a uniform tip advance: advance * a3 / 2.
double delta_k_advance(double advance, double a3);

// Remote-load limit of Delta K / K0 for each defect kind.
double delta_k_remote(const Defect& defect, const Bimaterial& bimaterial);

// Rigid line in the microcrack's half-plane on the same ray, rotated by
// -pi/2 and scaled so that l2/d2 = l1/d1. Default d2 = 2 d1.
Defect neutral_pair_a(const Defect& microcrack, std::optional<double> d2 = std::nullopt);

// Rigid line at the mirror image across the interface, alpha2 = pi/2 - alpha1,
// sized so that mu(l1 half) l2^2/d2^2 = mu(l2 half) l1^2/d1^2. Default d2 = d1.
Defect neutral_pair_b(const Defect& microcrack, const Bimaterial& bimaterial,
                      std::optional<double> d2 = std::nullopt);

}  // namespace crackwake
