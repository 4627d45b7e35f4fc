#include "crackwake/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "crackwake/error.hpp"

namespace crackwake {

using std::numbers::pi;

namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / pi);

double opposite_modulus(double phi, const Bimaterial& b) {
    return half_plane_of(phi) == HalfPlane::upper ? b.mu_minus : b.mu_plus;
}

void require_microcrack(const Defect& d) {
    if (d.kind != DefectKind::microcrack)
        throw ValidationError("neutral arrangements are built from a microcrack");
    validate(d);
}

}  // namespace

EffectiveTraction::EffectiveTraction(const Eigen::Vector2d& center, const Eigen::Vector2d& gradient,
                                     const DipoleMatrix& dipole, const Bimaterial& bimaterial)
    : center_(center),
      gm_(gradient.transpose() * dipole),
      mu_plus_(bimaterial.mu_plus),
      mu_minus_(bimaterial.mu_minus) {}

double EffectiveTraction::dw_dx2(double x1) const {
    const Eigen::Vector2d r(x1 - center_.x(), -center_.y());
    const double rho2 = r.squaredNorm();
    return -gm_.y() / (2.0 * pi * rho2) + gm_.dot(r) * r.y() / (pi * rho2 * rho2);
}

double EffectiveTraction::avg(double x1) const {
    return -0.5 * (mu_plus_ + mu_minus_) * dw_dx2(x1);
}

double EffectiveTraction::jump(double x1) const { return -(mu_plus_ - mu_minus_) * dw_dx2(x1); }

EffectiveTraction effective_tractions(const Defect& defect, const Eigen::Vector2d& grad_at_center,
                                      const Bimaterial& bimaterial) {
    return EffectiveTraction(defect.center, grad_at_center, dipole_matrix(defect), bimaterial);
}

double delta_k_defect(const Defect& defect, const Loading& loading, const Bimaterial& bimaterial,
                      const quadrature::Options& opts) {
    const DipoleMatrix m = dipole_matrix(defect);
    const FieldPoint at = FieldPoint::from_cartesian(defect.center);
    const Eigen::Vector2d g = grad_u0(loading, bimaterial, at, std::nullopt, opts);
    const double mu_p = bimaterial.mu_plus;
    const double mu_m = bimaterial.mu_minus;
    return -kSqrt2OverPi * mu_p * mu_m / (mu_p + mu_m) * g.dot(m * tip_vector(at.d, at.phi));
}

DeltaKBreakdown delta_k_defects(std::span<const Defect> defects, const Loading& loading,
                                const Bimaterial& bimaterial, const quadrature::Options& opts) {
    DeltaKBreakdown out;
    out.per_defect.reserve(defects.size());
    for (const auto& d : defects) {
        out.per_defect.push_back(delta_k_defect(d, loading, bimaterial, opts));
        out.total += out.per_defect.back();
    }
    return out;
}

double delta_k_defect_quadrature(const Defect& defect, const Loading& loading,
                                 const Bimaterial& bimaterial, const quadrature::Options& opts) {
    const FieldPoint at = FieldPoint::from_cartesian(defect.center);
    const Eigen::Vector2d g = grad_u0(loading, bimaterial, at, std::nullopt, kFieldQuadrature);
    const EffectiveTraction traction = effective_tractions(defect, g, bimaterial);
    const double eta = contrast(bimaterial);

    // t = sqrt(-x1): (-x1)^(-1/2) dx1 = 2 dt on (-inf, 0).
    const auto f = [&](double t) {
        const double x1 = -t * t;
        return 2.0 * (traction.avg(x1) + 0.5 * eta * traction.jump(x1));
    };

    // Resolve the peak of the dipole traction under the defect centre.
    const double y1 = defect.center.x();
    const double h = std::abs(defect.center.y());
    std::vector<double> breaks{0.0};
    for (double x : {-y1 - h, -y1, -y1 + h})
        if (x > 0.0) breaks.push_back(std::sqrt(x));
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    breaks.push_back(std::numeric_limits<double>::infinity());

    return -kSqrt2OverPi * quadrature::integrate_pieces(f, breaks, opts);
}

double delta_k_advance(double advance, double a3) { return 0.5 * advance * a3; }

double delta_k_remote(const Defect& defect, const Bimaterial& bimaterial) {
    validate(defect);
    const FieldPoint at = FieldPoint::from_cartesian(defect.center);
    const double k = opposite_modulus(at.phi, bimaterial) / (bimaterial.mu_plus + bimaterial.mu_minus);
    const double a = defect.alpha;
    const double ss = std::sin(1.5 * at.phi - a) * std::sin(0.5 * at.phi - a);
    const double cc = std::cos(1.5 * at.phi - a) * std::cos(0.5 * at.phi - a);
    const double d2 = at.d * at.d;
    const double l = defect.la;
    const double area = defect.la * defect.lb / d2;
    const double line = l * l / d2;

    switch (defect.kind) {
        case DefectKind::elastic_ellipse: {
            const double e = defect.lb / defect.la;
            const double ms = defect.mu_star;
            return 0.5 * area * (1.0 + e) * (ms - 1.0) * k * (ss / (e + ms) + cc / (1.0 + e * ms));
        }
        case DefectKind::rigid_ellipse: {
            const double e = defect.lb / defect.la;
            return -0.5 * area * (1.0 / e + 1.0) * k * (ss + e * cc);
        }
        case DefectKind::microcrack:
            return 0.5 * line * k * cc;
        case DefectKind::elliptic_void: {
            const double e = defect.lb / defect.la;
            return 0.5 * area * (1.0 / e + 1.0) * k * (e * ss + cc);
        }
        case DefectKind::rigid_line:
            return -0.5 * line * k * ss;
        case DefectKind::soft_line:
            return 0.5 * line * k * defect.kappa / (l + defect.kappa) * cc;
        case DefectKind::stiff_line:
            return -0.5 * line * k / (1.0 + defect.kappa * l) * ss;
    }
    return 0.0;
}

Defect neutral_pair_a(const Defect& microcrack, std::optional<double> d2) {
    require_microcrack(microcrack);
    const double d1 = microcrack.center.norm();
    const double scale = d2 ? *d2 / d1 : 2.0;
    if (!(scale > 0.0)) throw ValidationError("neutral_pair_a: d2 must be positive");
    Defect line;
    line.kind = DefectKind::rigid_line;
    line.center = microcrack.center * scale;
    line.la = microcrack.la * scale;
    line.alpha = normalize_angle(microcrack.alpha - pi / 2.0);
    return line;
}

Defect neutral_pair_b(const Defect& microcrack, const Bimaterial& bimaterial,
                      std::optional<double> d2) {
    require_microcrack(microcrack);
    validate(bimaterial);
    const double d1 = microcrack.center.norm();
    const double scale = d2 ? *d2 / d1 : 1.0;
    if (!(scale > 0.0)) throw ValidationError("neutral_pair_b: d2 must be positive");
    Defect line;
    line.kind = DefectKind::rigid_line;
    line.center = Eigen::Vector2d(microcrack.center.x(), -microcrack.center.y()) * scale;
    const auto modulus = [&](const Eigen::Vector2d& c) {
        return half_plane_of(std::atan2(c.y(), c.x())) == HalfPlane::upper ? bimaterial.mu_plus
                                                                           : bimaterial.mu_minus;
    };
    line.la = microcrack.la * scale * std::sqrt(modulus(line.center) / modulus(microcrack.center));
    line.alpha = normalize_angle(pi / 2.0 - microcrack.alpha);
    return line;
}

}  // namespace crackwake
