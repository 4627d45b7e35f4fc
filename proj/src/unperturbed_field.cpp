#include "crackwake/unperturbed_field.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "crackwake/error.hpp"

namespace crackwake {

using std::numbers::pi;

Eigen::Vector2d FieldPoint::cartesian() const {
    return {d * std::cos(phi), d * std::sin(phi)};
}

FieldPoint FieldPoint::from_cartesian(const Eigen::Vector2d& x) {
    return {x.norm(), std::atan2(x.y(), x.x())};
}

HalfPlane half_plane_of(double phi) { return phi >= 0.0 ? HalfPlane::upper : HalfPlane::lower; }

namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / pi);

void require_support_behind_tip(const Loading& loading) {
    if (!(support_end(loading) < 0.0))
        throw LoadTooCloseToTip("loading support must lie strictly behind the crack tip");
}

// Integral over the table of (<p> + eta/2 [p])(x) (-x)^(-power), with
// t = sqrt(-x) removing the endpoint singularity.
double weighted_table_integral(const DistributedLoad& table, double eta, double power,
                               const quadrature::Options& opts) {
    std::vector<double> breaks;
    breaks.reserve(table.x1.size());
    for (auto it = table.x1.rbegin(); it != table.x1.rend(); ++it) breaks.push_back(std::sqrt(-*it));
    const auto f = [&](double t) {
        const double x = -t * t;
        const double load = table.avg_at(x) + 0.5 * eta * table.jump_at(x);
        // (-x)^(-power) dx = t^(-2 power) 2t dt
        return 2.0 * load * std::pow(t, 1.0 - 2.0 * power);
    };
    return quadrature::integrate_pieces(f, breaks, opts);
}

double weighted_moment(const Loading& loading, const Bimaterial& bimaterial, double power,
                       const quadrature::Options& opts) {
    require_support_behind_tip(loading);
    const double eta = contrast(bimaterial);
    const LoadDecomposition parts = decompose(loading);
    double sum = 0.0;
    for (const auto& s : parts.stations)
        sum += (s.avg + 0.5 * eta * s.jump) * std::pow(-s.x1, -power);
    if (parts.distributed) sum += weighted_table_integral(*parts.distributed, eta, power, opts);
    return sum;
}

struct GradientKernel {
    double d;
    double phi;
    double mu_half;
    double mu_sum;
    double eta;
    double cos_phi, sin_phi, sin_half, cos_half, sin_3half, cos_3half;

    GradientKernel(const FieldPoint& p, const Bimaterial& b, HalfPlane side)
        : d(p.d),
          phi(p.phi),
          mu_half(side == HalfPlane::upper ? b.mu_plus : b.mu_minus),
          mu_sum(b.mu_plus + b.mu_minus),
          eta(contrast(b)),
          cos_phi(std::cos(p.phi)),
          sin_phi(std::sin(p.phi)),
          sin_half(std::sin(0.5 * p.phi)),
          cos_half(std::cos(0.5 * p.phi)),
          sin_3half(std::sin(1.5 * p.phi)),
          cos_3half(std::cos(1.5 * p.phi)) {}

    // Integrand of the gradient quadrature at x1 < 0 for unit-weight loads
    // <p> = avg, [p] = jump, including the 1/(pi d) prefactor.
    Eigen::Vector2d operator()(double x1, double avg, double jump) const {
        const double ratio = -x1 / d;  // > 0
        const double root = std::sqrt(ratio);
        const double denom = 2.0 * cos_phi + ratio + 1.0 / ratio;
        if (!(denom > 8.0 * std::numeric_limits<double>::epsilon() * (2.0 + ratio + 1.0 / ratio))) {
            std::ostringstream msg;
            msg << "field point (d = " << d << ", phi = " << phi
                << ") coincides with a loaded crack-face station at x1 = " << x1;
            throw OnCrackFaceUnderLoad(msg.str());
        }
        // d/x1 - x1/d
        const double skew_arm = -1.0 / ratio + ratio;
        const double sym = (2.0 * avg + eta * jump) / (2.0 * mu_half);
        const double g1 = jump / mu_sum * (sin_phi * sin_phi - 0.5 * cos_phi * skew_arm) +
                          sym * (root * sin_half + sin_3half / root);
        const double g2 = jump * sin_phi / mu_sum * (cos_phi + 0.5 * skew_arm) +
                          sym * (root * cos_half + cos_3half / root);
        return Eigen::Vector2d(g1, -g2) / (pi * d * denom);
    }
};

}  // namespace

double sif_k0(const Loading& loading, const Bimaterial& bimaterial,
              const quadrature::Options& opts) {
    return -kSqrt2OverPi * weighted_moment(loading, bimaterial, 0.5, opts);
}

double coeff_a0(const Loading& loading, const Bimaterial& bimaterial,
                const quadrature::Options& opts) {
    return kSqrt2OverPi * weighted_moment(loading, bimaterial, 1.5, opts);
}

TipFieldCoefficients tip_coefficients(const Loading& loading, const Bimaterial& bimaterial,
                                      const quadrature::Options& opts) {
    return {sif_k0(loading, bimaterial, opts), coeff_a0(loading, bimaterial, opts)};
}

Eigen::Vector2d grad_u0(const Loading& loading, const Bimaterial& bimaterial,
                        const FieldPoint& point, std::optional<HalfPlane> side,
                        const quadrature::Options& opts) {
    if (!(point.d > 0.0)) throw ValidationError("field point must have d > 0");
    require_support_behind_tip(loading);
    const GradientKernel kernel(point, bimaterial, side.value_or(half_plane_of(point.phi)));
    const LoadDecomposition parts = decompose(loading);

    Eigen::Vector2d g = Eigen::Vector2d::Zero();
    for (const auto& s : parts.stations) g += kernel(s.x1, s.avg, s.jump);

    if (parts.distributed) {
        const auto& table = *parts.distributed;
        // t = sqrt(-x1/d); table nodes and t = 1 (x1 = -d) are breakpoints.
        std::vector<double> breaks;
        for (auto it = table.x1.rbegin(); it != table.x1.rend(); ++it)
            breaks.push_back(std::sqrt(-*it / point.d));
        if (breaks.front() < 1.0 && breaks.back() > 1.0) {
            breaks.push_back(1.0);
            std::sort(breaks.begin(), breaks.end());
        }
        for (int c = 0; c < 2; ++c) {
            const auto f = [&](double t) {
                const double x1 = -point.d * t * t;
                return 2.0 * point.d * t * kernel(x1, table.avg_at(x1), table.jump_at(x1))[c];
            };
            g[c] += quadrature::integrate_pieces(f, breaks, opts);
        }
    }
    return g;
}

}  // namespace crackwake
