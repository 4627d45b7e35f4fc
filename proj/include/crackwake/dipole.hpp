#pragma once

#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string_view>

#include "crackwake/error.hpp"

namespace crackwake {

enum class DefectKind {
    elastic_ellipse,
    rigid_ellipse,
    microcrack,
    elliptic_void,
    rigid_line,
    soft_line,
    stiff_line,
};

inline constexpr DefectKind kAllDefectKinds[] = {
    DefectKind::elastic_ellipse, DefectKind::rigid_ellipse, DefectKind::microcrack,
    DefectKind::elliptic_void,   DefectKind::rigid_line,    DefectKind::soft_line,
    DefectKind::stiff_line,
};

std::string_view to_string(DefectKind kind);
std::optional<DefectKind> parse_defect_kind(std::string_view name);

// Line kinds use la as the half-length and ignore lb.
constexpr bool is_line_kind(DefectKind k) {
    return k == DefectKind::microcrack || k == DefectKind::rigid_line ||
           k == DefectKind::soft_line || k == DefectKind::stiff_line;
}

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

// Small defect with a fixed Cartesian centre. The initial crack tip sits at
// the origin; alpha is measured from +x1.
template <typename Scalar>
struct BasicDefect {
    DefectKind kind = DefectKind::microcrack;
    Vector2<Scalar> center = Vector2<Scalar>::Zero();
    Scalar alpha = 0;
    Scalar la = 0;
    Scalar lb = 0;
    // Host modulus over inclusion modulus (elastic_ellipse).
    Scalar mu_star = 1;
    // Bonding compliance (soft_line) or stiffness parameter (stiff_line).
    Scalar kappa = 0;

    bool operator==(const BasicDefect&) const = default;
};

using Defect = BasicDefect<double>;
using DipoleMatrix = Eigen::Matrix2d;

// Diluteness is advisory; above this size-to-distance ratio callers warn.
inline constexpr double kDiluteRatio = 0.3;

template <typename Scalar>
Scalar normalize_angle(Scalar alpha) {
    using std::floor;
    const Scalar period = std::numbers::pi_v<Scalar>;
    Scalar a = alpha - period * floor(alpha / period);
    if (a >= period) a -= period;
    if (a < Scalar(0)) a = Scalar(0);
    return a;
}

template <typename Scalar>
Matrix2<Scalar> rotation(Scalar alpha) {
    using std::cos;
    using std::sin;
    Matrix2<Scalar> r;
    r << cos(alpha), -sin(alpha), sin(alpha), cos(alpha);
    return r;
}

template <typename Scalar>
void validate(const BasicDefect<Scalar>& d) {
    using std::isfinite;
    std::ostringstream msg;
    const bool finite = isfinite(d.center.x()) && isfinite(d.center.y()) && isfinite(d.alpha) &&
                        isfinite(d.la) && isfinite(d.lb) && isfinite(d.mu_star) &&
                        isfinite(d.kappa);
    if (!finite) {
        msg << to_string(d.kind) << ": non-finite defect parameter";
    } else if (!(d.la > Scalar(0))) {
        msg << to_string(d.kind) << ": size la must be positive (got " << d.la << ")";
    } else if (!is_line_kind(d.kind) && !(d.lb > Scalar(0) && d.lb <= d.la)) {
        msg << to_string(d.kind) << ": semi-axes need 0 < lb <= la (la = " << d.la
            << ", lb = " << d.lb << ")";
    } else if (d.kind == DefectKind::elastic_ellipse && !(d.mu_star > Scalar(0))) {
        msg << "elastic_ellipse: mu_star must be positive (got " << d.mu_star << ")";
    } else if ((d.kind == DefectKind::soft_line || d.kind == DefectKind::stiff_line) &&
               !(d.kappa >= Scalar(0))) {
        msg << to_string(d.kind) << ": kappa must be non-negative (got " << d.kappa << ")";
    } else {
        return;
    }
    throw InvalidDefect(msg.str());
}

namespace detail {

// [[1 + cos 2a, sin 2a], [sin 2a, 1 - cos 2a]]
template <typename Scalar>
Matrix2<Scalar> along(Scalar c, Scalar s) {
    Matrix2<Scalar> m;
    m << Scalar(1) + c, s, s, Scalar(1) - c;
    return m;
}

// [[1 - cos 2a, -sin 2a], [-sin 2a, 1 + cos 2a]]
template <typename Scalar>
Matrix2<Scalar> across(Scalar c, Scalar s) {
    Matrix2<Scalar> m;
    m << Scalar(1) - c, -s, -s, Scalar(1) + c;
    return m;
}

}  // namespace detail

// Far-field dipole matrix: the defect perturbs a locally uniform gradient g
// by -(1/2pi) g . M x / |x|^2.
template <typename Scalar>
Matrix2<Scalar> dipole_matrix(const BasicDefect<Scalar>& d) {
    using std::cos;
    using std::sin;
    validate(d);
    const Scalar half_pi = std::numbers::pi_v<Scalar> / Scalar(2);
    const Scalar one(1);
    const Scalar c = cos(Scalar(2) * d.alpha);
    const Scalar s = sin(Scalar(2) * d.alpha);
    const Scalar l = d.la;
    Matrix2<Scalar> m;
    switch (d.kind) {
        case DefectKind::elastic_ellipse: {
            const Scalar e = d.lb / d.la;
            const Scalar ms = d.mu_star;
            const Scalar p = e + ms;
            const Scalar q = one + e * ms;
            const Scalar off = -(one - e) * (ms - one) * s / (p * q);
            m << (one + c) / p + (one - c) / q, off, off, (one - c) / p + (one + c) / q;
            return -half_pi * d.la * d.lb * (one + e) * (ms - one) * m;
        }
        case DefectKind::rigid_ellipse: {
            const Scalar e = d.lb / d.la;
            m << one + c + e * (one - c), (one - e) * s, (one - e) * s, one - c + e * (one + c);
            return half_pi * d.la * d.lb * (one / e + one) * m;
        }
        case DefectKind::microcrack:
            return -half_pi * l * l * detail::across(c, s);
        case DefectKind::elliptic_void: {
            const Scalar e = d.lb / d.la;
            const Scalar sum = d.la + d.lb;
            Matrix2<Scalar> r;
            r << -c, -s, -s, c;
            return -half_pi * sum * sum * (Matrix2<Scalar>::Identity() + (one - e) / (one + e) * r);
        }
        case DefectKind::rigid_line:
            return half_pi * l * l * detail::along(c, s);
        case DefectKind::soft_line:
            return -half_pi * l * l * d.kappa / (l + d.kappa) * detail::across(c, s);
        case DefectKind::stiff_line:
            return half_pi * l * l / (one + d.kappa * l) * detail::along(c, s);
    }
    return Matrix2<Scalar>::Zero();
}

enum class Definiteness { negative, positive, zero };

// Expected sign class of the dipole matrix for a defect.
Definiteness expected_definiteness(const Defect& d);

}  // namespace crackwake
