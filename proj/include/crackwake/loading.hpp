#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace crackwake {

// Two bonded half-planes; mu_plus is the upper (x2 > 0) shear modulus.
struct Bimaterial {
    double mu_plus = 1.0;
    double mu_minus = 1.0;

    bool operator==(const Bimaterial&) const = default;
};

void validate(const Bimaterial& b);

// eta = (mu_minus - mu_plus) / (mu_plus + mu_minus), in (-1, 1).
double contrast(const Bimaterial& b);

enum class Face { upper, lower };

// Concentrated traction on one crack face at x1 < 0. The magnitude is the
// prescribed value of mu * du/dx2 on that face, integrated over x1.
struct PointForce {
    double x1 = -1.0;
    Face face = Face::upper;
    double magnitude = 0.0;

    bool operator==(const PointForce&) const = default;
};

// Piecewise-linear symmetric part <p> and skew part [p] tabulated on
// strictly increasing negative nodes; zero outside [x1.front(), x1.back()].
struct DistributedLoad {
    std::vector<double> x1;
    std::vector<double> avg;
    std::vector<double> jump;

    double avg_at(double x) const;
    double jump_at(double x) const;
    // (p_plus, p_minus) at x.
    std::pair<double, double> face_values(double x) const;

    bool operator==(const DistributedLoad&) const = default;
};

struct Loading {
    std::vector<PointForce> point_forces;
    std::optional<DistributedLoad> distributed;

    bool operator==(const Loading&) const = default;
};

// A point force after splitting into symmetric and skew parts.
struct Station {
    double x1 = 0.0;
    double avg = 0.0;
    double jump = 0.0;
};

struct LoadDecomposition {
    std::vector<Station> stations;
    std::optional<DistributedLoad> distributed;
};

inline constexpr double kDefaultTipClearance = 1e-6;

LoadDecomposition decompose(const Loading& loading);

// Inverse of decompose: p+ = <p> + [p]/2, p- = <p> - [p]/2.
Loading recombine(const LoadDecomposition& parts);

// Net crack-face force: integral of p+ minus integral of p-.
double balance_residual(const Loading& loading);

// Sum of |magnitudes| plus the integrals of |p+| and |p-| for the table.
double load_scale(const Loading& loading);

// Throws UnbalancedLoading, LoadTooCloseToTip, or ValidationError for a
// malformed table. Returns the loading unchanged on success.
const Loading& check_balance(const Loading& loading,
                             double tip_clearance = kDefaultTipClearance);

// Upper-face force P at -a, lower-face forces P/2 at -(a - b) and -(a + b).
// Balanced for every 0 <= b < a; symmetric only for b = 0.
Loading three_point_preset(double P, double a, double b);

// p+ = p- = P at x1 = -a.
Loading symmetric_pair(double P, double a);

// Same loading expressed relative to a tip at x1 = shift.
Loading shifted(const Loading& loading, double shift);

// Largest abscissa of the loading support (closest to the tip), or
// -infinity for an empty loading.
double support_end(const Loading& loading);

}  // namespace crackwake
