#include "crackwake/loading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "crackwake/error.hpp"

namespace crackwake {

void validate(const Bimaterial& b) {
    if (!(b.mu_plus > 0.0) || !(b.mu_minus > 0.0) || !std::isfinite(b.mu_plus) ||
        !std::isfinite(b.mu_minus)) {
        std::ostringstream msg;
        msg << "shear moduli must be positive and finite (mu_plus = " << b.mu_plus
            << ", mu_minus = " << b.mu_minus << ")";
        throw ValidationError(msg.str());
    }
}

double contrast(const Bimaterial& b) {
    return (b.mu_minus - b.mu_plus) / (b.mu_plus + b.mu_minus);
}

namespace {

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (xs.empty() || x < xs.front() || x > xs.back()) return 0.0;
    auto hi = std::upper_bound(xs.begin(), xs.end(), x);
    if (hi == xs.end()) return ys.back();
    const auto i = static_cast<std::size_t>(hi - xs.begin());
    if (i == 0) return ys.front();
    const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

// Trapezoid rule; exact for the piecewise-linear table.
template <class F>
double integrate_nodes(const DistributedLoad& t, F&& value) {
    double sum = 0.0;
    for (std::size_t i = 1; i < t.x1.size(); ++i)
        sum += 0.5 * (value(i - 1) + value(i)) * (t.x1[i] - t.x1[i - 1]);
    return sum;
}

void validate_table(const DistributedLoad& t) {
    const std::size_t n = t.x1.size();
    if (n < 2 || t.avg.size() != n || t.jump.size() != n)
        throw ValidationError("distributed load needs >= 2 nodes and equal-length x1/avg/jump");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(t.x1[i]) || !std::isfinite(t.avg[i]) || !std::isfinite(t.jump[i]))
            throw ValidationError("distributed load contains a non-finite value");
        if (i > 0 && !(t.x1[i] > t.x1[i - 1]))
            throw ValidationError("distributed load nodes must be strictly increasing");
    }
}

}  // namespace

double DistributedLoad::avg_at(double x) const { return interpolate(x1, avg, x); }

double DistributedLoad::jump_at(double x) const { return interpolate(x1, jump, x); }

std::pair<double, double> DistributedLoad::face_values(double x) const {
    const double a = avg_at(x);
    const double j = jump_at(x);
    return {a + 0.5 * j, a - 0.5 * j};
}

LoadDecomposition decompose(const Loading& loading) {
    LoadDecomposition parts;
    parts.stations.reserve(loading.point_forces.size());
    for (const auto& f : loading.point_forces) {
        const double sign = f.face == Face::upper ? 1.0 : -1.0;
        parts.stations.push_back({f.x1, 0.5 * f.magnitude, sign * f.magnitude});
    }
    parts.distributed = loading.distributed;
    return parts;
}

Loading recombine(const LoadDecomposition& parts) {
    Loading loading;
    loading.point_forces.reserve(parts.stations.size());
    for (const auto& s : parts.stations) {
        const double p_plus = s.avg + 0.5 * s.jump;
        const double p_minus = s.avg - 0.5 * s.jump;
        if (p_plus != 0.0 || p_minus == 0.0) loading.point_forces.push_back({s.x1, Face::upper, p_plus});
        if (p_minus != 0.0) loading.point_forces.push_back({s.x1, Face::lower, p_minus});
    }
    loading.distributed = parts.distributed;
    return loading;
}

double balance_residual(const Loading& loading) {
    double residual = 0.0;
    for (const auto& f : loading.point_forces)
        residual += f.face == Face::upper ? f.magnitude : -f.magnitude;
    if (loading.distributed) {
        const auto& t = *loading.distributed;
        residual += integrate_nodes(t, [&](std::size_t i) { return t.jump[i]; });
    }
    return residual;
}

double load_scale(const Loading& loading) {
    double scale = 0.0;
    for (const auto& f : loading.point_forces) scale += std::abs(f.magnitude);
    if (loading.distributed) {
        const auto& t = *loading.distributed;
        scale += integrate_nodes(t, [&](std::size_t i) {
            return std::abs(t.avg[i] + 0.5 * t.jump[i]) + std::abs(t.avg[i] - 0.5 * t.jump[i]);
        });
    }
    return scale;
}

const Loading& check_balance(const Loading& loading, double tip_clearance) {
    for (const auto& f : loading.point_forces) {
        if (!std::isfinite(f.x1) || !std::isfinite(f.magnitude))
            throw ValidationError("point force with non-finite position or magnitude");
        if (!(f.x1 <= -tip_clearance)) {
            std::ostringstream msg;
            msg << "point force at x1 = " << f.x1 << " is within tip clearance " << tip_clearance;
            throw LoadTooCloseToTip(msg.str());
        }
    }
    if (loading.distributed) {
        validate_table(*loading.distributed);
        if (!(loading.distributed->x1.back() <= -tip_clearance)) {
            std::ostringstream msg;
            msg << "distributed load support ends at x1 = " << loading.distributed->x1.back()
                << ", within tip clearance " << tip_clearance;
            throw LoadTooCloseToTip(msg.str());
        }
    }
    const double residual = balance_residual(loading);
    if (std::abs(residual) > 1e-12 * load_scale(loading)) {
        std::ostringstream msg;
        msg << "loading is not self-balanced: net face force " << residual;
        throw UnbalancedLoading(msg.str(), residual);
    }
    return loading;
}

Loading three_point_preset(double P, double a, double b) {
    if (!(a > 0.0) || !(b >= 0.0) || !(b < a) || !std::isfinite(a) || !std::isfinite(P)) {
        std::ostringstream msg;
        msg << "three-point preset needs a > 0 and 0 <= b < a (a = " << a << ", b = " << b << ")";
        throw InvalidPreset(msg.str());
    }
    Loading loading;
    loading.point_forces = {
        {-a, Face::upper, P},
        {-(a - b), Face::lower, 0.5 * P},
        {-(a + b), Face::lower, 0.5 * P},
    };
    return loading;
}

Loading symmetric_pair(double P, double a) {
    if (!(a > 0.0)) throw InvalidPreset("symmetric pair needs a > 0");
    Loading loading;
    loading.point_forces = {{-a, Face::upper, P}, {-a, Face::lower, P}};
    return loading;
}

Loading shifted(const Loading& loading, double shift) {
    Loading out = loading;
    for (auto& f : out.point_forces) f.x1 -= shift;
    if (out.distributed)
        for (auto& x : out.distributed->x1) x -= shift;
    return out;
}

double support_end(const Loading& loading) {
    double end = -std::numeric_limits<double>::infinity();
    for (const auto& f : loading.point_forces) end = std::max(end, f.x1);
    if (loading.distributed && !loading.distributed->x1.empty())
        end = std::max(end, loading.distributed->x1.back());
    return end;
}

}  // namespace crackwake
