#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "crackwake/error.hpp"
#include "crackwake/unperturbed_field.hpp"

namespace crackwake {

namespace {

using cplx = std::complex<double>;
using std::numbers::pi;

// sin(z) e^{-|Im z|} and cos(z) e^{-|Im z|}; finite for any Im z.
cplx sin_scaled(cplx z) {
    const double y = std::abs(z.imag());
    const double sgn = z.imag() < 0.0 ? -1.0 : 1.0;
    const double e = std::exp(-2.0 * y);
    return {0.5 * std::sin(z.real()) * (1.0 + e), 0.5 * sgn * std::cos(z.real()) * (1.0 - e)};
}

cplx cos_scaled(cplx z) {
    const double y = std::abs(z.imag());
    const double sgn = z.imag() < 0.0 ? -1.0 : 1.0;
    const double e = std::exp(-2.0 * y);
    return {0.5 * std::cos(z.real()) * (1.0 + e), -0.5 * sgn * std::sin(z.real()) * (1.0 - e)};
}

// Mellin transforms <p~>(s), [p~](s) with p~(s) = int_0^inf p(-r) r^s dr.
struct LoadTransform {
    LoadDecomposition parts;

    std::pair<cplx, cplx> operator()(cplx s) const {
        cplx avg{0.0, 0.0};
        cplx jump{0.0, 0.0};
        for (const auto& st : parts.stations) {
            const cplx w = std::exp(s * std::log(-st.x1));
            avg += st.avg * w;
            jump += st.jump * w;
        }
        if (parts.distributed) {
            const auto& t = *parts.distributed;
            // Exact transform of each linear piece f(r) = alpha + beta r.
            for (std::size_t i = 1; i < t.x1.size(); ++i) {
                const double r0 = -t.x1[i];
                const double r1 = -t.x1[i - 1];
                const cplx m1 = (std::exp((s + 1.0) * std::log(r1)) - std::exp((s + 1.0) * std::log(r0))) / (s + 1.0);
                const cplx m2 = (std::exp((s + 2.0) * std::log(r1)) - std::exp((s + 2.0) * std::log(r0))) / (s + 2.0);
                const auto piece = [&](double f0, double f1) {
                    const double beta = (f1 - f0) / (r1 - r0);
                    const double alpha = f0 - beta * r0;
                    return alpha * m1 + beta * m2;
                };
                avg += piece(t.avg[i], t.avg[i - 1]);
                jump += piece(t.jump[i], t.jump[i - 1]);
            }
        }
        return {avg, jump};
    }
};

}  // namespace

double displacement_u0(const Loading& loading, const Bimaterial& bimaterial, double r,
                       double theta, std::optional<HalfPlane> side, const MellinOptions& opts) {
    if (!(r > 0.0)) throw ValidationError("displacement_u0 needs r > 0");
    if (!(std::abs(theta) <= pi)) throw ValidationError("displacement_u0 needs |theta| <= pi");
    if (!(opts.omega > 0.0 && opts.omega < 0.5))
        throw ValidationError("Mellin contour abscissa must lie in (0, 0.5)");
    if (!(support_end(loading) < 0.0))
        throw LoadTooCloseToTip("loading support must lie strictly behind the crack tip");

    const double mu_p = bimaterial.mu_plus;
    const double mu_m = bimaterial.mu_minus;
    const double mu_half = side.value_or(half_plane_of(theta)) == HalfPlane::upper ? mu_p : mu_m;
    const LoadTransform transform{decompose(loading)};
    const double log_r = std::log(r);

    // Re[u~(s, theta) r^-s] at s = omega + i t.
    const auto integrand = [&](double t) {
        const cplx s{opts.omega, t};
        const auto [avg, jump] = transform(s);
        const cplx st = s * theta;
        const cplx ps = pi * s;
        const double sin_over_cos = std::exp(std::abs(t) * (std::abs(theta) - pi));
        const cplx sc = sin_over_cos * sin_scaled(st) / cos_scaled(ps);  // sin(s theta)/cos(pi s)
        const cplx cs = sin_over_cos * cos_scaled(st) / sin_scaled(ps);  // cos(s theta)/sin(pi s)
        const cplx u = -sc / (mu_half * s) * avg +
                       (cs / ((mu_p + mu_m) * s) + (mu_p - mu_m) * sc / (2.0 * mu_half * (mu_p + mu_m) * s)) * jump;
        return (u * std::exp(-s * log_r)).real();
    };

    const quadrature::Options q{1e-12, 1e-300, 30};
    const double scale = load_scale(loading) / std::min(mu_p, mu_m);
    double lo = 0.0;
    double hi = opts.initial_cutoff;
    double total = quadrature::integrate(integrand, lo, hi, q);
    while (true) {
        lo = hi;
        hi *= 2.0;
        const double chunk = quadrature::integrate(integrand, lo, hi, q);
        total += chunk;
        if (std::abs(chunk) <= opts.rel_tol * std::abs(total) + 1e-15 * scale) break;
        if (hi >= opts.max_cutoff) {
            std::ostringstream msg;
            msg << "Mellin contour truncation did not settle by |Im s| = " << hi << " (r = " << r
                << ", theta = " << theta << ")";
            throw ContourTruncationFailure(msg.str());
        }
    }
    return total / pi;
}

}  // namespace crackwake
