#include "crackwake/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "crackwake/error.hpp"

namespace crackwake::quadrature {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
    double a;
    double b;
    double value;
    double error;
    double l1;
    unsigned depth;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// Boost's adaptive driver leaves sub-level error estimates in the units of
// the mapped [-1, 1] panel, so narrow panels look far less accurate than they
// are. Only the single-panel rule is taken from Boost; the bisection is here.
Panel panel(const Integrand& f, double a, double b, unsigned depth) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double err = 0.0;
    double l1 = 0.0;
    const double r = Rule::integrate([&](double s) { return f(mid + half * s); }, -1.0, 1.0, 0, 0.0,
                                     &err, &l1);
    return {a, b, half * r, std::abs(half) * err, std::abs(half) * l1, depth};
}

double finite(const Integrand& f, double a, double b, const Options& opts) {
    std::priority_queue<Panel> heap;
    Panel first = panel(f, a, b, 0);
    double value = first.value;
    double error = first.error;
    double l1 = first.l1;
    heap.push(first);
    const auto done = [&] { return error <= std::max(opts.rel_tol * l1, opts.abs_tol); };
    while (!done() && std::isfinite(value)) {
        const Panel worst = heap.top();
        if (worst.depth >= opts.max_depth) break;
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = panel(f, worst.a, mid, worst.depth + 1);
        const Panel right = panel(f, mid, worst.b, worst.depth + 1);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to drop the drift of the running updates.
    value = error = l1 = 0.0;
    for (; !heap.empty(); heap.pop()) {
        value += heap.top().value;
        error += heap.top().error;
        l1 += heap.top().l1;
    }
    if (!std::isfinite(value) || !done()) {
        std::ostringstream msg;
        msg << "adaptive quadrature on [" << a << ", " << b << "] missed tolerance " << opts.rel_tol
            << " (estimate " << error << ", L1 " << l1 << ")";
        throw QuadratureFailure(msg.str());
    }
    return value;
}

}  // namespace

double integrate(const Integrand& f, double a, double b, const Options& opts) {
    if (a == b) return 0.0;
    if (std::isinf(b) && b > 0) {
        // x = a + s / (1 - s), s in [0, 1)
        const auto g = [&](double s) {
            const double w = 1.0 - s;
            return f(a + s / w) / (w * w);
        };
        return finite(g, 0.0, 1.0, opts);
    }
    return finite(f, a, b, opts);
}

double integrate_pieces(const Integrand& f, std::span<const double> breakpoints,
                        const Options& opts) {
    double sum = 0.0;
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        sum += integrate(f, breakpoints[i - 1], breakpoints[i], opts);
    return sum;
}

}  // namespace crackwake::quadrature
