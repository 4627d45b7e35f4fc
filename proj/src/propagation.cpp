#include "crackwake/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "crackwake/error.hpp"
#include "crackwake/perturbation.hpp"

namespace crackwake {

namespace {

double min_distance(const CrackState& state) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& def : state.defects)
        d = std::min(d, std::hypot(def.center.x() - state.tip_x, def.center.y()));
    return d;
}

struct Evaluation {
    double dk_total = 0.0;
    double k0 = 0.0;
    double a0 = 0.0;
    double phi = 0.0;
};

Evaluation evaluate(const CrackState& state, const quadrature::Options& opts) {
    Evaluation ev;
    const Loading loading = relative_loading(state);
    const auto coeffs = tip_coefficients(loading, state.bimaterial, opts);
    ev.k0 = coeffs.k3;
    ev.a0 = coeffs.a3;
    if (state.defects.empty()) return ev;

    const auto defects = relative_defects(state);
    ev.dk_total = delta_k_defects(defects, loading, state.bimaterial, opts).total;

    const double d_ref = min_distance(state);
    if (ev.a0 == 0.0 || std::abs(ev.a0) < 1e-14 * std::abs(ev.k0) / d_ref) {
        std::ostringstream msg;
        msg << "A0 = " << ev.a0 << " is degenerate relative to K0 = " << ev.k0
            << " at tip x = " << state.tip_x;
        throw DegenerateA0(msg.str());
    }
    ev.phi = -2.0 * ev.dk_total / ev.a0;
    return ev;
}

}  // namespace

std::vector<Defect> relative_defects(const CrackState& state) {
    std::vector<Defect> out = state.defects;
    for (auto& d : out) d.center.x() -= state.tip_x;
    return out;
}

Loading relative_loading(const CrackState& state) { return shifted(state.loading, state.tip_x); }

double advance_increment(const CrackState& state, const quadrature::Options& opts) {
    return evaluate(state, opts).phi;
}

CrackState step(const CrackState& state, double advance) {
    if (!std::isfinite(advance)) throw ValidationError("step: advance must be finite");
    CrackState next = state;
    next.tip_x += advance;
    if (!(support_end(next.loading) < next.tip_x)) {
        std::ostringstream msg;
        msg << "tip at x = " << next.tip_x << " reached the loading support ending at x = "
            << support_end(next.loading);
        throw TipReachesLoad(msg.str());
    }
    for (std::size_t j = 0; j < next.defects.size(); ++j) {
        const auto& d = next.defects[j];
        // Closest approach of the segment swept by the tip.
        const double lo = std::min(state.tip_x, next.tip_x);
        const double hi = std::max(state.tip_x, next.tip_x);
        const double dist = std::hypot(d.center.x() - std::clamp(d.center.x(), lo, hi), d.center.y());
        if (dist <= d.la) {
            std::ostringstream msg;
            msg << "tip at x = " << next.tip_x << " reached defect " << j << " (d = " << dist
                << ", size = " << d.la << ")";
            throw TipReachesDefect(msg.str());
        }
    }
    return next;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::running: return "running";
        case Verdict::arrest: return "arrest";
        case Verdict::steady_state: return "steady_state";
        case Verdict::max_iterations: return "max_iterations";
        case Verdict::invalid: return "invalid";
    }
    return "invalid";
}

int verdict_flag(Verdict v) { return static_cast<int>(v); }

double default_arrest_tol(const CrackState& state) {
    const double d = min_distance(state);
    return 1e-8 * (std::isfinite(d) ? d : 1.0);
}

PropagationTrace propagate(const CrackState& initial, const PropagationOptions& opts) {
    if (opts.max_iter < 1) throw ValidationError("propagate: max_iter must be at least 1");
    const double tol = opts.arrest_tol.value_or(default_arrest_tol(initial));
    if (!(tol > 0.0)) throw ValidationError("propagate: arrest_tol must be positive");
    validate(initial.bimaterial);
    for (const auto& d : initial.defects) validate(d);

    PropagationTrace trace;
    CrackState state = initial;
    int streak = 0;
    double previous = 0.0;

    for (int i = 0; i < opts.max_iter; ++i) {
        TraceRow row;
        row.iter = i;
        row.x = trace.elongation;
        try {
            const Evaluation ev = evaluate(state, opts.quadrature);
            row.phi = ev.phi;
            row.dk_total = ev.dk_total;
            row.k0 = ev.k0;
            row.a0 = ev.a0;
            if (!std::isfinite(ev.phi)) throw NumericalError("non-finite crack advance");
            if (ev.phi < tol) {
                // A shielded tip does not retreat.
                row.verdict = trace.verdict = Verdict::arrest;
                trace.rows.push_back(row);
                return trace;
            }
            state = step(state, ev.phi);
        } catch (const NumericalError& e) {
            row.verdict = trace.verdict = Verdict::invalid;
            trace.failure = e.what();
            trace.rows.push_back(row);
            return trace;
        }
        trace.increments.push_back(row.phi);
        trace.elongation += row.phi;
        row.x = trace.elongation;

        if (i > 0 && std::abs(row.phi - previous) / row.phi < opts.steady_rel_change)
            ++streak;
        else
            streak = 0;
        previous = row.phi;
        if (streak >= opts.steady_window) {
            row.verdict = trace.verdict = Verdict::steady_state;
            trace.rows.push_back(row);
            return trace;
        }
        trace.rows.push_back(row);
    }
    trace.verdict = Verdict::max_iterations;
    trace.rows.back().verdict = Verdict::max_iterations;
    return trace;
}

void write_trace_csv(std::ostream& os, const PropagationTrace& trace) {
    os << "iter,phi,x,dK_total,K0,A0,verdict_flag\n";
    char buf[256];
    for (const auto& r : trace.rows) {
        std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g,%.9g,%.9g,%.9g,%d\n", r.iter, r.phi, r.x,
                      r.dk_total, r.k0, r.a0, verdict_flag(r.verdict));
        os << buf;
    }
}

}  // namespace crackwake
