#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crackwake/dipole.hpp"
#include "crackwake/loading.hpp"
#include "crackwake/unperturbed_field.hpp"

namespace crackwake {

// Defects and load stations stay fixed in space; only the tip moves along x1.
struct CrackState {
    double tip_x = 0.0;
    std::vector<Defect> defects;
    Loading loading;
    Bimaterial bimaterial;
};

// Defects with centres relative to the current tip.
std::vector<Defect> relative_defects(const CrackState& state);

// Loading relative to the current tip.
Loading relative_loading(const CrackState& state);

// Advance that restores the critical SIF: -(2 / A0) * sum of Delta K_j.
// Throws DegenerateA0 when A0 vanishes relative to K0 / d_ref.
double advance_increment(const CrackState& state,
                         const quadrature::Options& opts = kFieldQuadrature);

// Moves the tip by `advance`. Throws TipReachesLoad or TipReachesDefect.
CrackState step(const CrackState& state, double advance);

enum class Verdict { running, arrest, steady_state, max_iterations, invalid };

std::string_view to_string(Verdict v);
// Integer code written to the trace CSV (running = 0, arrest = 1, ...).
int verdict_flag(Verdict v);

struct TraceRow {
    int iter = 0;
    double phi = 0.0;       // increment computed at this iteration
    double x = 0.0;         // cumulative elongation after this iteration
    double dk_total = 0.0;  // sum of defect SIF changes before advancing
    double k0 = 0.0;
    double a0 = 0.0;
    Verdict verdict = Verdict::running;
};

struct PropagationTrace {
    // Applied advances; elongation is their running sum. A terminal
    // increment below the arrest tolerance (or negative) is not applied.
    std::vector<double> increments;
    double elongation = 0.0;
    Verdict verdict = Verdict::max_iterations;
    std::vector<TraceRow> rows;
    std::string failure;
};

struct PropagationOptions {
    int max_iter = 50000;
    // Default: 1e-8 times the smallest initial defect distance.
    std::optional<double> arrest_tol;
    int steady_window = 50;
    double steady_rel_change = 1e-6;
    quadrature::Options quadrature = kFieldQuadrature;
};

double default_arrest_tol(const CrackState& state);

PropagationTrace propagate(const CrackState& initial, const PropagationOptions& opts = {});

// Columns: iter,phi,x,dK_total,K0,A0,verdict_flag
void write_trace_csv(std::ostream& os, const PropagationTrace& trace);

}  // namespace crackwake
