#include "crackwake/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "crackwake/dipole.hpp"
#include "crackwake/error.hpp"
#include "crackwake/mapgen.hpp"
#include "crackwake/perturbation.hpp"
#include "crackwake/propagation.hpp"
#include "crackwake/scenario.hpp"
#include "crackwake/unperturbed_field.hpp"

namespace crackwake {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
    return buf;
}

struct Flags {
    std::string command;
    std::string config;
    std::string out;
    bool pgm = false;
    std::string grid;
    std::optional<double> delta;
    std::optional<int> max_iter;
    std::optional<double> arrest_tol;
    std::string pair;
    bool dump = false;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write '" + path + "'");
    return f;
}

void warn_dilute(const std::vector<Defect>& defects, std::ostream& err) {
    for (std::size_t j = 0; j < defects.size(); ++j) {
        const double ratio = defects[j].la / defects[j].center.norm();
        if (ratio > kDiluteRatio)
            err << "warning: defect " << j << " has size/distance " << fmt(ratio)
                << " > " << kDiluteRatio << "; the dipole approximation may be inaccurate\n";
    }
}

std::string describe(const Defect& d) {
    const FieldPoint p = FieldPoint::from_cartesian(d.center);
    std::string s = std::string(to_string(d.kind)) + " x = " + fmt(d.center.x()) +
                    " y = " + fmt(d.center.y()) + " d = " + fmt(p.d) + " phi = " + fmt(p.phi) +
                    " alpha = " + fmt(d.alpha) + " la = " + fmt(d.la);
    if (!is_line_kind(d.kind)) s += " lb = " + fmt(d.lb);
    return s;
}

void cmd_dipole(const Scenario& s, std::ostream& out) {
    const auto defects = s.defect_list();
    for (std::size_t j = 0; j < defects.size(); ++j) {
        const DipoleMatrix m = dipole_matrix(defects[j]);
        out << "defect " << j << " (" << to_string(defects[j].kind) << "): M = [[" << fmt(m(0, 0))
            << ", " << fmt(m(0, 1)) << "], [" << fmt(m(1, 0)) << ", " << fmt(m(1, 1)) << "]]\n";
    }
}

void cmd_sif(const Scenario& s, std::ostream& out) {
    const auto c = tip_coefficients(s.loading.build(), s.bimaterial);
    out << "K0 = " << fmt(c.k3) << "\nA0 = " << fmt(c.a3) << "\n";
}

void cmd_perturb(const Scenario& s, std::ostream& out, std::ostream& err) {
    const Loading loading = s.loading.build();
    const auto defects = s.defect_list();
    warn_dilute(defects, err);
    const auto c = tip_coefficients(loading, s.bimaterial);
    out << "K0 = " << fmt(c.k3) << "\nA0 = " << fmt(c.a3) << "\n";
    double total = 0.0;
    double total_quad = 0.0;
    for (std::size_t j = 0; j < defects.size(); ++j) {
        const double dk = delta_k_defect(defects[j], loading, s.bimaterial);
        const double dq = delta_k_defect_quadrature(defects[j], loading, s.bimaterial);
        const double remote = delta_k_remote(defects[j], s.bimaterial);
        total += dk;
        total_quad += dq;
        out << "defect " << j << " (" << to_string(defects[j].kind) << "): dK = " << fmt(dk)
            << " dK_quadrature = " << fmt(dq) << " dK/K0 = " << fmt(dk / c.k3)
            << " remote dK/K0 = " << fmt(remote) << "\n";
    }
    out << "total dK = " << fmt(total) << "\ntotal dK_quadrature = " << fmt(total_quad) << "\n";
    CrackState state{0.0, defects, loading, s.bimaterial};
    out << "phi = " << fmt(advance_increment(state)) << "\n";
}

int cmd_propagate(const Scenario& s, const Flags& flags, std::ostream& out, std::ostream& err) {
    CrackState state{0.0, s.defect_list(), s.loading.build(), s.bimaterial};
    warn_dilute(state.defects, err);
    PropagationOptions opts;
    if (s.run.max_iter) opts.max_iter = *s.run.max_iter;
    if (flags.max_iter) opts.max_iter = *flags.max_iter;
    opts.arrest_tol = flags.arrest_tol ? flags.arrest_tol : s.run.arrest_tol;
    const PropagationTrace trace = propagate(state, opts);

    const std::string path = !flags.out.empty() ? flags.out : s.run.out.value_or("trace.csv");
    auto file = open_output(path);
    write_trace_csv(file, trace);
    out << "verdict = " << to_string(trace.verdict) << "\niterations = " << trace.rows.size()
        << "\nelongation = " << fmt(trace.elongation) << "\ntrace = " << path << "\n";
    if (trace.verdict == Verdict::invalid) {
        err << "error: " << trace.failure << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

Arrangement arrangement_for(const Scenario& s, const Flags& flags) {
    Arrangement arr;
    if (!s.defects.empty()) {
        const Defect& mc = s.defects.front().defect;
        if (mc.kind != DefectKind::microcrack)
            throw ValidationError("map: the first defect must be the microcrack template");
        arr.l1 = mc.la;
        arr.d1 = mc.center.norm();
    }
    arr.pair = s.run.pair.value_or(PairKind::a);
    if (!flags.pair.empty()) arr.pair = *parse_pair_kind(flags.pair);
    arr.d2 = s.run.d2;
    return arr;
}

void cmd_map(const Scenario& s, const Flags& flags, std::ostream& out) {
    const Arrangement arr = arrangement_for(s, flags);
    ScanOptions opts;
    if (s.run.grid) std::tie(opts.n_phi, opts.n_alpha) = *s.run.grid;
    if (!flags.grid.empty()) {
        const auto g = parse_grid(flags.grid);
        if (!g) throw ValidationError("--grid must look like 128x64 (each >= 2)");
        std::tie(opts.n_phi, opts.n_alpha) = *g;
    }
    if (s.run.delta) opts.delta = *s.run.delta;
    if (flags.delta) opts.delta = *flags.delta;

    const RegionMap map = scan_map(arr, s.loading.build(), s.bimaterial, opts);
    const std::string path = !flags.out.empty() ? flags.out : s.run.out.value_or("map.csv");
    {
        auto file = open_output(path);
        write_map_csv(file, map);
    }
    out << "cells = " << map.cells.size() << " (" << map.n_phi << "x" << map.n_alpha << ")\n"
        << "shielding = " << map.count(Region::shielding)
        << "\namplification = " << map.count(Region::amplification)
        << "\nneutral = " << map.count(Region::neutral)
        << "\ninvalid = " << map.count(Region::invalid) << "\ncsv = " << path << "\n";
    if (flags.pgm || s.run.pgm) {
        const std::string pgm =
            s.run.pgm.value_or(std::filesystem::path(path).replace_extension(".pgm").string());
        auto file = open_output(pgm);
        write_map_pgm(file, map);
        out << "pgm = " << pgm << "\n";
    }
}

void cmd_neutral(const Scenario& s, const Flags& flags, std::ostream& out) {
    std::optional<PairKind> only = s.run.pair;
    if (!flags.pair.empty()) only = parse_pair_kind(flags.pair);
    bool any = false;
    for (std::size_t j = 0; j < s.defects.size(); ++j) {
        const Defect& mc = s.defects[j].defect;
        if (mc.kind != DefectKind::microcrack) continue;
        any = true;
        if (!only || *only == PairKind::a)
            out << "defect " << j << " pair a: " << describe(neutral_pair_a(mc, s.run.d2)) << "\n";
        if (!only || *only == PairKind::b)
            out << "defect " << j << " pair b: "
                << describe(neutral_pair_b(mc, s.bimaterial, s.run.d2)) << "\n";
    }
    if (!any) throw ValidationError("neutral: the scenario has no microcrack defect");
}

int dispatch(const Flags& flags, std::ostream& out, std::ostream& err) {
    const Scenario s = load_scenario(flags.config);
    if (flags.dump) {
        out << dump_scenario(s);
        return kExitOk;
    }
    if (flags.command == "dipole") cmd_dipole(s, out);
    else if (flags.command == "sif") cmd_sif(s, out);
    else if (flags.command == "perturb") cmd_perturb(s, out, err);
    else if (flags.command == "propagate") return cmd_propagate(s, flags, out, err);
    else if (flags.command == "map") cmd_map(s, flags, out);
    else if (flags.command == "neutral") cmd_neutral(s, flags, out);
    return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Defect-perturbed Mode III interfacial crack fields", "crackwake"};
    Flags flags;
    app.add_option("command", flags.command, "dipole, sif, perturb, propagate, map or neutral")
        ->required()
        ->check(CLI::IsMember({"dipole", "sif", "perturb", "propagate", "map", "neutral"}));
    app.add_option("--config", flags.config, "scenario file")->required();
    app.add_option("--out", flags.out, "output CSV path");
    app.add_flag("--pgm", flags.pgm, "also write a PGM region image (map)");
    app.add_option("--grid", flags.grid, "map grid, e.g. 128x64");
    app.add_option("--delta", flags.delta, "neutral band half-width")->check(CLI::PositiveNumber);
    app.add_option("--max-iter", flags.max_iter, "propagation iteration cap")
        ->check(CLI::PositiveNumber);
    app.add_option("--arrest-tol", flags.arrest_tol, "arrest threshold on the increment")
        ->check(CLI::PositiveNumber);
    app.add_option("--pair", flags.pair, "neutral arrangement")->check(CLI::IsMember({"a", "b"}));
    app.add_flag("--dump-config", flags.dump, "print the canonical scenario and exit");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitValidation;
    }

    try {
        return dispatch(flags, out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace crackwake
