#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "crackwake/perturbation.hpp"
#include "crackwake/propagation.hpp"
#include "support.hpp"

using namespace crackwake;
using std::numbers::pi;

namespace {

Defect microcrack(double x, double y, double alpha, double la) {
    Defect d;
    d.kind = DefectKind::microcrack;
    d.center = {x, y};
    d.alpha = alpha;
    d.la = la;
    return d;
}

CrackState pair_a_state(double phi1, double alpha1) {
    const Defect mc = microcrack(std::cos(phi1), std::sin(phi1), alpha1, 0.1);
    return CrackState{0.0, {mc, neutral_pair_a(mc)}, three_point_preset(1.0, 3.0, 0.0), Bimaterial{}};
}

}  // namespace

TEST_CASE("advance_increment") {
    CrackState empty{0.0, {}, three_point_preset(1.0, 3.0, 0.0), Bimaterial{}};
    CHECK(advance_increment(empty) == 0.0);

    const CrackState s{0.0, {microcrack(0.8, 0.6, 0.4, 0.1)}, three_point_preset(-1.0, 3.0, 1.0),
                       Bimaterial{1.0, 2.0}};
    const auto c = tip_coefficients(s.loading, s.bimaterial);
    const double sum = delta_k_defects(s.defects, s.loading, s.bimaterial).total;
    CHECK(advance_increment(s) == doctest::Approx(-2.0 * sum / c.a3).epsilon(1e-15));

    CrackState doubled = s;
    doubled.defects[0].la *= std::sqrt(2.0);
    CHECK(advance_increment(doubled) == doctest::Approx(2.0 * advance_increment(s)).epsilon(1e-13));

    // p = -1 at a = 1 and p = 8 at a = 4: A0 cancels exactly, K0 does not.
    Loading flat = symmetric_pair(-1.0, 1.0);
    flat.point_forces.push_back({-4.0, Face::upper, 8.0});
    flat.point_forces.push_back({-4.0, Face::lower, 8.0});
    const CrackState degenerate{0.0, {microcrack(0.8, 0.6, 0.4, 0.1)}, flat, Bimaterial{}};
    CHECK(coeff_a0(flat, Bimaterial{}) == 0.0);
    CHECK_THROWS_AS(advance_increment(degenerate), DegenerateA0);
}

TEST_CASE("step") {
    const CrackState s{0.0, {microcrack(1.0, 1.0, 0.0, 0.1)}, three_point_preset(1.0, 3.0, 0.0),
                       Bimaterial{}};
    const CrackState same = step(s, 0.0);
    CHECK(same.tip_x == 0.0);
    CHECK(relative_defects(same)[0].center == s.defects[0].center);

    const CrackState moved = step(s, 1.0);
    const FieldPoint p = FieldPoint::from_cartesian(relative_defects(moved)[0].center);
    CHECK(p.d == doctest::Approx(1.0));
    CHECK(p.phi == doctest::Approx(pi / 2));
    CHECK(moved.defects[0].center == s.defects[0].center);
    CHECK(support_end(relative_loading(moved)) == support_end(s.loading) - 1.0);

    CHECK_THROWS_AS(step(s, -3.5), TipReachesLoad);
    const CrackState ahead{0.0, {microcrack(1.0, 0.0, 0.0, 0.1)}, three_point_preset(1.0, 3.0, 0.0),
                           Bimaterial{}};
    CHECK_THROWS_AS(step(ahead, 0.95), TipReachesDefect);
    // Jumping over a defect is caught too.
    CHECK_THROWS_AS(step(ahead, 2.0), TipReachesDefect);
    CHECK_THROWS_AS(step(s, std::nan("")), ValidationError);
}

TEST_CASE("propagate without defects arrests immediately") {
    const CrackState s{0.0, {}, three_point_preset(1.0, 3.0, 0.0), Bimaterial{}};
    const PropagationTrace t = propagate(s);
    CHECK(t.verdict == Verdict::arrest);
    CHECK(t.elongation == 0.0);
    CHECK(t.increments.empty());
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].verdict == Verdict::arrest);
}

TEST_CASE("propagate: elongation is the prefix sum and runs are repeatable") {
    const PropagationOptions opts;
    const CrackState s = pair_a_state(pi / 8, pi / 4);
    const PropagationTrace t = propagate(s, opts);
    CHECK(t.verdict == Verdict::arrest);
    double sum = 0.0;
    for (double phi : t.increments) {
        CHECK(phi > 0.0);
        sum += phi;
    }
    CHECK(t.elongation == sum);
    CHECK(t.rows.back().x == t.elongation);

    const PropagationTrace again = propagate(s, opts);
    std::ostringstream a;
    std::ostringstream b;
    write_trace_csv(a, t);
    write_trace_csv(b, again);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("iter,phi,x,dK_total,K0,A0,verdict_flag\n", 0) == 0);
}

TEST_CASE("propagate verdicts") {
    SUBCASE("iteration cap") {
        PropagationOptions opts;
        opts.max_iter = 3;
        const PropagationTrace t = propagate(pair_a_state(7 * pi / 8, pi / 2), opts);
        CHECK(t.verdict == Verdict::max_iterations);
        CHECK(t.rows.size() == 3);
        CHECK(t.rows.back().verdict == Verdict::max_iterations);
        CHECK(t.rows.front().verdict == Verdict::running);
    }
    SUBCASE("shielding arrests without retreat") {
        Defect line;
        line.kind = DefectKind::rigid_line;
        line.center = {0.5, 0.5};
        line.la = 0.05;
        line.alpha = pi / 2;
        const CrackState s{0.0, {line}, three_point_preset(1.0, 3.0, 0.0), Bimaterial{}};
        REQUIRE(advance_increment(s) < 0.0);
        const PropagationTrace t = propagate(s);
        CHECK(t.verdict == Verdict::arrest);
        CHECK(t.elongation == 0.0);
    }
    SUBCASE("running into a defect is reported as invalid") {
        const CrackState s{0.0, {microcrack(0.3, 0.0, 0.0, 0.1)}, three_point_preset(1.0, 3.0, 0.0),
                           Bimaterial{}};
        PropagationOptions opts;
        opts.max_iter = 20000;
        const PropagationTrace t = propagate(s, opts);
        CHECK(t.verdict == Verdict::invalid);
        CHECK_FALSE(t.failure.empty());
        CHECK(verdict_flag(t.rows.back().verdict) == 4);
    }
    SUBCASE("bad options") {
        PropagationOptions opts;
        opts.max_iter = 0;
        CHECK_THROWS_AS(propagate(pair_a_state(0.3, 0.3), opts), ValidationError);
        opts.max_iter = 10;
        opts.arrest_tol = -1.0;
        CHECK_THROWS_AS(propagate(pair_a_state(0.3, 0.3), opts), ValidationError);
    }
}

TEST_CASE("default arrest tolerance follows the nearest defect") {
    const CrackState s = pair_a_state(0.3, 0.3);
    CHECK(default_arrest_tol(s) == doctest::Approx(1e-8));
    CHECK(default_arrest_tol(CrackState{}) == 1e-8);
}
