#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crackwake/perturbation.hpp"
#include "support.hpp"

using namespace crackwake;
using std::numbers::pi;

namespace {

Defect at_polar(DefectKind kind, double d, double phi, double alpha, double la, double lb = 0.0) {
    Defect out;
    out.kind = kind;
    out.center = {d * std::cos(phi), d * std::sin(phi)};
    out.alpha = alpha;
    out.la = la;
    out.lb = lb;
    return out;
}

double ratio(const std::vector<Defect>& defects, const Loading& l, const Bimaterial& b) {
    return delta_k_defects(defects, l, b).total / sif_k0(l, b);
}

}  // namespace

TEST_CASE("tip vector norm") {
    for (double d : {0.1, 1.0, 7.5})
        for (double phi : {-2.0, 0.0, 1.0, 3.0})
            CHECK(tip_vector(d, phi).norm() == doctest::Approx(0.5 / (d * std::sqrt(d))).epsilon(1e-15));
}

TEST_CASE("effective tractions") {
    const Defect mc = at_polar(DefectKind::microcrack, 1.0, 0.6, 0.3, 0.1);
    const Eigen::Vector2d g(0.4, -1.2);

    const EffectiveTraction same = effective_tractions(mc, g, Bimaterial{2.0, 2.0});
    for (double x : {-0.1, -1.0, -5.0}) CHECK(same.jump(x) == 0.0);

    Defect neutral = at_polar(DefectKind::elastic_ellipse, 1.0, 0.6, 0.3, 0.1, 0.05);
    neutral.mu_star = 1.0;
    const EffectiveTraction zero = effective_tractions(neutral, g, Bimaterial{1.0, 3.0});
    CHECK(zero.avg(-2.0) == 0.0);
    CHECK(zero.jump(-2.0) == 0.0);

    const EffectiveTraction t = effective_tractions(mc, g, Bimaterial{1.0, 3.0});
    const double c1 = std::abs(t.avg(-1e4)) * 1e8;
    const double c2 = std::abs(t.avg(-1e5)) * 1e10;
    CHECK(c1 > 0.0);
    CHECK(testing::rel_err(c1, c2) < 1e-3);
}

TEST_CASE("zero dipole and zero contrast") {
    Defect inc = at_polar(DefectKind::elastic_ellipse, 1.2, 0.4, 0.2, 0.1, 0.05);
    inc.mu_star = 1.0;
    const Loading l = three_point_preset(-1.0, 3.0, 1.0);
    const Bimaterial b{1.0, 0.5};
    CHECK(delta_k_defect(inc, l, b) == 0.0);
    CHECK(delta_k_defect_quadrature(inc, l, b) == 0.0);
}

TEST_CASE("closed form agrees with the weight-function quadrature") {
    const Loading l = three_point_preset(-1.0, 3.0, 1.5);
    for (const Bimaterial b : {Bimaterial{1.0, 1.0}, Bimaterial{1.0, 5.06}, Bimaterial{5.06, 1.0}}) {
        for (DefectKind kind : kAllDefectKinds) {
            Defect d = at_polar(kind, 1.3, testing::uniform(-2.8, 2.8), testing::uniform(0.0, pi), 0.1, 0.06);
            d.mu_star = 0.3;
            d.kappa = 0.2;
            const double closed = delta_k_defect(d, l, b);
            const double quad = delta_k_defect_quadrature(d, l, b);
            CHECK(testing::rel_err(closed, quad) < 1e-6);
        }
    }
}

TEST_CASE("Delta K is linear in the dipole matrix and the load") {
    const Loading l = three_point_preset(-1.0, 3.0, 1.0);
    const Bimaterial b{1.0, 2.0};
    const Defect a = at_polar(DefectKind::microcrack, 1.0, 0.5, 0.2, 0.1);
    Defect twice = a;
    twice.la *= std::sqrt(2.0);  // microcrack M scales with la^2
    CHECK(delta_k_defect(twice, l, b) == doctest::Approx(2.0 * delta_k_defect(a, l, b)).epsilon(1e-13));
    Loading scaled = l;
    for (auto& f : scaled.point_forces) f.magnitude *= 3.0;
    CHECK(delta_k_defect(a, scaled, b) == doctest::Approx(3.0 * delta_k_defect(a, l, b)).epsilon(1e-13));
    const std::vector<Defect> both{a, twice};
    const auto sum = delta_k_defects(both, l, b);
    CHECK(sum.per_defect.size() == 2);
    CHECK(sum.total == sum.per_defect[0] + sum.per_defect[1]);
}

TEST_CASE("tip advance") {
    CHECK(delta_k_advance(0.0, 0.797885) == 0.0);
    CHECK(delta_k_advance(0.1, 0.0) == 0.0);
    CHECK(delta_k_advance(0.1, 0.797885) == doctest::Approx(0.0398942).epsilon(1e-6));
}

TEST_CASE("remote formulas") {
    const Bimaterial same{};
    CHECK(delta_k_remote(at_polar(DefectKind::microcrack, 1.0, 0.0, 0.0, 0.1), same) ==
          doctest::Approx(2.5e-3).epsilon(1e-14));
    CHECK(std::abs(delta_k_remote(at_polar(DefectKind::rigid_line, 1.0, 0.0, 0.0, 0.1), same)) < 1e-18);

    const Bimaterial b{1.0, 3.0};
    for (double phi : {-2.0, -0.5, 0.5, 2.5}) {
        const Defect v = at_polar(DefectKind::elliptic_void, 2.0, phi, 0.7, 0.1, 0.1);
        const double mu_opp = phi >= 0 ? b.mu_minus : b.mu_plus;
        CHECK(delta_k_remote(v, b) ==
              doctest::Approx(0.01 / 4.0 * mu_opp / (b.mu_plus + b.mu_minus) * std::cos(phi)).epsilon(1e-12));
    }
}

TEST_CASE("full ratio converges to the remote formula") {
    const Bimaterial b{1.0, 1.0};
    const Defect mc = at_polar(DefectKind::microcrack, 1.0, 0.0, 0.0, 0.1);
    double prev = 1.0;
    for (double a : {10.0, 100.0, 1000.0, 1e5}) {
        const double err = std::abs(ratio({mc}, testing::pair_load(-1.0, a), b) - 2.5e-3);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 0.01 * 2.5e-3);
}

TEST_CASE("neutral arrangement a") {
    const Defect mc = at_polar(DefectKind::microcrack, 1.0, pi / 8, 0.3, 0.1);
    const Defect line = neutral_pair_a(mc);
    CHECK(line.kind == DefectKind::rigid_line);
    CHECK(line.la == doctest::Approx(0.2));
    CHECK(line.center.norm() == doctest::Approx(2.0));
    CHECK(std::atan2(line.center.y(), line.center.x()) == doctest::Approx(pi / 8));
    CHECK(line.alpha == doctest::Approx(normalize_angle(0.3 - pi / 2)));
    CHECK(neutral_pair_a(at_polar(DefectKind::microcrack, 1.0, 0.4, pi / 2, 0.1)).alpha ==
          doctest::Approx(0.0).epsilon(1e-15));

    for (double phi : {-2.0, 0.3, 1.9}) {
        for (const Bimaterial b : {Bimaterial{}, Bimaterial{1.0, 4.0}}) {
            const Defect m = at_polar(DefectKind::microcrack, 1.0, phi, 1.1, 0.1);
            CHECK(std::abs(delta_k_remote(m, b) + delta_k_remote(neutral_pair_a(m), b)) < 1e-16);
        }
    }
    CHECK_THROWS_AS(neutral_pair_a(at_polar(DefectKind::rigid_line, 1.0, 0.2, 0.0, 0.1)), ValidationError);
}

TEST_CASE("neutral arrangement b") {
    const Defect mc = at_polar(DefectKind::microcrack, 1.0, pi / 8, 0.3, 0.1);
    const Defect line = neutral_pair_b(mc, Bimaterial{});
    CHECK(line.la == doctest::Approx(0.1));
    CHECK(std::atan2(line.center.y(), line.center.x()) == doctest::Approx(-pi / 8));
    CHECK(line.alpha == doctest::Approx(normalize_angle(pi / 2 - 0.3)));

    const Bimaterial b{1.0, 4.0};
    CHECK(neutral_pair_b(mc, b).la == doctest::Approx(0.1 * std::sqrt(4.0)));

    // Neutral for symmetric loads at any distance.
    for (const Bimaterial bm : {Bimaterial{}, Bimaterial{1.0, 4.0}, Bimaterial{3.0, 1.0}}) {
        for (double a : {1.5, 3.0, 20.0}) {
            for (double phi : {-2.5, -0.4, 0.7, 2.0}) {
                const Defect m = at_polar(DefectKind::microcrack, 1.0, phi, 0.9, 0.1);
                const Loading l = three_point_preset(-1.0, a, 0.0);
                CHECK(std::abs(ratio({m, neutral_pair_b(m, bm)}, l, bm)) < 1e-8);
            }
        }
    }
}
