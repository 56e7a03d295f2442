#include <doctest.h>

#include <cmath>
#include <random>

#include "fcm/hyptrig.hpp"
#include "oracles.hpp"

using namespace fcm;

TEST_CASE("trapezoid cosine and sine laws") {
    std::mt19937 rng(11);
    for (int i = 0; i < 2000; ++i) {
        auto [l, h1, h2] = oracles::sample_trapezoid_input(rng);
        TrapezoidSolved t = solve_trapezoid(l, h1, h2);
        // cosine law
        CHECK(std::cosh(t.a12) * std::cosh(h1) * std::cosh(h2) ==
              doctest::Approx(std::sinh(h1) * std::sinh(h2) + std::cosh(l)).epsilon(1e-12));
        // sine law
        double lhs = std::sinh(t.a12) / std::sinh(l);
        CHECK(lhs == doctest::Approx(std::sin(t.alpha12) / std::cosh(h2)).epsilon(1e-12));
        CHECK(lhs == doctest::Approx(std::sin(t.alpha21) / std::cosh(h1)).epsilon(1e-12));
        // cotan identity
        double cot = std::cos(t.alpha12) / std::sin(t.alpha12);
        double rhs = (std::cosh(t.a12) * std::tanh(h1) - std::tanh(h2)) / std::sinh(t.a12);
        CHECK(cot / std::cosh(h1) == doctest::Approx(rhs).epsilon(1e-11));
        if (t.ultraparallel) {
            CHECK(std::sinh(h1) ==
                  doctest::Approx(std::sinh(t.hperp) * std::cosh(t.foot1)).epsilon(1e-10));
            CHECK(std::sinh(h2) ==
                  doctest::Approx(std::sinh(t.hperp) * std::cosh(t.foot2)).epsilon(1e-10));
            CHECK(t.foot2 - t.foot1 == doctest::Approx(l).epsilon(1e-12));
        }
    }
}

TEST_CASE("trapezoid symmetry and degenerate-height limit") {
    TrapezoidSolved t = solve_trapezoid(1.0, 0.7, 0.7);
    CHECK(t.alpha12 == doctest::Approx(t.alpha21).epsilon(1e-15));
    // h -> 0 sends the lower edge to the upper edge
    TrapezoidSolved s = solve_trapezoid(1.0, 1e-7, 1e-7);
    CHECK(s.a12 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("right-angled trapezoid identities") {
    // force alpha21 = pi/2: h1 = arcsinh(cosh l12 sinh h2)
    double l = 1.0, h2 = 0.5;
    double h1 = std::asinh(std::cosh(l) * std::sinh(h2));
    TrapezoidSolved t = solve_trapezoid(l, h1, h2);
    CHECK(t.alpha21 == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(std::tanh(h1) == doctest::Approx(std::cosh(t.a12) * std::tanh(h2)).epsilon(1e-12));
    CHECK(std::sin(t.alpha12) == doctest::Approx(std::cosh(h2) / std::cosh(h1)).epsilon(1e-12));
    double cot = std::cos(t.alpha12) / std::sin(t.alpha12);
    CHECK(cot == doctest::Approx(std::sinh(l) * std::tanh(h2)).epsilon(1e-12));
}

TEST_CASE("trapezoid against the hyperboloid embedding") {
    std::mt19937 rng(12);
    for (int i = 0; i < 500; ++i) {
        auto [l, h1, h2] = oracles::sample_trapezoid_input(rng);
        TrapezoidSolved t = solve_trapezoid(l, h1, h2);
        auto emb = oracles::embed_trapezoid(l, h1, h2);
        CHECK(t.a12 == doctest::Approx(emb.a12).epsilon(1e-10));
        CHECK(t.alpha12 == doctest::Approx(emb.alpha12).epsilon(1e-10));
        CHECK(t.alpha21 == doctest::Approx(emb.alpha21).epsilon(1e-10));
        CHECK(t.ultraparallel == emb.ultraparallel);
        if (t.ultraparallel) CHECK(t.hperp == doctest::Approx(emb.hperp).epsilon(1e-9));
    }
}

TEST_CASE("trapezoid round-trip through the lower edge") {
    std::mt19937 rng(13);
    for (int i = 0; i < 300; ++i) {
        auto [l, h1, h2] = oracles::sample_trapezoid_input(rng);
        TrapezoidSolved t = solve_trapezoid(l, h1, h2);
        // second cosine law reconstructs l12 from (a12, h1, h2)
        double coshL =
            std::cosh(t.a12) * std::cosh(h1) * std::cosh(h2) - std::sinh(h1) * std::sinh(h2);
        CHECK(std::acosh(coshL) == doctest::Approx(l).epsilon(1e-12));
    }
}

TEST_CASE("trapezoid input validation") {
    CHECK_THROWS_AS(solve_trapezoid(-1, 1, 1), NonPositiveInput);
    CHECK_THROWS_AS(solve_trapezoid(1, 0, 1), NonPositiveInput);
    CHECK_THROWS_AS(solve_trapezoid(1e-13, 1, 1), NonPositiveInput);
    // |h1 - h2| >= l12: no trapezoid
    CHECK_THROWS_AS(solve_trapezoid(0.3, 1.5, 1.0), NonexistentTrapezoid);
}

TEST_CASE("prism symmetry") {
    PrismSolved p = solve_prism(1, 1, 1, 0.8, 0.8, 0.8);
    CHECK(p.om1 == doctest::Approx(p.om2).epsilon(1e-14));
    CHECK(p.om2 == doctest::Approx(p.om3).epsilon(1e-14));
    CHECK(p.phi12 == doctest::Approx(p.phi13).epsilon(1e-14));
    CHECK(p.phi13 == doctest::Approx(p.phi23).epsilon(1e-14));
    CHECK(p.ultraparallel);
}

TEST_CASE("prism upper angles satisfy Gauss-Bonnet") {
    std::mt19937 rng(14);
    for (int i = 0; i < 300; ++i) {
        auto in = oracles::sample_prism_input(rng);
        PrismSolved p = solve_prism(in[0], in[1], in[2], in[3], in[4], in[5]);
        double area = prism_upper_area(p);
        CHECK(p.lam1 + p.lam2 + p.lam3 == doctest::Approx(kPi - area).epsilon(1e-12));
        CHECK(area > 0);
        // spherical-link cosine rule for the lateral dihedral
        double rhs = (std::cos(p.lam1) - std::cos(p.alpha12) * std::cos(p.alpha13)) /
                     (std::sin(p.alpha12) * std::sin(p.alpha13));
        CHECK(std::cos(p.om1) == doctest::Approx(rhs).epsilon(1e-11));
    }
}

TEST_CASE("prism against the hyperboloid embedding") {
    std::mt19937 rng(15);
    for (int i = 0; i < 300; ++i) {
        auto in = oracles::sample_prism_input(rng);
        PrismSolved p = solve_prism(in[0], in[1], in[2], in[3], in[4], in[5]);
        auto emb = oracles::embed_prism(in[0], in[1], in[2], in[3], in[4], in[5]);
        // the embedding reproduces the requested upper lengths
        CHECK(emb.upperLen12 == doctest::Approx(in[0]).epsilon(1e-10));
        CHECK(emb.upperLen13 == doctest::Approx(in[1]).epsilon(1e-10));
        CHECK(emb.upperLen23 == doctest::Approx(in[2]).epsilon(1e-10));
        CHECK(p.om1 == doctest::Approx(emb.om[0]).epsilon(1e-10));
        CHECK(p.om2 == doctest::Approx(emb.om[1]).epsilon(1e-10));
        CHECK(p.om3 == doctest::Approx(emb.om[2]).epsilon(1e-10));
        CHECK(p.phi12 == doctest::Approx(emb.phi12).epsilon(1e-10));
        CHECK(p.phi13 == doctest::Approx(emb.phi13).epsilon(1e-10));
        CHECK(p.phi23 == doctest::Approx(emb.phi23).epsilon(1e-10));
        for (double d : emb.lowerDihedral)
            CHECK(d == doctest::Approx(kPi / 2).epsilon(1e-10));
    }
}

TEST_CASE("prism foot interpolates the heights") {
    std::mt19937 rng(16);
    for (int i = 0; i < 200; ++i) {
        auto in = oracles::sample_prism_input(rng);
        PrismSolved p = solve_prism(in[0], in[1], in[2], in[3], in[4], in[5]);
        if (!p.ultraparallel) continue;
        double sp = std::sinh(p.hperp);
        CHECK(std::sinh(p.h1) == doctest::Approx(sp * std::cosh(p.footDist1)).epsilon(1e-9));
        CHECK(std::sinh(p.h2) == doctest::Approx(sp * std::cosh(p.footDist2)).epsilon(1e-9));
        CHECK(std::sinh(p.h3) == doctest::Approx(sp * std::cosh(p.footDist3)).epsilon(1e-9));
    }
}

TEST_CASE("prism symmetric reference values") {
    // numeric targets frozen from the hyperboloid-model oracle (l=1, h=1)
    PrismSolved p = solve_prism(1, 1, 1, 1, 1, 1);
    auto emb = oracles::embed_prism(1, 1, 1, 1, 1, 1);
    CHECK(p.om1 == doctest::Approx(emb.om[0]).epsilon(1e-12));
    CHECK(p.phi12 == doctest::Approx(emb.phi12).epsilon(1e-12));
    CHECK(p.om1 == doctest::Approx(0.98701485886446527).epsilon(1e-12));
    CHECK(p.phi12 == doctest::Approx(1.3836982227662875).epsilon(1e-12));
}

TEST_CASE("prism degenerate input validation") {
    CHECK_THROWS_AS(solve_prism(1, 1, 2.5, 0.5, 0.5, 0.5), DegenerateUpperTriangle);
    CHECK_THROWS_AS(solve_prism(1, 1, 1, 0.5, 0.5, 3.0), NonexistentTrapezoid);
}

TEST_CASE("prism volume positive and Monte-Carlo cross-check") {
    PrismSolved p = solve_prism(1, 1, 1, 1, 1, 1);
    double vol = prism_volume(p, 1e-10);
    CHECK(vol > 0);
    std::mt19937 rng(17);
    auto [mc, se] = oracles::klein_mc_volume(1, 1, 1, 1, 1, 1, 4000000, rng);
    CHECK(std::fabs(vol - mc) < 4.0 * se);  // 3 significant digits at this sample size
    CHECK(std::fabs(vol - mc) / vol < 5e-3);
}

TEST_CASE("prism volume for asymmetric prisms vs Monte-Carlo") {
    PrismSolved p = solve_prism(1.2, 0.9, 1.0, 0.6, 0.9, 0.5);
    double vol = prism_volume(p, 1e-10);
    std::mt19937 rng(18);
    auto [mc, se] = oracles::klein_mc_volume(1.2, 0.9, 1.0, 0.6, 0.9, 0.5, 4000000, rng);
    CHECK(std::fabs(vol - mc) < 4.0 * se);
}

TEST_CASE("prism volume quadrature is deterministic") {
    PrismSolved p = solve_prism(1.1, 0.8, 1.0, 0.7, 0.6, 0.9);
    double v1 = prism_volume(p, 1e-11);
    double v2 = prism_volume(p, 1e-11);
    CHECK(v1 == v2);
}

TEST_CASE("Schlaefli finite-difference identity") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        auto in = oracles::sample_prism_input(rng);
        auto at = [&](double dh) {
            return solve_prism(in[0], in[1], in[2], in[3], in[4], in[5] + dh);
        };
        const double eps = 1e-4, tol = 1e-12;
        PrismSolved p0 = at(0);
        if (!p0.ultraparallel) continue;
        PrismSolved pp = at(eps), pm = at(-eps);
        if (!pp.ultraparallel || !pm.ultraparallel) continue;
        double dvol = (prism_volume(pp, tol) - prism_volume(pm, tol)) / (2 * eps);
        double rhs = in[3] * (pp.om1 - pm.om1) + in[4] * (pp.om2 - pm.om2) +
                     in[5] * (pp.om3 - pm.om3) + in[0] * (pp.phi12 - pm.phi12) +
                     in[1] * (pp.phi13 - pm.phi13) + in[2] * (pp.phi23 - pm.phi23);
        rhs /= 2 * eps;
        CHECK(std::fabs(-2.0 * dvol - rhs) < 1e-6);
    }
}

TEST_CASE("trapezoid area bound") {
    std::mt19937 rng(20);
    for (int i = 0; i < 200; ++i) {
        auto [l, h1, h2] = oracles::sample_trapezoid_input(rng);
        TrapezoidSolved t = solve_trapezoid(l, h1, h2);
        double area = trapezoid_area(t);
        CHECK(area <= l + 1e-12);
        if (t.ultraparallel) {
            double areaQ = oracles::trapezoid_area_quadrature(t);
            CHECK(area == doctest::Approx(areaQ).epsilon(1e-6));
        }
    }
}

TEST_CASE("triangle from base angles") {
    // eta at zero base approaches pi/2
    CHECK(eta(1e-12) == doctest::Approx(kPi / 2).epsilon(1e-9));
    // obtuse apex inside the eta budget
    TriangleSolved t = triangle_from_base_angles(1.0, 0.1, 0.1);
    CHECK(t.alpha > kPi / 2);
    CHECK(0.2 < eta(1.0));
    // dual cosine law consistency
    double lhs = std::cos(t.alpha);
    double rhs = -std::cos(t.beta) * std::cos(t.gamma) +
                 std::sin(t.beta) * std::sin(t.gamma) * std::cosh(t.a);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(t.alpha + t.beta + t.gamma < kPi);
    CHECK_THROWS_AS(triangle_from_base_angles(1.0, kPi / 2, kPi / 2), NoSuchTriangle);
}

TEST_CASE("beta+gamma below eta(a) gives an obtuse apex") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> uni(0, 1);
    for (int i = 0; i < 200; ++i) {
        double a = 0.1 + 2.0 * uni(rng);
        double budget = eta(a);
        double beta = 0.1 * budget + 0.8 * budget * uni(rng);
        double gamma = (budget - beta) * 0.95 * uni(rng) + 1e-3;
        if (beta + gamma >= budget) continue;
        TriangleSolved t = triangle_from_base_angles(a, beta, gamma);
        CHECK(t.alpha > kPi / 2);
    }
}

TEST_CASE("curvature transfer bound") {
    TriangleSolved t = triangle_from_base_angles(1.0, 0.1, 0.1);
    CHECK(curvature_transfer_bound(t) > 0);
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> uni(0, 1);
    for (int i = 0; i < 300; ++i) {
        double a = 0.1 + 2.0 * uni(rng);
        double budget = eta(a);
        double beta = 1e-3 + 0.5 * budget * uni(rng);
        double gamma = 1e-3 + (budget - beta - 2e-3) * uni(rng);
        if (beta + gamma >= budget || gamma <= 0) continue;
        TriangleSolved tr = triangle_from_base_angles(a, beta, gamma);
        if (tr.alpha <= kPi / 2) continue;
        CHECK(curvature_transfer_bound(tr) > 0);
    }
    // near-degenerate base: bound reduces to the angle-sum margin
    TriangleSolved tiny = triangle_from_base_angles(1e-6, 0.3, 0.3);
    double margin = curvature_transfer_bound(tiny);
    CHECK(std::fabs(margin - (tiny.alpha + tiny.beta + tiny.gamma - kPi)) < 1e-6);
    CHECK_THROWS_AS(curvature_transfer_bound(triangle_from_base_angles(0.1, 0.8, 0.8)),
                    PreconditionViolated);
}
