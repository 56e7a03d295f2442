#include <doctest.h>

#include <cmath>
#include <random>

#include "fcm/variational.hpp"
#include "oracles.hpp"

using namespace fcm;

namespace {

ConeMetric canonical(double alpha = kPi / 10.0) { return build_canonical(2, alpha); }

ConeMetric refinedMetric(int extra, double scaleFactor = 1.05) {
    ConeMetric m = canonical();
    for (int i = 0; i < extra; ++i) m = refine(m, (3 * i) % m.surface().nFaces());
    return scale(m, scaleFactor);
}

double bisectSymmetricHeight(const ConeMetric& m) {
    double lo = 0.05, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        FuchsianConeManifold P = assemble(m, Heights(1, mid));
        (P.kappa(0) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("gradient equals kappa and matches finite differences of S") {
    ConeMetric m = refinedMetric(3);
    RealizeResult rr = realize(m);
    const ConeMetric& chart = rr.manifold.metric();
    Eigen::VectorXd g = gradient(rr.manifold);
    CHECK(g.cwiseAbs().maxCoeff() <= 1e-10);

    // away from the optimum, dS/dh_v = kappa_v by central differences
    std::vector<double> h = rr.manifold.heights().values;
    for (double& x : h) x *= 1.15;
    FuchsianConeManifold P = assemble(chart, Heights(h));
    const double eps = 1e-5, volTol = 1e-12;
    double budget = 1e-6 + 2.0 * chart.surface().nFaces() * volTol / eps;
    for (int v = 0; v < chart.surface().nVertices(); ++v) {
        auto hp = h, hm = h;
        hp[v] += eps;
        hm[v] -= eps;
        double Sp = discrete_curvature(assemble(chart, Heights(hp)), volTol);
        double Sm = discrete_curvature(assemble(chart, Heights(hm)), volTol);
        CHECK(std::fabs((Sp - Sm) / (2 * eps) - P.kappa(v)) < budget);
    }
}

TEST_CASE("dS/dl_e equals theta_e in a fixed chart") {
    ConeMetric m = refinedMetric(2);
    RealizeResult rr = realize(m);
    const ConeMetric& chart = rr.manifold.metric();
    Heights h = rr.manifold.heights();
    FuchsianConeManifold P = assemble(chart, h);
    const double eps = 1e-5, volTol = 1e-12;
    double budget = 1e-6 + 2.0 * chart.surface().nFaces() * volTol / eps;
    for (int e = 0; e < chart.surface().nEdges(); e += 3) {
        auto lp = chart.lengths(), lm = chart.lengths();
        lp[e] += eps;
        lm[e] -= eps;
        double Sp = discrete_curvature(
            assemble(ConeMetric(chart.surface(), lp, chart.marked()), h), volTol);
        double Sm = discrete_curvature(
            assemble(ConeMetric(chart.surface(), lm, chart.marked()), h), volTol);
        CHECK(std::fabs((Sp - Sm) / (2 * eps) - P.theta(e)) < budget);
    }
}

TEST_CASE("hessian matches the finite-difference Jacobian of kappa") {
    ConeMetric m = refinedMetric(4);
    RealizeResult rr = realize(m);
    const ConeMetric& chart = rr.manifold.metric();
    std::vector<double> h = rr.manifold.heights().values;
    for (size_t i = 0; i < h.size(); ++i) h[i] *= 1.0 + 0.05 * (static_cast<int>(i % 3) - 1);
    FuchsianConeManifold P = assemble(chart, Heights(h));
    double asym = 0;
    Eigen::MatrixXd H = hessian(P, &asym);
    CHECK(asym <= 1e-10);
    const int n = chart.surface().nVertices();
    const double eps = 1e-4;
    Eigen::MatrixXd Hfd(n, n);
    for (int v = 0; v < n; ++v) {
        auto hp = h, hm = h;
        hp[v] += eps;
        hm[v] -= eps;
        FuchsianConeManifold Pp = assemble(chart, Heights(hp));
        FuchsianConeManifold Pm = assemble(chart, Heights(hm));
        for (int u = 0; u < n; ++u) Hfd(u, v) = (Pp.kappa(u) - Pm.kappa(u)) / (2 * eps);
    }
    CHECK((H - Hfd).cwiseAbs().maxCoeff() < 1e-5);
    // structure: off-diagonals >= 0, row sums <= 0, eigenvalues <= 1e-8
    for (int i = 0; i < n; ++i) {
        CHECK(H.row(i).sum() <= 1e-10);
        for (int j = 0; j < n; ++j)
            if (i != j) CHECK(H(i, j) >= -1e-12);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    CHECK(es.eigenvalues().maxCoeff() <= 1e-8);
}

TEST_CASE("one-vertex hessian is a nonpositive 1x1 matrix") {
    ConeMetric m = canonical();
    FuchsianConeManifold P = assemble(m, Heights(1, 0.5));
    Eigen::MatrixXd H = hessian(P);
    REQUIRE(H.rows() == 1);
    CHECK(H(0, 0) <= 0);
}

TEST_CASE("realize converges on the canonical family and matches the bisection oracle") {
    for (double alpha : {kPi / 12.0, kPi / 10.0, kPi / 9.5}) {
        ConeMetric m = canonical(alpha);
        RealizeResult rr = realize(m);
        CHECK(rr.trace.back().maxKappa <= 1e-10);
        double hStar = bisectSymmetricHeight(m);
        CHECK(rr.manifold.heights()[0] == doctest::Approx(hStar).epsilon(1e-10));
        // determinism: a rerun reproduces the height bit-for-bit
        RealizeResult rr2 = realize(m);
        CHECK(rr2.manifold.heights()[0] == rr.manifold.heights()[0]);
    }
}

TEST_CASE("realize handles refined metrics with 10-30 vertices") {
    for (int extra : {9, 16}) {
        ConeMetric m = refinedMetric(extra);
        REQUIRE(m.surface().nVertices() >= 10);
        RealizeResult rr = realize(m);
        CHECK(rr.trace.back().maxKappa <= 1e-10);
        CHECK(rr.manifold.convex());
        SlopeReport rep = slope_report(rr.manifold);
        CHECK(rep.totalViolations() == 0);
    }
}

TEST_CASE("realize rejects non-strictly-convex input") {
    ConeMetric flat = refine(canonical(), 0);  // inserted vertex has nu = 0
    CHECK_THROWS_AS(static_cast<void>(realize(flat)), PreconditionViolated);
}

TEST_CASE("realize is scale-consistent") {
    ConeMetric m = canonical();
    RealizeResult rr = realize(scale(m, 1.3));
    CHECK(rr.manifold.convex());
    CHECK(rr.trace.back().maxKappa <= 1e-10);
}

TEST_CASE("maximization principle against perturbed convex manifolds") {
    ConeMetric m = refinedMetric(3);
    RealizeResult rr = realize(m);
    double Sstar = discrete_curvature(rr.manifold, 1e-12);
    std::mt19937 rng(51);
    std::uniform_real_distribution<double> uni(-0.25, 0.25);
    int accepted = 0;
    double minMargin = 1e300;
    while (accepted < 20) {
        std::vector<double> h = rr.manifold.heights().values;
        bool distinct = false;
        for (double& x : h) {
            double f = 1.0 + uni(rng);
            distinct = distinct || std::fabs(f - 1.0) > 1e-3;
            x *= f;
        }
        if (!distinct) continue;
        try {
            CanonicalizeResult cr = canonicalize_convex(m, Heights(h));
            double S = discrete_curvature(cr.manifold, 1e-12);
            CHECK(Sstar > S);
            minMargin = std::min(minMargin, Sstar - S);
            ++accepted;
        } catch (const Error&) {
        }
    }
    CHECK(minMargin > 0);
}

TEST_CASE("constrained flow on the canonical manifold (W = V)") {
    ConeMetric m = canonical();
    RealizeResult rr = realize(m);
    FlowResult fr = constrained_flow(rr.manifold, {0}, 0.2, 16);
    REQUIRE(fr.states.size() == 17);
    CHECK(fr.states.front().t == 0.0);
    CHECK(std::fabs(fr.states.front().kappaW[0]) <= 1e-10);
    for (size_t k = 1; k < fr.states.size(); ++k) {
        CHECK(fr.states[k].kappaW[0] < 0.0);           // noWzero
        CHECK(fr.states[k].S <= fr.states[k - 1].S + 1e-9);  // S non-increasing
        // pinned vertex follows sinh h = e^t sinh h0 exactly
        double expect = std::asinh(std::exp(fr.states[k].t) *
                                   std::sinh(rr.manifold.heights()[0]));
        CHECK(fr.states[k].heights[0] == doctest::Approx(expect).epsilon(1e-12));
        // monotone curvature accumulation -kappa >= nu (e^{t/M} - 1)
        double lower = fr.nu * (std::exp(fr.states[k].t / fr.M) - 1.0);
        CHECK(-fr.states[k].kappaW[0] >= lower - 1e-9);
    }
}

TEST_CASE("constrained flow with free vertices") {
    ConeMetric m = refinedMetric(3);
    RealizeResult rr = realize(m);
    const int n = m.surface().nVertices();
    FlowResult fr = constrained_flow(rr.manifold, {0}, 0.15, 12);
    for (size_t k = 1; k < fr.states.size(); ++k) {
        const auto& st = fr.states[k];
        const auto& prev = fr.states[k - 1];
        CHECK(st.kappaW[0] < 0.0);
        CHECK(st.S <= prev.S + 1e-9);
        double dt = st.t - prev.t;
        for (int v = 1; v < n; ++v) {
            double rate = (st.heights[v] - prev.heights[v]) / dt;
            double cap = std::tanh(0.5 * (st.heights[v] + prev.heights[v]));
            CHECK(rate > 0.0);          // 0 < dh/dt
            CHECK(rate < cap + 1e-6);   // < tanh h at the midpoint
        }
    }
    // free curvatures stay at zero along the flow (kappa is well defined on
    // the convex re-chart)
    FuchsianConeManifold Pend =
        canonicalize_convex(m, Heights(fr.states.back().heights)).manifold;
    for (int v = 1; v < n; ++v) CHECK(std::fabs(Pend.kappa(v)) <= 1e-9);
}

TEST_CASE("main lemma 1 gap bound") {
    ConeMetric m = refinedMetric(2);
    RealizeResult rr = realize(m);
    for (double tau : {0.05, 0.1, 0.2}) {
        GapResult gr = main_lemma_1_gap(rr.manifold, {0}, tau, 24);
        CHECK(gr.ok);
        CHECK(gr.gap >= gr.bound);
        CHECK(gr.bound > 0);
        // independent re-integration of -sum kappa_w tanh h_w dt
        double integral = 0;
        const auto& st = gr.flow.states;
        for (size_t k = 1; k < st.size(); ++k) {
            double f0 = -st[k - 1].kappaW[0] * std::tanh(st[k - 1].heights[0]);
            double f1 = -st[k].kappaW[0] * std::tanh(st[k].heights[0]);
            integral += 0.5 * (f0 + f1) * (st[k].t - st[k - 1].t);
        }
        CHECK(gr.gap == doctest::Approx(integral).epsilon(5e-3));
        // both sides vanish as tau -> 0
        GapResult tiny = main_lemma_1_gap(rr.manifold, {0}, 1e-4, 2);
        CHECK(std::fabs(tiny.gap) < 1e-3);
        CHECK(std::fabs(tiny.bound) < 1e-3);
        CHECK(tiny.ok);
    }
}

TEST_CASE("flow preconditions") {
    ConeMetric m = canonical();
    FuchsianConeManifold P = assemble(m, Heights(1, 0.2));  // not realized
    CHECK_THROWS_AS(static_cast<void>(constrained_flow(P, {0}, 0.1, 4)),
                    PreconditionViolated);
    RealizeResult rr = realize(m);
    CHECK_THROWS_AS(static_cast<void>(constrained_flow(rr.manifold, {}, 0.1, 4)),
                    PreconditionViolated);
    CHECK_THROWS_AS(static_cast<void>(constrained_flow(rr.manifold, {0}, -1.0, 4)),
                    PreconditionViolated);
}
