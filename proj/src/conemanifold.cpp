/*
 * fcm: convex polyhedral Fuchsian cone-manifolds
 * Copyright 2026 the fcm authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "fcm/conemanifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fcm {

using geom::Vec3;

FuchsianConeManifold::FuchsianConeManifold(ConeMetric metric, Heights heights,
                                           AssembleOptions opts)
    : metric_(std::move(metric)), h_(std::move(heights)), tolFlat_(opts.tolFlat) {
    const auto& s = metric_.surface();
    if (h_.size() != s.nVertices())
        throw PrismNonexistent("heights table does not cover the vertex set");

    const int F = s.nFaces(), E = s.nEdges(), V = s.nVertices();
    prisms_.resize(F);
    std::vector<std::string> faceError(F);

    // Per-prism solves: one independent slot per face. The parallel path is
    // the production kernel; the serial path is the reference used by tests.
    auto solveFace = [&](int f) {
        auto hs = s.faceHalfedges(f);
        int v0 = s.origin(hs[0]), v1 = s.origin(hs[1]), v2 = s.origin(hs[2]);
        double l12 = metric_.length(s.edgeOf(hs[0]));
        double l23 = metric_.length(s.edgeOf(hs[1]));
        double l13 = metric_.length(s.edgeOf(hs[2]));
        try {
            prisms_[f] = solve_prism(l12, l13, l23, h_[v0], h_[v1], h_[v2]);
        } catch (const Error& err) {
            faceError[f] = err.what();
        }
    };
    if (opts.exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int f = 0; f < F; ++f) solveFace(f);
    } else {
        for (int f = 0; f < F; ++f) solveFace(f);
    }
    for (int f = 0; f < F; ++f)
        if (!faceError[f].empty())
            throw PrismNonexistent("face " + std::to_string(f) + ": " + faceError[f]);

    traps_.resize(E);
    for (int e = 0; e < E; ++e) {
        auto [a, b] = s.edgeHalfedges(e);
        traps_[e] = solve_trapezoid(metric_.length(e), h_[s.origin(a)], h_[s.origin(b)]);
    }

    phi_.assign(E, 0.0);
    phiSide_.assign(E, {0.0, 0.0});
    omega_.assign(V, 0.0);
    for (int f = 0; f < F; ++f) {
        auto hs = s.faceHalfedges(f);
        const PrismSolved& p = prisms_[f];
        const double phis[3] = {p.phi12, p.phi23, p.phi13};
        const double oms[3] = {p.om1, p.om2, p.om3};
        for (int i = 0; i < 3; ++i) {
            int h = hs[i];
            int e = s.edgeOf(h);
            int side = (s.edgeHalfedges(e)[0] == h) ? 0 : 1;
            phiSide_[e][side] = phis[i];
            phi_[e] += phis[i];
            omega_[s.origin(h)] += oms[i];
        }
    }
    kappa_.resize(V);
    for (int v = 0; v < V; ++v) kappa_[v] = 2.0 * kPi - omega_[v];
    lambda_ = metric_.vertexAngles();

    strict_.resize(E);
    convex_ = true;
    for (int e = 0; e < E; ++e) {
        strict_[e] = phi_[e] < kPi - tolFlat_;
        if (phi_[e] > kPi + tolFlat_) convex_ = false;
    }
    for (int f = 0; f < F; ++f)
        if (!prisms_[f].ultraparallel) nonUltraFaces_.push_back(f);

    if (opts.requireConvex) {
        if (!convex_) throw NotConvex("assembled manifold has a concave edge");
        if (!nonUltraFaces_.empty())
            throw NotConvex("face " + std::to_string(nonUltraFaces_.front()) +
                            " is not ultraparallel");
    }
}

std::vector<int> FuchsianConeManifold::strictEdges() const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(strict_.size()); ++e)
        if (strict_[e]) out.push_back(e);
    return out;
}

bool FuchsianConeManifold::vertexIsolated(int v) const {
    const auto& s = metric_.surface();
    for (int e = 0; e < s.nEdges(); ++e) {
        if (!strict_[e]) continue;
        auto [a, b] = s.edgeHalfedges(e);
        if (s.origin(a) == v || s.origin(b) == v) return false;
    }
    return true;
}

std::array<Vec3, 3> FuchsianConeManifold::faceChart(int f) const {
    const auto& s = metric_.surface();
    auto hs = s.faceHalfedges(f);
    return geom::embedTriangle(metric_.length(s.edgeOf(hs[1])),
                               metric_.length(s.edgeOf(hs[2])),
                               metric_.length(s.edgeOf(hs[0])));
}

double FuchsianConeManifold::extendedHeight(int f, const Vec3& p) const {
    const PrismSolved& pr = prisms_[f];
    if (!pr.ultraparallel)
        throw PreconditionViolated("extendedHeight: prism is not ultraparallel");
    return std::asinh(std::sinh(pr.hperp) * std::cosh(geom::dist(p, pr.foot)));
}

FuchsianConeManifold assemble(const ConeMetric& d, const Heights& h, AssembleOptions opts) {
    return FuchsianConeManifold(d, h, opts);
}

double discrete_curvature(const FuchsianConeManifold& P, double volTol, Exec exec) {
    if (!(volTol > 0)) throw NonPositiveInput("discrete_curvature: volTol must be positive");
    const auto& s = P.metric().surface();
    const int F = s.nFaces();
    std::vector<double> vols(F, 0.0);
    std::vector<std::string> errs(F);
    auto one = [&](int f) {
        try {
            vols[f] = prism_volume(P.prism(f), volTol);
        } catch (const Error& e) {
            errs[f] = e.what();
        }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int f = 0; f < F; ++f) one(f);
    } else {
        for (int f = 0; f < F; ++f) one(f);
    }
    for (int f = 0; f < F; ++f)
        if (!errs[f].empty())
            throw QuadratureDidNotConverge("face " + std::to_string(f) + ": " + errs[f]);

    double vol = 0.0;  // canonical-order reduction, independent of threads
    for (int f = 0; f < F; ++f) vol += vols[f];

    double S = -2.0 * vol;
    for (int v = 0; v < s.nVertices(); ++v) S += P.kappa(v) * P.heights()[v];
    for (int e = 0; e < s.nEdges(); ++e) S += P.theta(e) * P.metric().length(e);
    return S;
}

namespace {

/// Develop the flip quadrilateral of edge e of `before` into a common chart:
/// A = origin(h), B = dest(h), U = apex of face(h), W = apex of face(twin).
struct QuadChart {
    Vec3 A, B, U, W;
    int h, h1, h2, t, t1, t2;
};

QuadChart developQuad(const FuchsianConeManifold& P, int e) {
    const auto& s = P.metric().surface();
    const auto& m = P.metric();
    QuadChart q;
    auto [h, t] = s.edgeHalfedges(e);
    q.h = h; q.t = t;
    q.h1 = s.next(h); q.h2 = s.next(q.h1);
    q.t1 = s.next(t); q.t2 = s.next(q.t1);
    double lab = m.length(e);
    double lau = m.length(s.edgeOf(q.h2));
    double law = m.length(s.edgeOf(q.t1));
    double thU = m.cornerAngle(h);    // at A toward U
    double thW = m.cornerAngle(q.t1); // at A toward W (other side)
    q.A = Vec3{1, 0, 0};
    q.B = Vec3{std::cosh(lab), std::sinh(lab), 0};
    q.U = Vec3{std::cosh(lau), std::sinh(lau) * std::cos(thU), std::sinh(lau) * std::sin(thU)};
    q.W = Vec3{std::cosh(law), std::sinh(law) * std::cos(thW), -std::sinh(law) * std::sin(thW)};
    return q;
}

/// Position of the prism foot of face f inside an arbitrary chart, given the
/// chart positions of the three face corners slot-by-slot.
Vec3 footInChart(const FuchsianConeManifold& P, int f, const std::array<Vec3, 3>& pos) {
    const PrismSolved& pr = P.prism(f);
    return geom::trilaterate(pos[0], pos[1], pos[2], std::cosh(pr.footDist1),
                             std::cosh(pr.footDist2), std::cosh(pr.footDist3));
}

/// Chart positions of face f's canonical slots when the face is part of the
/// quad chart; `at` maps a half-edge id to the chart position of its origin.
template <class AtFn>
std::array<Vec3, 3> faceSlots(const CombSurface& s, int f, AtFn at) {
    auto hs = s.faceHalfedges(f);
    return {at(hs[0]), at(hs[1]), at(hs[2])};
}

FlipRecord sampleFlipRecord(const FuchsianConeManifold& before,
                            const FuchsianConeManifold& after, int e) {
    FlipRecord rec;
    rec.edge = e;
    const auto& s1 = before.metric().surface();
    const auto& s2 = after.metric().surface();
    QuadChart q = developQuad(before, e);

    int f1 = s1.faceOf(q.h), f2 = s1.faceOf(q.t);
    int g1 = s2.faceOf(q.h), g2 = s2.faceOf(q.t);
    if (!before.prism(f1).ultraparallel || !before.prism(f2).ultraparallel ||
        !after.prism(g1).ultraparallel || !after.prism(g2).ultraparallel) {
        rec.minHeightDelta = std::numeric_limits<double>::quiet_NaN();
        return rec;
    }
    auto atBefore = [&](int he) -> Vec3 {
        if (he == q.h) return q.A;
        if (he == q.h1) return q.B;
        if (he == q.h2) return q.U;
        if (he == q.t) return q.B;
        if (he == q.t1) return q.A;
        return q.W;  // t2
    };
    // After the flip h runs W -> U and t runs U -> W.
    auto atAfter = [&](int he) -> Vec3 {
        if (he == q.h) return q.W;
        if (he == q.h1) return q.B;
        if (he == q.h2) return q.U;
        if (he == q.t) return q.U;
        if (he == q.t1) return q.A;
        return q.W;  // t2
    };
    Vec3 foot1 = footInChart(before, f1, faceSlots(s1, f1, atBefore));
    Vec3 foot2 = footInChart(before, f2, faceSlots(s1, f2, atBefore));
    Vec3 foot1p = footInChart(after, g1, faceSlots(s2, g1, atAfter));
    Vec3 foot2p = footInChart(after, g2, faceSlots(s2, g2, atAfter));

    Vec3 nAB = geom::mcross(q.A, q.B);
    double sideU = geom::mdot(q.U, nAB);
    Vec3 nUW = geom::mcross(q.U, q.W);
    double sideA = geom::mdot(q.A, nUW);

    auto htBefore = [&](const Vec3& p) {
        bool onUSide = geom::mdot(p, nAB) * sideU >= 0;
        const PrismSolved& pr = before.prism(onUSide ? f1 : f2);
        const Vec3& ft = onUSide ? foot1 : foot2;
        return std::asinh(std::sinh(pr.hperp) * std::cosh(geom::dist(p, ft)));
    };
    auto htAfter = [&](const Vec3& p) {
        bool onASide = geom::mdot(p, nUW) * sideA >= 0;
        const PrismSolved& pr = after.prism(onASide ? g1 : g2);
        const Vec3& ft = onASide ? foot1p : foot2p;
        return std::asinh(std::sinh(pr.hperp) * std::cosh(geom::dist(p, ft)));
    };

    const double weights[][4] = {{1, 1, 1, 1}, {3, 1, 1, 1}, {1, 3, 1, 1}, {1, 1, 3, 1},
                                 {1, 1, 1, 3}, {5, 1, 2, 2}, {1, 5, 2, 2}, {2, 2, 5, 1},
                                 {2, 2, 1, 5}};
    double minDelta = std::numeric_limits<double>::infinity();
    for (const auto& wgt : weights) {
        Vec3 p = geom::normalizePoint(q.A * wgt[0] + q.B * wgt[1] + q.U * wgt[2] + q.W * wgt[3]);
        minDelta = std::min(minDelta, htAfter(p) - htBefore(p));
    }
    rec.minHeightDelta = minDelta;
    return rec;
}

}  // namespace

CanonicalizeResult canonicalize_convex(const ConeMetric& d, const Heights& h,
                                       CanonicalizeOptions opts) {
    AssembleOptions aopts;
    aopts.tolFlat = opts.tolFlat;
    aopts.exec = opts.exec;
    ConeMetric metric = d;
    FuchsianConeManifold P = assemble(metric, h, aopts);
    CanonicalizeResult result{P, 0, {}};
    for (int iter = 0; iter <= opts.maxFlips; ++iter) {
        std::vector<int> concave;
        for (int e = 0; e < metric.surface().nEdges(); ++e)
            if (P.phi(e) > kPi + opts.tolFlat) concave.push_back(e);
        if (concave.empty()) {
            result.manifold = P;
            return result;
        }
        if (iter == opts.maxFlips)
            throw FlipBudgetExceeded("canonicalize: " + std::to_string(opts.maxFlips) +
                                     " flips exhausted with " +
                                     std::to_string(concave.size()) + " concave edges left");
        bool flipped = false;
        for (int e : concave) {
            ConeMetric m2 = metric;
            try {
                m2 = flip(metric, e);
            } catch (const Error&) {
                continue;  // single-triangle or concave-quad configuration
            }
            FuchsianConeManifold P2 = P;
            try {
                P2 = assemble(m2, h, aopts);
            } catch (const PrismNonexistent&) {
                continue;  // flipped chart not representable with these heights
            }
            if (opts.sampleHeights) result.log.push_back(sampleFlipRecord(P, P2, e));
            metric = std::move(m2);
            P = std::move(P2);
            ++result.flips;
            flipped = true;
            break;
        }
        if (!flipped) {
            std::string diag = "canonicalize: no concave edge is flippable (edges";
            for (int e : concave) diag += " " + std::to_string(e);
            throw UnflippableEdge(diag + "); input heights violate the nu_v > 0 preconditions");
        }
    }
    return result;  // unreachable
}

SphericalLink spherical_link(const FuchsianConeManifold& P, int v) {
    const auto& s = P.metric().surface();
    SphericalLink link;
    link.vertex = v;
    link.omega = P.omega(v);
    link.kappa = P.kappa(v);
    link.nu = P.vertexNu(v);
    for (int h : s.outgoing(v)) {
        int e = s.edgeOf(h);
        LinkEntry entry;
        entry.edge = e;
        auto [ha, hb] = s.edgeHalfedges(e);
        entry.alpha = (h == ha) ? P.trapezoid(e).alpha12 : P.trapezoid(e).alpha21;
        auto ps = P.phiSides(e);
        entry.phiPlus = (h == ha) ? ps[0] : ps[1];
        entry.phiMinus = (h == ha) ? ps[1] : ps[0];
        entry.strict = P.edgeStrict(e);
        link.entries.push_back(entry);
        (void)hb;
    }
    return link;
}

std::pair<double, double> link_area_inequality(const SphericalLink& link) {
    if (link.kappa > 1e-12)
        throw PreconditionViolated("link inequality: kappa must be <= 0");
    if (!(link.nu > 1e-12))
        throw PreconditionViolated("link inequality: perimeter must be < 2 pi (nu > 0)");
    int m = 0;
    double lhs = 0;
    for (const auto& en : link.entries) {
        if (!en.strict) continue;
        if (!(en.phiPlus + en.phiMinus < kPi))
            throw PreconditionViolated("link inequality: strict edge with phi+ + phi- >= pi");
        ++m;
        lhs += (1.0 / std::tan(en.phiPlus) + 1.0 / std::tan(en.phiMinus)) /
               (2.0 * std::sin(en.alpha)) / std::tan(en.alpha);
    }
    if (m < 1) throw PreconditionViolated("link inequality: no strict edges at vertex");
    return {lhs, link.nu - link.kappa};
}

SlopeReport slope_report(const FuchsianConeManifold& P) {
    SlopeReport rep;
    double diam = diameter_upper_bound(P.metric());
    rep.alphaBound = std::atan2(1.0, 2.0 * std::cosh(diam));
    const double slack = 1e-9;
    const auto& s = P.metric().surface();

    rep.minSlopeMargin = std::numeric_limits<double>::infinity();
    for (int f = 0; f < s.nFaces(); ++f) {
        const PrismSolved& pr = P.prism(f);
        if (!pr.ultraparallel) continue;
        for (int i = 0; i < 3; ++i) {
            double sl = pr.slopeAtVertex(i);
            rep.minSlopeMargin = std::min(rep.minSlopeMargin, sl - rep.alphaBound);
            if (sl < rep.alphaBound - slack) ++rep.slopeViolations;
        }
    }
    for (int e = 0; e < s.nEdges(); ++e) {
        for (double ph : P.phiSides(e)) {
            if (ph < rep.alphaBound - slack || ph > kPi - rep.alphaBound + slack)
                ++rep.dihedralViolations;
        }
    }
    double omegaCap = 2.0 * kPi / std::sin(rep.alphaBound);
    for (int v = 0; v < s.nVertices(); ++v) {
        if (P.omega(v) > omegaCap + slack) ++rep.omegaViolations;
        double turn = 0;
        for (int h : s.outgoing(v)) {
            int e = s.edgeOf(h);
            if (P.edgeStrict(e)) turn += kPi - P.phi(e);
        }
        if (!(turn < P.omega(v) + slack)) ++rep.sectionViolations;
    }
    return rep;
}

FuchsianConeManifold height_scaling(const FuchsianConeManifold& P, double t) {
    std::vector<double> nh(P.heights().values);
    double f = std::exp(t);
    for (double& x : nh) x = std::asinh(f * std::sinh(x));
    AssembleOptions opts;
    opts.tolFlat = P.tolFlat();
    return assemble(P.metric(), Heights(std::move(nh)), opts);
}

}  // namespace fcm
