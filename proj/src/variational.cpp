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
#include "fcm/variational.hpp"

#include <algorithm>
#include <cmath>

namespace fcm {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Eigen::VectorXd gradient(const FuchsianConeManifold& P) {
    const auto& k = P.kappas();
    return Eigen::Map<const VectorXd>(k.data(), static_cast<long>(k.size()));
}

Eigen::MatrixXd hessian(const FuchsianConeManifold& P, double* maxAsym) {
    const auto& s = P.metric().surface();
    const int n = s.nVertices();
    MatrixXd H = MatrixXd::Zero(n, n);
    for (int h = 0; h < s.nHalfEdges(); ++h) {
        int e = s.edgeOf(h);
        // flat edges contribute zero (cot phi+ + cot phi- vanishes at pi);
        // strict and, on non-convex charts, concave edges both count
        if (std::fabs(P.phi(e) - kPi) <= P.tolFlat()) continue;
        int v = s.origin(h), u = s.dest(h);
        const auto& tr = P.trapezoid(e);
        auto [ha, hb] = s.edgeHalfedges(e);
        (void)hb;
        double alpha = (h == ha) ? tr.alpha12 : tr.alpha21;
        auto ps = P.phiSides(e);
        double cots = 1.0 / std::tan(ps[0]) + 1.0 / std::tan(ps[1]);
        double a = tr.a12;
        double chv = std::cosh(P.heights()[v]);
        double base = cots / std::sin(alpha) / chv;
        H(v, v) -= base / std::tanh(a);
        if (u == v)
            H(v, v) += base / std::sinh(a);
        else
            H(v, u) += base / std::sinh(a);
    }
    double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
    if (maxAsym) *maxAsym = asym;
    return 0.5 * (H + H.transpose());
}

namespace {

/// Newton direction for kappa = 0 on the free vertex set: solve
/// (-H_ff + shift I) d = kappa_f; isolated vertices get zero.
VectorXd newtonDirection(const MatrixXd& H, const VectorXd& kappa,
                         const std::vector<int>& freeIdx, int n) {
    const int nf = static_cast<int>(freeIdx.size());
    MatrixXd A(nf, nf);
    VectorXd b(nf);
    for (int i = 0; i < nf; ++i) {
        b(i) = kappa(freeIdx[i]);
        for (int j = 0; j < nf; ++j) A(i, j) = -H(freeIdx[i], freeIdx[j]);
    }
    VectorXd df;
    Eigen::LDLT<MatrixXd> ldlt(A);
    bool ok = ldlt.info() == Eigen::Success;
    if (ok) {
        df = ldlt.solve(b);
        ok = (A * df - b).norm() <= 1e-8 * (1.0 + b.norm());
    }
    if (!ok) {
        Eigen::LDLT<MatrixXd> shifted(A + 1e-12 * MatrixXd::Identity(nf, nf));
        if (shifted.info() != Eigen::Success)
            throw ContinuationStalled("Hessian factorization failed beyond shift tolerance");
        df = shifted.solve(b);
    }
    VectorXd d = VectorXd::Zero(n);
    for (int i = 0; i < nf; ++i) d(freeIdx[i]) = df(i);
    return d;
}

std::vector<int> freeVertices(const FuchsianConeManifold& P) {
    std::vector<int> idx;
    for (int v = 0; v < P.metric().surface().nVertices(); ++v)
        if (!P.vertexIsolated(v)) idx.push_back(v);
    return idx;
}

}  // namespace

RealizeResult realize(const ConeMetric& d, RealizeOptions opts) {
    if (!d.isStrictlyConvexAtMarked())
        throw PreconditionViolated("realize: metric must be strictly convex at marked vertices");
    if (d.surface().genus() < 2)
        throw PreconditionViolated("realize: genus must be >= 2");

    const int n = d.surface().nVertices();
    std::vector<double> h0 = opts.h0;
    if (h0.empty()) {
        double minLen = *std::min_element(d.lengths().begin(), d.lengths().end());
        h0.assign(n, 0.1 * minLen);
    }
    CanonicalizeOptions copts;
    copts.maxFlips = opts.maxFlips;
    copts.tolFlat = opts.tolFlat;
    copts.exec = opts.exec;

    FuchsianConeManifold P = canonicalize_convex(d, Heights(h0), copts).manifold;
    double S = discrete_curvature(P, opts.volTol, opts.exec);
    const double volNoise =
        2.0 * d.surface().nFaces() * opts.volTol + 1e-12 * (1.0 + std::fabs(S));

    RealizeResult result{P, 0, {}};
    double lastStep = 0;
    for (int it = 0; it <= opts.maxIter; ++it) {
        VectorXd kap = gradient(P);
        double mk = kap.cwiseAbs().maxCoeff();
        result.trace.push_back({it, mk, S, lastStep});
        if (mk <= opts.tol) {
            result.manifold = P;
            result.iterations = it;
            return result;
        }
        if (it == opts.maxIter) break;

        MatrixXd H = hessian(P);
        auto freeIdx = freeVertices(P);
        VectorXd dir = VectorXd::Zero(n);
        if (!freeIdx.empty()) dir = newtonDirection(H, kap, freeIdx, n);
        // Isolated vertices with positive curvature are invisible to the
        // Hessian; move them along the moving-up field.
        for (int v = 0; v < n; ++v)
            if (P.vertexIsolated(v) && kap(v) > opts.tol)
                dir(v) = std::tanh(P.heights()[v]);
        double slope = kap.dot(dir);
        if (!(slope > 0)) {
            dir = kap;  // gradient fallback; keeps ascent well defined
            slope = kap.dot(dir);
        }

        bool accepted = false;
        double s = 1.0;
        for (int bt = 0; bt < 60; ++bt, s *= 0.5) {
            std::vector<double> ht(n);
            bool positive = true;
            for (int v = 0; v < n; ++v) {
                ht[v] = P.heights()[v] + s * dir(v);
                if (!(ht[v] > 0)) { positive = false; break; }
            }
            if (!positive) continue;
            CanonicalizeResult cr{P, 0, {}};
            try {
                cr = canonicalize_convex(d, Heights(ht), copts);
            } catch (const Error&) {
                continue;  // trial left H(d,V); shrink
            }
            double S2 = discrete_curvature(cr.manifold, opts.volTol, opts.exec);
            double mk2 = gradient(cr.manifold).cwiseAbs().maxCoeff();
            bool armijo = S2 >= S + 1e-4 * s * slope - volNoise;
            bool kdrop = mk2 <= (1.0 - 1e-4 * s) * mk;
            if (armijo || kdrop) {
                P = cr.manifold;
                S = S2;
                lastStep = s;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw LineSearchFailed("realize: no admissible step at iteration " +
                                   std::to_string(it) + ", max|kappa| = " + std::to_string(mk));
    }
    throw MaxIterExceeded("realize: max|kappa| did not reach tol within " +
                          std::to_string(opts.maxIter) + " iterations");
}

namespace {

/// Corrector: with h_W pinned, Newton-solve kappa_v = 0 on the complement.
FuchsianConeManifold correct(const ConeMetric& d, std::vector<double> h,
                             const std::vector<char>& inW, const CanonicalizeOptions& copts,
                             double tol) {
    const int n = static_cast<int>(h.size());
    FuchsianConeManifold P = canonicalize_convex(d, Heights(h), copts).manifold;
    for (int it = 0; it < 50; ++it) {
        VectorXd kap = gradient(P);
        double mk = 0;
        for (int v = 0; v < n; ++v)
            if (!inW[v]) mk = std::max(mk, std::fabs(kap(v)));
        if (mk <= tol) return P;

        MatrixXd H = hessian(P);
        std::vector<int> freeIdx;
        for (int v = 0; v < n; ++v)
            if (!inW[v] && !P.vertexIsolated(v)) freeIdx.push_back(v);
        if (freeIdx.empty())
            throw ContinuationStalled("corrector: no free non-isolated vertices with kappa != 0");
        VectorXd dir = newtonDirection(H, kap, freeIdx, n);

        double s = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 40; ++bt, s *= 0.5) {
            std::vector<double> ht(h);
            bool positive = true;
            for (int v = 0; v < n; ++v) {
                ht[v] = h[v] + s * dir(v);
                if (!(ht[v] > 0)) { positive = false; break; }
            }
            if (!positive) continue;
            try {
                FuchsianConeManifold P2 = canonicalize_convex(d, Heights(ht), copts).manifold;
                VectorXd k2 = gradient(P2);
                double mk2 = 0;
                for (int v = 0; v < n; ++v)
                    if (!inW[v]) mk2 = std::max(mk2, std::fabs(k2(v)));
                if (mk2 < mk || mk2 <= tol) {
                    h = ht;
                    P = P2;
                    moved = true;
                    break;
                }
            } catch (const Error&) {
            }
        }
        if (!moved) throw ContinuationStalled("corrector: residual stopped decreasing");
    }
    throw ContinuationStalled("corrector: Newton budget exhausted");
}

}  // namespace

FlowResult constrained_flow(const FuchsianConeManifold& P0, const std::vector<int>& W,
                            double tau, int nSteps, FlowOptions opts) {
    if (W.empty()) throw PreconditionViolated("constrained_flow: W must be non-empty");
    if (!(tau > 0) || nSteps < 1)
        throw PreconditionViolated("constrained_flow: tau > 0 and nSteps >= 1 required");
    const ConeMetric& d = P0.metric();
    const int n = d.surface().nVertices();
    VectorXd kap0 = gradient(P0);
    if (kap0.cwiseAbs().maxCoeff() > 10.0 * opts.tol)
        throw PreconditionViolated("constrained_flow: P0 is not realized (max|kappa| too large)");
    auto nu = d.vertexCurvatures();
    std::vector<char> inW(n, 0);
    for (int w : W) {
        if (w < 0 || w >= n) throw PreconditionViolated("constrained_flow: W out of range");
        if (!(nu[w] > 0)) throw PreconditionViolated("constrained_flow: nu_w must be > 0 on W");
        inW[w] = 1;
    }

    CanonicalizeOptions copts;
    copts.maxFlips = opts.maxFlips;
    copts.tolFlat = opts.tolFlat;
    copts.exec = opts.exec;

    FlowResult res;
    res.W = W;
    res.tau = tau;
    for (int w : W) res.nu += nu[w];
    res.m = std::numeric_limits<double>::infinity();
    res.M = 0;
    for (int w : W) {
        res.m = std::min(res.m, std::tanh(P0.heights()[w]));
        double hTau = std::asinh(std::exp(tau) * std::sinh(P0.heights()[w]));
        res.M = std::max(res.M, std::cosh(hTau) * std::cosh(hTau));
    }

    auto record = [&](double t, const FuchsianConeManifold& P) {
        FlowState st;
        st.t = t;
        st.heights = P.heights().values;
        for (int w : W) st.kappaW.push_back(P.kappa(w));
        st.S = discrete_curvature(P, opts.volTol, opts.exec);
        res.states.push_back(std::move(st));
    };

    FuchsianConeManifold P = P0;
    record(0.0, P);
    std::vector<double> h = P0.heights().values;
    double tPrev = 0.0;
    const double dt = tau / nSteps;
    for (int k = 1; k <= nSteps; ++k) {
        double tTarget = k * dt;
        // Half-step bisection on corrector failure.
        while (tPrev < tTarget - 1e-15) {
            double tTry = tTarget;
            int halves = 0;
            for (;; ++halves) {
                std::vector<double> ht(h);
                // predictor: Euler step on the free block, exact pin on W
                double step = tTry - tPrev;
                MatrixXd H = hessian(P);
                VectorXd rhs = VectorXd::Zero(n);
                std::vector<int> freeIdx;
                for (int v = 0; v < n; ++v)
                    if (!inW[v] && !P.vertexIsolated(v)) freeIdx.push_back(v);
                for (int v : freeIdx) {
                    double acc = 0;
                    for (int w : W) acc += H(v, w) * std::tanh(h[w]);
                    rhs(v) = -acc * step;
                }
                VectorXd hdot = VectorXd::Zero(n);
                if (!freeIdx.empty()) {
                    const int nf = static_cast<int>(freeIdx.size());
                    MatrixXd A(nf, nf);
                    VectorXd b(nf);
                    for (int i = 0; i < nf; ++i) {
                        b(i) = rhs(freeIdx[i]);
                        for (int j = 0; j < nf; ++j) A(i, j) = H(freeIdx[i], freeIdx[j]);
                    }
                    Eigen::LDLT<MatrixXd> ldlt(A);
                    if (ldlt.info() == Eigen::Success) {
                        VectorXd x = ldlt.solve(b);
                        for (int i = 0; i < nf; ++i) hdot(freeIdx[i]) = x(i);
                    }
                }
                for (int v = 0; v < n; ++v) {
                    if (inW[v])
                        ht[v] = std::asinh(std::exp(tTry) * std::sinh(P0.heights()[v]));
                    else
                        ht[v] = h[v] + hdot(v);
                }
                try {
                    P = correct(d, ht, inW, copts, opts.tol);
                    h = P.heights().values;
                    tPrev = tTry;
                    break;
                } catch (const Error& e) {
                    if (halves >= 8)
                        throw ContinuationStalled(std::string("flow stalled at t = ") +
                                                  std::to_string(tTry) + ": " + e.what());
                    tTry = 0.5 * (tPrev + tTry);
                }
            }
        }
        record(tTarget, P);
    }
    return res;
}

GapResult main_lemma_1_gap(const FuchsianConeManifold& P0, const std::vector<int>& W,
                           double tau, int nSteps, FlowOptions opts) {
    GapResult g;
    g.flow = constrained_flow(P0, W, tau, nSteps, opts);
    g.gap = g.flow.states.front().S - g.flow.states.back().S;
    double M = g.flow.M;
    g.bound = g.flow.nu * g.flow.m * (M * (std::exp(tau / M) - 1.0) - tau);
    g.ok = g.gap >= g.bound;
    return g;
}

}  // namespace fcm
