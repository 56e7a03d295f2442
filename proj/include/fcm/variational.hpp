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
#pragma once

#include <Eigen/Dense>

#include "fcm/conemanifold.hpp"

namespace fcm {

/// Gradient of S in the heights: dS/dh_v = kappa_v, canonical vertex order.
Eigen::VectorXd gradient(const FuchsianConeManifold& P);

/// Hessian of S in the heights (d kappa_u / d h_v). Strict edges only; flat
/// edges contribute zero. Symmetrized; the raw asymmetry (a consistency
/// measure of the trapezoid identities) is returned through maxAsym when
/// non-null.
Eigen::MatrixXd hessian(const FuchsianConeManifold& P, double* maxAsym = nullptr);

struct IterRow {
    int iter = 0;
    double maxKappa = 0;
    double S = 0;
    double step = 0;
};

struct RealizeOptions {
    double tol = 1e-10;
    int maxIter = 200;
    double volTol = 1e-9;
    std::vector<double> h0;  // empty: uniform 0.1 * min edge length
    int maxFlips = 2000;
    double tolFlat = kTolFlat;
    Exec exec = Exec::parallel;
};

struct RealizeResult {
    FuchsianConeManifold manifold;
    int iterations = 0;
    std::vector<IterRow> trace;
};

/// Newton ascent of S over the heights with backtracking line search; every
/// trial point is re-charted through canonicalize_convex. Terminates with
/// max |kappa_v| <= tol (the constructive realization of the convex
/// polyhedral Fuchsian manifold for a strictly convex metric).
RealizeResult realize(const ConeMetric& d, RealizeOptions opts = {});

struct FlowState {
    double t = 0;
    std::vector<double> heights;
    std::vector<double> kappaW;  // aligned with FlowResult::W
    double S = 0;
};

struct FlowResult {
    std::vector<FlowState> states;
    std::vector<int> W;
    double nu = 0;   // sum of nu_w over W
    double m = 0;    // min tanh h0_w
    double M = 0;    // max cosh^2(arcsinh(e^tau sinh h0_w))
    double tau = 0;
};

struct FlowOptions {
    double tol = 1e-10;
    double volTol = 1e-9;
    int maxFlips = 2000;
    double tolFlat = kTolFlat;
    Exec exec = Exec::parallel;
};

/// Constrained height flow: sinh h_w(t) = e^t sinh h_w(0) for w in W, with
/// kappa_v = 0 re-solved on the complement at each grid point
/// (predictor-corrector with half-step bisection on corrector failure).
FlowResult constrained_flow(const FuchsianConeManifold& P0, const std::vector<int>& W,
                            double tau, int nSteps, FlowOptions opts = {});

struct GapResult {
    double gap = 0;    // S(0) - S(tau)
    double bound = 0;  // nu m (M (e^{tau/M} - 1) - tau)
    bool ok = false;   // gap >= bound
    FlowResult flow;
};

/// Evaluate both sides of the Main-Lemma-I inequality from a flow run. The
/// bound is the integral form nu m int_0^tau (e^{t/M}-1) dt.
GapResult main_lemma_1_gap(const FuchsianConeManifold& P0, const std::vector<int>& W,
                           double tau, int nSteps = 32, FlowOptions opts = {});

}  // namespace fcm
