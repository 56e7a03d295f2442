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

#include <vector>

#include "fcm/hyptrig.hpp"
#include "fcm/surface.hpp"

namespace fcm {

/// Vertex heights over the triangulation's vertex set. For every edge the
/// representability bound |h_u - h_v| < l_e must hold; assembly reports the
/// violating face and trapezoid otherwise.
struct Heights {
    std::vector<double> values;

    explicit Heights(std::vector<double> v) : values(std::move(v)) {
        for (double x : values)
            if (!(x > 0)) throw NonPositiveInput("heights must be positive");
    }
    Heights(int n, double uniform) : Heights(std::vector<double>(n, uniform)) {}
    double operator[](int v) const { return values[v]; }
    int size() const { return static_cast<int>(values.size()); }
};

struct AssembleOptions {
    double tolFlat = kTolFlat;
    Exec exec = Exec::parallel;
    bool requireConvex = false;
};

/// A Fuchsian cone-manifold P(d, T, h): one prism per face of the chart
/// triangulation, glued along the lateral faces. Immutable snapshot; all
/// per-edge and per-vertex quantities are precomputed in canonical order.
class FuchsianConeManifold {
public:
    FuchsianConeManifold(ConeMetric metric, Heights heights, AssembleOptions opts);

    const ConeMetric& metric() const { return metric_; }
    const Heights& heights() const { return h_; }
    double tolFlat() const { return tolFlat_; }

    const PrismSolved& prism(int f) const { return prisms_[f]; }
    const TrapezoidSolved& trapezoid(int e) const { return traps_[e]; }

    double phi(int e) const { return phi_[e]; }
    double theta(int e) const { return kPi - phi_[e]; }
    /// One-sided dihedral angles of edge e: [0] in the prism of the face of
    /// the lower half-edge id, [1] in the other.
    const std::array<double, 2>& phiSides(int e) const { return phiSide_[e]; }
    double omega(int v) const { return omega_[v]; }
    double kappa(int v) const { return kappa_[v]; }
    const std::vector<double>& kappas() const { return kappa_; }

    bool edgeStrict(int e) const { return strict_[e]; }
    std::vector<int> strictEdges() const;
    /// True when no strict edge is incident to v.
    bool vertexIsolated(int v) const;
    bool convex() const { return convex_; }
    bool allUltraparallel() const { return nonUltraFaces_.empty(); }
    const std::vector<int>& nonUltraparallelFaces() const { return nonUltraFaces_; }

    /// Canonical chart of face f (slot i at the canonical position of the
    /// i-th face half-edge origin); the prism foot lives in this chart.
    std::array<geom::Vec3, 3> faceChart(int f) const;
    /// Extended height function evaluated at a point of face f given in the
    /// canonical face chart.
    double extendedHeight(int f, const geom::Vec3& p) const;

    /// Sum of the boundary metric's lambda_v (cached for links).
    double vertexAngle(int v) const { return lambda_[v]; }
    double vertexNu(int v) const { return 2.0 * kPi - lambda_[v]; }

private:
    ConeMetric metric_;
    Heights h_;
    double tolFlat_;
    std::vector<PrismSolved> prisms_;
    std::vector<TrapezoidSolved> traps_;
    std::vector<double> phi_;
    std::vector<std::array<double, 2>> phiSide_;
    std::vector<double> omega_, kappa_, lambda_;
    std::vector<char> strict_;
    std::vector<int> nonUltraFaces_;
    bool convex_ = false;
};

/// Assemble P(d, T, h). Per-prism solves run under the execution policy with
/// one slot per face; results are independent of the thread count.
FuchsianConeManifold assemble(const ConeMetric& d, const Heights& h,
                              AssembleOptions opts = {});

/// Discrete curvature S = -2 vol + sum kappa_v h_v + sum theta_e l_e, with
/// total volume error at most nFaces * volTol. Flat edges contribute zero.
double discrete_curvature(const FuchsianConeManifold& P, double volTol,
                          Exec exec = Exec::parallel);

struct FlipRecord {
    int edge = -1;
    /// min over quad sample points of (h-tilde after - before); NaN when a
    /// non-ultraparallel intermediate prism prevented sampling.
    double minHeightDelta = 0;
};

struct CanonicalizeResult {
    FuchsianConeManifold manifold;
    int flips = 0;
    std::vector<FlipRecord> log;
};

struct CanonicalizeOptions {
    int maxFlips = 1000;
    double tolFlat = kTolFlat;
    Exec exec = Exec::parallel;
    bool sampleHeights = false;  // record FlipRecord height deltas
};

/// Flip algorithm: repeatedly flip the lowest-id concave edge until every
/// dihedral angle is <= pi + tolFlat. The result is independent of the
/// starting chart up to flat re-charts. Throws FlipBudgetExceeded or
/// UnflippableEdge (no concave edge admits a legal flip).
CanonicalizeResult canonicalize_convex(const ConeMetric& d, const Heights& h,
                                       CanonicalizeOptions opts = {});

struct LinkEntry {
    int edge = -1;
    double alpha = 0;              // lateral trapezoid angle at the vertex
    double phiPlus = 0, phiMinus = 0;  // one-sided dihedrals in rotation order
    bool strict = false;
};

/// Spherical link of a vertex: cyclic record in the surface's rotation order
/// starting from the lowest outgoing half-edge id.
struct SphericalLink {
    int vertex = -1;
    std::vector<LinkEntry> entries;
    double omega = 0, kappa = 0, nu = 0;
};

SphericalLink spherical_link(const FuchsianConeManifold& P, int v);

/// Left and right side of the spherical-link area inequality
/// sum (cot phi+ + cot phi-)/(2 sin alpha) * cot alpha >= nu - kappa > 0,
/// summed over strict edges. Throws PreconditionViolated unless kappa <= 0,
/// nu > 0 and at least one strict edge is present.
std::pair<double, double> link_area_inequality(const SphericalLink& link);

struct SlopeReport {
    double alphaBound = 0;      // arccot(2 cosh diameter-upper-bound)
    int slopeViolations = 0;     // per-prism vertex slopes below the bound
    int dihedralViolations = 0;  // one-sided dihedrals outside [bound, pi-bound]
    int omegaViolations = 0;     // omega_v above 2 pi / sin(bound)
    int sectionViolations = 0;   // sum (pi - phi_e) >= omega_v at some vertex
    double minSlopeMargin = 0;
    int totalViolations() const {
        return slopeViolations + dihedralViolations + omegaViolations + sectionViolations;
    }
};

/// Evaluate the alpha(d)-based slope, dihedral, vertex-angle and link-section
/// bounds; informational (violations are returned, not thrown).
SlopeReport slope_report(const FuchsianConeManifold& P);

/// Move all heights by sinh h' = e^t sinh h; the face decomposition is
/// unchanged and convexity is preserved for every t.
FuchsianConeManifold height_scaling(const FuchsianConeManifold& P, double t);

}  // namespace fcm
