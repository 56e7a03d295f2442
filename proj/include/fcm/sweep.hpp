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

#include <array>
#include <optional>
#include <vector>

#include "fcm/hyptrig.hpp"
#include "fcm/surface.hpp"

namespace fcm {

/// Merge budget (Delta, eta, delta_nu, delta_D) controlling the curvature
/// merging schedule: delta_nu < min(2 eta / cosh Delta, Delta / sinh Delta)
/// and delta_D < Delta - delta_nu sinh Delta.
struct MergeBudget {
    double Delta = 0;
    double eta = 0;
    double deltaNu = 0;
    double deltaD = 0;

    MergeBudget(double delta, double dNu, double dD);
    /// Budget with delta_nu and delta_D at the given fraction of their caps.
    static MergeBudget fromDelta(double delta, double fraction = 0.9);
};

/// Triangulated disk with geodesic boundary: three corners, interior cone
/// points, boundary halfedges carry twin = -1. Immutable.
class ConeTriangle {
public:
    ConeTriangle(std::vector<HalfEdgeRec> halfedges, std::vector<double> edgeLengths,
                 std::array<int, 3> corners);
    /// Build from per-half-edge lengths (twins must agree); used by surgery.
    static ConeTriangle fromHalfedgeLengths(std::vector<HalfEdgeRec> halfedges,
                                            const std::vector<double>& perHalfedge,
                                            std::array<int, 3> corners);

    int nHalfEdges() const { return static_cast<int>(he_.size()); }
    int nEdges() const { return static_cast<int>(edges_.size()); }
    int nFaces() const { return static_cast<int>(faces_.size()); }
    int nVertices() const { return nVertices_; }
    const std::array<int, 3>& corners() const { return corners_; }

    int twin(int h) const { return he_[h].twin; }
    int next(int h) const { return he_[h].next; }
    int prev(int h) const { return next(next(h)); }
    int origin(int h) const { return he_[h].origin; }
    int dest(int h) const { return origin(next(h)); }
    int edgeOf(int h) const { return heEdge_[h]; }
    int faceOf(int h) const { return heFace_[h]; }
    const std::array<int, 2>& edgeHalfedges(int e) const { return edges_[e]; }  // [1] = -1 on boundary
    const std::array<int, 3>& faceHalfedges(int f) const { return faces_[f]; }
    const std::vector<HalfEdgeRec>& halfedges() const { return he_; }

    double length(int e) const { return len_[e]; }
    bool boundaryEdge(int e) const { return edges_[e][1] == -1; }
    bool boundaryVertex(int v) const { return boundaryVertex_[v]; }
    bool interiorVertex(int v) const { return !boundaryVertex_[v]; }

    double cornerAngle(int h) const;
    double vertexAngle(int v) const;
    /// 2 pi - angle for interior vertices.
    double interiorNu(int v) const;
    /// Interior vertices with nu above tolNu, ascending ids.
    std::vector<int> conePoints(double tolNu = 1e-9) const;
    double totalInteriorNu() const;

    /// (l1, l2, l3, lam1, lam2, lam3): l_i the boundary side opposite corner
    /// i, lam_i the corner angle.
    std::array<double, 6> sixTuple() const;

    /// 1-skeleton graph diameter plus twice the longest edge.
    double diameterUpperBound() const;

    /// Lowest-id interior edge joining u and v, or -1.
    int findEdge(int u, int v) const;
    std::vector<double> dijkstra(int source, int skipEdge = -1) const;

private:
    void build();
    std::vector<HalfEdgeRec> he_;
    std::vector<double> len_;
    std::array<int, 3> corners_;
    std::vector<int> heEdge_, heFace_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<std::array<int, 3>> faces_;
    std::vector<char> boundaryVertex_;
    int nVertices_ = 0;
};

/// Flip an interior edge of the disk (same legality rules as the closed
/// surface flip; boundary edges are never flippable).
ConeTriangle flipDisk(const ConeTriangle& t, int e);

/// Verify that edge e is a shortest path between its endpoints: Dijkstra over
/// the 1-skeleton avoiding e, sharpened by depth-1 quad unfoldings across
/// every interior edge.
bool isEdgeShortestPath(const ConeTriangle& t, int e, double tol = 1e-9);

/// Strict swept triangle (x_i, beta_i) in SCT: x_i > 0, beta_i in (0, pi),
/// sum beta < 2 pi.
struct SweptTriangle {
    std::array<double, 3> x{};
    std::array<double, 3> beta{};
    double coneCurvature() const { return 2.0 * kPi - beta[0] - beta[1] - beta[2]; }
};

/// Side lengths and angles (l1,l2,l3,lam1,lam2,lam3) of a swept triangle.
std::array<double, 6> theta(const SweptTriangle& st);

enum class SweptKind { strict, hyperbolic };

struct ThetaInverseResult {
    SweptKind kind = SweptKind::strict;
    SweptTriangle swept;               // valid when kind == strict
    std::array<double, 6> sixTuple{};  // echo of the input
};

/// Numerical inverse of theta: develop the cut polygon and locate the cone
/// point on the perpendicular bisector by bisection on the angle-sum
/// residual. A 6-tuple matching a plain hyperbolic triangle is returned as
/// the tagged hyperbolic variant. Throws NotInImage when no bracket exists
/// or the round-trip misses the input by more than tol.
ThetaInverseResult theta_inverse(const std::array<double, 6>& sixTuple, double tol);

struct MergeStep {
    int u = -1, v = -1, w = -1;
    double chordLength = 0;
    double nuU = 0, nuV = 0, nuW = 0;
    double diamUpperBefore = 0, diamUpperAfter = 0;
    double nuBudget = 0;  // accumulated original curvature times cosh Delta
};

/// Glue a bigon along the interior edge joining cone points u (kept linear in
/// the curvature bound) and v; returns the disk with u, v flattened and one
/// new cone point. Boundary side lengths and corner angles are preserved.
ConeTriangle merge_pair(const ConeTriangle& t, int u, int v, const MergeBudget& budget,
                        MergeStep* step = nullptr);

struct SweepOutcome {
    SweptKind kind = SweptKind::strict;
    SweptTriangle swept;               // valid when kind == strict
    std::array<double, 6> sixTuple{};  // boundary data of the result
    std::vector<MergeStep> log;
    ConeTriangle disk;                 // final merged disk
};

/// Iterate merge_pair until at most one interior cone point remains,
/// following the accumulator schedule (fresh point merged into the last
/// apex). Missing chords are realized as edges by flip-based path
/// straightening before merging; per-step existence conditions are
/// re-asserted and BudgetExceeded is thrown on violation.
SweepOutcome sweep_in(const ConeTriangle& t, const MergeBudget& budget);

/// Tetrahedral test: the beta_i satisfy the non-strict triangle inequalities.
bool is_tetrahedral(const SweptTriangle& st, double tol = 1e-12);

/// Path of swept triangles from st to the flat (hyperbolic) triangle:
/// embed O A1 A2 A3 as a tetrahedron, project O to the base plane (nearest
/// interior point with a 1e-6 nudge when the projection leaves the
/// triangle), and sample the segment O O'. Side lengths are conserved and
/// every lam_i strictly decreases. Throws NotTetrahedral / NotShort.
std::vector<SweptTriangle> dissolve_path(const SweptTriangle& st, int nSteps);

struct BigonFamily {
    std::vector<ConeMetric> metrics;
    std::vector<double> ts;
    double tau = 0;
    int w = -1;  // id of the inserted apex vertex
};

/// Continuous bigon family d_t, t in [0, tau], on a closed surface: d_0 is
/// the input with the chord subdivided at the balanced split point (w flat),
/// d_tau the merged metric (u, v flat, w the new cone point). Requires the
/// chord u-v to be a verified-shortest edge and the Lemma-exist conditions
/// d(u,v) < Delta, nu_u + nu_v < 2 eta.
BigonFamily bigon_family(const ConeMetric& m, int u, int v, const MergeBudget& budget,
                         int nSteps);

/// Extract a coarse face (a disk union of fine faces with exactly three
/// boundary corners) as a ConeTriangle; vertexMap receives disk id -> surface
/// id when non-null.
ConeTriangle extract_disk(const ConeMetric& m, const std::vector<int>& fineFaces,
                          std::vector<int>* vertexMap = nullptr);

/// Surface-level driver: sweep each coarse face independently.
std::vector<SweepOutcome> sweep_in_per_face(const ConeMetric& m,
                                            const std::vector<std::vector<int>>& coarseFaces,
                                            const MergeBudget& budget);

}  // namespace fcm
