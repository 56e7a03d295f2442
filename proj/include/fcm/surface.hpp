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
#include <vector>

#include "fcm/core.hpp"
#include "fcm/geom.hpp"

namespace fcm {

struct HalfEdgeRec {
    int twin = -1;
    int next = -1;
    int origin = -1;
};

/// Half-edge combinatorial map of a closed oriented triangulated surface.
/// Loops and multi-edges are first-class; a corner is a half-edge, never a
/// vertex pair. Edge and face ids are canonical (lowest member half-edge),
/// which fixes deterministic iteration order everywhere downstream.
class CombSurface {
public:
    explicit CombSurface(std::vector<HalfEdgeRec> halfedges);

    int nHalfEdges() const { return static_cast<int>(he_.size()); }
    int nEdges() const { return static_cast<int>(edges_.size()); }
    int nFaces() const { return static_cast<int>(faces_.size()); }
    int nVertices() const { return nVertices_; }
    int genus() const { return genus_; }

    int twin(int h) const { return he_[h].twin; }
    int next(int h) const { return he_[h].next; }
    int prev(int h) const { return he_[h].next == -1 ? -1 : next(next(h)); }
    int origin(int h) const { return he_[h].origin; }
    int dest(int h) const { return origin(next(h)); }

    int edgeOf(int h) const { return heEdge_[h]; }
    int faceOf(int h) const { return heFace_[h]; }
    /// Canonical pair (h, twin(h)) with h < twin(h).
    const std::array<int, 2>& edgeHalfedges(int e) const { return edges_[e]; }
    /// Face cycle starting at the lowest half-edge id.
    const std::array<int, 3>& faceHalfedges(int f) const { return faces_[f]; }

    /// Outgoing half-edges of v, starting from the lowest id, in rotation
    /// order h -> next(twin(h)).
    std::vector<int> outgoing(int v) const;

    const std::vector<HalfEdgeRec>& halfedges() const { return he_; }

private:
    std::vector<HalfEdgeRec> he_;
    std::vector<int> heEdge_, heFace_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<std::array<int, 3>> faces_;
    int nVertices_ = 0;
    int genus_ = 0;
};

/// A hyperbolic cone-metric: combinatorial surface plus positive edge lengths
/// subject to strict triangle inequalities in every face. Immutable; all
/// mutators return new values.
class ConeMetric {
public:
    ConeMetric(CombSurface surface, std::vector<double> edgeLengths,
               std::vector<int> markedVertices = {});

    const CombSurface& surface() const { return surf_; }
    double length(int e) const { return len_[e]; }
    const std::vector<double>& lengths() const { return len_; }
    const std::vector<int>& marked() const { return marked_; }

    /// Interior angle of the corner at origin(h) inside face(h).
    double cornerAngle(int h) const;
    /// Total angle lambda_v per vertex (corners at loops counted twice).
    std::vector<double> vertexAngles() const;
    /// Curvatures nu_v = 2 pi - lambda_v.
    std::vector<double> vertexCurvatures() const;

    double faceArea(int f) const;
    double area() const;
    /// Gauss-Bonnet residual sum(nu) - area - 2 pi (2 - 2g).
    double gaussBonnetResidual() const;

    bool isConvex(double tol = 1e-12) const;
    bool isStrictlyConvexAtMarked(double tol = 1e-12) const;

private:
    CombSurface surf_;
    std::vector<double> len_;
    std::vector<int> marked_;
};

/// One-vertex equilateral triangulation of the genus-g surface built from the
/// standard 4g-gon identification: 4g-2 faces, 6g-3 edges, corner angle
/// alpha at every corner, side length cosh(l) = cos(alpha)/(1 - cos(alpha)).
/// Throws NotConvex when lambda_v = (12g-6) alpha exceeds 2 pi (equality is
/// accepted as the convex-nonstrict boundary case).
ConeMetric build_canonical(int genus, double cornerAngle);

/// Flip edge e to the other diagonal of its two-face quadrilateral. The new
/// diagonal length comes from developing both faces into the hyperbolic
/// plane; all lambda_v are unchanged. Throws UnflippableLoopConfiguration if
/// both sides of e are the same face and UnflippableConcaveQuad if the
/// quadrilateral is concave at an endpoint of e (new diagonal would fall
/// outside).
ConeMetric flip(const ConeMetric& m, int e);

/// Multiply all edge lengths by t. For t >= 1 convexity is preserved; for
/// t < 1 the triangle inequalities are rechecked.
ConeMetric scale(const ConeMetric& m, double t);

/// Upper bound on the intrinsic diameter: max pairwise vertex distance over
/// the 1-skeleton plus twice the longest edge (triangle diameter = longest
/// side). Guaranteed >= the true intrinsic diameter.
double diameter_upper_bound(const ConeMetric& m);

/// Insert a new marked vertex at the incenter of face f joined to its three
/// corners; the new vertex is flat (lambda = 2 pi). Grows vertex sets for
/// tests and sweeps.
ConeMetric refine(const ConeMetric& m, int f);

/// All-pairs shortest path distances over the 1-skeleton.
std::vector<std::vector<double>> skeletonDistances(const ConeMetric& m);

}  // namespace fcm
