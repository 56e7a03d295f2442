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
#include "fcm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace fcm {

using geom::Vec3;
using geom::Vec4;

MergeBudget::MergeBudget(double delta, double dNu, double dD)
    : Delta(delta), eta(fcm::eta(delta)), deltaNu(dNu), deltaD(dD) {
    double nuCap = std::min(2.0 * eta / std::cosh(Delta), Delta / std::sinh(Delta));
    if (!(deltaNu > 0) || !(deltaNu < nuCap))
        throw PreconditionViolated("MergeBudget: delta_nu outside (0, min(2 eta/cosh D, D/sinh D))");
    double dCap = Delta - deltaNu * std::sinh(Delta);
    if (!(deltaD > 0) || !(deltaD < dCap))
        throw PreconditionViolated("MergeBudget: delta_D outside (0, Delta - delta_nu sinh Delta)");
}

MergeBudget MergeBudget::fromDelta(double delta, double fraction) {
    double e = fcm::eta(delta);
    double nuCap = std::min(2.0 * e / std::cosh(delta), delta / std::sinh(delta));
    double dNu = fraction * nuCap;
    double dD = fraction * (delta - dNu * std::sinh(delta));
    return MergeBudget(delta, dNu, dD);
}

ConeTriangle::ConeTriangle(std::vector<HalfEdgeRec> halfedges, std::vector<double> edgeLengths,
                           std::array<int, 3> corners)
    : he_(std::move(halfedges)), len_(std::move(edgeLengths)), corners_(corners) {
    build();
    if (static_cast<int>(len_.size()) != nEdges())
        throw InvalidSurface("cone triangle: length table does not match edge count");
    for (double l : len_)
        if (!(l > kMinLength)) throw NonPositiveInput("cone triangle: degenerate edge length");
    for (int f = 0; f < nFaces(); ++f) {
        double a = len_[edgeOf(faces_[f][0])];
        double b = len_[edgeOf(faces_[f][1])];
        double c = len_[edgeOf(faces_[f][2])];
        if (a + b <= c || b + c <= a || a + c <= b)
            throw TriangleInequalityViolated("cone triangle: face " + std::to_string(f));
    }
    // Geodesic boundary away from corners; convexity with soft tolerance.
    for (int v = 0; v < nVertices_; ++v) {
        double lam = vertexAngle(v);
        bool isCorner = v == corners_[0] || v == corners_[1] || v == corners_[2];
        if (boundaryVertex_[v] && !isCorner && std::fabs(lam - kPi) > 1e-6)
            throw InvalidSurface("cone triangle: boundary vertex " + std::to_string(v) +
                                 " is not geodesic (angle " + std::to_string(lam) + ")");
        if (!boundaryVertex_[v] && lam > 2.0 * kPi + 1e-6)
            throw InvalidSurface("cone triangle: interior vertex " + std::to_string(v) +
                                 " has negative curvature");
    }
}

ConeTriangle ConeTriangle::fromHalfedgeLengths(std::vector<HalfEdgeRec> halfedges,
                                               const std::vector<double>& perHalfedge,
                                               std::array<int, 3> corners) {
    // Derive the per-edge table; twins must agree.
    const int n = static_cast<int>(halfedges.size());
    std::vector<double> lengths;
    for (int h = 0; h < n; ++h) {
        int t = halfedges[h].twin;
        if (t == -1 || h < t) {
            if (t != -1 && std::fabs(perHalfedge[h] - perHalfedge[t]) > 1e-12)
                throw InvalidSurface("fromHalfedgeLengths: twin lengths disagree");
            lengths.push_back(perHalfedge[h]);
        }
    }
    return ConeTriangle(std::move(halfedges), std::move(lengths), corners);
}

void ConeTriangle::build() {
    const int n = nHalfEdges();
    if (n == 0) throw InvalidSurface("cone triangle: empty");
    heFace_.assign(n, -1);
    for (int h = 0; h < n; ++h) {
        const auto& r = he_[h];
        if (r.next < 0 || r.next >= n || r.origin < 0 ||
            (r.twin != -1 && (r.twin < 0 || r.twin >= n)))
            throw InvalidSurface("cone triangle: bad half-edge " + std::to_string(h));
        if (r.twin != -1 && (r.twin == h || he_[r.twin].twin != h))
            throw InvalidSurface("cone triangle: twin not an involution at " + std::to_string(h));
    }
    for (int h = 0; h < n; ++h) {
        if (heFace_[h] != -1) continue;
        int a = h, b = he_[a].next, c = he_[b].next;
        if (he_[c].next != a || a == b || b == c || a == c)
            throw InvalidSurface("cone triangle: non-triangular face at " + std::to_string(h));
        int f = static_cast<int>(faces_.size());
        faces_.push_back({a, b, c});
        heFace_[a] = heFace_[b] = heFace_[c] = f;
    }
    heEdge_.assign(n, -1);
    for (int h = 0; h < n; ++h) {
        if (he_[h].twin == -1) {
            int e = static_cast<int>(edges_.size());
            edges_.push_back({h, -1});
            heEdge_[h] = e;
        } else if (h < he_[h].twin) {
            int e = static_cast<int>(edges_.size());
            edges_.push_back({h, he_[h].twin});
            heEdge_[h] = heEdge_[he_[h].twin] = e;
        }
    }
    int maxV = -1;
    for (const auto& r : he_) maxV = std::max(maxV, r.origin);
    nVertices_ = maxV + 1;
    for (int h = 0; h < n; ++h) {
        if (he_[h].twin != -1 && origin(twin(h)) != dest(h))
            throw InvalidSurface("cone triangle: orientation mismatch at " + std::to_string(h));
    }
    boundaryVertex_.assign(nVertices_, 0);
    std::vector<int> bnd;
    for (int h = 0; h < n; ++h)
        if (he_[h].twin == -1) {
            bnd.push_back(h);
            boundaryVertex_[origin(h)] = 1;
            boundaryVertex_[dest(h)] = 1;
        }
    if (bnd.size() < 3) throw InvalidSurface("cone triangle: boundary too short");
    // chain the boundary into a single cycle
    std::vector<int> succOf(nVertices_, -1);
    for (int h : bnd) {
        if (succOf[origin(h)] != -1)
            throw InvalidSurface("cone triangle: boundary is not a simple cycle");
        succOf[origin(h)] = h;
    }
    int count = 0;
    int h = bnd.front();
    do {
        h = succOf[dest(h)];
        if (h == -1) throw InvalidSurface("cone triangle: broken boundary chain");
        ++count;
    } while (h != bnd.front() && count <= static_cast<int>(bnd.size()));
    if (count != static_cast<int>(bnd.size()))
        throw InvalidSurface("cone triangle: boundary has several components");
    if (nVertices_ - nEdges() + nFaces() != 1)
        throw InvalidSurface("cone triangle: Euler characteristic is not 1 (not a disk)");
    // corners must be distinct boundary vertices; reorder along the boundary
    for (int c : corners_)
        if (c < 0 || c >= nVertices_ || !boundaryVertex_[c])
            throw InvalidSurface("cone triangle: corner is not a boundary vertex");
    if (corners_[0] == corners_[1] || corners_[1] == corners_[2] || corners_[0] == corners_[2])
        throw InvalidSurface("cone triangle: corners must be distinct");
    std::array<int, 3> ordered{corners_[0], -1, -1};
    int idx = 1;
    h = succOf[corners_[0]];
    while (dest(h) != corners_[0]) {
        int v = dest(h);
        if (v == corners_[1] || v == corners_[2]) {
            if (idx > 2) throw InvalidSurface("cone triangle: corner repeated on boundary");
            ordered[idx++] = v;
        }
        h = succOf[v];
    }
    if (idx != 3) throw InvalidSurface("cone triangle: corners not all on the boundary cycle");
    corners_ = ordered;
}

double ConeTriangle::cornerAngle(int h) const {
    double out = len_[edgeOf(h)];
    double in = len_[edgeOf(prev(h))];
    double opp = len_[edgeOf(next(h))];
    return geom::triangleAngle(opp, out, in);
}

double ConeTriangle::vertexAngle(int v) const {
    double s = 0;
    for (int h = 0; h < nHalfEdges(); ++h)
        if (origin(h) == v) s += cornerAngle(h);
    return s;
}

double ConeTriangle::interiorNu(int v) const {
    if (boundaryVertex_[v]) throw PreconditionViolated("interiorNu: boundary vertex");
    return 2.0 * kPi - vertexAngle(v);
}

std::vector<int> ConeTriangle::conePoints(double tolNu) const {
    std::vector<int> out;
    for (int v = 0; v < nVertices_; ++v)
        if (!boundaryVertex_[v] && interiorNu(v) > tolNu) out.push_back(v);
    return out;
}

double ConeTriangle::totalInteriorNu() const {
    double s = 0;
    for (int v = 0; v < nVertices_; ++v)
        if (!boundaryVertex_[v]) s += interiorNu(v);
    return s;
}

std::array<double, 6> ConeTriangle::sixTuple() const {
    // walk the boundary from corner 0; side from corner i to corner i+1 is
    // opposite the remaining corner
    std::vector<int> succOf(nVertices_, -1);
    for (int h = 0; h < nHalfEdges(); ++h)
        if (he_[h].twin == -1) succOf[origin(h)] = h;
    std::array<double, 6> out{};
    double lam[3] = {vertexAngle(corners_[0]), vertexAngle(corners_[1]), vertexAngle(corners_[2])};
    int cur = corners_[0];
    for (int side = 0; side < 3; ++side) {
        int from = corners_[side];
        int to = corners_[(side + 1) % 3];
        double len = 0;
        int h = succOf[cur];
        while (true) {
            len += len_[edgeOf(h)];
            cur = dest(h);
            if (cur == to) break;
            h = succOf[cur];
        }
        (void)from;
        int opposite = (side + 2) % 3;
        out[opposite] = len;
    }
    out[3] = lam[0];
    out[4] = lam[1];
    out[5] = lam[2];
    return out;
}

std::vector<double> ConeTriangle::dijkstra(int source, int skipEdge) const {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(nVertices_, inf);
    dist[source] = 0;
    using QE = std::pair<double, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [dv, v] = pq.top();
        pq.pop();
        if (dv > dist[v]) continue;
        for (int e = 0; e < nEdges(); ++e) {
            if (e == skipEdge) continue;
            int a = origin(edges_[e][0]), b = dest(edges_[e][0]);
            int other = (a == v) ? b : (b == v ? a : -1);
            if (other == -1) continue;
            double nd = dv + len_[e];
            if (nd < dist[other]) {
                dist[other] = nd;
                pq.push({nd, other});
            }
        }
    }
    return dist;
}

double ConeTriangle::diameterUpperBound() const {
    double g = 0;
    for (int v = 0; v < nVertices_; ++v) {
        auto d = dijkstra(v);
        for (double x : d) g = std::max(g, x);
    }
    double maxSide = *std::max_element(len_.begin(), len_.end());
    return g + 2.0 * maxSide;
}

int ConeTriangle::findEdge(int u, int v) const {
    for (int e = 0; e < nEdges(); ++e) {
        if (boundaryEdge(e)) continue;
        int a = origin(edges_[e][0]), b = dest(edges_[e][0]);
        if ((a == u && b == v) || (a == v && b == u)) return e;
    }
    return -1;
}

ConeTriangle flipDisk(const ConeTriangle& m, int e) {
    if (m.boundaryEdge(e)) throw UnflippableEdge("flipDisk: boundary edge");
    auto [h, t] = m.edgeHalfedges(e);
    if (m.faceOf(h) == m.faceOf(t))
        throw UnflippableLoopConfiguration("flipDisk: single incident triangle");
    int h1 = m.next(h), h2 = m.next(h1);
    int t1 = m.next(t), t2 = m.next(t1);
    double thetaA = m.cornerAngle(h) + m.cornerAngle(t1);
    double thetaB = m.cornerAngle(t) + m.cornerAngle(h1);
    if (!(thetaA < kPi) || !(thetaB < kPi))
        throw UnflippableConcaveQuad("flipDisk: concave quadrilateral");
    double lau = m.length(m.edgeOf(h2));
    double law = m.length(m.edgeOf(t1));
    double nl = geom::sideFromAngle(lau, law, thetaA);
    if (!(nl > kMinLength)) throw UnflippableConcaveQuad("flipDisk: degenerate diagonal");

    auto he = m.halfedges();
    std::vector<double> perHE(m.nHalfEdges());
    for (int x = 0; x < m.nHalfEdges(); ++x) perHE[x] = m.length(m.edgeOf(x));
    int u = m.origin(h2), w = m.origin(t2);
    he[h2].next = t1; he[t1].next = h; he[h].next = h2;
    he[t2].next = h1; he[h1].next = t; he[t].next = t2;
    he[h].origin = w;
    he[t].origin = u;
    perHE[h] = perHE[t] = nl;
    return ConeTriangle::fromHalfedgeLengths(std::move(he), perHE, m.corners());
}

namespace {

struct Arc {
    int a, b;
    double len;
    int viaEdge;  // skeleton edge id or -1 for an unfolding shortcut
};

/// Shared shortest-path screen: skeleton arcs plus depth-1 quad unfoldings.
template <class Mesh>
bool shortestPathScreen(const Mesh& m, int e, int u, int v, double le, double tol) {
    std::vector<Arc> arcs;
    for (int f = 0; f < m.nEdges(); ++f) {
        auto hs = m.edgeHalfedges(f);
        arcs.push_back({m.origin(hs[0]), m.dest(hs[0]), m.length(f), f});
    }
    for (int f = 0; f < m.nEdges(); ++f) {
        auto hs = m.edgeHalfedges(f);
        if (hs[1] == -1) continue;
        int h = hs[0], t = hs[1];
        if (m.faceOf(h) == m.faceOf(t)) continue;
        int h1 = m.next(h), h2 = m.next(h1);
        int t1 = m.next(t), t2 = m.next(t1);
        double thA = m.cornerAngle(h) + m.cornerAngle(t1);
        double thB = m.cornerAngle(t) + m.cornerAngle(h1);
        if (!(thA < kPi) || !(thB < kPi)) continue;  // diagonal misses the edge
        double lau = m.length(m.edgeOf(h2));
        double law = m.length(m.edgeOf(t1));
        arcs.push_back({m.origin(h2), m.origin(t2), geom::sideFromAngle(lau, law, thA), -1});
    }
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(m.nVertices(), inf);
    dist[u] = 0;
    using QE = std::pair<double, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
    pq.push({0.0, u});
    while (!pq.empty()) {
        auto [dv, x] = pq.top();
        pq.pop();
        if (dv > dist[x]) continue;
        for (const auto& arc : arcs) {
            if (arc.viaEdge == e) continue;
            int other = (arc.a == x) ? arc.b : (arc.b == x ? arc.a : -1);
            if (other == -1) continue;
            double nd = dv + arc.len;
            if (nd < dist[other]) {
                dist[other] = nd;
                pq.push({nd, other});
            }
        }
    }
    return dist[v] >= le - tol;
}

}  // namespace

bool isEdgeShortestPath(const ConeTriangle& t, int e, double tol) {
    if (t.boundaryEdge(e)) return false;
    auto hs = t.edgeHalfedges(e);
    return shortestPathScreen(t, e, t.origin(hs[0]), t.dest(hs[0]), t.length(e), tol);
}

std::array<double, 6> theta(const SweptTriangle& st) {
    double bsum = 0;
    for (int i = 0; i < 3; ++i) {
        if (!(st.x[i] > 0)) throw PreconditionViolated("theta: x_i must be positive");
        if (!(st.beta[i] > 0) || !(st.beta[i] < kPi))
            throw PreconditionViolated("theta: beta_i must lie in (0, pi)");
        bsum += st.beta[i];
    }
    // the closure of SCT (beta sum = 2 pi, the hyperbolic triangle through O)
    // is admitted so that limits and dissolve endpoints can be evaluated
    if (!(bsum < 2.0 * kPi + 1e-9))
        throw PreconditionViolated("theta: beta sum must not exceed 2 pi");
    std::array<double, 6> out{};
    std::array<double, 3> l;
    for (int i = 0; i < 3; ++i)
        l[i] = geom::sideFromAngle(st.x[(i + 1) % 3], st.x[(i + 2) % 3], st.beta[i]);
    for (int j = 0; j < 3; ++j) {
        int i1 = (j + 2) % 3;  // triangle containing A_j as its first base vertex
        int i2 = (j + 1) % 3;  // triangle containing A_j as its second base vertex
        double a1 = geom::triangleAngle(st.x[(i1 + 2) % 3], st.x[j], l[i1]);
        double a2 = geom::triangleAngle(st.x[(i2 + 1) % 3], st.x[j], l[i2]);
        out[3 + j] = a1 + a2;
        out[j] = l[j];
    }
    return out;
}

namespace {

Vec3 rotateTangent(const Vec3& p, const Vec3& u, double phi) {
    // mcross(p, .) is the +90 degree rotation in the tangent plane at p.
    Vec3 ju = geom::mcross(p, u);
    return u * std::cos(phi) + ju * std::sin(phi);
}

struct CutPolygon {
    Vec3 A1p, A2, A3, A1pp;  // A1 split into two copies by the cut
};

CutPolygon developCutPolygon(const std::array<double, 6>& st) {
    double l1 = st[0], l2 = st[1], l3 = st[2], lam2 = st[4], lam3 = st[5];
    CutPolygon cp;
    cp.A2 = Vec3{1, 0, 0};
    cp.A3 = Vec3{std::cosh(l1), std::sinh(l1), 0};
    Vec3 u23 = geom::tangentToward(cp.A2, cp.A3);
    cp.A1p = geom::expMap(cp.A2, rotateTangent(cp.A2, u23, lam2), l3);
    Vec3 u32 = geom::tangentToward(cp.A3, cp.A2);
    cp.A1pp = geom::expMap(cp.A3, rotateTangent(cp.A3, u32, -lam3), l2);
    return cp;
}

}  // namespace

ThetaInverseResult theta_inverse(const std::array<double, 6>& sixTuple, double tol) {
    const double l1 = sixTuple[0], l2 = sixTuple[1], l3 = sixTuple[2];
    const double lam1 = sixTuple[3];
    for (int i = 0; i < 3; ++i) {
        if (!(sixTuple[i] > 0)) throw NotInImage("theta_inverse: non-positive side");
        if (!(sixTuple[3 + i] > 0) || !(sixTuple[3 + i] < 2.0 * kPi))
            throw NotInImage("theta_inverse: angle out of range");
    }
    // Hyperbolic screen: a plain triangle with these sides and matching angles.
    if (l1 + l2 > l3 && l2 + l3 > l1 && l1 + l3 > l2) {
        double a1 = geom::triangleAngle(l1, l2, l3);
        double a2 = geom::triangleAngle(l2, l3, l1);
        double a3 = geom::triangleAngle(l3, l1, l2);
        double miss = std::max({std::fabs(a1 - sixTuple[3]), std::fabs(a2 - sixTuple[4]),
                                std::fabs(a3 - sixTuple[5])});
        if (miss <= std::max(tol, 1e-11)) {
            ThetaInverseResult r;
            r.kind = SweptKind::hyperbolic;
            r.sixTuple = sixTuple;
            return r;
        }
    }
    CutPolygon cp = developCutPolygon(sixTuple);
    double gap = geom::dist(cp.A1p, cp.A1pp);
    if (gap < 1e-11) {
        ThetaInverseResult r;
        r.kind = SweptKind::hyperbolic;
        r.sixTuple = sixTuple;
        return r;
    }
    Vec3 M = geom::normalizePoint(cp.A1p + cp.A1pp);
    Vec3 uSeg = geom::tangentToward(M, cp.A1pp);
    Vec3 uPerp = geom::mcross(M, uSeg);
    // orient the bisector toward the polygon side containing A2, A3
    Vec3 lineN = geom::mcross(cp.A1p, cp.A1pp);
    double sideRef = geom::mdot(geom::normalizePoint(cp.A2 + cp.A3), lineN);
    if (geom::mdot(geom::expMap(M, uPerp, 0.1), lineN) * sideRef < 0) uPerp = uPerp * -1.0;

    auto angleSum = [&](double s) {
        Vec3 O = geom::expMap(M, uPerp, s);
        return geom::angleAt(cp.A1p, O, cp.A2) + geom::angleAt(cp.A1pp, O, cp.A3);
    };
    // deterministic bracket scan, then bisection on the residual
    double sPrev = 1e-8, rPrev = angleSum(sPrev) - lam1;
    double sLo = -1, sHi = -1;
    for (double s = 1e-6; s <= 40.0; s *= 1.7) {
        double r = angleSum(s) - lam1;
        if (rPrev == 0 || rPrev * r < 0) {
            sLo = sPrev;
            sHi = s;
            break;
        }
        sPrev = s;
        rPrev = r;
    }
    if (sLo < 0) throw NotInImage("theta_inverse: no bisection bracket on the bisector");
    for (int it = 0; it < 200 && sHi - sLo > 1e-16; ++it) {
        double mid = 0.5 * (sLo + sHi);
        double r = angleSum(mid) - lam1;
        if (r == 0) { sLo = sHi = mid; break; }
        if ((angleSum(sLo) - lam1) * r <= 0) sHi = mid;
        else sLo = mid;
    }
    Vec3 O = geom::expMap(M, uPerp, 0.5 * (sLo + sHi));

    ThetaInverseResult r;
    r.kind = SweptKind::strict;
    r.sixTuple = sixTuple;
    double x1a = geom::dist(O, cp.A1p), x1b = geom::dist(O, cp.A1pp);
    r.swept.x = {0.5 * (x1a + x1b), geom::dist(O, cp.A2), geom::dist(O, cp.A3)};
    r.swept.beta = {geom::angleAt(O, cp.A2, cp.A3), geom::angleAt(O, cp.A3, cp.A1pp),
                    geom::angleAt(O, cp.A1p, cp.A2)};
    if (std::fabs(x1a - x1b) > 1e-8)
        throw NotInImage("theta_inverse: cone point left the perpendicular bisector");
    double bsum = r.swept.beta[0] + r.swept.beta[1] + r.swept.beta[2];
    if (!(bsum < 2.0 * kPi - 1e-12)) throw NotInImage("theta_inverse: beta sum reached 2 pi");
    for (int i = 0; i < 3; ++i) {
        if (!(r.swept.x[i] > kMinLength) || !(r.swept.beta[i] > 0) ||
            !(r.swept.beta[i] < kPi - 1e-14))
            throw NotInImage("theta_inverse: solution leaves SCT");
    }
    auto echo = theta(r.swept);
    double miss = 0;
    for (int i = 0; i < 6; ++i) miss = std::max(miss, std::fabs(echo[i] - sixTuple[i]));
    if (miss > tol)
        throw NotInImage("theta_inverse: round-trip misses input by " + std::to_string(miss));
    return r;
}

ConeTriangle merge_pair(const ConeTriangle& t, int u, int v, const MergeBudget& budget,
                        MergeStep* step) {
    if (u == v) throw PathNotEdge("merge_pair: vertices must be distinct");
    if (!t.interiorVertex(u) || !t.interiorVertex(v))
        throw PathNotEdge("merge_pair: both vertices must be interior");
    int e = t.findEdge(u, v);
    if (e == -1) throw PathNotEdge("merge_pair: no interior edge joins the pair");
    if (!isEdgeShortestPath(t, e))
        throw PathNotEdge("merge_pair: joining edge fails the shortest-path check");

    double nuU = t.interiorNu(u), nuV = t.interiorNu(v);
    double D = t.length(e);
    if (!(D < budget.Delta)) throw NoBigon("merge_pair: chord length exceeds Delta");
    if (!(nuU + nuV < 2.0 * budget.eta))
        throw NoBigon("merge_pair: nu_u + nu_v exceeds 2 eta");
    TriangleSolved bigon;
    try {
        bigon = triangle_from_base_angles(D, 0.5 * nuU, 0.5 * nuV);
    } catch (const NoSuchTriangle& ex) {
        throw NoBigon(std::string("merge_pair: ") + ex.what());
    }

    double diamBefore = t.diameterUpperBound();

    auto [h, tt] = t.edgeHalfedges(e);
    if (t.origin(h) != u) std::swap(h, tt);
    auto he = t.halfedges();
    std::vector<double> perHE(t.nHalfEdges());
    for (int x = 0; x < t.nHalfEdges(); ++x) perHE[x] = t.length(t.edgeOf(x));
    const int nOld = t.nHalfEdges();
    const int w = t.nVertices();
    he.resize(nOld + 6);
    perHE.resize(nOld + 6);
    int m2 = nOld, m1 = nOld + 1, a1 = nOld + 2, a2 = nOld + 3, b1 = nOld + 4, b2 = nOld + 5;
    // face A: (m2: v->u, a1: u->w, a2: w->v); face B: (m1: u->v, b1: v->w, b2: w->u)
    he[m2] = {h, a1, v};
    he[a1] = {b2, a2, u};
    he[a2] = {b1, m2, w};
    he[m1] = {tt, b1, u};
    he[b1] = {a2, b2, v};
    he[b2] = {a1, m1, w};
    he[h].twin = m2;
    he[tt].twin = m1;
    perHE[m2] = D;
    perHE[m1] = D;
    perHE[a1] = perHE[b2] = bigon.c;  // |uw| = AB
    perHE[a2] = perHE[b1] = bigon.b;  // |vw| = AC
    ConeTriangle out = ConeTriangle::fromHalfedgeLengths(std::move(he), perHE, t.corners());

    // surgery consistency: u and v must flatten, w carries the merged cone
    if (std::fabs(out.vertexAngle(u) - 2.0 * kPi) > 1e-7 ||
        std::fabs(out.vertexAngle(v) - 2.0 * kPi) > 1e-7)
        throw Error("merge_pair: endpoints did not flatten after the bigon gluing");
    double nuW = out.interiorNu(w);
    if (step) {
        step->u = u;
        step->v = v;
        step->w = w;
        step->chordLength = D;
        step->nuU = nuU;
        step->nuV = nuV;
        step->nuW = nuW;
        step->diamUpperBefore = diamBefore;
        step->diamUpperAfter = out.diameterUpperBound();
    }
    return out;
}

namespace {

/// Flip-based path straightening: make an edge u-x appear by flipping wedge
/// edges at the intermediate vertices of the current shortest edge path.
ConeTriangle ensureChord(ConeTriangle tri, int u, int x) {
    const int budget = 100 + 10 * tri.nEdges();
    for (int attempt = 0; attempt < budget; ++attempt) {
        int e = tri.findEdge(u, x);
        if (e != -1 && isEdgeShortestPath(tri, e)) return tri;

        // shortest vertex path u -> x over the skeleton
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<double> dist(tri.nVertices(), inf);
        std::vector<int> parent(tri.nVertices(), -1);
        dist[u] = 0;
        using QE = std::pair<double, int>;
        std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
        pq.push({0, u});
        while (!pq.empty()) {
            auto [dv, vv] = pq.top();
            pq.pop();
            if (dv > dist[vv]) continue;
            for (int ee = 0; ee < tri.nEdges(); ++ee) {
                auto hs = tri.edgeHalfedges(ee);
                int a = tri.origin(hs[0]), b = tri.dest(hs[0]);
                int other = (a == vv) ? b : (b == vv ? a : -1);
                if (other == -1) continue;
                double nd = dv + tri.length(ee);
                if (nd < dist[other]) {
                    dist[other] = nd;
                    parent[other] = vv;
                    pq.push({nd, other});
                }
            }
        }
        if (parent[x] == -1) throw PathNotEdge("ensureChord: target unreachable");
        std::vector<int> path;
        for (int vv = x; vv != -1; vv = parent[vv]) path.push_back(vv);
        std::reverse(path.begin(), path.end());
        if (path.size() < 3) {
            // direct edge exists but failed the shortest screen
            throw PathNotEdge("ensureChord: direct edge is not a shortest path");
        }
        int a = path[0], b = path[1], c = path[2];
        if (tri.boundaryVertex(b))
            throw PathNotEdge("ensureChord: path leaves the interior");

        // wedge at b between (b->a) and (b->c): gather rotation order
        int ha = -1;
        std::vector<int> ring;  // outgoing half-edges around b in rotation order
        for (int hh = 0; hh < tri.nHalfEdges(); ++hh)
            if (tri.origin(hh) == b) { ha = hh; break; }
        int cur = ha;
        do {
            ring.push_back(cur);
            cur = tri.next(tri.twin(cur));  // b is interior, twins exist
        } while (cur != ha && static_cast<int>(ring.size()) <= tri.nHalfEdges());
        int ia = -1, ic = -1;
        for (size_t i = 0; i < ring.size(); ++i) {
            if (tri.dest(ring[i]) == a && ia == -1) ia = static_cast<int>(i);
            if (tri.dest(ring[i]) == c && ic == -1) ic = static_cast<int>(i);
        }
        if (ia == -1 || ic == -1) throw PathNotEdge("ensureChord: ring misses path edges");

        auto wedgeEdges = [&](int from, int to) {
            std::vector<int> mids;
            for (int i = (from + 1) % static_cast<int>(ring.size()); i != to;
                 i = (i + 1) % static_cast<int>(ring.size()))
                mids.push_back(tri.edgeOf(ring[i]));
            return mids;
        };
        std::vector<int> side1 = wedgeEdges(ia, ic);
        std::vector<int> side2 = wedgeEdges(ic, ia);
        if (side1.size() > side2.size()) std::swap(side1, side2);
        bool flipped = false;
        for (const auto& side : {side1, side2}) {
            for (int ee : side) {
                try {
                    tri = flipDisk(tri, ee);
                    flipped = true;
                    break;
                } catch (const Error&) {
                }
            }
            if (flipped) break;
        }
        if (!flipped) {
            // wedge may already be empty: triangle (a, b, c) exists; flip the
            // middle edge (b's edge toward a or c) to create (a, c)
            int eba = tri.findEdge(b, a), ebc = tri.findEdge(b, c);
            bool done = false;
            for (int ee : {eba, ebc}) {
                if (ee == -1) continue;
                try {
                    tri = flipDisk(tri, ee);
                    done = true;
                    break;
                } catch (const Error&) {
                }
            }
            if (!done) throw PathNotEdge("ensureChord: no flippable wedge edge at junction");
        }
    }
    throw PathNotEdge("ensureChord: flip budget exhausted");
}

}  // namespace

SweepOutcome sweep_in(const ConeTriangle& t, const MergeBudget& budget) {
    if (!(t.diameterUpperBound() < budget.deltaD))
        throw PreconditionViolated("sweep_in: diameter upper bound exceeds delta_D");
    if (!(t.totalInteriorNu() < budget.deltaNu))
        throw PreconditionViolated("sweep_in: total curvature exceeds delta_nu");

    auto input6 = t.sixTuple();
    SweepOutcome out{SweptKind::strict, {}, input6, {}, t};
    auto cones = t.conePoints();
    if (cones.empty()) {
        out.kind = SweptKind::hyperbolic;
        return out;
    }
    ConeTriangle tri = t;
    int acc = -1;
    double nuAccOriginal = 0;  // accumulated original curvature at the apex
    const double coshD = std::cosh(budget.Delta);
    while (cones.size() > 1) {
        int uSel = -1, vSel = -1;
        if (acc == -1) {
            for (size_t i = 0; i + 1 < cones.size() && uSel == -1; ++i)
                for (size_t j = i + 1; j < cones.size(); ++j) {
                    int e = tri.findEdge(cones[i], cones[j]);
                    if (e != -1 && isEdgeShortestPath(tri, e)) {
                        uSel = cones[i];
                        vSel = cones[j];
                        break;
                    }
                }
            if (uSel == -1) {
                tri = ensureChord(tri, cones[0], cones[1]);
                uSel = cones[0];
                vSel = cones[1];
            }
        } else {
            uSel = acc;
            for (int cand : cones) {
                if (cand == acc) continue;
                int e = tri.findEdge(acc, cand);
                if (e != -1 && isEdgeShortestPath(tri, e)) {
                    vSel = cand;
                    break;
                }
            }
            if (vSel == -1) {
                for (int cand : cones) {
                    if (cand == acc) continue;
                    tri = ensureChord(tri, acc, cand);
                    vSel = cand;
                    break;
                }
            }
        }
        MergeStep step;
        ConeTriangle merged = tri;
        try {
            merged = merge_pair(tri, uSel, vSel, budget, &step);
        } catch (const NoBigon& ex) {
            throw BudgetExceeded(std::string("sweep_in: ") + ex.what());
        }
        if (acc == -1) nuAccOriginal = step.nuU + step.nuV;
        else nuAccOriginal += step.nuV;
        step.nuBudget = nuAccOriginal * coshD;
        if (step.nuW > step.nuBudget + 1e-9)
            throw BudgetExceeded("sweep_in: merged curvature exceeded the induction budget");
        out.log.push_back(step);
        tri = std::move(merged);
        acc = step.w;
        cones = tri.conePoints();
    }
    auto final6 = tri.sixTuple();
    for (int i = 0; i < 6; ++i)
        if (std::fabs(final6[i] - input6[i]) > 1e-9)
            throw Error("sweep_in: boundary 6-tuple drifted during merging");
    auto inv = theta_inverse(final6, 1e-9);
    out.disk = tri;
    out.sixTuple = final6;
    if (inv.kind == SweptKind::hyperbolic) {
        out.kind = SweptKind::hyperbolic;
        return out;
    }
    out.kind = SweptKind::strict;
    out.swept = inv.swept;
    double nuW = tri.interiorNu(cones.front());
    if (std::fabs(out.swept.coneCurvature() - nuW) > 1e-7)
        throw Error("sweep_in: theta-inverse curvature disagrees with the merged disk");
    return out;
}

bool is_tetrahedral(const SweptTriangle& st, double tol) {
    const auto& b = st.beta;
    return b[0] <= b[1] + b[2] + tol && b[1] <= b[0] + b[2] + tol && b[2] <= b[0] + b[1] + tol;
}

std::vector<SweptTriangle> dissolve_path(const SweptTriangle& st, int nSteps) {
    if (nSteps < 1) throw NonPositiveInput("dissolve_path: nSteps must be >= 1");
    if (!is_tetrahedral(st)) throw NotTetrahedral("dissolve_path: beta triangle inequality fails");
    auto six = theta(st);
    for (int i = 0; i < 3; ++i)
        if (!(six[3 + i] < kPi)) throw NotShort("dissolve_path: a boundary angle reaches pi");

    // Tangent rays at O with pairwise angles beta_k opposite ray k.
    double cb1 = std::cos(st.beta[0]), cb2 = std::cos(st.beta[1]), cb3 = std::cos(st.beta[2]);
    double sb3 = std::sin(st.beta[2]);
    double c2 = (cb1 - cb2 * cb3) / sb3;
    double z2 = 1.0 - cb2 * cb2 - c2 * c2;
    double z = std::sqrt(std::max(0.0, z2));
    double r[3][3] = {{1, 0, 0}, {cb3, sb3, 0}, {cb2, c2, z}};
    Vec4 O{1, 0, 0, 0};
    Vec4 A[3];
    for (int i = 0; i < 3; ++i)
        A[i] = Vec4{std::cosh(st.x[i]), std::sinh(st.x[i]) * r[i][0],
                    std::sinh(st.x[i]) * r[i][1], std::sinh(st.x[i]) * r[i][2]};

    Vec4 n = geom::normalizeSpace(geom::mnormal(A[0], A[1], A[2]));
    double s = geom::mdot(O, n);
    Vec4 P = geom::normalizePoint(O - n * s);

    // in-plane side tests against the three edge lines
    auto sideNormal = [&](int i, int j) { return geom::mnormal(A[i], A[j], n); };
    static constexpr int kCyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    bool inside = true;
    for (const auto& c : kCyc) {
        Vec4 mij = sideNormal(c[0], c[1]);
        if (geom::mdot(P, mij) * geom::mdot(A[c[2]], mij) < 0) inside = false;
    }
    Vec4 Oend = P;
    if (!inside) {
        // nearest point of the closed triangle to P, then a small interior nudge
        double best = std::numeric_limits<double>::infinity();
        Vec4 bestQ = A[0];
        for (const auto& c : kCyc) {
            int i = c[0], j = c[1];
            Vec4 m = sideNormal(i, j);
            double mm = std::sqrt(geom::mdot(m, m));
            Vec4 mhat = m * (1.0 / mm);
            Vec4 q = geom::normalizePoint(P - mhat * geom::mdot(P, mhat));
            double dij = geom::dist(A[i], A[j]);
            if (geom::dist(A[i], q) + geom::dist(q, A[j]) > dij + 1e-12) {
                q = (geom::dist(P, A[i]) < geom::dist(P, A[j])) ? A[i] : A[j];
            }
            if (geom::dist(P, q) < best) {
                best = geom::dist(P, q);
                bestQ = q;
            }
        }
        Vec4 centroid = geom::normalizePoint(A[0] + A[1] + A[2]);
        Oend = geom::expMap(bestQ, geom::tangentToward(bestQ, centroid), 1e-6);
    }

    double tau = geom::dist(O, Oend);
    std::vector<SweptTriangle> path;
    Vec4 dir = tau > 1e-300 ? geom::tangentToward(O, Oend) : Vec4{0, 0, 0, 1};
    for (int k = 0; k <= nSteps; ++k) {
        double tk = tau * k / nSteps;
        Vec4 Ot = geom::expMap(O, dir, tk);
        SweptTriangle s2;
        for (int i = 0; i < 3; ++i) {
            s2.x[i] = geom::dist(Ot, A[i]);
            s2.beta[i] = geom::angleAt(Ot, A[(i + 1) % 3], A[(i + 2) % 3]);
        }
        path.push_back(s2);
    }
    return path;
}

namespace {

ConeMetric buildMetricFromHalfedgeLengths(std::vector<HalfEdgeRec> he,
                                          const std::vector<double>& perHE,
                                          std::vector<int> marked) {
    CombSurface s(std::move(he));
    std::vector<double> lengths(s.nEdges());
    for (int e = 0; e < s.nEdges(); ++e) {
        auto [a, b] = s.edgeHalfedges(e);
        if (std::fabs(perHE[a] - perHE[b]) > 1e-12)
            throw InvalidSurface("bigon surgery: twin lengths disagree");
        lengths[e] = perHE[a];
    }
    return ConeMetric(std::move(s), std::move(lengths), std::move(marked));
}

bool isSurfaceEdgeShortestPath(const ConeMetric& m, int e, double tol = 1e-9) {
    struct Adapter {
        const ConeMetric& m;
        int nEdges() const { return m.surface().nEdges(); }
        int nVertices() const { return m.surface().nVertices(); }
        std::array<int, 2> edgeHalfedges(int e) const { return m.surface().edgeHalfedges(e); }
        int origin(int h) const { return m.surface().origin(h); }
        int dest(int h) const { return m.surface().dest(h); }
        int next(int h) const { return m.surface().next(h); }
        int faceOf(int h) const { return m.surface().faceOf(h); }
        int edgeOf(int h) const { return m.surface().edgeOf(h); }
        double length(int e) const { return m.length(e); }
        double cornerAngle(int h) const { return m.cornerAngle(h); }
    } ad{m};
    auto hs = m.surface().edgeHalfedges(e);
    return shortestPathScreen(ad, e, m.surface().origin(hs[0]), m.surface().dest(hs[0]),
                              m.length(e), tol);
}

}  // namespace

BigonFamily bigon_family(const ConeMetric& m, int u, int v, const MergeBudget& budget,
                         int nSteps) {
    if (nSteps < 1) throw NonPositiveInput("bigon_family: nSteps must be >= 1");
    const auto& s = m.surface();
    int e = -1;
    for (int ee = 0; ee < s.nEdges(); ++ee) {
        auto hs = s.edgeHalfedges(ee);
        int a = s.origin(hs[0]), b = s.dest(hs[0]);
        if ((a == u && b == v) || (a == v && b == u)) { e = ee; break; }
    }
    if (e == -1) throw PathNotEdge("bigon_family: no edge joins u and v");
    if (!isSurfaceEdgeShortestPath(m, e))
        throw PathNotEdge("bigon_family: joining edge fails the shortest-path check");
    auto nu = m.vertexCurvatures();
    double nuU = nu[u], nuV = nu[v];
    if (!(nuU > 0) || !(nuV > 0)) throw NoBigon("bigon_family: both endpoints need nu > 0");
    double D = m.length(e);
    if (!(D < budget.Delta)) throw NoBigon("bigon_family: chord length exceeds Delta");
    if (!(nuU + nuV < 2.0 * budget.eta)) throw NoBigon("bigon_family: curvature exceeds 2 eta");

    TriangleSolved abc = triangle_from_base_angles(D, 0.5 * nuU, 0.5 * nuV);
    // foot of the altitude from the apex, and the balanced split point
    double BH = std::atanh(std::tanh(abc.c) * std::cos(abc.beta));
    double tau = std::asinh(std::sinh(abc.c) * std::sin(abc.beta));
    double balance = std::sinh(BH) * std::tan(0.5 * nuU) -
                     std::sinh(D - BH) * std::tan(0.5 * nuV);
    if (std::fabs(balance) > 1e-9)
        throw Error("bigon_family: altitude foot violates the split-point balance");

    // chart with B at the origin, C on the axis, apex above
    Vec3 B{1, 0, 0};
    Vec3 C{std::cosh(D), std::sinh(D), 0};
    Vec3 H{std::cosh(BH), std::sinh(BH), 0};
    Vec3 nUp{0, 0, 1};  // unit normal to the axis at H... transported below
    // tangent at H orthogonal to the axis: (sinh BH, cosh BH, 0) is along, so
    Vec3 up = Vec3{0, 0, 1};
    (void)nUp;

    auto [h, th] = s.edgeHalfedges(e);
    if (s.origin(h) != u) std::swap(h, th);
    int h1 = s.next(h), h2 = s.next(h1);
    int t1 = s.next(th), t2 = s.next(t1);
    if (s.faceOf(h) == s.faceOf(th))
        throw PathNotEdge("bigon_family: edge has a single incident face");
    const int w = s.nVertices();

    BigonFamily fam;
    fam.tau = tau;
    fam.w = w;
    auto marked = m.marked();
    marked.push_back(w);

    for (int k = 0; k <= nSteps; ++k) {
        double t = tau * k / nSteps;
        auto he = s.halfedges();
        std::vector<double> perHE(s.nHalfEdges());
        for (int x = 0; x < s.nHalfEdges(); ++x) perHE[x] = m.length(s.edgeOf(x));
        const int nOld = s.nHalfEdges();
        if (k == 0) {
            // subdivide the chord at the split point; w is flat
            int p = s.origin(h2), q = s.origin(t2);
            double lup = m.length(s.edgeOf(h2));   // |u p| (edge p->u)
            double luq = m.length(s.edgeOf(t1));   // |u q| (edge u->q)
            double wp = geom::sideFromAngle(BH, lup, m.cornerAngle(h));
            double wq = geom::sideFromAngle(BH, luq, m.cornerAngle(t1));
            he.resize(nOld + 6);
            perHE.resize(nOld + 6);
            int hp = nOld, k1 = nOld + 1, k2 = nOld + 2, tp = nOld + 3, j1 = nOld + 4,
                j2 = nOld + 5;
            // faces: (h: u->w, k1: w->p, h2), (hp: w->v, h1, k2: p->w),
            //        (th: v->w, j1: w->q, t2), (tp: w->u, t1, j2: q->w)
            he[h].next = k1;
            he[k1] = {k2, h2, w};
            he[hp] = {th, h1, w};
            he[k2] = {k1, hp, p};
            he[h1].next = k2;
            he[th].next = j1;
            he[th].twin = hp;
            he[j1] = {j2, t2, w};
            he[tp] = {h, t1, w};
            he[h].twin = tp;
            he[j2] = {j1, tp, q};
            he[t1].next = j2;
            perHE[h] = perHE[tp] = BH;
            perHE[hp] = perHE[th] = D - BH;
            perHE[k1] = perHE[k2] = wp;
            perHE[j1] = perHE[j2] = wq;
            fam.metrics.push_back(buildMetricFromHalfedgeLengths(std::move(he), perHE, marked));
        } else {
            Vec3 At = geom::expMap(H, up, t);
            double lu = geom::dist(B, At);  // |u w|
            double lv = geom::dist(C, At);  // |v w|
            he.resize(nOld + 6);
            perHE.resize(nOld + 6);
            int m2 = nOld, m1 = nOld + 1, a1 = nOld + 2, a2 = nOld + 3, b1 = nOld + 4,
                b2 = nOld + 5;
            he[m2] = {h, a1, v};
            he[a1] = {b2, a2, u};
            he[a2] = {b1, m2, w};
            he[m1] = {th, b1, u};
            he[b1] = {a2, b2, v};
            he[b2] = {a1, m1, w};
            he[h].twin = m2;
            he[th].twin = m1;
            perHE[m2] = D;
            perHE[m1] = D;
            perHE[a1] = perHE[b2] = lu;
            perHE[a2] = perHE[b1] = lv;
            fam.metrics.push_back(buildMetricFromHalfedgeLengths(std::move(he), perHE, marked));
        }
        fam.ts.push_back(t);
    }
    return fam;
}

ConeTriangle extract_disk(const ConeMetric& m, const std::vector<int>& fineFaces,
                          std::vector<int>* vertexMap) {
    const auto& s = m.surface();
    std::vector<char> inGroup(s.nFaces(), 0);
    for (int f : fineFaces) inGroup[f] = 1;
    std::vector<int> heMap(s.nHalfEdges(), -1);
    std::vector<int> heList;
    for (int f : fineFaces)
        for (int h : s.faceHalfedges(f)) {
            heMap[h] = static_cast<int>(heList.size());
            heList.push_back(h);
        }
    // Disk vertices are corner-wedge orbits inside the group, not surface
    // vertex ids: a surface vertex may appear several times on the disk
    // boundary (e.g. every coarse corner of a one-vertex surface).
    std::vector<int> cornerVert(heList.size(), -1);
    std::vector<int> vBack;
    for (size_t i = 0; i < heList.size(); ++i) {
        if (cornerVert[i] != -1) continue;
        int id = static_cast<int>(vBack.size());
        vBack.push_back(s.origin(heList[i]));
        // sweep the wedge in both rotation directions while staying in-group
        int h = heList[i];
        while (cornerVert[heMap[h]] == -1) {
            cornerVert[heMap[h]] = id;
            // rotate across edge(h); identified only when that edge is
            // interior to the disk
            int nxt = s.next(s.twin(h));
            if (heMap[s.twin(h)] == -1 || heMap[nxt] == -1) break;
            h = nxt;
        }
        h = heList[i];
        for (;;) {
            int tw = s.twin(s.prev(h));  // clockwise neighbour corner
            if (heMap[tw] == -1 || cornerVert[heMap[tw]] != -1) break;
            cornerVert[heMap[tw]] = id;
            h = tw;
        }
    }
    std::vector<HalfEdgeRec> he(heList.size());
    std::vector<double> perHE(heList.size());
    for (size_t i = 0; i < heList.size(); ++i) {
        int h = heList[i];
        int tw = s.twin(h);
        he[i].origin = cornerVert[i];
        he[i].next = heMap[s.next(h)];
        he[i].twin = inGroup[s.faceOf(tw)] ? heMap[tw] : -1;
        perHE[i] = m.length(s.edgeOf(h));
    }
    // corners: boundary vertices whose in-disk angle differs from pi
    std::vector<double> angle(vBack.size(), 0);
    std::vector<char> onBnd(vBack.size(), 0);
    for (size_t i = 0; i < heList.size(); ++i) {
        angle[he[i].origin] += m.cornerAngle(heList[i]);
        if (he[i].twin == -1) {
            onBnd[he[i].origin] = 1;
            onBnd[he[heMap[s.next(heList[i])]].origin] = 1;
        }
    }
    std::vector<int> corners;
    for (size_t v = 0; v < vBack.size(); ++v)
        if (onBnd[v] && std::fabs(angle[v] - kPi) > 1e-9) corners.push_back(static_cast<int>(v));
    if (corners.size() != 3)
        throw InvalidSurface("extract_disk: coarse face must have exactly 3 corners, found " +
                             std::to_string(corners.size()));
    if (vertexMap) *vertexMap = vBack;
    return ConeTriangle::fromHalfedgeLengths(std::move(he), perHE,
                                             {corners[0], corners[1], corners[2]});
}

std::vector<SweepOutcome> sweep_in_per_face(const ConeMetric& m,
                                            const std::vector<std::vector<int>>& coarseFaces,
                                            const MergeBudget& budget) {
    std::vector<SweepOutcome> out;
    out.reserve(coarseFaces.size());
    for (const auto& group : coarseFaces) out.push_back(sweep_in(extract_disk(m, group), budget));
    return out;
}

}  // namespace fcm
