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
#include "fcm/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

namespace fcm {

using geom::Vec3;

CombSurface::CombSurface(std::vector<HalfEdgeRec> halfedges) : he_(std::move(halfedges)) {
    const int n = static_cast<int>(he_.size());
    if (n == 0 || n % 2 != 0) throw InvalidSurface("half-edge count must be positive and even");
    for (int h = 0; h < n; ++h) {
        const auto& r = he_[h];
        if (r.twin < 0 || r.twin >= n || r.next < 0 || r.next >= n || r.origin < 0)
            throw InvalidSurface("half-edge " + std::to_string(h) + " has out-of-range fields");
        if (r.twin == h) throw InvalidSurface("twin has a fixed point at " + std::to_string(h));
        if (he_[r.twin].twin != h) throw InvalidSurface("twin is not an involution at " + std::to_string(h));
    }
    // next-orbits must all have length 3
    heFace_.assign(n, -1);
    for (int h = 0; h < n; ++h) {
        if (heFace_[h] != -1) continue;
        int a = h, b = he_[a].next, c = he_[b].next;
        if (he_[c].next != a || a == b || b == c || a == c)
            throw InvalidSurface("next-orbit through " + std::to_string(h) + " is not a triangle");
        int f = static_cast<int>(faces_.size());
        faces_.push_back({a, b, c});
        heFace_[a] = heFace_[b] = heFace_[c] = f;
    }
    // twin half-edges must traverse the edge oppositely
    for (int h = 0; h < n; ++h) {
        if (origin(twin(h)) != dest(h))
            throw InvalidSurface("orientation mismatch at half-edge " + std::to_string(h));
    }
    heEdge_.assign(n, -1);
    for (int h = 0; h < n; ++h) {
        if (h < twin(h)) {
            int e = static_cast<int>(edges_.size());
            edges_.push_back({h, twin(h)});
            heEdge_[h] = heEdge_[twin(h)] = e;
        }
    }
    int maxV = -1;
    for (const auto& r : he_) maxV = std::max(maxV, r.origin);
    nVertices_ = maxV + 1;
    std::vector<char> seen(nVertices_, 0);
    for (const auto& r : he_) seen[r.origin] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw InvalidSurface("vertex ids are not contiguous");
    // connectivity over the face adjacency graph
    std::vector<char> vis(faces_.size(), 0);
    std::queue<int> q;
    q.push(0);
    vis[0] = 1;
    int cnt = 1;
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int h : faces_[f]) {
            int g = faceOf(twin(h));
            if (!vis[g]) {
                vis[g] = 1;
                ++cnt;
                q.push(g);
            }
        }
    }
    if (cnt != static_cast<int>(faces_.size())) throw InvalidSurface("surface is not connected");
    // vertex rotations: orbits of next(twin(.)) must biject with vertex ids
    std::vector<int> orbit(n, -1);
    int norb = 0;
    for (int h = 0; h < n; ++h) {
        if (orbit[h] != -1) continue;
        int x = h;
        while (orbit[x] == -1) {
            if (origin(x) != origin(h))
                throw InvalidSurface("rotation orbit mixes vertex ids at " + std::to_string(x));
            orbit[x] = norb;
            x = next(twin(x));
        }
        ++norb;
    }
    if (norb != nVertices_)
        throw InvalidSurface("vertex ids do not biject with rotation orbits");
    int euler = nVertices_ - nEdges() + nFaces();
    if (euler > 2 || (2 - euler) % 2 != 0)
        throw InvalidSurface("Euler characteristic " + std::to_string(euler) + " is not 2-2g");
    genus_ = (2 - euler) / 2;
}

std::vector<int> CombSurface::outgoing(int v) const {
    int start = -1;
    for (int h = 0; h < nHalfEdges(); ++h)
        if (origin(h) == v) {
            start = h;
            break;
        }
    if (start == -1) return {};
    std::vector<int> out;
    int h = start;
    do {
        out.push_back(h);
        h = next(twin(h));
    } while (h != start && static_cast<int>(out.size()) <= nHalfEdges());
    if (h != start) throw InvalidSurface("vertex rotation does not close at " + std::to_string(v));
    return out;
}

ConeMetric::ConeMetric(CombSurface surface, std::vector<double> edgeLengths,
                       std::vector<int> markedVertices)
    : surf_(std::move(surface)), len_(std::move(edgeLengths)), marked_(std::move(markedVertices)) {
    if (static_cast<int>(len_.size()) != surf_.nEdges())
        throw InvalidSurface("length table size does not match edge count");
    for (double l : len_)
        if (!(l > kMinLength)) throw NonPositiveInput("edge length below degeneracy threshold");
    for (int f = 0; f < surf_.nFaces(); ++f) {
        auto hs = surf_.faceHalfedges(f);
        double a = len_[surf_.edgeOf(hs[0])];
        double b = len_[surf_.edgeOf(hs[1])];
        double c = len_[surf_.edgeOf(hs[2])];
        if (a + b <= c || b + c <= a || a + c <= b)
            throw TriangleInequalityViolated("face " + std::to_string(f) +
                                             " violates the strict triangle inequality");
    }
    if (marked_.empty()) {
        marked_.resize(surf_.nVertices());
        std::iota(marked_.begin(), marked_.end(), 0);
    }
    std::sort(marked_.begin(), marked_.end());
    marked_.erase(std::unique(marked_.begin(), marked_.end()), marked_.end());
    for (int v : marked_)
        if (v < 0 || v >= surf_.nVertices()) throw InvalidSurface("marked vertex out of range");
    // marked set must carry all nonzero curvature
    auto nu = vertexCurvatures();
    for (int v = 0; v < surf_.nVertices(); ++v) {
        if (std::fabs(nu[v]) > 1e-9 && !std::binary_search(marked_.begin(), marked_.end(), v))
            throw InvalidSurface("vertex " + std::to_string(v) +
                                 " carries curvature but is not marked");
    }
}

double ConeMetric::cornerAngle(int h) const {
    const auto& s = surf_;
    double out = len_[s.edgeOf(h)];
    double in = len_[s.edgeOf(s.prev(h))];
    double opp = len_[s.edgeOf(s.next(h))];
    return geom::triangleAngle(opp, out, in);
}

std::vector<double> ConeMetric::vertexAngles() const {
    std::vector<double> lam(surf_.nVertices(), 0.0);
    for (int h = 0; h < surf_.nHalfEdges(); ++h) lam[surf_.origin(h)] += cornerAngle(h);
    return lam;
}

std::vector<double> ConeMetric::vertexCurvatures() const {
    auto lam = vertexAngles();
    std::vector<double> nu(lam.size());
    for (size_t i = 0; i < lam.size(); ++i) nu[i] = 2.0 * kPi - lam[i];
    return nu;
}

double ConeMetric::faceArea(int f) const {
    auto hs = surf_.faceHalfedges(f);
    return kPi - cornerAngle(hs[0]) - cornerAngle(hs[1]) - cornerAngle(hs[2]);
}

double ConeMetric::area() const {
    double a = 0;
    for (int f = 0; f < surf_.nFaces(); ++f) a += faceArea(f);
    return a;
}

double ConeMetric::gaussBonnetResidual() const {
    auto nu = vertexCurvatures();
    double s = std::accumulate(nu.begin(), nu.end(), 0.0);
    return s - area() - 2.0 * kPi * (2.0 - 2.0 * surf_.genus());
}

bool ConeMetric::isConvex(double tol) const {
    for (double l : vertexAngles())
        if (l > 2.0 * kPi + tol) return false;
    return true;
}

bool ConeMetric::isStrictlyConvexAtMarked(double tol) const {
    auto lam = vertexAngles();
    for (int v : marked_)
        if (!(lam[v] < 2.0 * kPi - tol)) return false;
    return true;
}

ConeMetric build_canonical(int genus, double cornerAngle) {
    if (genus < 2) throw NonPositiveInput("build_canonical: genus must be >= 2");
    if (!(cornerAngle > 0) || !(cornerAngle < kPi / 3.0))
        throw NonPositiveInput("build_canonical: corner angle must lie in (0, pi/3)");
    double lambda = (12.0 * genus - 6.0) * cornerAngle;
    if (lambda > 2.0 * kPi + 1e-12)
        throw NotConvex("build_canonical: total angle " + std::to_string(lambda) + " exceeds 2 pi");

    const int m = 4 * genus;           // polygon sides
    const int nf = m - 2;              // fan triangles
    // Fan triangle k spans polygon corners (0, k+1, k+2). Half-edges are laid
    // out 3 per face: [3k] = 0 -> k+1 (or diagonal), [3k+1] = k+1 -> k+2
    // (polygon side), [3k+2] = k+2 -> 0.
    std::vector<HalfEdgeRec> he(3 * nf);
    auto sideHe = [&](int s) {  // half-edge running along polygon side s -> s+1
        if (s == 0) return 0;           // side 0..1 is the first edge of face 0
        if (s == m - 1) return 3 * (nf - 1) + 2;  // last side closes the fan; see below
        return 3 * (s - 1) + 1;
    };
    for (int k = 0; k < nf; ++k) {
        he[3 * k].next = 3 * k + 1;
        he[3 * k + 1].next = 3 * k + 2;
        he[3 * k + 2].next = 3 * k;
        // diagonals: (0, k+1) shared between faces k-1 and k
        if (k > 0) {
            he[3 * k].twin = 3 * (k - 1) + 2;
            he[3 * (k - 1) + 2].twin = 3 * k;
        }
    }
    // polygon side pairing s <-> s+2 inside each group of 4 (a b a^-1 b^-1)
    for (int gIdx = 0; gIdx < genus; ++gIdx) {
        for (int off = 0; off < 2; ++off) {
            int s1 = 4 * gIdx + off, s2 = 4 * gIdx + off + 2;
            int h1 = sideHe(s1), h2 = sideHe(s2);
            he[h1].twin = h2;
            he[h2].twin = h1;
        }
    }
    for (auto& r : he) r.origin = 0;  // all polygon corners identify to one vertex
    CombSurface surf(std::move(he));
    if (surf.genus() != genus)
        throw InvalidSurface("canonical construction produced genus " + std::to_string(surf.genus()));
    double l = std::acosh(std::cos(cornerAngle) / (1.0 - std::cos(cornerAngle)));
    std::vector<double> lengths(surf.nEdges(), l);
    return ConeMetric(std::move(surf), std::move(lengths));
}

ConeMetric flip(const ConeMetric& m, int e) {
    const auto& s = m.surface();
    auto [h, t] = s.edgeHalfedges(e);
    if (s.faceOf(h) == s.faceOf(t))
        throw UnflippableLoopConfiguration("edge " + std::to_string(e) +
                                           " is incident to a single triangle");
    int h1 = s.next(h), h2 = s.next(h1);
    int t1 = s.next(t), t2 = s.next(t1);
    // quadrilateral (u, a, w, b): h: a->b, apexes u = origin(h2), w = origin(t2)
    double thetaA = m.cornerAngle(h) + m.cornerAngle(t1);
    double thetaB = m.cornerAngle(t) + m.cornerAngle(h1);
    if (!(thetaA < kPi) || !(thetaB < kPi))
        throw UnflippableConcaveQuad("edge " + std::to_string(e) +
                                     ": quadrilateral concave, diagonal falls outside");
    double lau = m.length(s.edgeOf(h2));  // a -> u
    double law = m.length(s.edgeOf(t1));  // a -> w
    double nl = geom::sideFromAngle(lau, law, thetaA);
    if (!(nl > kMinLength)) throw UnflippableConcaveQuad("flip would create a degenerate edge");

    auto he = s.halfedges();
    int u = s.origin(h2), w = s.origin(t2);
    // new faces: (h2: u->a, t1: a->w, h: w->u) and (t2: w->b, h1: b->u, t: u->w)
    he[h2].next = t1;
    he[t1].next = h;
    he[h].next = h2;
    he[t2].next = h1;
    he[h1].next = t;
    he[t].next = t2;
    he[h].origin = w;
    he[t].origin = u;

    auto lengths = m.lengths();
    lengths[e] = nl;
    return ConeMetric(CombSurface(std::move(he)), std::move(lengths), m.marked());
}

ConeMetric scale(const ConeMetric& m, double t) {
    if (!(t > 0)) throw NonPositiveInput("scale: factor must be positive");
    auto lengths = m.lengths();
    for (double& l : lengths) l *= t;
    // t < 1 may break the triangle inequalities; the constructor rechecks.
    return ConeMetric(m.surface(), std::move(lengths), m.marked());
}

std::vector<std::vector<double>> skeletonDistances(const ConeMetric& m) {
    const auto& s = m.surface();
    const int n = s.nVertices();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (int e = 0; e < s.nEdges(); ++e) {
        auto [h, t] = s.edgeHalfedges(e);
        int a = s.origin(h), b = s.origin(t);
        d[a][b] = std::min(d[a][b], m.length(e));
        d[b][a] = d[a][b];
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

double diameter_upper_bound(const ConeMetric& m) {
    auto d = skeletonDistances(m);
    double g = 0;
    for (const auto& row : d)
        for (double x : row) g = std::max(g, x);
    double maxSide = *std::max_element(m.lengths().begin(), m.lengths().end());
    return g + 2.0 * maxSide;
}

ConeMetric refine(const ConeMetric& m, int f) {
    const auto& s = m.surface();
    auto hs = s.faceHalfedges(f);
    double c = m.length(s.edgeOf(hs[0]));  // P1 -> P2
    double a = m.length(s.edgeOf(hs[1]));  // P2 -> P3
    double b = m.length(s.edgeOf(hs[2]));  // P3 -> P1
    auto tri = geom::embedTriangle(a, b, c);

    // Incenter: equal inner products against the inward side normals.
    Vec3 n12 = geom::normalizeSpace(geom::mcross(tri[0], tri[1]));
    Vec3 n23 = geom::normalizeSpace(geom::mcross(tri[1], tri[2]));
    Vec3 n31 = geom::normalizeSpace(geom::mcross(tri[2], tri[0]));
    double s3 = geom::mdot(tri[2], n12);
    if (s3 < 0) { n12 = n12 * -1.0; n23 = n23 * -1.0; n31 = n31 * -1.0; }
    // Solve <q, n_i> = 1 for the direction q (scale irrelevant before
    // normalization); the rows are the normals themselves.
    Vec3 q = geom::solveProducts(n12, n23, n31, -1.0, -1.0, -1.0);
    Vec3 inc = geom::normalizePoint(q);
    double d1 = geom::dist(inc, tri[0]);
    double d2 = geom::dist(inc, tri[1]);
    double d3 = geom::dist(inc, tri[2]);

    auto he = s.halfedges();
    const int nOld = s.nHalfEdges();
    int vNew = s.nVertices();
    int v1 = s.origin(hs[0]), v2 = s.origin(hs[1]), v3 = s.origin(hs[2]);
    // Six new half-edges: a_i = corner_i -> vNew, b_i = vNew -> corner_i.
    he.resize(nOld + 6);
    int a1 = nOld, b1 = nOld + 1, a2 = nOld + 2, b2 = nOld + 3, a3 = nOld + 4, b3 = nOld + 5;
    he[a1] = {b1, -1, v1};
    he[b1] = {a1, -1, vNew};
    he[a2] = {b2, -1, v2};
    he[b2] = {a2, -1, vNew};
    he[a3] = {b3, -1, v3};
    he[b3] = {a3, -1, vNew};
    // faces: (hs0: v1->v2, a2, b1), (hs1: v2->v3, a3, b2), (hs2: v3->v1, a1, b3)
    he[hs[0]].next = a2; he[a2].next = b1; he[b1].next = hs[0];
    he[hs[1]].next = a3; he[a3].next = b2; he[b2].next = hs[1];
    he[hs[2]].next = a1; he[a1].next = b3; he[b3].next = hs[2];

    CombSurface ns(std::move(he));
    std::vector<double> lengths(ns.nEdges());
    for (int e = 0; e < ns.nEdges(); ++e) {
        auto [x, y] = ns.edgeHalfedges(e);
        (void)y;
        if (x < nOld && ns.edgeHalfedges(e)[1] < nOld) {
            lengths[e] = m.length(m.surface().edgeOf(x));
        } else {
            int hNew = std::max(ns.edgeHalfedges(e)[0], ns.edgeHalfedges(e)[1]);
            if (hNew == b1 || hNew == a1) lengths[e] = d1;
            else if (hNew == b2 || hNew == a2) lengths[e] = d2;
            else lengths[e] = d3;
        }
    }
    auto marked = m.marked();
    marked.push_back(vNew);
    return ConeMetric(std::move(ns), std::move(lengths), std::move(marked));
}

}  // namespace fcm
