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
#include <cmath>

#include "fcm/core.hpp"

namespace fcm::geom {

/// Point/vector in the hyperboloid model of H^2, Minkowski signature (-,+,+).
/// Points satisfy <p,p> = -1, t > 0; line normals are unit spacelike.
struct Vec3 {
    double t = 0, x = 0, y = 0;

    Vec3 operator+(const Vec3& o) const { return {t + o.t, x + o.x, y + o.y}; }
    Vec3 operator-(const Vec3& o) const { return {t - o.t, x - o.x, y - o.y}; }
    Vec3 operator*(double s) const { return {t * s, x * s, y * s}; }
};

inline double mdot(const Vec3& a, const Vec3& b) {
    return -a.t * b.t + a.x * b.x + a.y * b.y;
}

/// Minkowski cross product: <mcross(u,v), w> = det(w,u,v) for all w.
inline Vec3 mcross(const Vec3& u, const Vec3& v) {
    return {u.y * v.x - u.x * v.y, u.y * v.t - u.t * v.y, u.t * v.x - u.x * v.t};
}

/// Normalize a timelike vector to a point of the hyperboloid (t > 0).
inline Vec3 normalizePoint(const Vec3& v) {
    double n2 = -mdot(v, v);
    if (n2 <= 0) throw Error("normalizePoint: vector is not timelike");
    double s = 1.0 / std::sqrt(n2);
    if (v.t < 0) s = -s;
    return v * s;
}

/// Normalize a spacelike vector (line normal or tangent direction).
inline Vec3 normalizeSpace(const Vec3& v) {
    double n2 = mdot(v, v);
    if (n2 <= 0) throw Error("normalizeSpace: vector is not spacelike");
    return v * (1.0 / std::sqrt(n2));
}

inline double dist(const Vec3& a, const Vec3& b) {
    double c = -mdot(a, b);
    return std::acosh(c < 1.0 ? 1.0 : c);
}

/// Unit tangent at p pointing toward q (p, q distinct points).
inline Vec3 tangentToward(const Vec3& p, const Vec3& q) {
    Vec3 u = q + p * mdot(q, p);
    return normalizeSpace(u);
}

/// Geodesic from p with unit tangent u, arc length r.
inline Vec3 expMap(const Vec3& p, const Vec3& u, double r) {
    return p * std::cosh(r) + u * std::sinh(r);
}

/// Angle at p between directions toward q and toward r, in [0, pi].
inline double angleAt(const Vec3& p, const Vec3& q, const Vec3& r) {
    Vec3 u = tangentToward(p, q), v = tangentToward(p, r);
    double c = mdot(u, v);
    Vec3 w = mcross(u, v);  // timelike-ish area vector; |<w,w>| = sin^2
    double s = std::sqrt(std::fabs(mdot(w, w)));
    return std::atan2(s, c);
}

/// Interior angle opposite side a in the hyperbolic triangle (a, b, c),
/// via the half-angle form; stable for thin triangles and long edges.
inline double triangleAngle(double a, double b, double c) {
    double s = 0.5 * (a + b + c);
    double sa = s - a, sb = s - b, sc = s - c;
    if (sa <= 0 || sb <= 0 || sc <= 0)
        throw TriangleInequalityViolated("triangleAngle: sides violate the strict triangle inequality");
    double t2 = std::sinh(sb) * std::sinh(sc) / (std::sinh(s) * std::sinh(sa));
    return 2.0 * std::atan(std::sqrt(t2));
}

/// Third side from two sides and the included angle.
inline double sideFromAngle(double b, double c, double alpha) {
    double ch = std::cosh(b) * std::cosh(c) - std::sinh(b) * std::sinh(c) * std::cos(alpha);
    return std::acosh(ch < 1.0 ? 1.0 : ch);
}

/// Canonical chart of a triangle with side lengths c = |P1P2|, b = |P1P3|,
/// a = |P2P3|: P1 = (1,0,0), P2 on the positive x-axis, P3 with y > 0.
inline std::array<Vec3, 3> embedTriangle(double a, double b, double c) {
    double alpha1 = triangleAngle(a, b, c);  // angle at P1
    Vec3 p1{1, 0, 0};
    Vec3 p2{std::cosh(c), std::sinh(c), 0};
    Vec3 p3{std::cosh(b), std::sinh(b) * std::cos(alpha1), std::sinh(b) * std::sin(alpha1)};
    return {p1, p2, p3};
}

/// Solve for the point q with prescribed Minkowski products <P_i, q> = -rhs_i.
/// Returns the unnormalized solution vector; callers renormalize (the products
/// are cosh of distances for points, sinh-heights for foot location).
Vec3 solveProducts(const Vec3& p1, const Vec3& p2, const Vec3& p3,
                   double rhs1, double rhs2, double rhs3);

/// Point at distance coshd_i from each P_i (timelike solution, renormalized).
inline Vec3 trilaterate(const Vec3& p1, const Vec3& p2, const Vec3& p3,
                        double coshd1, double coshd2, double coshd3) {
    return normalizePoint(solveProducts(p1, p2, p3, coshd1, coshd2, coshd3));
}

/// Point/vector in the hyperboloid model of H^3 (used by the tetrahedral
/// dissolve path and the embedding oracles). Signature (-,+,+,+).
struct Vec4 {
    double t = 0, x = 0, y = 0, z = 0;

    Vec4 operator+(const Vec4& o) const { return {t + o.t, x + o.x, y + o.y, z + o.z}; }
    Vec4 operator-(const Vec4& o) const { return {t - o.t, x - o.x, y - o.y, z - o.z}; }
    Vec4 operator*(double s) const { return {t * s, x * s, y * s, z * s}; }
};

inline double mdot(const Vec4& a, const Vec4& b) {
    return -a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec4 normalizePoint(const Vec4& v) {
    double n2 = -mdot(v, v);
    if (n2 <= 0) throw Error("normalizePoint(4d): vector is not timelike");
    double s = 1.0 / std::sqrt(n2);
    if (v.t < 0) s = -s;
    return v * s;
}

inline Vec4 normalizeSpace(const Vec4& v) {
    double n2 = mdot(v, v);
    if (n2 <= 0) throw Error("normalizeSpace(4d): vector is not spacelike");
    return v * (1.0 / std::sqrt(n2));
}

inline double dist(const Vec4& a, const Vec4& b) {
    double c = -mdot(a, b);
    return std::acosh(c < 1.0 ? 1.0 : c);
}

inline Vec4 tangentToward(const Vec4& p, const Vec4& q) {
    Vec4 u = q + p * mdot(q, p);
    return normalizeSpace(u);
}

inline Vec4 expMap(const Vec4& p, const Vec4& u, double r) {
    return p * std::cosh(r) + u * std::sinh(r);
}

inline double angleAt(const Vec4& p, const Vec4& q, const Vec4& r) {
    Vec4 u = tangentToward(p, q), v = tangentToward(p, r);
    double c = mdot(u, v);
    if (c > 1) c = 1;
    if (c < -1) c = -1;
    return std::acos(c);
}

/// Minkowski-orthogonal complement of span(a,b,c) in R^{1,3}.
Vec4 mnormal(const Vec4& a, const Vec4& b, const Vec4& c);

}  // namespace fcm::geom
