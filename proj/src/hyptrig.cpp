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
#include "fcm/hyptrig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fcm {

using geom::Vec3;

namespace geom {

Vec3 solveProducts(const Vec3& p1, const Vec3& p2, const Vec3& p3,
                   double rhs1, double rhs2, double rhs3) {
    // Rows of the system are (-t_i, x_i, y_i); solve by Cramer's rule.
    double a11 = -p1.t, a12 = p1.x, a13 = p1.y;
    double a21 = -p2.t, a22 = p2.x, a23 = p2.y;
    double a31 = -p3.t, a32 = p3.x, a33 = p3.y;
    double det = a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
                 a13 * (a21 * a32 - a22 * a31);
    if (std::fabs(det) < 1e-300)
        throw Error("solveProducts: base points are collinear");
    double b1 = -rhs1, b2 = -rhs2, b3 = -rhs3;
    double dt = b1 * (a22 * a33 - a23 * a32) - a12 * (b2 * a33 - a23 * b3) +
                a13 * (b2 * a32 - a22 * b3);
    double dx = a11 * (b2 * a33 - a23 * b3) - b1 * (a21 * a33 - a23 * a31) +
                a13 * (a21 * b3 - b2 * a31);
    double dy = a11 * (a22 * b3 - b2 * a32) - a12 * (a21 * b3 - b2 * a31) +
                b1 * (a21 * a32 - a22 * a31);
    return {dt / det, dx / det, dy / det};
}

Vec4 mnormal(const Vec4& a, const Vec4& b, const Vec4& c) {
    // n^mu = eta^{mu nu} eps_{nu abc} a^a b^b c^c; components via 3x3 minors.
    auto det3 = [](double m00, double m01, double m02, double m10, double m11,
                   double m12, double m20, double m21, double m22) {
        return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
               m02 * (m10 * m21 - m11 * m20);
    };
    double dt = det3(a.x, a.y, a.z, b.x, b.y, b.z, c.x, c.y, c.z);
    double dx = det3(a.t, a.y, a.z, b.t, b.y, b.z, c.t, c.y, c.z);
    double dy = det3(a.t, a.x, a.z, b.t, b.x, b.z, c.t, c.x, c.z);
    double dz = det3(a.t, a.x, a.y, b.t, b.x, b.y, c.t, c.x, c.y);
    // Cofactor covector raised with the Minkowski metric; overall sign is
    // left to the caller.
    return {dt, dx, -dy, dz};
}

}  // namespace geom

namespace {

void requirePositiveLength(double v, const char* name) {
    if (!(v > kMinLength))
        throw NonPositiveInput(std::string(name) + " must exceed " +
                               std::to_string(kMinLength));
}

}  // namespace

TrapezoidSolved solve_trapezoid(double l12, double h1, double h2) {
    requirePositiveLength(l12, "l12");
    requirePositiveLength(h1, "h1");
    requirePositiveLength(h2, "h2");

    TrapezoidSolved t;
    t.l12 = l12;
    t.h1 = h1;
    t.h2 = h2;

    const double sh1 = std::sinh(h1), ch1 = std::cosh(h1);
    const double sh2 = std::sinh(h2), ch2 = std::cosh(h2);
    const double cl = std::cosh(l12), sl = std::sinh(l12);

    const double cosh_a = (sh1 * sh2 + cl) / (ch1 * ch2);
    if (cosh_a <= 1.0)
        throw NonexistentTrapezoid("no trapezoid: l12 <= |h1 - h2|");
    t.a12 = std::acosh(cosh_a);
    const double sa = std::sinh(t.a12);

    // Upper angles via two-argument forms; both components are scaled to the
    // common positive denominator sinh l12 cosh h_self.
    t.alpha12 = std::atan2(sa * ch2 * ch1, cl * sh1 - sh2);
    t.alpha21 = std::atan2(sa * ch1 * ch2, cl * sh2 - sh1);

    // Ultraparallelism: Gram product of the two boundary-line normals in the
    // hyperboloid model. Lower line = {y = 0}, normal (0,0,1).
    const Vec3 a1{ch1, 0, sh1};
    const Vec3 a2{cosh_a * ch2, sa * ch2, sh2};
    const Vec3 n1raw = geom::mcross(a1, a2);
    const double n1n1 = geom::mdot(n1raw, n1raw);
    const double g = n1raw.y;  // <n1raw, (0,0,1)>
    // Lines are ultraparallel iff g^2 > <n1,n1> with margin kUltraTol.
    if (g * g > n1n1 * (1.0 + kUltraTol)) {
        t.ultraparallel = true;
        const double coshp = std::fabs(g) / std::sqrt(n1n1);
        t.hperp = std::acosh(coshp);
        const double sp = std::sqrt(coshp * coshp - 1.0);  // sinh hperp
        // sinh h2 = sinh h1 cosh l12 + (sinh hperp sinh foot1) sinh l12
        t.foot1 = std::asinh((sh2 - sh1 * cl) / (sl * sp));
        t.foot2 = t.foot1 + l12;
    } else {
        t.ultraparallel = false;
        t.hperp = 0;
        t.foot1 = t.foot2 = std::numeric_limits<double>::quiet_NaN();
    }
    return t;
}

namespace {

/// Spherical triangle with sides (a, b, c): angle opposite c via atan2 of the
/// polar sine, which is safe near 0 and pi.
double sphericalAngleOpp(double ca, double cb, double cc, double polarSine) {
    return std::atan2(polarSine, cc - ca * cb);
}

}  // namespace

double PrismSolved::slopeAtVertex(int i) const {
    if (!ultraparallel) throw PreconditionViolated("slopeAtVertex: prism not ultraparallel");
    double d = (i == 0) ? footDist1 : (i == 1) ? footDist2 : footDist3;
    return std::atan2(1.0, std::sinh(d) * std::tanh(hperp));
}

PrismSolved solve_prism(double l12, double l13, double l23,
                        double h1, double h2, double h3) {
    requirePositiveLength(l12, "l12");
    requirePositiveLength(l13, "l13");
    requirePositiveLength(l23, "l23");
    requirePositiveLength(h1, "h1");
    requirePositiveLength(h2, "h2");
    requirePositiveLength(h3, "h3");
    if (l12 + l13 <= l23 || l12 + l23 <= l13 || l13 + l23 <= l12)
        throw DegenerateUpperTriangle("upper lengths violate the strict triangle inequality");

    PrismSolved p;
    p.l12 = l12; p.l13 = l13; p.l23 = l23;
    p.h1 = h1; p.h2 = h2; p.h3 = h3;

    p.lam1 = geom::triangleAngle(l23, l12, l13);
    p.lam2 = geom::triangleAngle(l13, l12, l23);
    p.lam3 = geom::triangleAngle(l12, l13, l23);

    p.nonUltraFace = -1;
    TrapezoidSolved t12, t13, t23;
    try {
        t12 = solve_trapezoid(l12, h1, h2);
    } catch (const NonexistentTrapezoid&) {
        throw NonexistentTrapezoid("lateral face 12: no trapezoid (|h1-h2| >= l12)");
    }
    try {
        t13 = solve_trapezoid(l13, h1, h3);
    } catch (const NonexistentTrapezoid&) {
        throw NonexistentTrapezoid("lateral face 13: no trapezoid (|h1-h3| >= l13)");
    }
    try {
        t23 = solve_trapezoid(l23, h2, h3);
    } catch (const NonexistentTrapezoid&) {
        throw NonexistentTrapezoid("lateral face 23: no trapezoid (|h2-h3| >= l23)");
    }
    p.a12 = t12.a12; p.a13 = t13.a12; p.a23 = t23.a12;
    p.alpha12 = t12.alpha12; p.alpha21 = t12.alpha21;
    p.alpha13 = t13.alpha12; p.alpha31 = t13.alpha21;
    p.alpha23 = t23.alpha12; p.alpha32 = t23.alpha21;
    if (!t12.ultraparallel) p.nonUltraFace = 0;
    else if (!t13.ultraparallel) p.nonUltraFace = 1;
    else if (!t23.ultraparallel) p.nonUltraFace = 2;

    // Existence of the lower plane: solve <P_i, w> = -sinh h_i in the upper
    // chart. sinh of the distance function on the upper plane is -<p, w>;
    // w timelike means ultraparallel planes, spacelike |w| = sin(phi) < 1
    // crossing planes, and |w| >= 1 leaves no plane at all (the prescribed
    // triple is not representable even though each lateral face is).
    auto tri = geom::embedTriangle(l23, l13, l12);
    Vec3 w = geom::solveProducts(tri[0], tri[1], tri[2],
                                 std::sinh(h1), std::sinh(h2), std::sinh(h3));
    double ww = geom::mdot(w, w);
    double wscale = w.t * w.t + w.x * w.x + w.y * w.y;
    if (ww >= 1.0 - 1e-12)
        throw NonexistentTrapezoid(
            "no lower plane interpolates the heights (prism does not exist)");
    if (-ww > kUltraTol * kUltraTol * wscale && w.t > 0) {
        double b = std::sqrt(-ww);  // sinh hperp
        p.hperp = std::asinh(b);
        p.foot = w * (1.0 / b);
        p.footDist1 = geom::dist(p.foot, tri[0]);
        p.footDist2 = geom::dist(p.foot, tri[1]);
        p.footDist3 = geom::dist(p.foot, tri[2]);
        p.ultraparallel = (p.nonUltraFace == -1);
    } else {
        p.ultraparallel = false;
        p.hperp = 0;
        if (p.nonUltraFace == -1) p.nonUltraFace = 3;  // plane-level failure
    }

    // Spherical link at each upper vertex: sides are the two lateral
    // trapezoid angles and the upper face angle.
    auto polarSine = [](double ca, double cb, double cc) {
        double j2 = 1.0 - ca * ca - cb * cb - cc * cc + 2.0 * ca * cb * cc;
        return std::sqrt(std::max(0.0, j2));
    };
    {
        double ca = std::cos(p.alpha12), cb = std::cos(p.alpha13), cl = std::cos(p.lam1);
        double j = polarSine(ca, cb, cl);
        p.om1 = sphericalAngleOpp(ca, cb, cl, j);
        p.phi12 = sphericalAngleOpp(cl, ca, cb, j);   // opposite side alpha13
        p.phi13 = sphericalAngleOpp(cl, cb, ca, j);   // opposite side alpha12
    }
    {
        double ca = std::cos(p.alpha21), cb = std::cos(p.alpha23), cl = std::cos(p.lam2);
        double j = polarSine(ca, cb, cl);
        p.om2 = sphericalAngleOpp(ca, cb, cl, j);
        double phi12b = sphericalAngleOpp(cl, ca, cb, j);  // opposite alpha23
        double phi23a = sphericalAngleOpp(cl, cb, ca, j);  // opposite alpha21
        p.phi12 = 0.5 * (p.phi12 + phi12b);
        p.phi23 = phi23a;
    }
    {
        double ca = std::cos(p.alpha31), cb = std::cos(p.alpha32), cl = std::cos(p.lam3);
        double j = polarSine(ca, cb, cl);
        p.om3 = sphericalAngleOpp(ca, cb, cl, j);
        double phi13b = sphericalAngleOpp(cl, ca, cb, j);  // opposite alpha32
        double phi23b = sphericalAngleOpp(cl, cb, ca, j);  // opposite alpha31
        p.phi13 = 0.5 * (p.phi13 + phi13b);
        p.phi23 = 0.5 * (p.phi23 + phi23b);
    }
    return p;
}

namespace {

struct RadialProfile {
    double c;      // tanh hperp
    double hperp;

    // G(r) = int_0^r F(rho) sinh(rho) d rho, F = (H + sinh H cosh H)/2 with
    // tanh H = c cosh rho; closed form G(r) = (cosh r * H(r) - hperp)/2.
    double G(double r) const {
        double x = c * std::cosh(r);
        if (x >= 1.0) throw QuadratureDidNotConverge("volume: point beyond the plane shadow");
        return 0.5 * (std::cosh(r) * std::atanh(x) - hperp);
    }
};

struct WedgeIntegrand {
    RadialProfile prof;
    double tanhP;     // tanh of the distance from the foot B to the edge line
    double thetaF;    // direction of the perpendicular foot on the line

    double operator()(double theta) const {
        double cosd = std::cos(theta - thetaF);
        // Rays inside the wedge always meet the segment: cosd > tanhP.
        double r = std::atanh(std::min(1.0 - 1e-16, tanhP / cosd));
        return prof.G(r);
    }
};

/// Adaptive Simpson with deterministic bisection order.
template <class F>
double adaptiveSimpson(const F& f, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth) {
    if (depth > 60) throw QuadratureDidNotConverge("volume quadrature: depth budget exhausted");
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptiveSimpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptiveSimpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

template <class F>
double integrate(const F& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptiveSimpson(f, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace

double prism_volume(const PrismSolved& p, double tol) {
    if (!p.ultraparallel)
        throw PreconditionViolated("prism_volume: prism is not ultraparallel");
    if (!(tol > 0)) throw NonPositiveInput("prism_volume: tol must be positive");

    const double tp = std::tanh(p.hperp);

    // Lower triangle in its own chart; B located by trilateration from the
    // lower-plane distance relations cosh R_i = tanh h_i / tanh hperp.
    auto tri = geom::embedTriangle(p.a23, p.a13, p.a12);
    double cr1 = std::tanh(p.h1) / tp;
    double cr2 = std::tanh(p.h2) / tp;
    double cr3 = std::tanh(p.h3) / tp;
    Vec3 B = geom::trilaterate(tri[0], tri[1], tri[2], cr1, cr2, cr3);

    RadialProfile prof{tp, p.hperp};

    // Tangent frame at B for angular coordinates.
    Vec3 e1 = geom::tangentToward(B, tri[0]);
    Vec3 e2raw = geom::mcross(B, e1);
    Vec3 e2 = geom::normalizeSpace(e2raw);
    auto angleOf = [&](const Vec3& q) {
        Vec3 u = geom::tangentToward(B, q);
        return std::atan2(geom::mdot(u, e2), geom::mdot(u, e1));
    };

    double vol = 0.0;
    const int idx[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    for (auto [i, j] : idx) {
        const Vec3& bi = tri[i];
        const Vec3& bj = tri[j];
        Vec3 n = geom::mcross(bi, bj);
        double nn = geom::mdot(n, n);
        double s = geom::mdot(B, n) / std::sqrt(nn);  // sinh of signed dist to edge line
        if (std::fabs(s) < 1e-14) continue;           // B on the edge line: zero wedge
        double coshp = std::sqrt(1.0 + s * s);
        Vec3 foot = geom::normalizePoint(B - geom::normalizeSpace(n) * s);

        double ti = angleOf(bi), tj = angleOf(bj);
        double delta = std::remainder(tj - ti, 2.0 * kPi);
        if (std::fabs(delta) < 1e-15) continue;
        double tf = std::remainder(angleOf(foot) - ti, 2.0 * kPi);

        WedgeIntegrand wi{prof, std::fabs(s) / coshp, tf};
        double lo = std::min(0.0, delta), hi = std::max(0.0, delta);
        double part = integrate(wi, lo, hi, tol / 3.0);
        vol += (delta >= 0 ? part : -part);
    }
    if (vol < 0) vol = -vol;  // orientation of the chart
    return vol;
}

double eta(double delta) {
    if (!(delta > 0)) throw NonPositiveInput("eta: Delta must be positive");
    return 2.0 * std::asin(1.0 / (std::sqrt(2.0) * std::cosh(0.5 * delta)));
}

TriangleSolved triangle_from_base_angles(double a, double beta, double gamma) {
    if (!(a > 0)) throw NonPositiveInput("triangle_from_base_angles: a must be positive");
    if (!(beta > 0) || !(gamma > 0))
        throw NonPositiveInput("triangle_from_base_angles: angles must be positive");
    double ca = -std::cos(beta) * std::cos(gamma) +
                std::sin(beta) * std::sin(gamma) * std::cosh(a);
    if (ca <= -1.0 || ca >= 1.0)
        throw NoSuchTriangle("dual cosine out of range: cos(alpha) = " + std::to_string(ca));
    TriangleSolved t;
    t.a = a;
    t.beta = beta;
    t.gamma = gamma;
    t.alpha = std::atan2(std::sqrt(1.0 - ca * ca), ca);
    auto side = [](double cx, double cy, double cz, double sy, double sz) {
        // cosh(side opposite x) = (cos x + cos y cos z)/(sin y sin z)
        double ch = (cx + cy * cz) / (sy * sz);
        return std::acosh(ch < 1.0 ? 1.0 : ch);
    };
    t.b = side(std::cos(beta), ca, std::cos(gamma), std::sin(t.alpha), std::sin(gamma));
    t.c = side(std::cos(gamma), ca, std::cos(beta), std::sin(t.alpha), std::sin(beta));
    return t;
}

double curvature_transfer_bound(const TriangleSolved& t) {
    if (!(t.alpha > 0.5 * kPi))
        throw PreconditionViolated("curvature_transfer_bound: alpha must exceed pi/2");
    return (t.beta + t.gamma * std::cosh(t.a)) - (kPi - t.alpha);
}

}  // namespace fcm
