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

#include "fcm/core.hpp"
#include "fcm/geom.hpp"

namespace fcm {

/// A solved hyperbolic trapezoid: the convex hull of a segment A1A2 (upper
/// edge, length l12) and its orthogonal projection B1B2 onto a line it does
/// not meet. h1, h2 are the lateral edge lengths, a12 the lower edge,
/// alpha12/alpha21 the upper angles at A1/A2. When the two boundary lines are
/// ultraparallel, hperp is their distance and foot1/foot2 are the signed
/// positions of A1/A2 along the upper line measured from the closest point A,
/// so that sinh h_i = sinh hperp * cosh foot_i.
struct TrapezoidSolved {
    double l12 = 0, h1 = 0, h2 = 0;
    double a12 = 0;
    double alpha12 = 0, alpha21 = 0;
    bool ultraparallel = false;
    double hperp = 0;      // > 0 iff ultraparallel
    double foot1 = 0, foot2 = 0;
};

/// A solved ultraparallel-or-not prism over upper triangle A1A2A3 with
/// lateral edges h_i. Lateral dihedral angles om_i sit on the edges A_iB_i,
/// upper-edge dihedral angles phi_ij on A_iA_j; the lower dihedral angles are
/// pi/2 by construction and not stored. foot is the common-perpendicular foot
/// in the canonical chart of the upper triangle (P1 at the origin, P2 on the
/// x-axis, P3 with y > 0); footDist_i are its distances to the upper vertices.
struct PrismSolved {
    double l12 = 0, l13 = 0, l23 = 0;
    double h1 = 0, h2 = 0, h3 = 0;
    double a12 = 0, a13 = 0, a23 = 0;
    double lam1 = 0, lam2 = 0, lam3 = 0;
    double alpha12 = 0, alpha13 = 0, alpha21 = 0, alpha23 = 0, alpha31 = 0, alpha32 = 0;
    double om1 = 0, om2 = 0, om3 = 0;
    double phi12 = 0, phi13 = 0, phi23 = 0;
    bool ultraparallel = false;
    int nonUltraFace = -1;  // 0:(12) 1:(13) 2:(23), -1 when all lateral faces pass
    double hperp = 0;
    geom::Vec3 foot;
    double footDist1 = 0, footDist2 = 0, footDist3 = 0;

    /// Slope of the lateral direction at upper vertex i against the upper
    /// plane: cot(sl) = sinh(dist to foot) * tanh(hperp). Requires
    /// ultraparallel.
    double slopeAtVertex(int i) const;
};

/// Hyperbolic triangle with sides a,b,c opposite angles alpha,beta,gamma.
struct TriangleSolved {
    double a = 0, b = 0, c = 0;
    double alpha = 0, beta = 0, gamma = 0;
};

/// Solve a trapezoid from the upper edge and the two lateral edges.
/// Throws NonPositiveInput for inputs below the degeneracy threshold and
/// NonexistentTrapezoid when l12 <= |h1 - h2| (no such trapezoid). A
/// non-ultraparallel result is legal and reported through the flag.
TrapezoidSolved solve_trapezoid(double l12, double h1, double h2);

/// Solve a prism from the upper edge lengths and the lateral edge lengths.
/// Dihedral angles come from the spherical links of the upper vertices.
/// Throws DegenerateUpperTriangle / NonexistentTrapezoid (wrapped per face by
/// callers). Ultraparallelism of the two boundary planes is tested by the
/// sign of -<w,w> for the solution w of the height interpolation system.
PrismSolved solve_prism(double l12, double l13, double l23,
                        double h1, double h2, double h3);

/// Volume of an ultraparallel prism by adaptive quadrature in polar Fermi
/// coordinates about the perpendicular foot. The radial integral is closed
/// form, so only the angular integral is numeric; absolute error <= tol.
double prism_volume(const PrismSolved& prism, double tol);

/// eta(Delta) = 2 arcsin(1/(sqrt(2) cosh(Delta/2))), the base-angle budget
/// under which a triangle with base a < Delta and base angles beta, gamma
/// exists and has apex angle > pi/2.
double eta(double delta);

/// Triangle from base a and adjacent angles beta, gamma (dual cosine law).
/// Throws NoSuchTriangle when cos(alpha) falls outside (-1, 1).
TriangleSolved triangle_from_base_angles(double a, double beta, double gamma);

/// The positive margin (beta + gamma cosh a) - (pi - alpha) for triangles
/// with obtuse apex. Throws PreconditionViolated unless alpha > pi/2.
double curvature_transfer_bound(const TriangleSolved& t);

/// Hyperbolic area of the trapezoid, pi - alpha12 - alpha21.
inline double trapezoid_area(const TrapezoidSolved& t) {
    return kPi - t.alpha12 - t.alpha21;
}

/// Area of the upper triangle of a prism (angle deficit).
inline double prism_upper_area(const PrismSolved& p) {
    return kPi - p.lam1 - p.lam2 - p.lam3;
}

}  // namespace fcm
